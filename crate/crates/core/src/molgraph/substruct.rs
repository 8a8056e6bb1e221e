//! Subgraph isomorphism (VF2-style backtracking) for substructure and
//! whole-molecule isomorphism tests.

use super::Molecule;

/// True when a subgraph of `haystack` matches `needle`, respecting element,
/// aromaticity, formal charge and bond order class. Hydrogen counts are not
/// compared: a scaffold embeds into decorated molecules.
pub fn substructure_contains(haystack: &Molecule, needle: &Molecule) -> bool {
    if needle.is_empty() {
        return true;
    }
    Matcher::new(haystack, needle, false).search()
}

/// Exact isomorphism: same atom and bond counts and an embedding that also
/// matches total hydrogen counts. Because bond counts agree, any monomorphism
/// is automatically edge-surjective, hence an isomorphism.
pub fn is_isomorphic(a: &Molecule, b: &Molecule) -> bool {
    if a.atom_count() != b.atom_count() || a.bond_count() != b.bond_count() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let mut keys_a: Vec<_> = (0..a.atom_count()).map(|i| a.atom_key(i)).collect();
    let mut keys_b: Vec<_> = (0..b.atom_count()).map(|i| b.atom_key(i)).collect();
    keys_a.sort();
    keys_b.sort();
    if keys_a != keys_b {
        return false;
    }
    Matcher::new(b, a, true).search()
}

struct Matcher<'a> {
    haystack: &'a Molecule,
    needle: &'a Molecule,
    exact: bool,
    /// needle atoms in a connectivity-aware order: each atom after the first
    /// neighbors an earlier one, so partial mappings stay edge-checked.
    order: Vec<usize>,
    mapping: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(haystack: &'a Molecule, needle: &'a Molecule, exact: bool) -> Matcher<'a> {
        let n = needle.atom_count();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        // highest-degree start, then BFS to keep the frontier connected
        if n > 0 {
            let start = (0..n).max_by_key(|&i| needle.degree(i)).unwrap();
            let mut queue = std::collections::VecDeque::from([start]);
            placed[start] = true;
            while let Some(i) = queue.pop_front() {
                order.push(i);
                let mut nbrs: Vec<usize> =
                    needle.neighbors(i).iter().map(|&(nb, _)| nb).collect();
                nbrs.sort_by_key(|&nb| std::cmp::Reverse(needle.degree(nb)));
                for nb in nbrs {
                    if !placed[nb] {
                        placed[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        Matcher {
            haystack,
            needle,
            exact,
            order,
            mapping: vec![None; n],
            used: vec![false; haystack.atom_count()],
        }
    }

    fn atoms_match(&self, h: usize, q: usize) -> bool {
        let ha = self.haystack.atom(h);
        let qa = self.needle.atom(q);
        if ha.element != qa.element
            || ha.aromatic != qa.aromatic
            || ha.formal_charge != qa.formal_charge
        {
            return false;
        }
        if self.exact && self.haystack.total_h(h) != self.needle.total_h(q) {
            return false;
        }
        if self.haystack.degree(h) < self.needle.degree(q) {
            return false;
        }
        true
    }

    fn search(&mut self) -> bool {
        self.place(0)
    }

    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let q = self.order[depth];
        for h in 0..self.haystack.atom_count() {
            if self.used[h] || !self.atoms_match(h, q) {
                continue;
            }
            if !self.edges_consistent(h, q) {
                continue;
            }
            self.mapping[q] = Some(h);
            self.used[h] = true;
            if self.place(depth + 1) {
                return true;
            }
            self.mapping[q] = None;
            self.used[h] = false;
        }
        false
    }

    fn edges_consistent(&self, h: usize, q: usize) -> bool {
        for &(q_nb, q_bi) in self.needle.neighbors(q) {
            if let Some(h_nb) = self.mapping[q_nb] {
                match self.haystack.bond_between(h, h_nb) {
                    Some(h_bond) if h_bond.class() == self.needle.bond(q_bi).class() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::molgraph::{Atom, Bond, BondOrder};

    fn benzene() -> Molecule {
        let atoms = vec![Atom::new(Element::C); 6];
        let bonds: Vec<Bond> = (0..6)
            .map(|i| {
                let order = if i % 2 == 0 { BondOrder::Double } else { BondOrder::Single };
                Bond::new(i, (i + 1) % 6, order)
            })
            .collect();
        Molecule::new(atoms, bonds).unwrap()
    }

    fn cyclohexane() -> Molecule {
        let atoms = vec![Atom::new(Element::C); 6];
        let bonds: Vec<Bond> =
            (0..6).map(|i| Bond::new(i, (i + 1) % 6, BondOrder::Single)).collect();
        Molecule::new(atoms, bonds).unwrap()
    }

    fn toluene() -> Molecule {
        let mut atoms = vec![Atom::new(Element::C); 7];
        let mut bonds: Vec<Bond> = (0..6)
            .map(|i| {
                let order = if i % 2 == 0 { BondOrder::Double } else { BondOrder::Single };
                Bond::new(i, (i + 1) % 6, order)
            })
            .collect();
        bonds.push(Bond::new(0, 6, BondOrder::Single));
        atoms.truncate(7);
        Molecule::new(atoms, bonds).unwrap()
    }

    #[test]
    fn benzene_in_toluene() {
        assert!(substructure_contains(&toluene(), &benzene()));
    }

    #[test]
    fn cyclohexane_not_in_benzene() {
        assert!(!substructure_contains(&benzene(), &cyclohexane()));
        assert!(!substructure_contains(&cyclohexane(), &benzene()));
    }

    #[test]
    fn bigger_needle_than_haystack_fails() {
        assert!(!substructure_contains(&benzene(), &toluene()));
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let a = toluene();
        // same molecule with atoms listed in a different order
        let perm = [3usize, 5, 0, 6, 1, 4, 2]; // new index -> old index
        let mut inv = vec![0usize; 7];
        for (new_idx, &old_idx) in perm.iter().enumerate() {
            inv[old_idx] = new_idx;
        }
        let atoms: Vec<Atom> = perm.iter().map(|&old| *a.atom(old)).collect();
        let bonds: Vec<Bond> =
            a.bonds().iter().map(|b| Bond::new(inv[b.a], inv[b.b], b.order)).collect();
        let b = Molecule::new(atoms, bonds).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &benzene()));
    }
}
