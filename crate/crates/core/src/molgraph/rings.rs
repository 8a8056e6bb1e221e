//! SSSR-style ring perception.
//!
//! Candidate cycles are generated by routing every bond through the shortest
//! alternative path, then a smallest-first greedy pass keeps cycles that are
//! linearly independent over GF(2) until the cyclomatic number is reached.
//! Deterministic for a given input ordering.

use std::collections::VecDeque;

use super::Molecule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingInfo {
    /// Smallest set of smallest rings, each as an atom-index cycle in ring
    /// order. Sorted by (length, atoms) for determinism.
    pub rings: Vec<Vec<usize>>,
    /// Size of the largest perceived ring, 0 when acyclic.
    pub largest_ring_size: usize,
    ring_atom: Vec<bool>,
    ring_bond: Vec<bool>,
    ring_count_per_atom: Vec<u8>,
}

impl RingInfo {
    pub fn is_ring_atom(&self, atom: usize) -> bool {
        self.ring_atom.get(atom).copied().unwrap_or(false)
    }

    pub fn is_ring_bond(&self, bond: usize) -> bool {
        self.ring_bond.get(bond).copied().unwrap_or(false)
    }

    /// Number of perceived rings the atom participates in.
    pub fn membership_count(&self, atom: usize) -> u8 {
        self.ring_count_per_atom.get(atom).copied().unwrap_or(0)
    }

    pub fn ring_count(&self) -> usize {
        self.rings.len()
    }

    /// Pairs of rings sharing at least one bond.
    pub fn fused_pairs(&self, mol: &Molecule) -> usize {
        let bond_sets: Vec<Vec<usize>> =
            self.rings.iter().map(|ring| ring_bond_indices(mol, ring)).collect();
        let mut fused = 0;
        for i in 0..bond_sets.len() {
            for j in i + 1..bond_sets.len() {
                if bond_sets[i].iter().any(|b| bond_sets[j].contains(b)) {
                    fused += 1;
                }
            }
        }
        fused
    }
}

fn ring_bond_indices(mol: &Molecule, ring: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(ring.len());
    for k in 0..ring.len() {
        let a = ring[k];
        let b = ring[(k + 1) % ring.len()];
        if let Some(&(_, bi)) = mol.neighbors(a).iter().find(|&&(nb, _)| nb == b) {
            out.push(bi);
        }
    }
    out
}

/// Perceive an SSSR-style ring set. Acyclic molecules return an empty list.
pub fn perceive_rings(mol: &Molecule) -> RingInfo {
    let n = mol.atom_count();
    let m = mol.bond_count();
    let empty = RingInfo {
        rings: Vec::new(),
        largest_ring_size: 0,
        ring_atom: vec![false; n],
        ring_bond: vec![false; m],
        ring_count_per_atom: vec![0; n],
    };
    if n == 0 || m < n {
        // connected graph with fewer than n bonds is a tree
        return empty;
    }
    let cyclomatic = m - n + 1;

    // Shortest cycle through each bond.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for (bi, bond) in mol.bonds().iter().enumerate() {
        if let Some(path) = shortest_path_avoiding(mol, bond.a, bond.b, bi) {
            candidates.push(normalize_cycle(&path));
        }
    }
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    candidates.dedup();

    // Greedy GF(2) independence over bond incidence vectors.
    let words = (m + 63) / 64;
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for cycle in candidates {
        if chosen.len() == cyclomatic {
            break;
        }
        let mut vec = vec![0u64; words];
        for bi in ring_bond_indices(mol, &cycle) {
            vec[bi / 64] ^= 1 << (bi % 64);
        }
        let mut reduced = vec.clone();
        for b in &basis {
            if let Some(pivot) = leading_bit(&reduced) {
                if leading_bit(b) == Some(pivot) {
                    for (r, w) in reduced.iter_mut().zip(b) {
                        *r ^= w;
                    }
                }
            }
        }
        // Full reduction: repeat against every basis vector until stable.
        let mut changed = true;
        while changed {
            changed = false;
            for b in &basis {
                if let (Some(p), Some(q)) = (leading_bit(&reduced), leading_bit(b)) {
                    if p == q {
                        for (r, w) in reduced.iter_mut().zip(b) {
                            *r ^= w;
                        }
                        changed = true;
                    }
                }
            }
        }
        if leading_bit(&reduced).is_some() {
            basis.push(reduced);
            basis.sort_by_key(|b| std::cmp::Reverse(leading_bit(b)));
            chosen.push(cycle);
        }
    }

    let mut ring_atom = vec![false; n];
    let mut ring_bond = vec![false; m];
    let mut per_atom = vec![0u8; n];
    for ring in &chosen {
        for &a in ring {
            ring_atom[a] = true;
            per_atom[a] = per_atom[a].saturating_add(1);
        }
        for bi in ring_bond_indices(mol, ring) {
            ring_bond[bi] = true;
        }
    }
    chosen.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let largest = chosen.iter().map(|r| r.len()).max().unwrap_or(0);
    RingInfo {
        rings: chosen,
        largest_ring_size: largest,
        ring_atom,
        ring_bond,
        ring_count_per_atom: per_atom,
    }
}

/// BFS shortest path from `from` to `to` that does not traverse bond
/// `skip_bond`; returns the cycle atom sequence (path including both ends).
fn shortest_path_avoiding(
    mol: &Molecule,
    from: usize,
    to: usize,
    skip_bond: usize,
) -> Option<Vec<usize>> {
    let n = mol.atom_count();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    queue.push_back(from);
    seen[from] = true;
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut path = vec![to];
            let mut at = to;
            while at != from {
                at = prev[at];
                path.push(at);
            }
            path.reverse();
            return Some(path);
        }
        for &(nb, bi) in mol.neighbors(cur) {
            if bi == skip_bond || seen[nb] {
                continue;
            }
            seen[nb] = true;
            prev[nb] = cur;
            queue.push_back(nb);
        }
    }
    None
}

/// Rotate/reflect a cycle into its lexicographically smallest form so equal
/// cycles deduplicate regardless of traversal direction.
fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..k {
        for dir in [1isize, -1] {
            let mut rot = Vec::with_capacity(k);
            for step in 0..k {
                let idx = (start as isize + dir * step as isize).rem_euclid(k as isize) as usize;
                rot.push(cycle[idx]);
            }
            if best.as_ref().map_or(true, |b| &rot < b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    for (w, word) in v.iter().enumerate() {
        if *word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::{Atom, Bond, BondOrder, Molecule};
    use crate::element::Element;

    fn chain(n: usize) -> Molecule {
        let atoms = vec![Atom::new(Element::C); n];
        let bonds =
            (0..n - 1).map(|i| Bond::new(i, i + 1, BondOrder::Single)).collect::<Vec<_>>();
        Molecule::new(atoms, bonds).unwrap()
    }

    fn cycle(n: usize) -> Molecule {
        let atoms = vec![Atom::new(Element::C); n];
        let mut bonds =
            (0..n - 1).map(|i| Bond::new(i, i + 1, BondOrder::Single)).collect::<Vec<_>>();
        bonds.push(Bond::new(n - 1, 0, BondOrder::Single));
        Molecule::new(atoms, bonds).unwrap()
    }

    #[test]
    fn ethane_is_acyclic() {
        let info = perceive_rings(&chain(2));
        assert!(info.rings.is_empty());
        assert_eq!(info.largest_ring_size, 0);
    }

    #[test]
    fn six_ring_found() {
        let info = perceive_rings(&cycle(6));
        assert_eq!(info.rings.len(), 1);
        assert_eq!(info.largest_ring_size, 6);
        assert!((0..6).all(|i| info.is_ring_atom(i)));
    }

    /// Naphthalene skeleton: fused pair of six-rings. The exhaustive simple
    /// cycle set on this graph is {6, 6, 10}; SSSR must keep the two
    /// six-cycles and reject the ten-cycle as dependent.
    #[test]
    fn naphthalene_two_six_rings() {
        // atoms 0..9; rings {0,1,2,3,4,9} and {4,5,6,7,8,9} share bond 4-9
        let atoms = vec![Atom::new(Element::C); 10];
        let edges =
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 0), (4, 9)];
        let bonds =
            edges.iter().map(|&(a, b)| Bond::new(a, b, BondOrder::Single)).collect::<Vec<_>>();
        let mol = Molecule::new(atoms, bonds).unwrap();

        // Oracle: exhaustively enumerate simple cycles via DFS.
        let all = enumerate_simple_cycles(&mol);
        let mut lengths: Vec<usize> = all.iter().map(|c| c.len()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![6, 6, 10]);

        let info = perceive_rings(&mol);
        assert_eq!(info.rings.len(), 2);
        assert!(info.rings.iter().all(|r| r.len() == 6));
        assert_eq!(info.largest_ring_size, 6);
        assert_eq!(info.fused_pairs(&mol), 1);
    }

    #[test]
    fn spiro_two_rings() {
        // spiro[4.4]nonane: two 5-rings sharing one atom (index 0)
        let atoms = vec![Atom::new(Element::C); 9];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 8), (8, 0)];
        let bonds =
            edges.iter().map(|&(a, b)| Bond::new(a, b, BondOrder::Single)).collect::<Vec<_>>();
        let mol = Molecule::new(atoms, bonds).unwrap();
        let info = perceive_rings(&mol);
        assert_eq!(info.rings.len(), 2);
        assert_eq!(info.largest_ring_size, 5);
        assert_eq!(info.membership_count(0), 2);
        assert_eq!(info.fused_pairs(&mol), 0);
    }

    /// Brute-force simple cycle enumeration, test-only oracle.
    fn enumerate_simple_cycles(mol: &Molecule) -> Vec<Vec<usize>> {
        let n = mol.atom_count();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; n];
        fn dfs(
            mol: &Molecule,
            start: usize,
            cur: usize,
            path: &mut Vec<usize>,
            on_path: &mut Vec<bool>,
            cycles: &mut Vec<Vec<usize>>,
        ) {
            path.push(cur);
            on_path[cur] = true;
            for &(nb, _) in mol.neighbors(cur) {
                if nb == start && path.len() >= 3 {
                    let norm = super::normalize_cycle(path);
                    if !cycles.contains(&norm) {
                        cycles.push(norm);
                    }
                } else if !on_path[nb] && nb > start {
                    dfs(mol, start, nb, path, on_path, cycles);
                }
            }
            path.pop();
            on_path[cur] = false;
        }
        for start in 0..n {
            dfs(mol, start, start, &mut path, &mut on_path, &mut cycles);
        }
        cycles
    }
}
