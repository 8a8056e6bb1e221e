//! Canonical atom ranking by iterative partition refinement with
//! individualization on ties. The winning labelling is the one whose ranked
//! adjacency trace is lexicographically smallest, which makes the result
//! invariant under input atom reordering.

use super::Molecule;
use crate::molgraph::rings::perceive_rings;

/// Canonical ranks: a permutation of 0..n-1, isomorphism-invariant.
pub fn canonical_ranks(mol: &Molecule) -> Vec<usize> {
    let n = mol.atom_count();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }

    let rings = perceive_rings(mol);
    // Initial invariant: atom key plus degree and ring membership.
    let initial: Vec<InitialKey> = (0..n)
        .map(|i| {
            let key = mol.atom_key(i);
            InitialKey {
                element: key.element,
                charge: key.charge,
                total_h: key.total_h,
                aromatic: key.aromatic,
                degree: mol.degree(i) as u8,
                in_ring: rings.is_ring_atom(i),
            }
        })
        .collect();

    let mut ranks = ranks_from_keys(&initial);
    refine(mol, &mut ranks);

    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    individualize(mol, ranks, &mut best);
    best.expect("canonical search always yields a labelling").1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct InitialKey {
    element: u8,
    charge: i8,
    total_h: u8,
    aromatic: bool,
    degree: u8,
    in_ring: bool,
}

fn ranks_from_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

/// One refinement sweep: extend each rank with the sorted multiset of
/// (bond class, neighbor rank); iterate until the partition stops splitting.
fn refine(mol: &Molecule, ranks: &mut Vec<usize>) {
    loop {
        let keys: Vec<(usize, Vec<(u8, usize)>)> = (0..mol.atom_count())
            .map(|i| {
                let mut nbrs: Vec<(u8, usize)> = mol
                    .neighbors(i)
                    .iter()
                    .map(|&(nb, bi)| (mol.bond(bi).class(), ranks[nb]))
                    .collect();
                nbrs.sort();
                (ranks[i], nbrs)
            })
            .collect();
        let new_ranks = ranks_from_keys(&keys);
        let old_classes = ranks.iter().collect::<std::collections::BTreeSet<_>>().len();
        let new_classes = new_ranks.iter().collect::<std::collections::BTreeSet<_>>().len();
        let stable = new_classes == old_classes;
        *ranks = new_ranks;
        if stable {
            return;
        }
    }
}

/// When refinement leaves ties, split the first non-singleton cell on each of
/// its members in turn and keep the labelling with the smallest trace.
fn individualize(mol: &Molecule, ranks: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let n = mol.atom_count();
    let mut cell_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (atom, &r) in ranks.iter().enumerate() {
        cell_of[r].push(atom);
    }
    let first_tied = cell_of.iter().find(|cell| cell.len() > 1);

    match first_tied {
        None => {
            let final_ranks = discrete_ranks(&ranks);
            let t = trace(mol, &final_ranks);
            if best.as_ref().map_or(true, |(bt, _)| t < *bt) {
                *best = Some((t, final_ranks));
            }
        }
        Some(cell) => {
            for &atom in cell {
                let mut tweaked: Vec<usize> = ranks.iter().map(|&r| r * 2 + 1).collect();
                tweaked[atom] = ranks[atom] * 2;
                let mut new_ranks = ranks_from_keys(&tweaked);
                refine(mol, &mut new_ranks);
                individualize(mol, new_ranks, best);
            }
        }
    }
}

/// Ranks are dense class ids; once the partition is discrete they are already
/// a permutation of 0..n-1.
fn discrete_ranks(ranks: &[usize]) -> Vec<usize> {
    debug_assert_eq!(
        ranks.iter().collect::<std::collections::BTreeSet<_>>().len(),
        ranks.len()
    );
    ranks.to_vec()
}

/// Complete invariant of the ranked graph: for each atom in rank order, its
/// key and the sorted (bond class, neighbor rank) list, flattened to u64s.
fn trace(mol: &Molecule, ranks: &[usize]) -> Vec<u64> {
    let n = mol.atom_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| ranks[i]);
    let mut out = Vec::with_capacity(n * 4);
    for &i in &order {
        let key = mol.atom_key(i);
        out.push(
            ((key.element as u64) << 32)
                | ((key.charge as i64 as u64 & 0xff) << 24)
                | ((key.total_h as u64) << 16)
                | (key.aromatic as u64),
        );
        let mut nbrs: Vec<(u8, usize)> = mol
            .neighbors(i)
            .iter()
            .map(|&(nb, bi)| (mol.bond(bi).class(), ranks[nb]))
            .collect();
        nbrs.sort();
        out.push(nbrs.len() as u64);
        for (class, r) in nbrs {
            out.push(((class as u64) << 32) | r as u64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::molgraph::{Atom, Bond, BondOrder, Molecule};

    #[test]
    fn single_atom_rank_zero() {
        let mol = Molecule::new(vec![Atom::new(Element::C)], vec![]).unwrap();
        assert_eq!(canonical_ranks(&mol), vec![0]);
    }

    #[test]
    fn ranks_are_permutation() {
        // 2-methylbutane skeleton
        let atoms = vec![Atom::new(Element::C); 5];
        let bonds = vec![
            Bond::new(0, 1, BondOrder::Single),
            Bond::new(1, 2, BondOrder::Single),
            Bond::new(2, 3, BondOrder::Single),
            Bond::new(1, 4, BondOrder::Single),
        ];
        let mol = Molecule::new(atoms, bonds).unwrap();
        let mut ranks = canonical_ranks(&mol);
        ranks.sort();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4]);
    }
}
