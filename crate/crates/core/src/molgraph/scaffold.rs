//! Murcko scaffold extraction: ring systems plus the linkers between them,
//! obtained by iteratively pruning terminal side-chain atoms.

use super::{Bond, Molecule};

/// Extract the Murcko scaffold. Acyclic molecules yield the empty molecule.
/// Idempotent: scaffold(scaffold(m)) == scaffold(m).
pub fn murcko_scaffold(mol: &Molecule) -> Molecule {
    let n = mol.atom_count();
    if n == 0 {
        return Molecule::empty();
    }
    let mut keep = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|i| mol.degree(i)).collect();

    // Iteratively peel degree-1 atoms. Ring atoms never drop below degree 2,
    // so rings and the paths between them survive.
    let mut queue: Vec<usize> = (0..n).filter(|&i| degree[i] <= 1).collect();
    while let Some(i) = queue.pop() {
        if !keep[i] || degree[i] > 1 {
            continue;
        }
        keep[i] = false;
        for &(nb, _) in mol.neighbors(i) {
            if keep[nb] {
                degree[nb] -= 1;
                if degree[nb] <= 1 {
                    queue.push(nb);
                }
            }
        }
    }

    if keep.iter().all(|k| !k) {
        return Molecule::empty();
    }

    let mut remap = vec![usize::MAX; n];
    let mut atoms = Vec::new();
    for i in 0..n {
        if keep[i] {
            remap[i] = atoms.len();
            atoms.push(*mol.atom(i));
        }
    }
    let bonds: Vec<Bond> = mol
        .bonds()
        .iter()
        .filter(|b| keep[b.a] && keep[b.b])
        .map(|b| Bond { a: remap[b.a], b: remap[b.b], order: b.order, aromatic: false })
        .collect();

    Molecule::new(atoms, bonds).expect("pruned scaffold keeps connectivity and valence")
}
