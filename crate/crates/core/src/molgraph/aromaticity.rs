//! Kekulization of aromatic input and Hückel-style aromaticity perception.
//!
//! The internal representation always carries definite single/double orders;
//! aromaticity is a derived flag re-perceived from the kekulized graph. This
//! keeps valence arithmetic exact and makes "c1ccccc1" and "C1=CC=CC=C1"
//! converge to the same molecule.

use crate::element::{allowed_valences, Element};

use super::rings::perceive_rings;
use super::{BondOrder, MolError, Molecule};

/// Whether an atom written in aromatic (lowercase) form must receive exactly
/// one double bond during kekulization. Pyridine-type nitrogen does, pyrrole
/// type does not; carbon always does unless charged or already consumed by an
/// explicit multiple bond elsewhere.
pub(crate) fn needs_pi_bond(
    element: Element,
    charge: i8,
    degree: usize,
    explicit_h: u8,
    has_outside_multiple_bond: bool,
) -> bool {
    if has_outside_multiple_bond {
        return false;
    }
    // Charged carbon contributes an empty orbital or a lone pair instead.
    if element == Element::C && charge != 0 {
        return false;
    }
    let lowest = allowed_valences(element, charge).first().copied().unwrap_or(0);
    lowest as i32 - degree as i32 - explicit_h as i32 >= 1
}

/// Assign alternating single/double orders to the aromatic subgraph by
/// perfect matching on the atoms that require a pi bond.
///
/// `aromatic_atoms[i]` marks atoms written lowercase; `aromatic_bonds[b]`
/// marks bonds written as default/":" between two such atoms. Fails when no
/// perfect matching exists (e.g. "c1cccc1").
pub(crate) fn kekulize(
    mol: &mut Molecule,
    aromatic_atoms: &[bool],
    aromatic_bonds: &[bool],
) -> Result<(), MolError> {
    let n = mol.atom_count();
    let mut must_match = vec![false; n];
    for i in 0..n {
        if !aromatic_atoms[i] {
            continue;
        }
        let atom = *mol.atom(i);
        let has_outside_multiple = mol.neighbors(i).iter().any(|&(_, bi)| {
            !aromatic_bonds[bi] && mol.bond(bi).order != BondOrder::Single
        });
        must_match[i] = needs_pi_bond(
            atom.element,
            atom.formal_charge,
            mol.degree(i),
            atom.explicit_h,
            has_outside_multiple,
        );
    }

    // Candidate partner lists, restricted to aromatic bonds between two
    // must-match atoms. Deterministic order.
    let mut partners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        if !must_match[i] {
            continue;
        }
        for &(nb, bi) in mol.neighbors(i) {
            if aromatic_bonds[bi] && must_match[nb] {
                partners[i].push((nb, bi));
            }
        }
    }

    let mut matched_bond: Vec<Option<usize>> = vec![None; n];
    if !match_all(&mut matched_bond, &partners, &must_match) {
        let offender = (0..n).find(|&i| must_match[i]).unwrap_or(0);
        return Err(MolError::Kekulization(offender));
    }

    let mut double_bonds: Vec<usize> = matched_bond.iter().flatten().copied().collect();
    double_bonds.sort_unstable();
    double_bonds.dedup();
    for bi in 0..mol.bonds.len() {
        if aromatic_bonds[bi] {
            mol.bonds[bi].order =
                if double_bonds.contains(&bi) { BondOrder::Double } else { BondOrder::Single };
        }
    }
    Ok(())
}

/// Backtracking perfect matching over the must-match atoms. Aromatic systems
/// are small, and picking the most constrained atom first keeps the search
/// shallow in practice.
fn match_all(
    matched_bond: &mut Vec<Option<usize>>,
    partners: &[Vec<(usize, usize)>],
    must_match: &[bool],
) -> bool {
    let mut taken: Vec<bool> = matched_bond.iter().map(|m| m.is_some()).collect();
    fn solve(
        taken: &mut Vec<bool>,
        matched_bond: &mut Vec<Option<usize>>,
        partners: &[Vec<(usize, usize)>],
        must_match: &[bool],
    ) -> bool {
        // most-constrained unmatched atom
        let mut pick: Option<(usize, usize)> = None;
        for i in 0..taken.len() {
            if must_match[i] && !taken[i] {
                let avail = partners[i].iter().filter(|&&(nb, _)| !taken[nb]).count();
                if avail == 0 {
                    return false;
                }
                if pick.map_or(true, |(_, best)| avail < best) {
                    pick = Some((i, avail));
                }
            }
        }
        let Some((i, _)) = pick else { return true };
        taken[i] = true;
        for &(nb, bi) in &partners[i] {
            if taken[nb] {
                continue;
            }
            taken[nb] = true;
            matched_bond[i] = Some(bi);
            matched_bond[nb] = Some(bi);
            if solve(taken, matched_bond, partners, must_match) {
                return true;
            }
            matched_bond[i] = None;
            matched_bond[nb] = None;
            taken[nb] = false;
        }
        taken[i] = false;
        false
    }
    solve(&mut taken, matched_bond, partners, must_match)
}

/// Re-derive aromatic flags from the kekulized graph: an SSSR ring is
/// aromatic when every member is sp2-capable and the ring's pi electron
/// count satisfies 4n+2.
pub fn perceive_aromaticity(mol: &mut Molecule) {
    let rings = perceive_rings(mol);
    if rings.rings.is_empty() {
        return;
    }
    let in_any_ring: Vec<bool> = (0..mol.atom_count()).map(|i| rings.is_ring_atom(i)).collect();

    let mut aromatic_atoms: Vec<bool> = vec![false; mol.atom_count()];
    let mut aromatic_bonds: Vec<bool> = vec![false; mol.bond_count()];

    for ring in &rings.rings {
        if let Some(pi) = ring_pi_count(mol, ring, &in_any_ring) {
            if pi >= 2 && pi % 4 == 2 {
                for &a in ring {
                    aromatic_atoms[a] = true;
                }
                for k in 0..ring.len() {
                    let a = ring[k];
                    let b = ring[(k + 1) % ring.len()];
                    if let Some(&(_, bi)) =
                        mol.neighbors(a).iter().find(|&&(nb, _)| nb == b)
                    {
                        aromatic_bonds[bi] = true;
                    }
                }
            }
        }
    }

    for (i, flag) in aromatic_atoms.iter().enumerate() {
        mol.atoms[i].aromatic = *flag;
    }
    for (bi, flag) in aromatic_bonds.iter().enumerate() {
        mol.bonds[bi].aromatic = *flag;
    }
}

/// Pi electron contribution of a ring, or None when some member cannot take
/// part in an aromatic system at all.
fn ring_pi_count(mol: &Molecule, ring: &[usize], in_any_ring: &[bool]) -> Option<u32> {
    let mut total = 0u32;
    for &a in ring {
        let atom = mol.atom(a);
        let mut double_in_ring = false;
        let mut double_to_ring_system = false;
        let mut double_to_chain = false;
        for &(nb, bi) in mol.neighbors(a) {
            let bond = mol.bond(bi);
            if bond.order == BondOrder::Single {
                continue;
            }
            if ring.contains(&nb) {
                double_in_ring = true;
            } else if in_any_ring[nb] {
                double_to_ring_system = true;
            } else {
                double_to_chain = true;
            }
        }
        let contribution = if double_in_ring || double_to_ring_system {
            1
        } else if double_to_chain {
            // exocyclic carbonyl-style pi: sp2 but donates nothing
            0
        } else {
            match (atom.element, atom.formal_charge.signum()) {
                (Element::N | Element::P, 0) => 2,
                (Element::N | Element::P, 1) => 0,
                (Element::N | Element::P, -1) => 2,
                (Element::O | Element::S, _) => 2,
                (Element::C, 1) => 0,
                (Element::C, -1) => 2,
                (Element::B, _) => 0,
                // saturated carbon: ring cannot be aromatic
                (Element::C, _) => return None,
                _ => return None,
            }
        };
        total += contribution;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pyridine_nitrogen_needs_pi_pyrrole_does_not() {
        assert!(needs_pi_bond(Element::N, 0, 2, 0, false)); // pyridine n
        assert!(!needs_pi_bond(Element::N, 0, 2, 1, false)); // [nH]
        assert!(!needs_pi_bond(Element::N, 0, 3, 0, false)); // n(C) N-substituted
        assert!(needs_pi_bond(Element::N, 1, 3, 0, false)); // [n+](C) pyridinium
        assert!(needs_pi_bond(Element::C, 0, 2, 0, false)); // plain c
        assert!(!needs_pi_bond(Element::O, 0, 2, 0, false)); // furan o
        assert!(!needs_pi_bond(Element::S, 0, 2, 0, false)); // thiophene s
        assert!(!needs_pi_bond(Element::C, -1, 2, 0, false)); // [c-]
    }
}
