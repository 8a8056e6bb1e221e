//! Molecular graph data model: atoms, bonds, valence rules, ring perception,
//! canonical atom ranking, Murcko scaffolds and substructure search.

mod aromaticity;
mod canon;
mod rings;
mod scaffold;
mod substruct;

pub use aromaticity::perceive_aromaticity;
pub(crate) use aromaticity::{kekulize, needs_pi_bond};
pub use canon::canonical_ranks;
pub use rings::{perceive_rings, RingInfo};
pub use scaffold::murcko_scaffold;
pub use substruct::{is_isomorphic, substructure_contains};

use crate::element::{fitting_valence, max_valence, Element};
use thiserror::Error;

/// Kekulized bond order. Aromaticity is carried as a separate flag so that
/// valence arithmetic always has a definite integer order to work with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
}

impl BondOrder {
    pub fn as_u8(self) -> u8 {
        match self {
            BondOrder::Single => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom {
    pub element: Element,
    pub formal_charge: i8,
    /// Hydrogen count pinned by the input (bracket atoms, SELFIES H tokens).
    pub explicit_h: u8,
    /// When set, `explicit_h` is the complete hydrogen count and no implicit
    /// hydrogens are added on top of it.
    pub h_specified: bool,
    pub aromatic: bool,
}

impl Atom {
    pub fn new(element: Element) -> Atom {
        Atom { element, formal_charge: 0, explicit_h: 0, h_specified: false, aromatic: false }
    }

    pub fn with_charge(element: Element, formal_charge: i8) -> Atom {
        Atom { formal_charge, ..Atom::new(element) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bond {
    /// Endpoint atom indices; normalized so `a < b`.
    pub a: usize,
    pub b: usize,
    pub order: BondOrder,
    pub aromatic: bool,
}

impl Bond {
    pub fn new(a: usize, b: usize, order: BondOrder) -> Bond {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Bond { a, b, order, aromatic: false }
    }

    pub fn other(&self, atom: usize) -> usize {
        if atom == self.a {
            self.b
        } else {
            self.a
        }
    }

    /// Order class used everywhere structure is compared or hashed: aromatic
    /// bonds compare equal to each other regardless of the kekulized order
    /// the perfect matching happened to assign.
    pub fn class(&self) -> u8 {
        if self.aromatic {
            4
        } else {
            self.order.as_u8()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MolError {
    #[error("bond endpoint {0} out of range")]
    BondOutOfRange(usize),
    #[error("self bond on atom {0}")]
    SelfBond(usize),
    #[error("duplicate bond between atoms {0} and {1}")]
    DuplicateBond(usize, usize),
    #[error("molecule is not connected")]
    Disconnected,
    #[error("valence violation on atom {index} ({element}{charge:+}): bond order sum {total} exceeds {allowed}")]
    Valence { index: usize, element: Element, charge: i8, total: u8, allowed: u8 },
    #[error("unsupported element/charge combination {element}{charge:+} on atom {index}")]
    UnsupportedCharge { index: usize, element: Element, charge: i8 },
    #[error("aromatic flag on atom {0} outside any perceived ring")]
    AromaticOutsideRing(usize),
    #[error("no kekulized bond assignment exists for the aromatic system around atom {0}")]
    Kekulization(usize),
}

/// Attributed undirected molecular graph. Construction validates the full set
/// of invariants (connectivity, valence table, aromatic flags only on ring
/// atoms), so a `Molecule` in hand is always safe to compute on.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    /// adjacency[i] = (neighbor atom index, bond index), in insertion order.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Molecule {
    /// Empty molecule (the scaffold of an acyclic molecule, and the decode of
    /// an empty token sequence).
    pub fn empty() -> Molecule {
        Molecule { atoms: Vec::new(), bonds: Vec::new(), adjacency: Vec::new() }
    }

    /// Validating constructor. Kekulized bond orders are taken as given;
    /// aromaticity is re-perceived from scratch so the flags are always
    /// consistent with ring membership and the Hückel count.
    pub fn new(atoms: Vec<Atom>, bonds: Vec<Bond>) -> Result<Molecule, MolError> {
        let mut mol = Molecule::from_parts_unchecked(atoms, bonds)?;
        mol.clear_aromatic_flags();
        perceive_aromaticity(&mut mol);
        mol.validate()?;
        Ok(mol)
    }

    /// Structural assembly without aromaticity perception or valence checks.
    /// Used by the parser, which runs kekulization in between.
    pub(crate) fn from_parts_unchecked(
        atoms: Vec<Atom>,
        bonds: Vec<Bond>,
    ) -> Result<Molecule, MolError> {
        let n = atoms.len();
        let mut adjacency = vec![Vec::new(); n];
        for (bi, bond) in bonds.iter().enumerate() {
            if bond.a >= n || bond.b >= n {
                return Err(MolError::BondOutOfRange(bond.a.max(bond.b)));
            }
            if bond.a == bond.b {
                return Err(MolError::SelfBond(bond.a));
            }
            if adjacency[bond.a].iter().any(|&(nb, _)| nb == bond.b) {
                return Err(MolError::DuplicateBond(bond.a, bond.b));
            }
            adjacency[bond.a].push((bond.b, bi));
            adjacency[bond.b].push((bond.a, bi));
        }
        Ok(Molecule { atoms, bonds, adjacency })
    }

    pub(crate) fn clear_aromatic_flags(&mut self) {
        for atom in &mut self.atoms {
            atom.aromatic = false;
        }
        for bond in &mut self.bonds {
            bond.aromatic = false;
        }
    }

    /// Full invariant check: connectivity, valence, aromatic flags on rings.
    pub(crate) fn validate(&self) -> Result<(), MolError> {
        if !self.is_connected() {
            return Err(MolError::Disconnected);
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if atom.formal_charge.abs() > 2 {
                return Err(MolError::UnsupportedCharge {
                    index: i,
                    element: atom.element,
                    charge: atom.formal_charge,
                });
            }
            let allowed = max_valence(atom.element, atom.formal_charge);
            if allowed == 0 && !(atom.element == Element::H && atom.formal_charge == 0) {
                if crate::element::allowed_valences(atom.element, atom.formal_charge).is_empty() {
                    return Err(MolError::UnsupportedCharge {
                        index: i,
                        element: atom.element,
                        charge: atom.formal_charge,
                    });
                }
            }
            let total = self.bond_order_sum(i) + atom.explicit_h;
            if total > allowed {
                return Err(MolError::Valence {
                    index: i,
                    element: atom.element,
                    charge: atom.formal_charge,
                    total,
                    allowed,
                });
            }
        }
        let rings = perceive_rings(self);
        for (i, atom) in self.atoms.iter().enumerate() {
            if atom.aromatic && !rings.is_ring_atom(i) {
                return Err(MolError::AromaticOutsideRing(i));
            }
        }
        Ok(())
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, i: usize) -> &Atom {
        &self.atoms[i]
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bond(&self, i: usize) -> &Bond {
        &self.bonds[i]
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Option<&Bond> {
        self.adjacency[a].iter().find(|&&(nb, _)| nb == b).map(|&(_, bi)| &self.bonds[bi])
    }

    /// Sum of kekulized bond orders incident to atom `i`.
    pub fn bond_order_sum(&self, i: usize) -> u8 {
        self.adjacency[i].iter().map(|&(_, bi)| self.bonds[bi].order.as_u8()).sum()
    }

    /// Hydrogens inferred from the valence table: the smallest allowed valence
    /// that fits the bond order sum, minus what is already spoken for. Atoms
    /// with pinned hydrogen counts contribute no implicit hydrogens.
    pub fn implicit_h(&self, i: usize) -> u8 {
        let atom = &self.atoms[i];
        if atom.h_specified {
            return 0;
        }
        let bonds = self.bond_order_sum(i) + atom.explicit_h;
        match fitting_valence(atom.element, atom.formal_charge, bonds) {
            Some(v) => v.saturating_sub(bonds),
            None => 0,
        }
    }

    /// Total (explicit + implicit) hydrogen count; hydrogens are never graph
    /// nodes, this is the only way they exist.
    pub fn total_h(&self, i: usize) -> u8 {
        self.atoms[i].explicit_h + self.implicit_h(i)
    }

    /// Remaining bonding capacity relative to the largest allowed valence.
    pub fn free_valence(&self, i: usize) -> u8 {
        let atom = &self.atoms[i];
        let used = self.bond_order_sum(i) + atom.explicit_h;
        max_valence(atom.element, atom.formal_charge).saturating_sub(used)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.atoms.len();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &(nb, _) in &self.adjacency[i] {
                if !seen[nb] {
                    seen[nb] = true;
                    count += 1;
                    stack.push(nb);
                }
            }
        }
        count == n
    }

    /// Heavy atom count (hydrogens are never stored, so this is atom_count).
    pub fn heavy_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// Key under which atoms compare for isomorphism and canonical ranking.
    pub(crate) fn atom_key(&self, i: usize) -> AtomKey {
        let atom = &self.atoms[i];
        AtomKey {
            element: atom.element.index(),
            charge: atom.formal_charge,
            total_h: self.total_h(i),
            aromatic: atom.aromatic,
        }
    }
}

/// Identity of an atom for comparison purposes: element, charge, total
/// hydrogen count and aromaticity. The explicit/implicit hydrogen split is an
/// input artifact and deliberately invisible here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct AtomKey {
    pub element: u8,
    pub charge: i8,
    pub total_h: u8,
    pub aromatic: bool,
}

/// Predicate behind the public `Molecule` valence invariant: every atom's
/// bond order sum plus pinned hydrogens stays within the valence table.
pub fn check_valence(mol: &Molecule) -> bool {
    (0..mol.atom_count()).all(|i| {
        let atom = mol.atom(i);
        let allowed = max_valence(atom.element, atom.formal_charge);
        mol.bond_order_sum(i) + atom.explicit_h <= allowed
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carbon() -> Atom {
        Atom::new(Element::C)
    }

    #[test]
    fn ethane_is_valid() {
        let mol = Molecule::new(
            vec![carbon(), carbon()],
            vec![Bond::new(0, 1, BondOrder::Single)],
        )
        .unwrap();
        assert!(check_valence(&mol));
        assert_eq!(mol.total_h(0), 3);
        assert_eq!(mol.total_h(1), 3);
    }

    #[test]
    fn methane_has_four_hydrogens() {
        let mol = Molecule::new(vec![carbon()], vec![]).unwrap();
        assert_eq!(mol.total_h(0), 4);
        assert_eq!(mol.free_valence(0), 4);
    }

    #[test]
    fn carbon_with_four_bonds_valid_nitrogen_not() {
        let neopentane_center = Molecule::new(
            vec![carbon(), carbon(), carbon(), carbon(), carbon()],
            vec![
                Bond::new(0, 1, BondOrder::Single),
                Bond::new(0, 2, BondOrder::Single),
                Bond::new(0, 3, BondOrder::Single),
                Bond::new(0, 4, BondOrder::Single),
            ],
        );
        assert!(neopentane_center.is_ok());

        let bad_nitrogen = Molecule::new(
            vec![Atom::new(Element::N), carbon(), carbon(), carbon(), carbon()],
            vec![
                Bond::new(0, 1, BondOrder::Single),
                Bond::new(0, 2, BondOrder::Single),
                Bond::new(0, 3, BondOrder::Single),
                Bond::new(0, 4, BondOrder::Single),
            ],
        );
        assert!(matches!(bad_nitrogen, Err(MolError::Valence { .. })));

        let ammonium_like = Molecule::new(
            vec![Atom::with_charge(Element::N, 1), carbon(), carbon(), carbon(), carbon()],
            vec![
                Bond::new(0, 1, BondOrder::Single),
                Bond::new(0, 2, BondOrder::Single),
                Bond::new(0, 3, BondOrder::Single),
                Bond::new(0, 4, BondOrder::Single),
            ],
        );
        assert!(ammonium_like.is_ok());
    }

    #[test]
    fn disconnected_rejected() {
        let two_methanes = Molecule::new(vec![carbon(), carbon()], vec![]);
        assert!(matches!(two_methanes, Err(MolError::Disconnected)));
    }

    #[test]
    fn duplicate_bond_rejected() {
        let result = Molecule::new(
            vec![carbon(), carbon()],
            vec![Bond::new(0, 1, BondOrder::Single), Bond::new(1, 0, BondOrder::Single)],
        );
        assert!(matches!(result, Err(MolError::DuplicateBond(0, 1))));
    }

    #[test]
    fn pinned_hydrogens_block_implicit_fill() {
        let mut n = Atom::new(Element::N);
        n.explicit_h = 1;
        n.h_specified = true;
        let mol = Molecule::new(vec![n, carbon()], vec![Bond::new(0, 1, BondOrder::Single)])
            .unwrap();
        // N has one pinned H plus one bond: implicit stays zero by decree.
        assert_eq!(mol.implicit_h(0), 0);
        assert_eq!(mol.total_h(0), 1);
    }
}
