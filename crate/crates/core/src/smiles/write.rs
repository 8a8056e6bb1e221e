//! Canonical SMILES writer: two DFS passes over the canonically ranked graph,
//! first to locate ring closures, then to emit text. Aromatic rings come out
//! in lowercase form.

use crate::element::{fitting_valence, Element};
use crate::molgraph::{canonical_ranks, needs_pi_bond, BondOrder, Molecule};

/// Canonical SMILES; deterministic and invariant under atom reordering.
pub fn write_smiles(mol: &Molecule) -> String {
    write_smiles_with_ranks(mol, &canonical_ranks(mol))
}

/// Character count of the canonical SMILES; the generation-cap measure.
pub fn smiles_length(mol: &Molecule) -> usize {
    write_smiles(mol).len()
}

/// SMILES under a caller-supplied atom ranking (rank 0 becomes the root and
/// neighbor traversal follows ascending rank).
pub fn write_smiles_with_ranks(mol: &Molecule, ranks: &[usize]) -> String {
    if mol.is_empty() {
        return String::new();
    }
    let root = (0..mol.atom_count()).min_by_key(|&i| ranks[i]).unwrap();

    // Pass 1: DFS to classify ring-closure bonds.
    let mut closure_bonds: Vec<usize> = Vec::new();
    {
        let mut visited = vec![false; mol.atom_count()];
        let mut bond_seen = vec![false; mol.bond_count()];
        visited[root] = true;
        fn dfs(
            mol: &Molecule,
            ranks: &[usize],
            at: usize,
            visited: &mut Vec<bool>,
            bond_seen: &mut Vec<bool>,
            closures: &mut Vec<usize>,
        ) {
            let mut nbrs: Vec<(usize, usize)> = mol.neighbors(at).to_vec();
            nbrs.sort_by_key(|&(nb, _)| ranks[nb]);
            for (nb, bi) in nbrs {
                if bond_seen[bi] {
                    continue;
                }
                bond_seen[bi] = true;
                if visited[nb] {
                    closures.push(bi);
                } else {
                    visited[nb] = true;
                    dfs(mol, ranks, nb, visited, bond_seen, closures);
                }
            }
        }
        dfs(mol, ranks, root, &mut visited, &mut bond_seen, &mut closure_bonds);
    }

    // Assign ring digits in emission order, reusing freed digits.
    let mut writer = Writer {
        mol,
        ranks,
        closure_bonds,
        digit_of_bond: std::collections::BTreeMap::new(),
        digits_in_use: Vec::new(),
        visited: vec![false; mol.atom_count()],
        out: String::new(),
    };
    writer.emit(root, None);
    writer.out
}

struct Writer<'a> {
    mol: &'a Molecule,
    ranks: &'a [usize],
    closure_bonds: Vec<usize>,
    digit_of_bond: std::collections::BTreeMap<usize, usize>,
    digits_in_use: Vec<usize>,
    visited: Vec<bool>,
    out: String,
}

impl<'a> Writer<'a> {
    fn emit(&mut self, at: usize, from_bond: Option<usize>) {
        self.visited[at] = true;
        if let Some(bi) = from_bond {
            self.out.push_str(&self.bond_text(bi));
        }
        self.out.push_str(&atom_text(self.mol, at));

        // ring closures at this atom, in rank order of the far atom
        let mut closures: Vec<(usize, usize)> = self
            .closure_bonds
            .iter()
            .copied()
            .filter(|&bi| {
                let b = self.mol.bond(bi);
                b.a == at || b.b == at
            })
            .map(|bi| (self.mol.bond(bi).other(at), bi))
            .collect();
        closures.sort_by_key(|&(other, _)| self.ranks[other]);
        for (_, bi) in closures {
            match self.digit_of_bond.get(&bi).copied() {
                Some(digit) => {
                    // closing side: digit only, opening side carried the symbol
                    self.push_digit(digit);
                    self.digits_in_use.retain(|&d| d != digit);
                }
                None => {
                    let digit = self.alloc_digit();
                    self.digit_of_bond.insert(bi, digit);
                    self.out.push_str(&self.bond_text(bi));
                    self.push_digit(digit);
                }
            }
        }

        let mut children: Vec<(usize, usize)> = self
            .mol
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&(nb, bi)| !self.visited[nb] && !self.closure_bonds.contains(&bi))
            .collect();
        children.sort_by_key(|&(nb, _)| self.ranks[nb]);
        let last = children.len().saturating_sub(1);
        for (k, (nb, bi)) in children.into_iter().enumerate() {
            if self.visited[nb] {
                continue; // can happen when a closure marked it meanwhile; defensive
            }
            if k < last {
                self.out.push('(');
                self.emit(nb, Some(bi));
                self.out.push(')');
            } else {
                self.emit(nb, Some(bi));
            }
        }
    }

    fn bond_text(&self, bi: usize) -> String {
        let bond = self.mol.bond(bi);
        if bond.aromatic {
            return String::new();
        }
        match bond.order {
            BondOrder::Single => {
                let both_aromatic =
                    self.mol.atom(bond.a).aromatic && self.mol.atom(bond.b).aromatic;
                if both_aromatic {
                    // explicit single so it does not read back as aromatic
                    "-".to_string()
                } else {
                    String::new()
                }
            }
            BondOrder::Double => "=".to_string(),
            BondOrder::Triple => "#".to_string(),
        }
    }

    fn alloc_digit(&mut self) -> usize {
        let mut d = 1;
        while self.digits_in_use.contains(&d) {
            d += 1;
        }
        self.digits_in_use.push(d);
        d
    }

    fn push_digit(&mut self, digit: usize) {
        if digit > 9 {
            self.out.push('%');
            self.out.push_str(&format!("{digit:02}"));
        } else {
            self.out.push_str(&digit.to_string());
        }
    }
}

/// Text for one atom, bracketed only when a bare symbol would re-parse with
/// the wrong hydrogen count or charge.
fn atom_text(mol: &Molecule, i: usize) -> String {
    let atom = mol.atom(i);
    let symbol = if atom.aromatic {
        atom.element.symbol().to_lowercase()
    } else {
        atom.element.symbol().to_string()
    };
    let total_h = mol.total_h(i);

    let needs_bracket = atom.formal_charge != 0
        || atom.element == Element::H
        || total_h != bare_hydrogen_count(mol, i);

    if !needs_bracket {
        return symbol;
    }
    let mut out = String::from("[");
    out.push_str(&symbol);
    match total_h {
        0 => {}
        1 => out.push('H'),
        n => out.push_str(&format!("H{n}")),
    }
    match atom.formal_charge {
        0 => {}
        1 => out.push('+'),
        -1 => out.push('-'),
        n if n > 0 => out.push_str(&format!("+{n}")),
        n => out.push_str(&format!("-{}", -n)),
    }
    out.push(']');
    out
}

/// Hydrogen count the parser would infer for the bare (bracket-free) symbol.
/// For aromatic atoms this accounts for the pi bond kekulization will assign.
fn bare_hydrogen_count(mol: &Molecule, i: usize) -> u8 {
    let atom = mol.atom(i);
    if atom.aromatic {
        let degree = mol.degree(i) as u8;
        // extra order carried by non-aromatic multiple bonds (exocyclic doubles)
        let extra: u8 = mol
            .neighbors(i)
            .iter()
            .map(|&(_, bi)| {
                let b = mol.bond(bi);
                if b.aromatic {
                    0
                } else {
                    b.order.as_u8() - 1
                }
            })
            .sum();
        // A bare aromatic atom re-parses with explicit_h = 0.
        let pi = needs_pi_bond(atom.element, 0, degree as usize, 0, extra > 0) as u8;
        let bonds = degree + pi + extra;
        fitting_valence(atom.element, 0, bonds).map_or(0, |v| v.saturating_sub(bonds))
    } else {
        let bonds = mol.bond_order_sum(i);
        fitting_valence(atom.element, 0, bonds).map_or(0, |v| v.saturating_sub(bonds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::is_isomorphic;
    use crate::smiles::parse_smiles;

    fn roundtrip(s: &str) -> String {
        let mol = parse_smiles(s).unwrap();
        let out = write_smiles(&mol);
        let back = parse_smiles(&out)
            .unwrap_or_else(|e| panic!("canonical output {out:?} failed to parse: {e}"));
        assert!(is_isomorphic(&mol, &back), "{s} -> {out} round trip changed the molecule");
        out
    }

    #[test]
    fn methane_writes_c() {
        assert_eq!(roundtrip("C"), "C");
    }

    #[test]
    fn ethane_writes_cc() {
        assert_eq!(roundtrip("CC"), "CC");
    }

    #[test]
    fn benzene_both_forms_canonicalize_identically() {
        let a = roundtrip("c1ccccc1");
        let b = roundtrip("C1=CC=CC=C1");
        assert_eq!(a, b);
        assert_eq!(a, "c1ccccc1");
        assert_eq!(smiles_length(&parse_smiles("c1ccccc1").unwrap()), 8);
    }

    #[test]
    fn empty_molecule_writes_empty() {
        assert_eq!(write_smiles(&Molecule::empty()), "");
        assert_eq!(smiles_length(&Molecule::empty()), 0);
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        // same molecule, three different atom orders
        let forms = ["CCO", "OCC", "C(O)C"];
        let canon: Vec<String> = forms.iter().map(|s| roundtrip(s)).collect();
        assert_eq!(canon[0], canon[1]);
        assert_eq!(canon[0], canon[2]);
    }

    #[test]
    fn pyrrole_keeps_nh() {
        let out = roundtrip("c1cc[nH]c1");
        assert!(out.contains("[nH]"), "pyrrole lost its NH marker: {out}");
    }

    #[test]
    fn charged_atoms_roundtrip() {
        roundtrip("[NH4+]");
        roundtrip("C[N+](C)(C)C");
        roundtrip("[O-]C(=O)C");
    }

    #[test]
    fn biphenyl_single_bond_explicit() {
        let out = roundtrip("c1ccccc1-c1ccccc1");
        assert!(out.contains('-'), "aromatic-aromatic single bond needs '-': {out}");
    }

    #[test]
    fn assorted_roundtrips() {
        for s in [
            "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
            "c1ccc2ccccc2c1",
            "C1CCC2(CC1)CCCCC2",
            "N#Cc1ccccc1",
            "CC(=O)Nc1ccc(O)cc1",
            "O=C(O)c1ccccc1O",
            "C1CC1C2CC2",
            "FC(F)(F)c1ccccc1",
            "c1ccc(cc1)C=CC(=O)O",
            "S=C=S",
            "O=S(=O)(N)c1ccccc1",
            "Clc1ccc(Br)cc1I",
        ] {
            roundtrip(s);
        }
    }
}
