//! Wildman-Crippen-style additive LogP: each heavy atom maps to one
//! contribution type keyed on element, aromaticity, attached heteroatoms and
//! hydrogen count, plus a per-hydrogen term. The table is self-contained and
//! frozen; orderings matter here, not parity with any external toolkit.

use crate::element::Element;
use crate::molgraph::{perceive_rings, BondOrder, Molecule};

// carbon
const C_SP3_PLAIN_H2: f64 = 0.1441; // CH4, CH3, CH2 with only C/H neighbors
const C_SP3_PLAIN_H01: f64 = 0.0000; // CH / quaternary with only C/H neighbors
const C_SP3_HET_H1: f64 = -0.2035; // sp3 carbon bonded to a heteroatom, with H
const C_SP3_HET_H0: f64 = -0.2051; // same, fully substituted
const C_DOUBLE_TO_HET: f64 = -0.2783; // carbonyl / imine carbon
const C_DOUBLE_TO_C: f64 = 0.1551; // olefinic carbon
const C_TRIPLE: f64 = 0.0017; // alkyne / nitrile carbon
const C_AROMATIC_H: f64 = 0.1581; // plain aromatic CH
const C_AROMATIC_SUB: f64 = 0.2955; // aromatic C with aliphatic C substituent
const C_AROMATIC_HET: f64 = 0.1360; // aromatic C bonded to a heteroatom
const C_AROMATIC_FUSED: f64 = 0.2713; // aromatic junction carbon
const C_DEFAULT: f64 = 0.0800;

// nitrogen
const N_AMINE_H2: f64 = -1.0190;
const N_AMINE_H1: f64 = -0.7096;
const N_AMINE_H0: f64 = -1.0270;
const N_AMIDE: f64 = -0.4458;
const N_NITRILE: f64 = -0.5660;
const N_IMINE: f64 = -0.2500;
const N_AROMATIC: f64 = -0.3239;
const N_AROMATIC_H: f64 = -0.5960;
const N_CHARGED: f64 = -1.9500;
const N_DEFAULT: f64 = -0.6000;

// oxygen
const O_HYDROXYL: f64 = -0.2893;
const O_ETHER: f64 = -0.0684;
const O_CARBONYL: f64 = -0.3339;
const O_AROMATIC: f64 = 0.1552;
const O_CHARGED: f64 = -1.1260;
const O_DEFAULT: f64 = -0.1700;

// the rest
const S_PLAIN: f64 = 0.6482;
const S_AROMATIC: f64 = 0.6237;
const S_CHARGED: f64 = -0.0024;
const P_PLAIN: f64 = 0.8612;
const F_PLAIN: f64 = 0.4202;
const CL_PLAIN: f64 = 0.6895;
const BR_PLAIN: f64 = 0.8456;
const I_PLAIN: f64 = 0.8857;
const B_PLAIN: f64 = 0.1800;

// hydrogen riders
const H_ON_CARBON: f64 = 0.1230;
const H_ON_HETEROATOM: f64 = -0.2677;

/// Octanol-water partition estimate: sum of per-atom contributions.
/// Deterministic; untypeable atoms fall back to the element default and are
/// logged.
pub fn crippen_logp(mol: &Molecule) -> f64 {
    if mol.is_empty() {
        return 0.0;
    }
    let rings = perceive_rings(mol);
    (0..mol.atom_count())
        .map(|i| {
            let h = mol.total_h(i) as f64;
            let rider = match mol.atom(i).element {
                Element::C | Element::H => H_ON_CARBON,
                _ => H_ON_HETEROATOM,
            };
            heavy_contribution(mol, i, &rings) + h * rider
        })
        .sum()
}

fn heavy_contribution(mol: &Molecule, i: usize, rings: &crate::molgraph::RingInfo) -> f64 {
    let atom = mol.atom(i);
    let charge = atom.formal_charge;
    let has_het_neighbor = mol.neighbors(i).iter().any(|&(nb, _)| {
        !matches!(mol.atom(nb).element, Element::C | Element::H)
    });
    let max_bond = mol
        .neighbors(i)
        .iter()
        .map(|&(_, bi)| if mol.bond(bi).aromatic { BondOrder::Single } else { mol.bond(bi).order })
        .max()
        .unwrap_or(BondOrder::Single);
    let double_to_het = mol.neighbors(i).iter().any(|&(nb, bi)| {
        let b = mol.bond(bi);
        !b.aromatic
            && b.order == BondOrder::Double
            && !matches!(mol.atom(nb).element, Element::C | Element::H)
    });

    match atom.element {
        Element::C => {
            if charge != 0 {
                log::warn!("untypeable charged carbon at atom {i}; using element default");
                return C_DEFAULT;
            }
            if atom.aromatic {
                if rings.membership_count(i) >= 2 {
                    C_AROMATIC_FUSED
                } else if has_het_neighbor {
                    C_AROMATIC_HET
                } else if mol.neighbors(i).iter().any(|&(nb, _)| !mol.atom(nb).aromatic) {
                    C_AROMATIC_SUB
                } else {
                    C_AROMATIC_H
                }
            } else if max_bond == BondOrder::Triple {
                C_TRIPLE
            } else if max_bond == BondOrder::Double {
                if double_to_het {
                    C_DOUBLE_TO_HET
                } else {
                    C_DOUBLE_TO_C
                }
            } else if has_het_neighbor {
                if mol.total_h(i) >= 1 {
                    C_SP3_HET_H1
                } else {
                    C_SP3_HET_H0
                }
            } else if mol.total_h(i) >= 2 {
                C_SP3_PLAIN_H2
            } else {
                C_SP3_PLAIN_H01
            }
        }
        Element::N => {
            if charge != 0 {
                N_CHARGED
            } else if atom.aromatic {
                if mol.total_h(i) > 0 {
                    N_AROMATIC_H
                } else {
                    N_AROMATIC
                }
            } else if max_bond == BondOrder::Triple {
                N_NITRILE
            } else if max_bond == BondOrder::Double {
                N_IMINE
            } else if neighbors_carbonyl_carbon(mol, i) {
                N_AMIDE
            } else {
                match mol.total_h(i) {
                    0 => N_AMINE_H0,
                    1 => N_AMINE_H1,
                    _ => N_AMINE_H2,
                }
            }
        }
        Element::O => {
            if charge != 0 {
                O_CHARGED
            } else if atom.aromatic {
                O_AROMATIC
            } else if max_bond == BondOrder::Double {
                O_CARBONYL
            } else if mol.total_h(i) > 0 {
                O_HYDROXYL
            } else if mol.degree(i) == 2 {
                O_ETHER
            } else {
                log::warn!("untypeable oxygen at atom {i}; using element default");
                O_DEFAULT
            }
        }
        Element::S => {
            if charge != 0 {
                S_CHARGED
            } else if atom.aromatic {
                S_AROMATIC
            } else {
                S_PLAIN
            }
        }
        Element::P => P_PLAIN,
        Element::F => F_PLAIN,
        Element::Cl => CL_PLAIN,
        Element::Br => BR_PLAIN,
        Element::I => I_PLAIN,
        Element::B => B_PLAIN,
        Element::H => 0.0, // explicit hydrogen nodes ride on their own rider term
    }
}

fn neighbors_carbonyl_carbon(mol: &Molecule, i: usize) -> bool {
    mol.neighbors(i).iter().any(|&(nb, _)| {
        mol.atom(nb).element == Element::C
            && mol.neighbors(nb).iter().any(|&(nb2, bi2)| {
                let b = mol.bond(bi2);
                !b.aromatic
                    && b.order == BondOrder::Double
                    && matches!(mol.atom(nb2).element, Element::O | Element::S)
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    fn logp(s: &str) -> f64 {
        crippen_logp(&parse_smiles(s).unwrap())
    }

    #[test]
    fn empty_molecule_is_zero() {
        assert_eq!(crippen_logp(&Molecule::empty()), 0.0);
    }

    /// Methane is one table lookup: the plain sp3 CH2+ type with four
    /// hydrogen riders. Computed by hand from the shipped constants.
    #[test]
    fn methane_is_single_lookup() {
        let expected = C_SP3_PLAIN_H2 + 4.0 * H_ON_CARBON;
        assert!((logp("C") - expected).abs() < 1e-12);
    }

    /// Ethane: two sp3 CH3 carbons of the same type, typed by hand.
    #[test]
    fn ethane_is_twice_ch3() {
        let expected = 2.0 * (C_SP3_PLAIN_H2 + 3.0 * H_ON_CARBON);
        assert!((logp("CC") - expected).abs() < 1e-12);
    }

    #[test]
    fn polar_groups_lower_logp() {
        assert!(logp("CCO") < logp("CCC"));
        assert!(logp("CC(=O)N") < logp("CC=C"));
        assert!(logp("c1ccccc1O") < logp("c1ccccc1C"));
    }

    #[test]
    fn halogens_and_chains_raise_logp() {
        assert!(logp("CCCCCC") > logp("CC"));
        assert!(logp("Clc1ccccc1") > logp("c1ccccc1"));
    }

    #[test]
    fn isomorphism_invariant() {
        assert!((logp("OC(=O)c1ccccc1") - logp("c1ccccc1C(O)=O")).abs() < 1e-12);
    }
}
