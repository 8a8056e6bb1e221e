//! SMILES reader. Every error carries the byte offset it was raised at.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::element::Element;
use crate::molgraph::{kekulize, perceive_aromaticity, Atom, Bond, BondOrder, MolError, Molecule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmilesError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unsupported feature at offset {offset}: {feature}")]
    Unsupported { offset: usize, feature: String },
    #[error("unclosed ring bond {digit} opened at offset {offset}")]
    UnclosedRing { offset: usize, digit: usize },
    #[error("valence violation at offset {offset}: {source}")]
    Valence { offset: usize, source: MolError },
    #[error("molecule error at offset {offset}: {source}")]
    Mol { offset: usize, source: MolError },
}

impl SmilesError {
    pub fn offset(&self) -> usize {
        match self {
            SmilesError::Syntax { offset, .. }
            | SmilesError::Unsupported { offset, .. }
            | SmilesError::UnclosedRing { offset, .. }
            | SmilesError::Valence { offset, .. }
            | SmilesError::Mol { offset, .. } => *offset,
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> SmilesError {
    SmilesError::Syntax { offset, message: message.into() }
}

/// Bond symbol as written, before kekulization decides what default bonds
/// between aromatic atoms mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BondSym {
    Default,
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondSym {
    fn from_char(c: char) -> Option<BondSym> {
        match c {
            '-' => Some(BondSym::Single),
            '=' => Some(BondSym::Double),
            '#' => Some(BondSym::Triple),
            ':' => Some(BondSym::Aromatic),
            _ => None,
        }
    }
}

struct PendingRing {
    atom: usize,
    sym: BondSym,
    offset: usize,
}

/// Parse a SMILES string into a validated molecule.
pub fn parse_smiles(input: &str) -> Result<Molecule, SmilesError> {
    let chars: Vec<char> = input.chars().collect();
    if chars.is_empty() {
        return Err(syntax(0, "empty input"));
    }

    let mut atoms: Vec<Atom> = Vec::new();
    let mut atom_offsets: Vec<usize> = Vec::new();
    let mut input_aromatic: Vec<bool> = Vec::new();
    let mut bonds: Vec<(usize, usize, BondSym, usize)> = Vec::new();

    let mut prev_stack: Vec<usize> = Vec::new();
    let mut prev: Option<usize> = None;
    let mut pending_bond: Option<(BondSym, usize)> = None;
    let mut rings: BTreeMap<usize, PendingRing> = BTreeMap::new();

    let mut pos = 0usize;
    while pos < chars.len() {
        let c = chars[pos];
        match c {
            '(' => {
                let Some(p) = prev else {
                    return Err(syntax(pos, "branch before any atom"));
                };
                if pending_bond.is_some() {
                    return Err(syntax(pos, "bond symbol before branch open"));
                }
                prev_stack.push(p);
                pos += 1;
            }
            ')' => {
                if pending_bond.is_some() {
                    return Err(syntax(pos, "dangling bond symbol before branch close"));
                }
                match prev_stack.pop() {
                    Some(p) => prev = Some(p),
                    None => return Err(syntax(pos, "unmatched closing parenthesis")),
                }
                pos += 1;
            }
            '-' | '=' | '#' | ':' => {
                if pending_bond.is_some() {
                    return Err(syntax(pos, "two bond symbols in a row"));
                }
                if prev.is_none() {
                    return Err(syntax(pos, "bond symbol before any atom"));
                }
                pending_bond = Some((BondSym::from_char(c).unwrap(), pos));
                pos += 1;
            }
            '/' | '\\' => {
                return Err(SmilesError::Unsupported {
                    offset: pos,
                    feature: "stereo bond marker".into(),
                })
            }
            '*' => {
                return Err(SmilesError::Unsupported { offset: pos, feature: "wildcard atom".into() })
            }
            '.' => {
                return Err(SmilesError::Unsupported {
                    offset: pos,
                    feature: "disconnected components".into(),
                })
            }
            '%' => {
                let d1 = chars.get(pos + 1).and_then(|c| c.to_digit(10));
                let d2 = chars.get(pos + 2).and_then(|c| c.to_digit(10));
                match (d1, d2) {
                    (Some(a), Some(b)) => {
                        handle_ring_closure(
                            (a * 10 + b) as usize,
                            pos,
                            &mut rings,
                            &mut bonds,
                            prev,
                            &mut pending_bond,
                        )?;
                        pos += 3;
                    }
                    _ => return Err(syntax(pos, "'%' needs two digits")),
                }
            }
            '0'..='9' => {
                handle_ring_closure(
                    c.to_digit(10).unwrap() as usize,
                    pos,
                    &mut rings,
                    &mut bonds,
                    prev,
                    &mut pending_bond,
                )?;
                pos += 1;
            }
            '[' => {
                let (atom, aromatic, next) = parse_bracket_atom(&chars, pos)?;
                push_atom(
                    atom,
                    aromatic,
                    pos,
                    &mut atoms,
                    &mut atom_offsets,
                    &mut input_aromatic,
                    &mut bonds,
                    &mut prev,
                    &mut pending_bond,
                )?;
                pos = next;
            }
            _ => {
                let (atom, aromatic, next) = parse_organic_atom(&chars, pos)?;
                push_atom(
                    atom,
                    aromatic,
                    pos,
                    &mut atoms,
                    &mut atom_offsets,
                    &mut input_aromatic,
                    &mut bonds,
                    &mut prev,
                    &mut pending_bond,
                )?;
                pos = next;
            }
        }
    }

    if let Some((_, off)) = pending_bond {
        return Err(syntax(off, "dangling bond symbol at end of input"));
    }
    if !prev_stack.is_empty() {
        return Err(syntax(chars.len(), "unclosed branch"));
    }
    if let Some((digit, ring)) = rings.iter().next() {
        return Err(SmilesError::UnclosedRing { offset: ring.offset, digit: *digit });
    }

    finish_molecule(atoms, atom_offsets, input_aromatic, bonds)
}

/// Resolve bond symbols into kekulized orders, run kekulization for aromatic
/// input, then validate the molecule with aromaticity re-perceived.
fn finish_molecule(
    atoms: Vec<Atom>,
    atom_offsets: Vec<usize>,
    input_aromatic: Vec<bool>,
    raw_bonds: Vec<(usize, usize, BondSym, usize)>,
) -> Result<Molecule, SmilesError> {
    let mut bonds = Vec::with_capacity(raw_bonds.len());
    let mut aromatic_bond_flags = Vec::with_capacity(raw_bonds.len());
    for &(a, b, sym, off) in &raw_bonds {
        let both_aromatic = input_aromatic[a] && input_aromatic[b];
        let (order, aromatic) = match sym {
            BondSym::Default => {
                if both_aromatic {
                    (BondOrder::Single, true)
                } else {
                    (BondOrder::Single, false)
                }
            }
            BondSym::Single => (BondOrder::Single, false),
            BondSym::Double => (BondOrder::Double, false),
            BondSym::Triple => (BondOrder::Triple, false),
            BondSym::Aromatic => {
                if !both_aromatic {
                    return Err(syntax(off, "':' bond between non-aromatic atoms"));
                }
                (BondOrder::Single, true)
            }
        };
        bonds.push(Bond::new(a, b, order));
        aromatic_bond_flags.push(aromatic);
    }

    let first_offset = |e: &MolError| -> usize {
        match e {
            MolError::Valence { index, .. }
            | MolError::AromaticOutsideRing(index)
            | MolError::Kekulization(index)
            | MolError::UnsupportedCharge { index, .. } => {
                atom_offsets.get(*index).copied().unwrap_or(0)
            }
            _ => 0,
        }
    };

    let mut mol = Molecule::from_parts_unchecked(atoms, bonds)
        .map_err(|e| SmilesError::Mol { offset: first_offset(&e), source: e })?;

    // Aromatic atoms must sit in rings before kekulization makes sense.
    let rings = crate::molgraph::perceive_rings(&mol);
    for (i, &arom) in input_aromatic.iter().enumerate() {
        if arom && !rings.is_ring_atom(i) {
            return Err(SmilesError::Mol {
                offset: atom_offsets[i],
                source: MolError::AromaticOutsideRing(i),
            });
        }
    }

    if input_aromatic.iter().any(|&f| f) {
        kekulize(&mut mol, &input_aromatic, &aromatic_bond_flags)
            .map_err(|e| SmilesError::Mol { offset: first_offset(&e), source: e })?;
    }

    mol.clear_aromatic_flags();
    perceive_aromaticity(&mut mol);
    mol.validate().map_err(|e| match e {
        MolError::Valence { .. } => {
            SmilesError::Valence { offset: first_offset(&e), source: e }
        }
        other => SmilesError::Mol { offset: first_offset(&other), source: other },
    })?;
    Ok(mol)
}

#[allow(clippy::too_many_arguments)]
fn push_atom(
    atom: Atom,
    aromatic: bool,
    offset: usize,
    atoms: &mut Vec<Atom>,
    atom_offsets: &mut Vec<usize>,
    input_aromatic: &mut Vec<bool>,
    bonds: &mut Vec<(usize, usize, BondSym, usize)>,
    prev: &mut Option<usize>,
    pending_bond: &mut Option<(BondSym, usize)>,
) -> Result<usize, SmilesError> {
    let idx = atoms.len();
    atoms.push(atom);
    atom_offsets.push(offset);
    input_aromatic.push(aromatic);
    if let Some(p) = *prev {
        let (sym, off) = pending_bond.take().unwrap_or((BondSym::Default, offset));
        bonds.push((p, idx, sym, off));
    } else if pending_bond.is_some() {
        return Err(syntax(offset, "bond symbol before first atom"));
    }
    *prev = Some(idx);
    Ok(idx)
}

fn handle_ring_closure(
    digit: usize,
    offset: usize,
    rings: &mut BTreeMap<usize, PendingRing>,
    bonds: &mut Vec<(usize, usize, BondSym, usize)>,
    prev: Option<usize>,
    pending_bond: &mut Option<(BondSym, usize)>,
) -> Result<(), SmilesError> {
    let Some(cur) = prev else {
        return Err(syntax(offset, "ring closure before any atom"));
    };
    let sym = pending_bond.take().map(|(s, _)| s).unwrap_or(BondSym::Default);
    match rings.remove(&digit) {
        None => {
            rings.insert(digit, PendingRing { atom: cur, sym, offset });
        }
        Some(open) => {
            if open.atom == cur {
                return Err(syntax(offset, "ring bond closed on the same atom"));
            }
            let resolved = match (open.sym, sym) {
                (BondSym::Default, s) | (s, BondSym::Default) => s,
                (a, b) if a == b => a,
                _ => return Err(syntax(offset, "conflicting ring bond symbols")),
            };
            bonds.push((open.atom, cur, resolved, offset));
        }
    }
    Ok(())
}

/// Bare organic-subset atom: B C N O P S F Cl Br I, aromatic b c n o p s.
fn parse_organic_atom(
    chars: &[char],
    pos: usize,
) -> Result<(Atom, bool, usize), SmilesError> {
    let c = chars[pos];
    let two: Option<String> = chars.get(pos + 1).map(|&d| format!("{c}{d}"));
    if let Some(two) = two {
        if two == "Cl" || two == "Br" {
            let element = Element::from_symbol(&two).unwrap();
            return Ok((Atom::new(element), false, pos + 2));
        }
    }
    match c {
        'B' | 'C' | 'N' | 'O' | 'P' | 'S' | 'F' | 'I' => {
            let element = Element::from_symbol(&c.to_string()).unwrap();
            Ok((Atom::new(element), false, pos + 1))
        }
        'b' | 'c' | 'n' | 'o' | 'p' | 's' => {
            let element = Element::from_symbol(&c.to_uppercase().to_string()).unwrap();
            let mut atom = Atom::new(element);
            atom.aromatic = true;
            Ok((atom, true, pos + 1))
        }
        _ => Err(syntax(pos, format!("unexpected character '{c}'"))),
    }
}

/// Bracket atom: `[` symbol (`H` count?)? (charge)? `]`. Isotopes, chirality
/// and atom-class suffixes are explicit unsupported features.
fn parse_bracket_atom(
    chars: &[char],
    open: usize,
) -> Result<(Atom, bool, usize), SmilesError> {
    let mut pos = open + 1;
    if pos < chars.len() && chars[pos].is_ascii_digit() {
        return Err(SmilesError::Unsupported { offset: pos, feature: "isotope label".into() });
    }

    let (element, aromatic, next) = parse_bracket_symbol(chars, pos)?;
    pos = next;

    let mut explicit_h: u8 = 0;
    if pos < chars.len() && chars[pos] == 'H' {
        pos += 1;
        let mut count = 1u8;
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            count = chars[pos].to_digit(10).unwrap() as u8;
            pos += 1;
        }
        explicit_h = count;
    }

    let mut charge: i8 = 0;
    if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
        let sign: i8 = if chars[pos] == '+' { 1 } else { -1 };
        pos += 1;
        let mut magnitude: i8 = 1;
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            magnitude = chars[pos].to_digit(10).unwrap() as i8;
            pos += 1;
        } else {
            while pos < chars.len() && chars[pos] == chars[pos - 1] {
                magnitude += 1;
                pos += 1;
            }
        }
        charge = sign * magnitude;
    }

    match chars.get(pos) {
        Some(']') => pos += 1,
        Some('@') => {
            return Err(SmilesError::Unsupported {
                offset: pos,
                feature: "chirality marker".into(),
            })
        }
        Some(':') => {
            return Err(SmilesError::Unsupported { offset: pos, feature: "atom class".into() })
        }
        Some(c) => return Err(syntax(pos, format!("unexpected '{c}' in bracket atom"))),
        None => return Err(syntax(pos, "unterminated bracket atom")),
    }

    let atom = Atom {
        element,
        formal_charge: charge,
        explicit_h,
        h_specified: true,
        aromatic,
    };
    Ok((atom, aromatic, pos))
}

fn parse_bracket_symbol(
    chars: &[char],
    pos: usize,
) -> Result<(Element, bool, usize), SmilesError> {
    let Some(&c) = chars.get(pos) else {
        return Err(syntax(pos, "unterminated bracket atom"));
    };
    if c == '@' {
        return Err(SmilesError::Unsupported { offset: pos, feature: "chirality marker".into() });
    }
    if c == '*' {
        return Err(SmilesError::Unsupported { offset: pos, feature: "wildcard atom".into() });
    }
    // two-letter symbols first
    if let Some(&d) = chars.get(pos + 1) {
        let two: String = [c, d].iter().collect();
        if two == "Cl" || two == "Br" {
            return Ok((Element::from_symbol(&two).unwrap(), false, pos + 2));
        }
    }
    if c.is_ascii_uppercase() {
        match Element::from_symbol(&c.to_string()) {
            Some(e) => Ok((e, false, pos + 1)),
            None => Err(syntax(pos, format!("unknown element '{c}'"))),
        }
    } else if matches!(c, 'b' | 'c' | 'n' | 'o' | 'p' | 's') {
        let e = Element::from_symbol(&c.to_uppercase().to_string()).unwrap();
        Ok((e, true, pos + 1))
    } else {
        Err(syntax(pos, format!("unknown element '{c}'")))
    }
}
