//! Token-sequence derivation. Total: every input yields a valence-valid
//! molecule. Bond requests are clamped to remaining capacity, branches
//! reserve one slot so the main chain can continue, dangling constructs at
//! the end of the stream are ignored.

use crate::element::{allowed_valences, max_valence};
use crate::molgraph::{Atom, Bond, BondOrder, Molecule};

use super::{Token, TokenSequence};

struct Builder {
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    /// Remaining bond capacity per atom (max valence minus pinned hydrogens
    /// minus placed bond orders, minus any active branch reservation).
    capacity: Vec<u8>,
}

impl Builder {
    fn place_atom(&mut self, atom: Atom, capacity: u8) -> usize {
        self.atoms.push(atom);
        self.capacity.push(capacity);
        self.atoms.len() - 1
    }

    fn bond_exists(&self, a: usize, b: usize) -> bool {
        self.bonds.iter().any(|bond| (bond.a, bond.b) == (a.min(b), a.max(b)))
    }

    fn add_bond(&mut self, a: usize, b: usize, order: u8) {
        let order = match order {
            1 => BondOrder::Single,
            2 => BondOrder::Double,
            _ => BondOrder::Triple,
        };
        self.bonds.push(Bond::new(a, b, order));
    }
}

/// Decode a token sequence into a molecule. Never fails; the empty sequence
/// (or one whose every token is skipped) yields the empty molecule.
pub fn decode(seq: &TokenSequence) -> Molecule {
    let mut builder = Builder { atoms: Vec::new(), bonds: Vec::new(), capacity: Vec::new() };
    derive(seq.tokens(), &mut builder, None);
    Molecule::new(builder.atoms, builder.bonds)
        .expect("derivation rules keep every decode valence-valid and connected")
}

/// Derive one token slice. `attach` is the branch parent; the first placed
/// atom bonds to it.
fn derive(tokens: &[Token], builder: &mut Builder, attach: Option<usize>) {
    let mut prev = attach;
    let mut i = 0usize;
    while i < tokens.len() {
        match tokens[i] {
            Token::Atom { order, element, hcount, charge } => {
                i += 1;
                if allowed_valences(element, charge).is_empty() {
                    continue; // combination outside the valence table
                }
                let maxv = max_valence(element, charge);
                let pinned = hcount.map(|h| h.min(maxv)).unwrap_or(0);
                let capacity = maxv - pinned;
                let atom = Atom {
                    element,
                    formal_charge: charge,
                    explicit_h: pinned,
                    h_specified: hcount.is_some(),
                    aromatic: false,
                };
                match prev {
                    None => {
                        let idx = builder.place_atom(atom, capacity);
                        prev = Some(idx);
                    }
                    Some(p) => {
                        let want = order.as_u8();
                        let got = want.min(builder.capacity[p]).min(capacity);
                        if got == 0 {
                            continue; // saturated chain head: token derives nothing
                        }
                        let idx = builder.place_atom(atom, capacity - got);
                        builder.capacity[p] -= got;
                        builder.add_bond(p, idx, got);
                        prev = Some(idx);
                    }
                }
            }
            Token::Branch { width } => {
                i += 1;
                let width = width.clamp(1, 3) as usize;
                if i + width > tokens.len() {
                    break; // dangling index digits
                }
                let q = read_index(&tokens[i..i + width]);
                i += width;
                let body_len = (q + 1).min(tokens.len() - i);
                let body = &tokens[i..i + body_len];
                i += body_len;
                let Some(p) = prev else { continue };
                if builder.capacity[p] < 2 {
                    continue; // a branch needs a slot and a continuation
                }
                // Reserve one unit on the parent so the chain survives the branch.
                builder.capacity[p] -= 1;
                derive(body, builder, Some(p));
                builder.capacity[p] += 1;
            }
            Token::Ring { order, width } => {
                i += 1;
                let width = width.clamp(1, 3) as usize;
                if i + width > tokens.len() {
                    break;
                }
                let q = read_index(&tokens[i..i + width]);
                i += width;
                let Some(p) = prev else { continue };
                let target = p.saturating_sub(q + 1);
                if target == p || builder.bond_exists(p, target) {
                    continue;
                }
                let got = order.as_u8().min(builder.capacity[p]).min(builder.capacity[target]);
                if got == 0 {
                    continue;
                }
                builder.capacity[p] -= got;
                builder.capacity[target] -= got;
                builder.add_bond(p, target, got);
            }
        }
    }
}

fn read_index(digits: &[Token]) -> usize {
    digits.iter().fold(0usize, |acc, t| acc * 16 + t.digit() as usize)
}
