//! Molecule-to-token encoding: a first DFS classifies tree and ring-closure
//! bonds, a second emits atom tokens for tree edges, ring tokens for back
//! edges and branch constructs for non-last children. `decode(encode(m))` is
//! isomorphic to `m`.

use crate::element::Element;
use crate::molgraph::{BondOrder, Molecule};

use super::{SelfiesError, Token, TokenSequence, DIGIT_TOKENS};

pub fn encode(mol: &Molecule) -> Result<TokenSequence, SelfiesError> {
    if mol.is_empty() {
        return Ok(TokenSequence::default());
    }
    for i in 0..mol.atom_count() {
        let atom = mol.atom(i);
        if atom.element == Element::H {
            return Err(SelfiesError::UnsupportedElement(Element::H));
        }
        if !(-1..=1).contains(&atom.formal_charge) {
            return Err(SelfiesError::UnsupportedCharge {
                element: atom.element,
                charge: atom.formal_charge,
            });
        }
    }

    // Pass 1: DFS from atom 0 in neighbor order; bonds to already-visited
    // atoms become ring closures.
    let n = mol.atom_count();
    let mut is_closure = vec![false; mol.bond_count()];
    {
        let mut visited = vec![false; n];
        let mut bond_seen = vec![false; mol.bond_count()];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(at) = stack.pop() {
            // scan in reverse so the stack pops neighbors in stored order,
            // matching the recursive emission below
            for &(nb, bi) in mol.neighbors(at).iter().rev() {
                if bond_seen[bi] {
                    continue;
                }
                if visited[nb] {
                    bond_seen[bi] = true;
                    is_closure[bi] = true;
                }
            }
            for &(nb, bi) in mol.neighbors(at).iter().rev() {
                if bond_seen[bi] || visited[nb] {
                    continue;
                }
                bond_seen[bi] = true;
                visited[nb] = true;
                stack.push(nb);
            }
        }
    }

    let mut enc = Encoder {
        mol,
        is_closure: &is_closure,
        closure_emitted: vec![false; mol.bond_count()],
        placement: vec![usize::MAX; n],
        placed: 0,
        out: Vec::new(),
        overflow: None,
    };
    enc.walk(0, None);
    match enc.overflow {
        Some(at) => Err(SelfiesError::IndexOverflow(at)),
        None => Ok(TokenSequence::new(enc.out)),
    }
}

struct Encoder<'a> {
    mol: &'a Molecule,
    is_closure: &'a [bool],
    closure_emitted: Vec<bool>,
    placement: Vec<usize>,
    placed: usize,
    out: Vec<Token>,
    overflow: Option<usize>,
}

impl<'a> Encoder<'a> {
    /// Emit the subtree rooted at `at`, entered over a bond of order `entry`
    /// (None for the root). Returns the number of tokens appended.
    fn walk(&mut self, at: usize, entry: Option<BondOrder>) -> usize {
        let start_len = self.out.len();
        self.placement[at] = self.placed;
        self.placed += 1;

        let atom = self.mol.atom(at);
        self.out.push(Token::Atom {
            order: entry.unwrap_or(BondOrder::Single),
            element: atom.element,
            hcount: if atom.h_specified { Some(atom.explicit_h) } else { None },
            charge: atom.formal_charge,
        });

        // Ring closures whose second endpoint this is; nearest targets first.
        let mut closures: Vec<(usize, usize)> = self
            .mol
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&(nb, bi)| {
                self.is_closure[bi]
                    && !self.closure_emitted[bi]
                    && self.placement[nb] != usize::MAX
            })
            .collect();
        closures.sort_by_key(|&(nb, _)| std::cmp::Reverse(self.placement[nb]));
        for (nb, bi) in closures {
            self.closure_emitted[bi] = true;
            let q = self.placement[at] - self.placement[nb] - 1;
            let Some((width, digits)) = index_digits(q) else {
                self.overflow = Some(at);
                return self.out.len() - start_len;
            };
            self.out.push(Token::Ring { order: self.mol.bond(bi).order, width });
            self.out.extend(digits);
        }

        let children: Vec<(usize, usize)> = self
            .mol
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&(nb, bi)| !self.is_closure[bi] && self.placement[nb] == usize::MAX)
            .collect();
        let last = children.len().saturating_sub(1);
        for (k, (nb, bi)) in children.into_iter().enumerate() {
            if k < last {
                // branch header patched once the body length is known
                let header_at = self.out.len();
                self.out.push(Token::Branch { width: 1 });
                let body_len = self.walk(nb, Some(self.mol.bond(bi).order));
                let Some((width, digits)) = index_digits(body_len.saturating_sub(1)) else {
                    self.overflow = Some(at);
                    return self.out.len() - start_len;
                };
                self.out[header_at] = Token::Branch { width };
                for (offset, d) in digits.into_iter().enumerate() {
                    self.out.insert(header_at + 1 + offset, d);
                }
            } else {
                self.walk(nb, Some(self.mol.bond(bi).order));
            }
        }
        self.out.len() - start_len
    }
}

/// Base-16 digit tokens for an index, with the smallest width in 1..=3.
fn index_digits(q: usize) -> Option<(u8, Vec<Token>)> {
    let width: u8 = if q < 16 {
        1
    } else if q < 16 * 16 {
        2
    } else if q < 16 * 16 * 16 {
        3
    } else {
        return None;
    };
    let mut digits = Vec::with_capacity(width as usize);
    for i in (0..width).rev() {
        digits.push(DIGIT_TOKENS[(q >> (4 * i)) & 15]);
    }
    Some((width, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::is_isomorphic;
    use crate::selfies::decode;
    use crate::smiles::parse_smiles;

    fn roundtrip(smiles: &str) {
        let mol = parse_smiles(smiles).unwrap();
        let tokens = encode(&mol).unwrap();
        let back = decode(&tokens);
        assert!(
            is_isomorphic(&mol, &back),
            "selfies roundtrip changed {smiles}: {} -> {}",
            tokens.render(),
            crate::smiles::write_smiles(&back),
        );
    }

    #[test]
    fn methane_single_token() {
        let mol = parse_smiles("C").unwrap();
        let tokens = encode(&mol).unwrap();
        assert_eq!(tokens.render(), "[C]");
    }

    #[test]
    fn ethanol_three_atom_tokens() {
        let mol = parse_smiles("CCO").unwrap();
        let tokens = encode(&mol).unwrap();
        assert_eq!(tokens.len(), 3);
        roundtrip("CCO");
    }

    #[test]
    fn rings_rooted_at_saturated_atoms_roundtrip() {
        // oxygen in a small ring has zero slack capacity; the tree/closure
        // split must not waste a slot on a needless branch reservation
        roundtrip("O1CC1");
        roundtrip("C1CO1");
        roundtrip("O1CCOCC1");
    }

    #[test]
    fn branches_and_rings_roundtrip() {
        for s in [
            "CC(C)C",
            "CC(C)(C)C",
            "C1CCCCC1",
            "c1ccccc1",
            "CC(=O)Nc1ccc(O)cc1",
            "c1ccc2ccccc2c1",
            "C1CC2CCC1CC2",
            "N#Cc1ccccc1Br",
            "O=S(=O)(N)c1ccc(Cl)cc1",
            "[NH3+]CC([O-])=O",
            "c1cc[nH]c1",
            "C1CCC2(CC1)CCCCC2",
            "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn hydrogen_atom_not_encodable() {
        let mol = parse_smiles("[H]").unwrap();
        assert!(matches!(encode(&mol), Err(SelfiesError::UnsupportedElement(Element::H))));
    }
}
