//! Supported chemical elements and the valence table.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The element subset the toolkit understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Element {
    B,
    C,
    N,
    O,
    P,
    S,
    F,
    Cl,
    Br,
    I,
    H,
}

impl Element {
    pub const ALL: [Element; 11] = [
        Element::B,
        Element::C,
        Element::N,
        Element::O,
        Element::P,
        Element::S,
        Element::F,
        Element::Cl,
        Element::Br,
        Element::I,
        Element::H,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Element::B => "B",
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::P => "P",
            Element::S => "S",
            Element::F => "F",
            Element::Cl => "Cl",
            Element::Br => "Br",
            Element::I => "I",
            Element::H => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Element> {
        match s {
            "B" => Some(Element::B),
            "C" => Some(Element::C),
            "N" => Some(Element::N),
            "O" => Some(Element::O),
            "P" => Some(Element::P),
            "S" => Some(Element::S),
            "F" => Some(Element::F),
            "Cl" => Some(Element::Cl),
            "Br" => Some(Element::Br),
            "I" => Some(Element::I),
            "H" => Some(Element::H),
            _ => None,
        }
    }

    /// Lowercase aromatic symbols are only defined for B, C, N, O, P, S.
    pub fn supports_aromatic(self) -> bool {
        matches!(
            self,
            Element::B | Element::C | Element::N | Element::O | Element::P | Element::S
        )
    }

    /// Stable small integer used by hashing and canonical ordering.
    pub fn index(self) -> u8 {
        match self {
            Element::B => 0,
            Element::C => 1,
            Element::N => 2,
            Element::O => 3,
            Element::P => 4,
            Element::S => 5,
            Element::F => 6,
            Element::Cl => 7,
            Element::Br => 8,
            Element::I => 9,
            Element::H => 10,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Allowed valences for an (element, formal charge) pair, ascending.
///
/// B 3; C 4; N 3 (N+ 4, N- 2); O 2 (O+ 3, O- 1); P 3 or 5; S 2, 4 or 6;
/// halogens 1. A handful of charged variants beyond that list are accepted
/// where they have an unambiguous octet reading; anything else yields an
/// empty slice and fails validation.
pub fn allowed_valences(element: Element, charge: i8) -> &'static [u8] {
    match (element, charge) {
        (Element::B, 0) => &[3],
        (Element::B, -1) => &[4],
        (Element::C, 0) => &[4],
        (Element::C, 1) | (Element::C, -1) => &[3],
        (Element::N, 0) => &[3],
        (Element::N, 1) => &[4],
        (Element::N, -1) => &[2],
        (Element::O, 0) => &[2],
        (Element::O, 1) => &[3],
        (Element::O, -1) => &[1],
        (Element::P, 0) => &[3, 5],
        (Element::P, 1) => &[4],
        (Element::S, 0) => &[2, 4, 6],
        (Element::S, 1) => &[3, 5],
        (Element::S, -1) => &[1],
        (Element::F, 0) | (Element::Cl, 0) | (Element::Br, 0) | (Element::I, 0) => &[1],
        (Element::F, -1) | (Element::Cl, -1) | (Element::Br, -1) | (Element::I, -1) => &[0],
        (Element::H, 0) => &[1],
        _ => &[],
    }
}

/// Largest allowed valence, or 0 when the combination is unsupported.
pub fn max_valence(element: Element, charge: i8) -> u8 {
    allowed_valences(element, charge).last().copied().unwrap_or(0)
}

/// Smallest allowed valence that can host `bonds` already-placed bond orders,
/// falling back to the largest entry when everything is exceeded.
pub fn fitting_valence(element: Element, charge: i8, bonds: u8) -> Option<u8> {
    let table = allowed_valences(element, charge);
    table.iter().copied().find(|&v| v >= bonds).or_else(|| table.last().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valence_table_matches_convention() {
        assert_eq!(allowed_valences(Element::C, 0), &[4]);
        assert_eq!(allowed_valences(Element::N, 1), &[4]);
        assert_eq!(allowed_valences(Element::N, -1), &[2]);
        assert_eq!(allowed_valences(Element::O, -1), &[1]);
        assert_eq!(allowed_valences(Element::S, 0), &[2, 4, 6]);
        assert_eq!(allowed_valences(Element::Cl, 0), &[1]);
        assert!(allowed_valences(Element::C, 2).is_empty());
    }

    #[test]
    fn fitting_valence_picks_smallest_that_fits() {
        assert_eq!(fitting_valence(Element::S, 0, 1), Some(2));
        assert_eq!(fitting_valence(Element::S, 0, 3), Some(4));
        assert_eq!(fitting_valence(Element::S, 0, 5), Some(6));
        assert_eq!(fitting_valence(Element::S, 0, 7), Some(6));
        assert_eq!(fitting_valence(Element::P, 0, 4), Some(5));
    }
}
