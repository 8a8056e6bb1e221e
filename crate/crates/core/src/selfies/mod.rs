//! SELFIES-style token codec. The derivation rules clamp every bond request
//! to the remaining valence capacity, so any token sequence, random or not,
//! decodes to a valence-valid molecule by construction.

mod decode;
mod encode;
mod mutate;

pub use decode::decode;
pub use encode::encode;
pub use mutate::{mutate, DEFAULT_TERMINAL_FRACTION};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::element::Element;
use crate::molgraph::BondOrder;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfiesError {
    #[error("element {0} has no token in the alphabet")]
    UnsupportedElement(Element),
    #[error("charge {charge:+} on {element} is outside the token alphabet")]
    UnsupportedCharge { element: Element, charge: i8 },
    #[error("molecule too large to index (offset {0})")]
    IndexOverflow(usize),
    #[error("cannot parse token text {0:?}")]
    BadTokenText(String),
}

/// One SELFIES token. Atom tokens optionally carry a bond-order prefix
/// (`=`/`#`), a pinned hydrogen count and a formal charge; branch and ring
/// tokens carry the width of the numeric index that follows them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Atom { order: BondOrder, element: Element, hcount: Option<u8>, charge: i8 },
    Branch { width: u8 },
    Ring { order: BondOrder, width: u8 },
}

impl Token {
    pub fn atom(element: Element) -> Token {
        Token::Atom { order: BondOrder::Single, element, hcount: None, charge: 0 }
    }

    pub fn bonded_atom(order: BondOrder, element: Element) -> Token {
        Token::Atom { order, element, hcount: None, charge: 0 }
    }

    /// Digit value used when this token is read as part of a branch length or
    /// ring reach index (base 16, like the overloaded index alphabet of the
    /// SELFIES grammar). Total over all tokens.
    pub fn digit(self) -> u8 {
        for (d, tok) in DIGIT_TOKENS.iter().enumerate() {
            if *tok == self {
                return d as u8;
            }
        }
        match self {
            Token::Atom { order, element, hcount, charge } => {
                let h = hcount.map(|h| h + 1).unwrap_or(0) as u32;
                let mix = element.index() as u32 * 7
                    + order.as_u8() as u32 * 3
                    + (charge as i32 + 2) as u32 * 5
                    + h * 11;
                (mix % 16) as u8
            }
            Token::Branch { width } => (3 + width) % 16,
            Token::Ring { order, width } => (1 + width * 2 + order.as_u8()) % 16,
        }
    }
}

/// Canonical tokens for index digits 0..15; the encoder emits these, the
/// decoder accepts any token via `Token::digit`.
pub const DIGIT_TOKENS: [Token; 16] = [
    Token::Atom { order: BondOrder::Single, element: Element::C, hcount: None, charge: 0 },
    Token::Ring { order: BondOrder::Single, width: 1 },
    Token::Ring { order: BondOrder::Single, width: 2 },
    Token::Branch { width: 1 },
    Token::Branch { width: 2 },
    Token::Branch { width: 3 },
    Token::Atom { order: BondOrder::Double, element: Element::C, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Triple, element: Element::C, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Single, element: Element::N, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Double, element: Element::N, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Single, element: Element::O, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Double, element: Element::O, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Single, element: Element::S, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Single, element: Element::P, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Single, element: Element::F, hcount: None, charge: 0 },
    Token::Atom { order: BondOrder::Single, element: Element::Cl, hcount: None, charge: 0 },
];

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Atom { order, element, hcount, charge } => {
                write!(f, "[")?;
                match order {
                    BondOrder::Single => {}
                    BondOrder::Double => write!(f, "=")?,
                    BondOrder::Triple => write!(f, "#")?,
                }
                write!(f, "{}", element.symbol())?;
                if let Some(h) = hcount {
                    write!(f, "H{h}")?;
                }
                match charge.signum() {
                    1 => write!(f, "+{charge}")?,
                    -1 => write!(f, "{charge}")?,
                    _ => {}
                }
                write!(f, "]")
            }
            Token::Branch { width } => write!(f, "[Branch{width}]"),
            Token::Ring { order, width } => {
                let prefix = match order {
                    BondOrder::Single => "",
                    BondOrder::Double => "=",
                    BondOrder::Triple => "#",
                };
                write!(f, "[{prefix}Ring{width}]")
            }
        }
    }
}

impl FromStr for Token {
    type Err = SelfiesError;

    fn from_str(s: &str) -> Result<Token, SelfiesError> {
        let bad = || SelfiesError::BadTokenText(s.to_string());
        let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (order, rest) = match inner.strip_prefix('=') {
            Some(r) => (BondOrder::Double, r),
            None => match inner.strip_prefix('#') {
                Some(r) => (BondOrder::Triple, r),
                None => (BondOrder::Single, inner),
            },
        };
        if let Some(w) = rest.strip_prefix("Branch") {
            if order != BondOrder::Single {
                return Err(bad());
            }
            let width: u8 = w.parse().map_err(|_| bad())?;
            if !(1..=3).contains(&width) {
                return Err(bad());
            }
            return Ok(Token::Branch { width });
        }
        if let Some(w) = rest.strip_prefix("Ring") {
            let width: u8 = w.parse().map_err(|_| bad())?;
            if !(1..=3).contains(&width) {
                return Err(bad());
            }
            return Ok(Token::Ring { order, width });
        }
        // atom: symbol [Hn] [±n]
        let chars: Vec<char> = rest.chars().collect();
        if chars.is_empty() {
            return Err(bad());
        }
        let mut pos = 0;
        let sym_len = if chars.len() >= 2 && matches!(&rest[0..2], "Cl" | "Br") { 2 } else { 1 };
        let element = Element::from_symbol(&rest[0..sym_len]).ok_or_else(bad)?;
        pos += sym_len;
        let mut hcount = None;
        if pos < chars.len() && chars[pos] == 'H' {
            pos += 1;
            let mut digits = String::new();
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                digits.push(chars[pos]);
                pos += 1;
            }
            if digits.is_empty() {
                return Err(bad());
            }
            hcount = Some(digits.parse().map_err(|_| bad())?);
        }
        let mut charge = 0i8;
        if pos < chars.len() {
            let sign = match chars[pos] {
                '+' => 1i8,
                '-' => -1i8,
                _ => return Err(bad()),
            };
            pos += 1;
            let mut digits = String::new();
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                digits.push(chars[pos]);
                pos += 1;
            }
            if digits.is_empty() {
                return Err(bad());
            }
            charge = sign * digits.parse::<i8>().map_err(|_| bad())?;
        }
        if pos != chars.len() {
            return Err(bad());
        }
        Ok(Token::Atom { order, element, hcount, charge })
    }
}

/// Ordered token list. Any value of this type is decodable; invalid sequences
/// are unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenSequence(pub Vec<Token>);

impl TokenSequence {
    pub fn new(tokens: Vec<Token>) -> TokenSequence {
        TokenSequence(tokens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    /// Bracketed text form, e.g. "[C][=C][Ring1][C]".
    pub fn render(&self) -> String {
        self.0.iter().map(|t| t.to_string()).collect()
    }

    /// Parse the bracketed text form.
    pub fn parse(text: &str) -> Result<TokenSequence, SelfiesError> {
        let mut tokens = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let end = rest
                .find(']')
                .ok_or_else(|| SelfiesError::BadTokenText(rest.to_string()))?;
            tokens.push(rest[..=end].parse()?);
            rest = &rest[end + 1..];
        }
        Ok(TokenSequence(tokens))
    }
}

/// Built-in insertion alphabet for runs without a dataset.
pub fn default_alphabet() -> Vec<Token> {
    let mut tokens = vec![
        Token::atom(Element::C),
        Token::bonded_atom(BondOrder::Double, Element::C),
        Token::bonded_atom(BondOrder::Triple, Element::C),
        Token::atom(Element::N),
        Token::bonded_atom(BondOrder::Double, Element::N),
        Token::atom(Element::O),
        Token::bonded_atom(BondOrder::Double, Element::O),
        Token::atom(Element::F),
        Token::atom(Element::S),
        Token::atom(Element::Cl),
        Token::atom(Element::Br),
        Token::Branch { width: 1 },
        Token::Ring { order: BondOrder::Single, width: 1 },
    ];
    tokens.sort();
    tokens
}

/// All distinct tokens observed across a set of sequences, sorted. Used to
/// derive the mutation alphabet from the loaded dataset.
pub fn alphabet_from<'a>(seqs: impl IntoIterator<Item = &'a TokenSequence>) -> Vec<Token> {
    let mut tokens: Vec<Token> = seqs.into_iter().flat_map(|s| s.0.iter().copied()).collect();
    tokens.sort();
    tokens.dedup();
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_tokens_are_distinct() {
        for (i, a) in DIGIT_TOKENS.iter().enumerate() {
            assert_eq!(a.digit(), i as u8);
            for b in &DIGIT_TOKENS[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn token_text_roundtrip() {
        for text in
            ["[C]", "[=C]", "[#N]", "[NH1]", "[N+1]", "[NH3+1]", "[O-1]", "[Branch2]", "[=Ring1]", "[Cl]", "[Br]"]
        {
            let tok: Token = text.parse().unwrap();
            assert_eq!(tok.to_string(), text, "render mismatch for {text}");
        }
        let seq = TokenSequence::parse("[C][=C][Ring1][C]").unwrap();
        assert_eq!(seq.len(), 4);
        assert_eq!(seq.render(), "[C][=C][Ring1][C]");
    }

    #[test]
    fn bad_token_text_rejected() {
        assert!("[Xx]".parse::<Token>().is_err());
        assert!("[C".parse::<Token>().is_err());
        assert!("[Branch9]".parse::<Token>().is_err());
        assert!("[N+]".parse::<Token>().is_err()); // charge digit is mandatory
        assert!("[]".parse::<Token>().is_err());
    }
}
