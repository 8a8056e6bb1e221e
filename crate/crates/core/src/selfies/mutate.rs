//! One-point mutation over token sequences: replace / insert / delete with
//! equal probability, restricted to the terminal window of the sequence so
//! the molecular core stays put.

use rand::Rng;

use super::{Token, TokenSequence};

/// Fraction of the sequence tail eligible for mutation.
pub const DEFAULT_TERMINAL_FRACTION: f64 = 0.10;

/// Apply exactly one of {replace, insert, delete} (equal probability) at a
/// position drawn uniformly from the terminal window `[ceil((1-f)*L), L)`,
/// with a minimum window of one token. Deleting from a length-1 sequence
/// degrades to replace so the result never goes empty by deletion alone.
///
/// Draw order: operation, then site, then replacement token when one is
/// needed. Deterministic for a given rng state.
pub fn mutate<R: Rng>(
    seq: &TokenSequence,
    rng: &mut R,
    alphabet: &[Token],
    terminal_fraction: f64,
) -> TokenSequence {
    assert!(!seq.is_empty(), "mutate requires a non-empty sequence");
    assert!(!alphabet.is_empty(), "mutate requires a non-empty alphabet");

    let len = seq.len();
    let start = window_start(len, terminal_fraction);

    let mut op = rng.gen_range(0..3u8);
    let site = rng.gen_range(start..len);
    if op == 2 && len == 1 {
        op = 0;
    }

    let mut tokens = seq.tokens().to_vec();
    match op {
        0 => {
            tokens[site] = alphabet[rng.gen_range(0..alphabet.len())];
        }
        1 => {
            let token = alphabet[rng.gen_range(0..alphabet.len())];
            tokens.insert(site, token);
        }
        _ => {
            tokens.remove(site);
        }
    }
    TokenSequence::new(tokens)
}

/// First index of the mutable terminal window.
pub fn window_start(len: usize, terminal_fraction: f64) -> usize {
    let fraction = terminal_fraction.clamp(0.0, 1.0);
    let start = ((1.0 - fraction) * len as f64).ceil() as usize;
    start.min(len - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::element::Element;
    use crate::molgraph::check_valence;
    use crate::selfies::{decode, default_alphabet};

    #[test]
    fn window_is_terminal_ten_percent() {
        assert_eq!(window_start(10, 0.10), 9);
        assert_eq!(window_start(20, 0.10), 18);
        assert_eq!(window_start(1, 0.10), 0);
        assert_eq!(window_start(5, 0.10), 4);
        assert_eq!(window_start(100, 0.10), 90);
    }

    #[test]
    fn length_changes_by_at_most_one() {
        let seq = TokenSequence::new(vec![Token::atom(Element::C); 12]);
        let alphabet = default_alphabet();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let out = mutate(&seq, &mut rng, &alphabet, 0.10);
            let diff = out.len() as i64 - seq.len() as i64;
            assert!((-1..=1).contains(&diff));
        }
    }

    #[test]
    fn edits_stay_in_window_and_decode_valid() {
        let base = TokenSequence::new(vec![Token::atom(Element::C); 10]);
        let alphabet = default_alphabet();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let out = mutate(&base, &mut rng, &alphabet, 0.10);
            // window of a length-10 sequence is exactly index 9
            let tokens = out.tokens();
            for (i, t) in tokens.iter().enumerate().take(9) {
                assert_eq!(*t, base.tokens()[i], "edit leaked to index {i}");
            }
            let mol = decode(&out);
            assert!(check_valence(&mol));
        }
    }

    #[test]
    fn delete_on_single_token_becomes_replace() {
        let seq = TokenSequence::new(vec![Token::atom(Element::C)]);
        let alphabet = vec![Token::atom(Element::N)];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let out = mutate(&seq, &mut rng, &alphabet, 0.10);
            // delete degrades to replace; only insert may grow the sequence
            assert!(!out.is_empty(), "mutation deleted the only token");
            assert!(out.len() <= 2);
        }
    }
}
