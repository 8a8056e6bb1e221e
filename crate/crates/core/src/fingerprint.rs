//! Circular (ECFP-style) fingerprints and Tanimoto similarity.
//!
//! Atom environments are grown by iterated neighborhood hashing of atom
//! invariants (element, degree, charge, hydrogen count, ring membership) and
//! folded modulo the bit width. The hash is a platform-independent FNV-1a, so
//! fingerprints are bit-for-bit reproducible everywhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::molgraph::{perceive_rings, Molecule};

pub const DEFAULT_RADIUS: u32 = 2;
pub const DEFAULT_NBITS: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FingerprintError {
    #[error("fingerprint widths differ: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("nbits must be a power of two >= 64, got {0}")]
    BadWidth(usize),
}

/// Fixed-width bit set from circular hashing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    bits: Vec<u64>,
    nbits: usize,
    radius: u32,
}

impl Fingerprint {
    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn popcount(&self) -> u32 {
        self.bits.iter().map(|w| w.count_ones()).sum()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }
}

/// Per-(atom, radius) environment hashes; the raw material for both the
/// fingerprint and the fragment-frequency table of the synthesis score.
pub fn environments(mol: &Molecule, radius: u32) -> Vec<u64> {
    let n = mol.atom_count();
    if n == 0 {
        return Vec::new();
    }
    let rings = perceive_rings(mol);
    let mut current: Vec<u64> = (0..n)
        .map(|i| {
            let atom = mol.atom(i);
            let mut h = Fnv::new();
            h.write_u8(atom.element.index());
            h.write_u8(mol.degree(i) as u8);
            h.write_i8(atom.formal_charge);
            h.write_u8(mol.total_h(i));
            h.write_u8(rings.is_ring_atom(i) as u8);
            h.finish()
        })
        .collect();

    let mut out = current.clone();
    for r in 1..=radius {
        let next: Vec<u64> = (0..n)
            .map(|i| {
                let mut nbrs: Vec<(u8, u64)> = mol
                    .neighbors(i)
                    .iter()
                    .map(|&(nb, bi)| (mol.bond(bi).class(), current[nb]))
                    .collect();
                nbrs.sort();
                let mut h = Fnv::new();
                h.write_u8(r as u8);
                h.write_u64(current[i]);
                for (class, env) in nbrs {
                    h.write_u8(class);
                    h.write_u64(env);
                }
                h.finish()
            })
            .collect();
        out.extend(next.iter().copied());
        current = next;
    }
    out
}

/// Circular fingerprint of `mol`. `nbits` must be a power of two >= 64.
pub fn circular_fingerprint(
    mol: &Molecule,
    radius: u32,
    nbits: usize,
) -> Result<Fingerprint, FingerprintError> {
    if nbits < 64 || !nbits.is_power_of_two() {
        return Err(FingerprintError::BadWidth(nbits));
    }
    let mut fp = Fingerprint { bits: vec![0; nbits / 64], nbits, radius };
    for env in environments(mol, radius) {
        fp.set((env % nbits as u64) as usize);
    }
    Ok(fp)
}

/// Tanimoto coefficient |A∩B| / |A∪B|; 1.0 when both sets are empty.
pub fn tanimoto(a: &Fingerprint, b: &Fingerprint) -> Result<f64, FingerprintError> {
    if a.nbits != b.nbits {
        return Err(FingerprintError::WidthMismatch(a.nbits, b.nbits));
    }
    let mut inter = 0u32;
    let mut union = 0u32;
    for (wa, wb) in a.bits.iter().zip(&b.bits) {
        inter += (wa & wb).count_ones();
        union += (wa | wb).count_ones();
    }
    if union == 0 {
        return Ok(1.0);
    }
    Ok(inter as f64 / union as f64)
}

/// Incremental FNV-1a, 64-bit. Stable across platforms by construction.
struct Fnv(u64);

impl Fnv {
    fn new() -> Fnv {
        Fnv(0xcbf29ce484222325)
    }

    fn write_u8(&mut self, v: u8) {
        self.0 ^= v as u64;
        self.0 = self.0.wrapping_mul(0x100000001b3);
    }

    fn write_i8(&mut self, v: i8) {
        self.write_u8(v as u8);
    }

    fn write_u64(&mut self, v: u64) {
        for byte in v.to_le_bytes() {
            self.write_u8(byte);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    fn fp(s: &str) -> Fingerprint {
        circular_fingerprint(&parse_smiles(s).unwrap(), DEFAULT_RADIUS, DEFAULT_NBITS).unwrap()
    }

    #[test]
    fn radius_zero_methane_single_environment() {
        let mol = parse_smiles("C").unwrap();
        let envs = environments(&mol, 0);
        assert_eq!(envs.len(), 1);
        let f = circular_fingerprint(&mol, 0, 2048).unwrap();
        assert_eq!(f.popcount(), 1);
    }

    /// Benzene at radius 2: all six atoms are equivalent, so the distinct
    /// environment count equals the number of shells, one per radius.
    #[test]
    fn benzene_three_distinct_environments() {
        let mol = parse_smiles("c1ccccc1").unwrap();
        let mut envs = environments(&mol, 2);
        assert_eq!(envs.len(), 18);
        envs.sort();
        envs.dedup();
        assert_eq!(envs.len(), 3);
    }

    #[test]
    fn isomorphic_inputs_same_fingerprint() {
        assert_eq!(fp("OCC"), fp("CCO"));
        assert_eq!(fp("c1ccccc1"), fp("C1=CC=CC=C1"));
        assert_eq!(fp("CC(C)Cc1ccc(cc1)C(C)C(=O)O"), fp("OC(=O)C(C)c1ccc(CC(C)C)cc1"));
    }

    #[test]
    fn tanimoto_identity_and_bounds() {
        let a = fp("CCO");
        let b = fp("CCN");
        assert_eq!(tanimoto(&a, &a).unwrap(), 1.0);
        let t = tanimoto(&a, &b).unwrap();
        assert!(t >= 0.0 && t < 1.0);
        assert_eq!(tanimoto(&a, &b).unwrap(), tanimoto(&b, &a).unwrap());
    }

    #[test]
    fn width_mismatch_is_error() {
        let a = circular_fingerprint(&parse_smiles("C").unwrap(), 2, 1024).unwrap();
        let b = circular_fingerprint(&parse_smiles("C").unwrap(), 2, 2048).unwrap();
        assert!(matches!(tanimoto(&a, &b), Err(FingerprintError::WidthMismatch(1024, 2048))));
    }

    #[test]
    fn empty_fingerprints_similarity_one() {
        let a = circular_fingerprint(&Molecule::empty(), 2, 2048).unwrap();
        let b = circular_fingerprint(&Molecule::empty(), 2, 2048).unwrap();
        assert_eq!(a.popcount(), 0);
        assert_eq!(tanimoto(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn bad_widths_rejected() {
        let mol = parse_smiles("C").unwrap();
        assert!(circular_fingerprint(&mol, 2, 100).is_err());
        assert!(circular_fingerprint(&mol, 2, 32).is_err());
    }
}
