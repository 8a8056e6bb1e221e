//! Synthetic-accessibility proxy: fragment rarity against a dataset-derived
//! frequency table of radius-2 circular environments, plus structural
//! complexity terms. Higher means harder to make.
//!
//! rarity     = -(1/n) * sum log2((count(env)+1) / (total+1))
//! complexity = 0.5 * fused ring pairs
//!            + 1.0 if any ring larger than 8
//!            + 0.05 * max(0, heavy atoms - 30)

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fingerprint::environments;
use crate::molgraph::{perceive_rings, Molecule};

pub const FRAGMENT_RADIUS: u32 = 2;

/// Circular-environment frequency table built from a reference dataset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentFrequencies {
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl FragmentFrequencies {
    pub fn new() -> FragmentFrequencies {
        FragmentFrequencies::default()
    }

    pub fn fit(mols: &[Molecule]) -> FragmentFrequencies {
        let mut table = FragmentFrequencies::new();
        for mol in mols {
            table.add(mol);
        }
        table
    }

    pub fn add(&mut self, mol: &Molecule) {
        for env in environments(mol, FRAGMENT_RADIUS) {
            *self.counts.entry(env).or_insert(0) += 1;
            self.total += 1;
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn count(&self, env: u64) -> u64 {
        self.counts.get(&env).copied().unwrap_or(0)
    }
}

/// Synthetic accessibility score of `mol` against the dataset table. An
/// empty table degrades to the complexity terms alone (logged).
pub fn sa_score(mol: &Molecule, freq: &FragmentFrequencies) -> f64 {
    rarity_term(mol, freq) + complexity_term(mol)
}

fn rarity_term(mol: &Molecule, freq: &FragmentFrequencies) -> f64 {
    if mol.is_empty() {
        return 0.0;
    }
    if freq.is_empty() {
        log::warn!("empty fragment table: synthetic accessibility uses complexity terms only");
        return 0.0;
    }
    let envs = environments(mol, FRAGMENT_RADIUS);
    let n = envs.len() as f64;
    let total = (freq.total() + 1) as f64;
    let sum: f64 =
        envs.iter().map(|&env| (((freq.count(env) + 1) as f64) / total).log2()).sum();
    -sum / n
}

fn complexity_term(mol: &Molecule) -> f64 {
    let rings = perceive_rings(mol);
    let fused = rings.fused_pairs(mol) as f64;
    let macrocycle = if rings.largest_ring_size > 8 { 1.0 } else { 0.0 };
    let size = 0.05 * (mol.heavy_atoms() as f64 - 30.0).max(0.0);
    0.5 * fused + macrocycle + size
}
