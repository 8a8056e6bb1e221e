//! Property calculators composing the penalized-LogP objective
//! `j = z(logp) - z(sa) - z(ring)` with dataset z-score normalization.

mod logp;
mod sa;
mod stats;

pub use logp::crippen_logp;
pub use sa::{sa_score, FragmentFrequencies};
pub use stats::{compute_stats, penalized_logp, raw_components, ScoreBreakdown, ScoreStats};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DescriptorError {
    #[error("dataset too small: need at least 2 molecules, got {0}")]
    TooFew(usize),
    #[error("degenerate dataset: {component} has zero variance")]
    DegenerateVariance { component: &'static str },
}

/// How the ring penalty reads "seven or more rings of carbon": by largest
/// ring size (the de facto benchmark convention, default) or by ring count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingPenaltyMode {
    #[default]
    Size,
    Count,
}

/// Penalty for unrealistically large (or many) rings.
pub fn ring_penalty(mol: &crate::Molecule, mode: RingPenaltyMode) -> f64 {
    let rings = crate::molgraph::perceive_rings(mol);
    let over = match mode {
        RingPenaltyMode::Size => rings.largest_ring_size.saturating_sub(6),
        RingPenaltyMode::Count => rings.ring_count().saturating_sub(6),
    };
    over as f64
}

/// Descriptor and fingerprint settings that define a scoring context; stored
/// beside the dataset stats so runs are self-describing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptorConfig {
    pub fingerprint_radius: u32,
    pub fingerprint_nbits: usize,
    pub ring_penalty_mode: RingPenaltyMode,
}

impl Default for DescriptorConfig {
    fn default() -> DescriptorConfig {
        DescriptorConfig {
            fingerprint_radius: crate::fingerprint::DEFAULT_RADIUS,
            fingerprint_nbits: crate::fingerprint::DEFAULT_NBITS,
            ring_penalty_mode: RingPenaltyMode::Size,
        }
    }
}
