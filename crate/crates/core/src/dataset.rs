//! Reference-dataset model: normalization statistics, fragment frequency
//! table and the mutation alphabet observed while encoding the dataset.
//! Serializes to the stats JSON persisted beside the dataset so later runs
//! are self-describing.

use serde::{Deserialize, Serialize};

use crate::descriptors::{
    compute_stats, penalized_logp, DescriptorConfig, DescriptorError, FragmentFrequencies,
    ScoreBreakdown, ScoreStats,
};
use crate::molgraph::Molecule;
use crate::selfies::{alphabet_from, default_alphabet, encode, Token, TokenSequence};

pub const STATS_FORMAT_VERSION: u32 = 1;

/// Line accounting from dataset ingestion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetCounts {
    pub total: usize,
    pub parsed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetModel {
    pub version: u32,
    pub config: DescriptorConfig,
    pub stats: ScoreStats,
    pub counts: DatasetCounts,
    /// Token texts of the mutation alphabet, sorted.
    pub alphabet: Vec<String>,
    pub fragments: FragmentFrequencies,
}

impl DatasetModel {
    /// Build the model from parsed dataset molecules: fragment table first,
    /// then stats over it, plus the alphabet of every token observed while
    /// encoding the dataset (falling back to the built-in alphabet when the
    /// dataset yields nothing).
    pub fn fit(
        mols: &[Molecule],
        config: DescriptorConfig,
        counts: DatasetCounts,
    ) -> Result<DatasetModel, DescriptorError> {
        let fragments = FragmentFrequencies::fit(mols);
        let stats = compute_stats(mols, &fragments, config.ring_penalty_mode)?;
        let sequences: Vec<TokenSequence> =
            mols.iter().filter_map(|m| encode(m).ok()).collect();
        let mut tokens = alphabet_from(sequences.iter());
        if tokens.is_empty() {
            tokens = default_alphabet();
        }
        Ok(DatasetModel {
            version: STATS_FORMAT_VERSION,
            config,
            stats,
            counts,
            alphabet: tokens.iter().map(|t| t.to_string()).collect(),
            fragments,
        })
    }

    /// Mutation alphabet as typed tokens.
    pub fn alphabet_tokens(&self) -> Vec<Token> {
        let tokens: Vec<Token> =
            self.alphabet.iter().filter_map(|s| s.parse().ok()).collect();
        if tokens.is_empty() {
            default_alphabet()
        } else {
            tokens
        }
    }

    pub fn score(&self, mol: &Molecule) -> ScoreBreakdown {
        penalized_logp(mol, &self.stats, &self.fragments, self.config.ring_penalty_mode)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset model serializes")
    }

    pub fn from_json(text: &str) -> Result<DatasetModel, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    #[test]
    fn fit_score_and_roundtrip() {
        let mols: Vec<Molecule> = ["CCO", "CCCC", "c1ccccc1", "C1CCCCCCC1", "CC(=O)O", "CCN"]
            .iter()
            .map(|s| parse_smiles(s).unwrap())
            .collect();
        let model = DatasetModel::fit(
            &mols,
            DescriptorConfig::default(),
            DatasetCounts { total: 6, parsed: 6, skipped: 0 },
        )
        .unwrap();

        assert!(!model.alphabet.is_empty());
        assert!(model.fragments.total() > 0);

        let json = model.to_json();
        let back = DatasetModel::from_json(&json).unwrap();
        assert_eq!(model, back);

        let probe = parse_smiles("CCCCCC").unwrap();
        let a = model.score(&probe);
        let b = back.score(&probe);
        assert_eq!(a.j, b.j);
    }
}
