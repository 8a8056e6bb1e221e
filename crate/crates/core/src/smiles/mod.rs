//! SMILES parsing and canonical writing for a practical subset: organic
//! subset atoms, bracket atoms with charge and hydrogen counts, bond symbols
//! `- = # :`, branches, ring closures (digits and `%nn`), aromatic lowercase.
//! Stereo markers, isotopes and wildcards are rejected, never dropped.

mod parse;
mod write;

pub use parse::{parse_smiles, SmilesError};
pub use write::{smiles_length, write_smiles, write_smiles_with_ranks};
