//! Structure-constrained molecular inverse design with a two-phase genetic
//! algorithm: graph-based crossover, SELFIES point mutation, circular
//! fingerprints with Tanimoto similarity, and a penalized-LogP objective
//! normalized over a reference dataset.

pub mod descriptors;
pub mod element;
pub mod fingerprint;
pub mod molgraph;
pub mod selfies;
pub mod smiles;

pub use element::Element;
pub use molgraph::{
    canonical_ranks, check_valence, is_isomorphic, murcko_scaffold, perceive_rings,
    substructure_contains, Atom, Bond, BondOrder, MolError, Molecule, RingInfo,
};
pub use smiles::{parse_smiles, smiles_length, write_smiles, SmilesError};
