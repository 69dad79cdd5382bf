//! Multiplicative finite embeddability: witness search, an independent
//! quotient-intersection oracle, exact refuters and chain constructions.

pub mod chain;
pub mod me;
pub mod refute;
pub mod sidon;
pub mod witness;

pub use chain::{colex_pair, decreasing_chain, Chain, ChainRefutation};
pub use me::me_check;
pub use refute::{fe_refute_level, fe_refute_level_finite, fe_refute_residue, level_differences};
pub use sidon::{has_distinct_differences, sidon_sequence};
pub use witness::{
    fe_fip_oracle, fe_prefix_check, fe_witness, fe_witness_finite, mthick_check, FeOutcome, FeRefutation,
    FeWitness,
};
