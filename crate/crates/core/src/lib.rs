//! Error-correcting codes for DNA labeling sequences.
//!
//! A DNA word is labeled by marking where each label of a [`LabelSet`]
//! starts; the resulting labeling word is what the channel corrupts. The
//! crate provides the labeling map and its inverse, the classical codes used
//! to protect labelings, systematic single-indel (E1) and single-substitution
//! (E2) encoders, exact size bounds, and brute-force verification oracles.

pub mod bounds;
pub mod classical;
pub mod codes;
pub mod error;
pub mod labeling;
pub mod oracle;
pub mod words;

pub use error::{Error, Result};
pub use labeling::{
    invert_labeling, label_framed, label_word, phi, Alphabet, FlankConvention, LabelSet,
    LabelSetKind, ZeroGraph,
};
