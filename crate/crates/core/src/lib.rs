//! Intrinsic evaluation of subword tokenizers for morphologically rich
//! languages.
//!
//! The pipeline runs a tokenizer over a corpus, normalizes the unique token
//! surfaces, checks each one against a root lexicon and suffix grammar, and
//! reports how many are real words (%TR) and how many are bare roots
//! (%Pure), next to vocabulary size, token count, and encoding time.

pub mod bpe;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod manifest;
pub mod metrics;
pub mod morphology;
pub mod report;
pub mod surface;

pub use error::{Error, Result};

/// Crate version, as recorded in run metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
