//! Byte-level BPE: loading, pre-tokenization, encoding, and the timed corpus
//! harness. Tokenizers without a native implementation enter through
//! [`external`] token dumps.

pub mod bytemap;
pub mod encode;
pub mod external;
pub mod harness;
pub mod model;
pub mod pretokenize;

pub use encode::{decode, encode, encode_ids, TokenSequence};
pub use external::{ingest_external_tokens, ExternalTokens};
pub use harness::{
    encode_corpus, encode_corpus_parallel, CorpusEncoding, TimingResult, DEFAULT_REPEATS,
};
pub use model::{load_bpe, BpeDefinition, MarkerPolicy, TokenId, TokenizerModel};
pub use pretokenize::pretokenize;

/// SentencePiece word-boundary marker.
pub const UNDERSCORE: char = '\u{2581}';
/// WordPiece continuation prefix.
pub const CONTINUATION: &str = "##";
