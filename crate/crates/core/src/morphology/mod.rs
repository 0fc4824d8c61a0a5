//! Rule-based Turkish morphology: decides whether a token is a valid word and
//! whether it is pure (one atomic root, no suffixes).
//!
//! The resource file is JSON:
//!
//! ```json
//! {
//!   "version": "tr-mini-1.0",
//!   "roots": [{"form": "kitap", "atomic": true, "pos": "noun", "alt": ["kitab"]}],
//!   "suffixes": [{"id": "PLURAL", "allomorphs": ["lar", "ler"], "follows": ["ROOT:noun"]}]
//! }
//! ```
//!
//! `atomic` defaults to true and `pos` to `noun`. Suffix rules may also carry
//! `after_vowel` (allomorphs with a buffer consonant) and `"harmony": false`
//! for invariant suffixes such as -ki.

mod analyze;
pub mod phonology;
mod resource;

pub use analyze::{Morph, Parse, MAX_CHAIN};
pub use phonology::{check_juncture, check_vowel_harmony};
pub use resource::{load_resource, MorphologyResource, PartOfSpeech, RootEntry, SuffixRule};


/// JSON text of the lexicon shipped with the crate.
pub const BUNDLED_RESOURCE_JSON: &str = include_str!("../../data/morphology/tr_mini.json");

/// The shipped Turkish lexicon.
pub fn bundled_resource() -> MorphologyResource {
    MorphologyResource::from_json(BUNDLED_RESOURCE_JSON).expect("bundled lexicon is valid")
}
