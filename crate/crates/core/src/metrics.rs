//! The five tokenizer metrics and the record that carries them.
//!
//! %TR is the share of unique tokens that are valid words; %Pure is the
//! share that are valid single-morpheme words. Both use the number of unique
//! cleaned surfaces as denominator.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bpe::{encode_corpus, ExternalTokens, MarkerPolicy, TokenizerModel, DEFAULT_REPEATS};
use crate::corpus::CorpusRecord;
use crate::error::{Error, Result};
use crate::morphology::MorphologyResource;
use crate::surface::{normalize, CharClass};

/// One tokenizer's row. Field order is the column order of the leaderboard
/// (and of the CSV form), with the two raw counts last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub tokenizer_name: String,
    #[serde(default)]
    pub params_billions: Option<f64>,
    #[serde(default)]
    pub mmlu_score: Option<f64>,
    pub vocab_size: u64,
    pub total_tokens: u64,
    pub wall_seconds: f64,
    pub unique_tokens: u64,
    pub tr_pct: f64,
    pub pure_pct: f64,
    /// Absent only in records ingested from published tables that omit it.
    #[serde(default)]
    pub valid_unique: Option<u64>,
    #[serde(default)]
    pub pure_unique: Option<u64>,
}

impl MetricRecord {
    /// Checks the count chain and the percentage definitions. Records built by
    /// [`evaluate_tokenizer`] always pass; ingested tables may not.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(format!("{}: {msg}", self.tokenizer_name)));
        if !(0.0..=100.0).contains(&self.tr_pct) || !(0.0..=100.0).contains(&self.pure_pct) {
            return fail("percentage outside [0, 100]".into());
        }
        if self.pure_pct > self.tr_pct {
            return fail(format!("pure_pct {} > tr_pct {}", self.pure_pct, self.tr_pct));
        }
        if let (Some(valid), Some(pure)) = (self.valid_unique, self.pure_unique) {
            if !(pure <= valid && valid <= self.unique_tokens) {
                return fail(format!(
                    "count chain violated: pure {pure}, valid {valid}, unique {}",
                    self.unique_tokens
                ));
            }
            if self.unique_tokens > 0 {
                let tr = 100.0 * valid as f64 / self.unique_tokens as f64;
                let pu = 100.0 * pure as f64 / self.unique_tokens as f64;
                if (tr - self.tr_pct).abs() > 1e-9 || (pu - self.pure_pct).abs() > 1e-9 {
                    return fail("percentages disagree with counts".into());
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

fn percentage(part: u64, unique: u64, what: &str) -> Result<f64> {
    if unique == 0 {
        return Err(Error::UndefinedMetric(format!("{what} with zero unique tokens")));
    }
    if part > unique {
        return Err(Error::InvalidInput(format!("{what}: {part} exceeds {unique} unique tokens")));
    }
    Ok(100.0 * part as f64 / unique as f64)
}

/// 100 · valid / unique.
pub fn tr_percentage(valid_unique: u64, unique: u64) -> Result<f64> {
    percentage(valid_unique, unique, "%TR")
}

/// 100 · pure / unique.
pub fn pure_percentage(pure_unique: u64, unique: u64) -> Result<f64> {
    percentage(pure_unique, unique, "%Pure")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Count only alphabetic tokens in the denominators.
    pub alpha_only: bool,
    /// Keep whitespace-only tokens in the denominators.
    pub include_whitespace: bool,
    /// Treat a token that is exactly one suffix allomorph as pure.
    pub count_bound_morphemes_as_pure: bool,
    pub repeats: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            alpha_only: false,
            include_whitespace: false,
            count_bound_morphemes_as_pure: false,
            repeats: DEFAULT_REPEATS,
        }
    }
}

impl EvalConfig {
    pub fn counts(&self, class: CharClass) -> bool {
        match class {
            CharClass::Alphabetic => true,
            CharClass::Whitespace => self.include_whitespace && !self.alpha_only,
            _ => !self.alpha_only,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ScoreMetadata {
    pub mmlu_score: Option<f64>,
    pub params_billions: Option<f64>,
}

/// Where the tokens come from.
#[derive(Debug, Clone, Copy)]
pub enum TokenSource<'a> {
    Bpe(&'a TokenizerModel),
    External(&'a ExternalTokens),
}

/// The denominator set and its classification.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueTokenClasses {
    pub unique: BTreeSet<String>,
    pub valid: BTreeSet<String>,
    pub pure: BTreeSet<String>,
}

/// Normalizes raw surfaces, keeps the classes `config` counts, and classifies
/// each distinct clean surface (case preserved) by its folded form.
pub fn classify_unique<'s>(
    raw_surfaces: impl IntoIterator<Item = &'s str>,
    policy: MarkerPolicy,
    resource: &MorphologyResource,
    config: &EvalConfig,
) -> UniqueTokenClasses {
    let mut out = UniqueTokenClasses::default();
    let mut folded_of = Vec::new();
    for raw in raw_surfaces {
        let cand = normalize(raw, policy);
        if !config.counts(cand.char_class) {
            continue;
        }
        if out.unique.insert(cand.clean_surface.clone()) {
            folded_of.push((cand.clean_surface, cand.folded, cand.char_class));
        }
    }
    for (clean, folded, class) in folded_of {
        if class != CharClass::Alphabetic {
            continue;
        }
        let Some(parse) = resource.parse(&folded) else {
            if config.count_bound_morphemes_as_pure && resource.is_bound_morpheme(&folded) {
                out.pure.insert(clean);
            }
            continue;
        };
        out.valid.insert(clean.clone());
        if parse.is_pure {
            out.pure.insert(clean);
        }
    }
    out
}

/// Runs the full pipeline for one tokenizer and fills its [`MetricRecord`].
///
/// Native models are encoded (and timed) over `corpus`; external dumps
/// already hold their tokens, so `corpus` is not consulted for them and their
/// declared vocabulary size and seconds are passed through.
pub fn evaluate_tokenizer(
    source: TokenSource<'_>,
    corpus: &[CorpusRecord],
    resource: &MorphologyResource,
    config: &EvalConfig,
    metadata: ScoreMetadata,
) -> Result<MetricRecord> {
    let (name, vocab_size, total_tokens, wall_seconds, classes) = match source {
        TokenSource::Bpe(model) => {
            let (encoding, timing) = encode_corpus(corpus, model, config.repeats)?;
            let classes = classify_unique(
                encoding.unique_surfaces(model),
                model.marker_policy(),
                resource,
                config,
            );
            (
                model.name().to_string(),
                model.vocab_size() as u64,
                encoding.total_tokens,
                timing.wall_seconds,
                classes,
            )
        }
        TokenSource::External(dump) => {
            let classes = classify_unique(
                dump.unique.iter().map(String::as_str),
                dump.marker_policy,
                resource,
                config,
            );
            (
                dump.name.clone(),
                dump.declared_vocab_size,
                dump.total_tokens,
                dump.declared_wall_seconds.unwrap_or(0.0),
                classes,
            )
        }
    };

    let unique = classes.unique.len() as u64;
    let valid = classes.valid.len() as u64;
    let pure = classes.pure.len() as u64;
    if unique == 0 {
        return Err(Error::UndefinedMetric(format!(
            "{name}: no unique tokens left after filtering"
        )));
    }
    if !config.count_bound_morphemes_as_pure {
        assert!(pure <= valid && valid <= unique, "purity implies validity");
    }
    Ok(MetricRecord {
        tokenizer_name: name,
        params_billions: metadata.params_billions,
        mmlu_score: metadata.mmlu_score,
        vocab_size,
        total_tokens,
        wall_seconds,
        unique_tokens: unique,
        tr_pct: tr_percentage(valid, unique)?,
        pure_pct: percentage(pure, unique, "%Pure")?,
        valid_unique: Some(valid),
        pure_unique: Some(pure),
    })
}

/// Records as CSV, one row per record, header included.
pub fn records_to_csv(records: &[MetricRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 csv")
}

pub fn records_from_csv(reader: impl Read) -> Result<Vec<MetricRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    r.deserialize()
        .map(|row| row.map_err(|e| Error::InvalidInput(format!("metric CSV: {e}"))))
        .collect()
}

/// Reads metric records from a CSV file, a JSON file (one record or an array),
/// or a directory of such files (sorted by file name).
pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<MetricRecord>> {
    let path = path.as_ref();
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| Error::io(path, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            match read_records(&f) {
                Ok(recs) => out.extend(recs),
                // Other JSON outputs (run metadata, scatter data) are skipped.
                Err(Error::Parse { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        return Ok(out);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if path.extension().is_some_and(|x| x == "json") {
        let parse_err = |e: serde_json::Error| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let value: serde_json::Value = serde_json::from_str(&text).map_err(parse_err)?;
        return if value.is_array() {
            serde_json::from_value(value).map_err(parse_err)
        } else {
            Ok(vec![serde_json::from_value(value).map_err(parse_err)?])
        };
    }
    records_from_csv(text.as_bytes())
}
