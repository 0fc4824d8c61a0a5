//! Corpus-level encoding with wall-clock timing.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::encode::encode_ids;
use super::model::{TokenId, TokenizerModel};
use crate::corpus::{corpus_text, CorpusRecord};
use crate::error::Result;

pub const DEFAULT_REPEATS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingResult {
    /// Median wall-clock seconds of the measured runs (warm-up excluded).
    pub wall_seconds: f64,
    pub tokens_emitted: u64,
    pub repeats: u32,
}

/// Token totals over a corpus. Partials from different workers combine with
/// [`CorpusEncoding::merge`], which is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEncoding {
    pub total_tokens: u64,
    pub unique_ids: BTreeSet<TokenId>,
}

impl CorpusEncoding {
    pub fn add(&mut self, ids: &[TokenId]) {
        self.total_tokens += ids.len() as u64;
        self.unique_ids.extend(ids.iter().copied());
    }

    pub fn merge(mut self, other: CorpusEncoding) -> CorpusEncoding {
        self.total_tokens += other.total_tokens;
        self.unique_ids.extend(other.unique_ids);
        self
    }

    /// Raw surfaces of the distinct tokens, in id order.
    pub fn unique_surfaces<'m>(&self, model: &'m TokenizerModel) -> Vec<&'m str> {
        self.unique_ids
            .iter()
            .filter_map(|&id| model.token(id))
            .collect()
    }
}

fn encode_texts(texts: &[(String, &str)], model: &TokenizerModel) -> Result<CorpusEncoding> {
    let mut acc = CorpusEncoding::default();
    for (text, id) in texts {
        let ids = encode_ids(text, model).map_err(|e| e.for_record(id))?;
        acc.add(&ids);
    }
    Ok(acc)
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2.0
    }
}

/// Encodes every record single-threaded: one warm-up pass, then `repeats`
/// timed passes. Only encoding is timed; record texts are assembled first.
pub fn encode_corpus(
    records: &[CorpusRecord],
    model: &TokenizerModel,
    repeats: u32,
) -> Result<(CorpusEncoding, TimingResult)> {
    let repeats = repeats.max(1);
    let texts: Vec<(String, &str)> = records
        .iter()
        .map(|r| (corpus_text(r), r.id.as_str()))
        .collect();

    let encoding = encode_texts(&texts, model)?;
    let mut samples = Vec::with_capacity(repeats as usize);
    for _ in 0..repeats {
        let start = Instant::now();
        let pass = encode_texts(&texts, model)?;
        samples.push(start.elapsed().as_secs_f64());
        debug_assert_eq!(pass.total_tokens, encoding.total_tokens);
    }
    let timing = TimingResult {
        wall_seconds: median(&mut samples),
        tokens_emitted: encoding.total_tokens,
        repeats,
    };
    Ok((encoding, timing))
}

/// Same totals as [`encode_corpus`], computed on the rayon pool without timing.
pub fn encode_corpus_parallel(
    records: &[CorpusRecord],
    model: &TokenizerModel,
) -> Result<CorpusEncoding> {
    records
        .par_iter()
        .map(|r| {
            let ids = encode_ids(&corpus_text(r), model).map_err(|e| e.for_record(&r.id))?;
            let mut part = CorpusEncoding::default();
            part.add(&ids);
            Ok(part)
        })
        .try_reduce(CorpusEncoding::default, |a, b| Ok(a.merge(b)))
}
