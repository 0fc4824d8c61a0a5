#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde_json::Value;
use tokbench::bpe::bytemap;
use tokbench::bpe::pretokenize::split_pieces;
use tokbench::bpe::{load_bpe, TokenizerModel};
use tokbench::corpus::{load_corpus, CorpusFormat, CorpusRecord};
use tokbench::metrics::{read_records, MetricRecord};
use tokbench::morphology::phonology::starts_with_vowel;
use tokbench::morphology::{check_juncture, check_vowel_harmony, MorphologyResource, PartOfSpeech};

pub fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn reference() -> Value {
    let text = std::fs::read_to_string(data("fixtures/reference_values.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn mini_corpus() -> Vec<CorpusRecord> {
    load_corpus(data("corpus/mini.jsonl"), CorpusFormat::JsonlRecords).unwrap()
}

pub fn toy_model() -> &'static TokenizerModel {
    static MODEL: OnceLock<TokenizerModel> = OnceLock::new();
    MODEL.get_or_init(|| load_bpe(data("tokenizers/toy_bpe_1000.json")).unwrap())
}

pub fn table1() -> Vec<MetricRecord> {
    read_records(data("fixtures/table1.csv")).unwrap()
}

pub fn table2() -> Vec<MetricRecord> {
    read_records(data("fixtures/table2.csv")).unwrap()
}

// Published cells, transcribed row by row.
pub const TABLE1: [(&str, [&str; 4]); 8] = [
    ("Model Parameters (B)", ["27.2", "70.6", "7.6", "32.3"]),
    ("MMLU Score (%)", ["72.10", "70.42", "61.68", "70.66"]),
    ("Vocabulary Size", ["256,000", "128,256", "151,665", "255,029"]),
    ("Token Count", ["497,015", "488,535", "561,866", "434,526"]),
    ("Processing Time (s)", ["2.95", "3.12", "3.31", "2.77"]),
    ("Unique Token Count", ["6,383", "6,823", "5,752", "8,562"]),
    ("TR %", ["48.63", "45.80", "40.33", "50.67"]),
    ("Pure %", ["37.05", "30.91", "30.15", "32.96"]),
];

pub const TABLE2: [[&str; 9]; 4] = [
    ["alibayram/tr_tokenizer", "30,158", "476,556", "2.42", "11,531", "11,342", "98.36", "11,055", "95.87"],
    ["AhmetSemih/tr_tokenizer", "59,572", "451,883", "2.48", "13,370", "13,253", "99.12", "13,357", "99.90"],
    ["aliarda/turkish_tokenizer_256k", "256,000", "488,267", "2.51", "13,631", "13,351", "97.95", "12,981", "95.23"],
    ["aliarda/turkish_tokenizer", "58,526", "451,936", "2.34", "13,268", "13,170", "99.26", "13,256", "99.91"],
];

pub const WORKED_SENTENCE: &str = "Çocuklar bahçede oynayacak ve bahçede gülecek";

/// Textbook BPE on one byte-level piece: rescan for the lowest-rank pair,
/// merge its leftmost occurrence, repeat.
pub fn naive_encode_piece(piece_bytes: &[u8], model: &TokenizerModel) -> Vec<String> {
    let mut syms: Vec<String> = piece_bytes
        .iter()
        .map(|&b| bytemap::byte_to_char(b).to_string())
        .collect();
    loop {
        let mut best: Option<(u32, usize)> = None;
        for i in 0..syms.len().saturating_sub(1) {
            if let Some(rank) = model.merge_rank(&syms[i], &syms[i + 1]) {
                if best.is_none_or(|(r, _)| rank < r) {
                    best = Some((rank, i));
                }
            }
        }
        let Some((_, i)) = best else { break };
        let right = syms.remove(i + 1);
        syms[i].push_str(&right);
    }
    syms
}

pub fn naive_encode(text: &str, model: &TokenizerModel) -> Vec<String> {
    split_pieces(text)
        .into_iter()
        .flat_map(|p| naive_encode_piece(p.as_bytes(), model))
        .collect()
}

/// Sample Pearson straight from the textbook formula.
pub fn hand_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let syy: f64 = y.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

/// Exhaustive analysis: scan every root and every stem form, enumerate all
/// suffix sequences up to `max_chain`, and keep the ones whose every step
/// passes licensing, harmony, and juncture. Returns (valid, pure).
pub fn brute_force_analysis(res: &MorphologyResource, token: &str, max_chain: usize) -> (bool, bool) {
    if token.is_empty() || !token.chars().all(char::is_alphabetic) {
        return (false, false);
    }
    let mut valid = false;
    let mut pure = false;
    for root in res.roots() {
        let forms = std::iter::once((root.form.as_str(), false))
            .chain(root.alt.iter().map(|a| (a.as_str(), true)));
        for (form, alternate) in forms {
            let Some(rest) = token.strip_prefix(form) else { continue };
            if rest.is_empty() {
                if !alternate {
                    valid = true;
                    pure |= root.atomic;
                }
                continue;
            }
            let mut chain: Vec<(String, String)> = Vec::new();
            if covers(res, token, form.len(), root.pos, alternate, !root.alt.is_empty(), &mut chain, max_chain) {
                valid = true;
            }
        }
    }
    (valid, pure)
}

#[allow(clippy::too_many_arguments)]
fn covers(
    res: &MorphologyResource,
    token: &str,
    pos: usize,
    class: PartOfSpeech,
    alternate: bool,
    has_alts: bool,
    chain: &mut Vec<(String, String)>,
    max_chain: usize,
) -> bool {
    if pos == token.len() {
        return true;
    }
    if chain.len() == max_chain {
        return false;
    }
    for rule in res.suffixes() {
        let prev = chain.last().map(|(id, _)| id.as_str());
        if !res.licenses(prev, class, &rule.id) {
            continue;
        }
        for a in &rule.allomorphs {
            if !token[pos..].starts_with(a.as_str()) {
                continue;
            }
            let stem = &token[..pos];
            if rule.harmony && !check_vowel_harmony(stem, a) {
                continue;
            }
            if !check_juncture(stem, a, rule) {
                continue;
            }
            if chain.is_empty() {
                let v = starts_with_vowel(a);
                if alternate && !v {
                    continue;
                }
                if !alternate && v && has_alts {
                    continue;
                }
            }
            chain.push((rule.id.clone(), a.clone()));
            let ok = covers(res, token, pos + a.len(), class, alternate, has_alts, chain, max_chain);
            chain.pop();
            if ok {
                return true;
            }
        }
    }
    false
}
