//! Evaluation corpora: MMLU-style JSONL records or plain text, one record per line.
//!
//! All text fields are NFC-normalized when a record is read, so that Turkish
//! letters with diacritics (ç, ğ, ş, İ) compare bytewise across tokenizers.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::ops::{Add, AddAssign};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    #[default]
    #[serde(alias = "jsonl")]
    JsonlRecords,
    #[serde(alias = "text", alias = "plain")]
    PlainText,
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" | "jsonl-records" => Ok(CorpusFormat::JsonlRecords),
            "text" | "plain" | "plain-text" => Ok(CorpusFormat::PlainText),
            other => Err(Error::InvalidInput(format!("unknown corpus format {other:?}"))),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::JsonlRecords => "jsonl-records",
            CorpusFormat::PlainText => "plain-text",
        })
    }
}

/// One benchmark item. `question` is never empty and `choices` never contains
/// an empty string; both hold NFC text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub question: String,
    #[serde(default)]
    pub choices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
}

impl CorpusRecord {
    /// Builds a record from raw text, normalizing and validating it.
    pub fn new(
        id: impl Into<String>,
        question: &str,
        choices: &[&str],
        subject: Option<&str>,
    ) -> Result<Self> {
        let question = nfc(question);
        if question.trim().is_empty() {
            return Err(Error::InvalidInput("question is empty".into()));
        }
        let choices: Vec<String> = choices.iter().map(|c| nfc(c)).collect();
        if choices.iter().any(|c| c.trim().is_empty()) {
            return Err(Error::InvalidInput("empty choice".into()));
        }
        Ok(CorpusRecord {
            id: id.into(),
            question,
            choices,
            subject: subject.map(nfc),
        })
    }

    /// The text that gets tokenized: the question, then each choice on its own line.
    pub fn text(&self) -> String {
        corpus_text(self)
    }
}

/// Question followed by each choice on its own line. Answer-letter wrappers
/// such as "(A)" are not added.
pub fn corpus_text(record: &CorpusRecord) -> String {
    let len = record.question.len() + record.choices.iter().map(|c| c.len() + 1).sum::<usize>();
    let mut out = String::with_capacity(len);
    out.push_str(&record.question);
    for choice in &record.choices {
        out.push('\n');
        out.push_str(choice);
    }
    out
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CorpusStats {
    /// Unicode scalar values across all record texts.
    pub char_count: u64,
    /// Maximal runs of non-whitespace characters.
    pub word_count: u64,
    pub record_count: u64,
}

impl CorpusStats {
    pub fn add_record(&mut self, record: &CorpusRecord) {
        let text = corpus_text(record);
        self.char_count += text.chars().count() as u64;
        self.word_count += text.split_whitespace().count() as u64;
        self.record_count += 1;
    }
}

impl Add for CorpusStats {
    type Output = CorpusStats;

    fn add(self, rhs: CorpusStats) -> CorpusStats {
        CorpusStats {
            char_count: self.char_count + rhs.char_count,
            word_count: self.word_count + rhs.word_count,
            record_count: self.record_count + rhs.record_count,
        }
    }
}

impl AddAssign for CorpusStats {
    fn add_assign(&mut self, rhs: CorpusStats) {
        *self = *self + rhs;
    }
}

pub fn compute_stats<'a>(records: impl IntoIterator<Item = &'a CorpusRecord>) -> CorpusStats {
    let mut stats = CorpusStats::default();
    for record in records {
        stats.add_record(record);
    }
    stats
}

#[derive(Deserialize)]
struct JsonRecord {
    id: Option<String>,
    question: String,
    #[serde(default)]
    choices: Vec<String>,
    subject: Option<String>,
}

/// Streaming reader over a corpus file. Blank lines are skipped; every other
/// line yields exactly one record, in file order.
pub struct CorpusReader<R> {
    reader: R,
    format: CorpusFormat,
    path: PathBuf,
    line: usize,
    buf: Vec<u8>,
    failed: bool,
}

impl<R: BufRead> CorpusReader<R> {
    pub fn new(reader: R, format: CorpusFormat, path: impl Into<PathBuf>) -> Self {
        CorpusReader {
            reader,
            format,
            path: path.into(),
            line: 0,
            buf: Vec::new(),
            failed: false,
        }
    }

    fn malformed(&self, message: impl Into<String>) -> Error {
        Error::MalformedLine {
            path: self.path.clone(),
            line: self.line,
            message: message.into(),
        }
    }

    fn parse_line(&self, text: &str) -> Result<CorpusRecord> {
        match self.format {
            CorpusFormat::PlainText => {
                CorpusRecord::new(format!("line-{}", self.line), text, &[], None)
                    .map_err(|e| self.malformed(e.to_string()))
            }
            CorpusFormat::JsonlRecords => {
                let raw: JsonRecord =
                    serde_json::from_str(text).map_err(|e| self.malformed(e.to_string()))?;
                let choices: Vec<&str> = raw.choices.iter().map(String::as_str).collect();
                let id = raw.id.unwrap_or_else(|| format!("line-{}", self.line));
                CorpusRecord::new(id, &raw.question, &choices, raw.subject.as_deref())
                    .map_err(|e| self.malformed(e.to_string()))
            }
        }
    }
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<CorpusRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            self.buf.clear();
            match self.reader.read_until(b'\n', &mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(Error::io(&self.path, e)));
                }
            }
            self.line += 1;
            let text = match std::str::from_utf8(&self.buf) {
                Ok(t) => t,
                Err(_) => {
                    self.failed = true;
                    return Some(Err(Error::InvalidUtf8 {
                        path: self.path.clone(),
                        line: self.line,
                    }));
                }
            };
            let text = text.trim_end_matches(['\n', '\r']);
            if text.trim().is_empty() {
                continue;
            }
            let item = self.parse_line(text);
            if item.is_err() {
                self.failed = true;
            }
            return Some(item);
        }
    }
}

pub fn open_corpus(
    path: impl AsRef<Path>,
    format: CorpusFormat,
) -> Result<CorpusReader<BufReader<File>>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(CorpusReader::new(BufReader::new(file), format, path))
}

/// Reads a whole corpus file into memory.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Vec<CorpusRecord>> {
    open_corpus(path, format)?.collect()
}
