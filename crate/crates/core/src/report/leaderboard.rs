use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::MetricRecord;

/// Which way round the table is drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    /// One column per tokenizer, one row per metric.
    #[default]
    MetricsAsRows,
    /// One row per tokenizer with raw counts next to the percentages.
    TokenizersAsRows,
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "metrics-as-rows" | "metrics" | "wide" => Ok(Layout::MetricsAsRows),
            "tokenizers-as-rows" | "tokenizers" | "long" => Ok(Layout::TokenizersAsRows),
            other => Err(Error::InvalidInput(format!("unknown table layout {other:?}"))),
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layout::MetricsAsRows => "metrics-as-rows",
            Layout::TokenizersAsRows => "tokenizers-as-rows",
        })
    }
}

/// Rendered cells, first row is the header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// 1234567 -> "1,234,567"
pub fn thousands(n: u64) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn fixed(v: Option<f64>, places: usize) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.places$}"))
}

fn count(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), thousands)
}

pub fn leaderboard(records: &[MetricRecord], layout: Layout) -> Table {
    match layout {
        Layout::MetricsAsRows => {
            let mut header = vec!["Metric".to_string()];
            header.extend(records.iter().map(|r| r.tokenizer_name.clone()));
            type Cell = fn(&MetricRecord) -> String;
            let rows: [(&str, Cell); 8] = [
                ("Model Parameters (B)", |r| fixed(r.params_billions, 1)),
                ("MMLU Score (%)", |r| fixed(r.mmlu_score, 2)),
                ("Vocabulary Size", |r| thousands(r.vocab_size)),
                ("Token Count", |r| thousands(r.total_tokens)),
                ("Processing Time (s)", |r| fixed(Some(r.wall_seconds), 2)),
                ("Unique Token Count", |r| thousands(r.unique_tokens)),
                ("TR %", |r| fixed(Some(r.tr_pct), 2)),
                ("Pure %", |r| fixed(Some(r.pure_pct), 2)),
            ];
            let rows = rows
                .iter()
                .map(|(label, cell)| {
                    let mut row = vec![label.to_string()];
                    row.extend(records.iter().map(cell));
                    row
                })
                .collect();
            Table { header, rows }
        }
        Layout::TokenizersAsRows => {
            let header = [
                "Tokenizer",
                "Vocab Size",
                "Token Count",
                "Time (s)",
                "Unique Tokens",
                "Turkish Tokens",
                "TR %",
                "Pure Tokens",
                "Pure %",
            ]
            .map(String::from)
            .to_vec();
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        r.tokenizer_name.clone(),
                        thousands(r.vocab_size),
                        thousands(r.total_tokens),
                        fixed(Some(r.wall_seconds), 2),
                        thousands(r.unique_tokens),
                        count(r.valid_unique),
                        fixed(Some(r.tr_pct), 2),
                        count(r.pure_unique),
                        fixed(Some(r.pure_pct), 2),
                    ]
                })
                .collect();
            Table { header, rows }
        }
    }
}

impl Table {
    pub fn to_markdown(&self) -> String {
        let escape = |s: &str| s.replace('|', "\\|");
        let mut out = String::new();
        out.push_str(&format!(
            "| {} |\n",
            self.header.iter().map(|h| escape(h)).collect::<Vec<_>>().join(" | ")
        ));
        out.push('|');
        for _ in &self.header {
            out.push_str(" --- |");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "| {} |\n",
                row.iter().map(|c| escape(c)).collect::<Vec<_>>().join(" | ")
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory csv write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 csv")
    }

    /// Cell by row label (first column) and column header.
    pub fn cell(&self, row: &str, column: &str) -> Option<&str> {
        let j = self.header.iter().position(|h| h == column)?;
        let r = self.rows.iter().find(|r| r.first().is_some_and(|c| c == row))?;
        r.get(j).map(String::as_str)
    }
}
