use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::MetricRecord;

/// A numeric column of [`MetricRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    ParamsBillions,
    MmluScore,
    VocabSize,
    TotalTokens,
    WallSeconds,
    UniqueTokens,
    TrPct,
    PurePct,
    ValidUnique,
    PureUnique,
}

impl Metric {
    pub const ALL: [Metric; 10] = [
        Metric::ParamsBillions,
        Metric::MmluScore,
        Metric::VocabSize,
        Metric::TotalTokens,
        Metric::WallSeconds,
        Metric::UniqueTokens,
        Metric::TrPct,
        Metric::PurePct,
        Metric::ValidUnique,
        Metric::PureUnique,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::ParamsBillions => "params_billions",
            Metric::MmluScore => "mmlu_score",
            Metric::VocabSize => "vocab_size",
            Metric::TotalTokens => "total_tokens",
            Metric::WallSeconds => "wall_seconds",
            Metric::UniqueTokens => "unique_tokens",
            Metric::TrPct => "tr_pct",
            Metric::PurePct => "pure_pct",
            Metric::ValidUnique => "valid_unique",
            Metric::PureUnique => "pure_unique",
        }
    }

    pub fn value(self, r: &MetricRecord) -> Option<f64> {
        match self {
            Metric::ParamsBillions => r.params_billions,
            Metric::MmluScore => r.mmlu_score,
            Metric::VocabSize => Some(r.vocab_size as f64),
            Metric::TotalTokens => Some(r.total_tokens as f64),
            Metric::WallSeconds => Some(r.wall_seconds),
            Metric::UniqueTokens => Some(r.unique_tokens as f64),
            Metric::TrPct => Some(r.tr_pct),
            Metric::PurePct => Some(r.pure_pct),
            Metric::ValidUnique => r.valid_unique.map(|v| v as f64),
            Metric::PureUnique => r.pure_unique.map(|v| v as f64),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let m = match s.trim().to_ascii_lowercase().as_str() {
            "params_billions" | "params" => Metric::ParamsBillions,
            "mmlu_score" | "mmlu" => Metric::MmluScore,
            "vocab_size" | "vocab" => Metric::VocabSize,
            "total_tokens" | "token_count" | "tokens" => Metric::TotalTokens,
            "wall_seconds" | "time" => Metric::WallSeconds,
            "unique_tokens" | "unique" => Metric::UniqueTokens,
            "tr_pct" | "tr" => Metric::TrPct,
            "pure_pct" | "pure" => Metric::PurePct,
            "valid_unique" => Metric::ValidUnique,
            "pure_unique" => Metric::PureUnique,
            other => return Err(Error::InvalidInput(format!("unknown metric {other:?}"))),
        };
        Ok(m)
    }
}

/// Sample Pearson correlation, computed in two passes.
///
/// Errors when the series differ in length, have fewer than three points,
/// contain non-finite values, or either one is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidInput(format!(
            "series lengths differ ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "correlation needs at least 3 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("series contain non-finite values".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a series has zero variance".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// A matrix cell. Undefined cells serialize as `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correlation {
    Value(f64),
    Undefined,
}

impl Correlation {
    pub fn value(self) -> Option<f64> {
        match self {
            Correlation::Value(v) => Some(v),
            Correlation::Undefined => None,
        }
    }
}

impl fmt::Display for Correlation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Correlation::Value(v) => write!(f, "{v:.2}"),
            Correlation::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for Correlation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    pub metrics: Vec<Metric>,
    /// Records behind every cell.
    pub n: usize,
    pub values: Vec<Vec<Correlation>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: Metric, b: Metric) -> Option<Correlation> {
        let i = self.metrics.iter().position(|&m| m == a)?;
        let j = self.metrics.iter().position(|&m| m == b)?;
        Some(self.values[i][j])
    }

    /// Plain-text table with the sample size in the caption.
    pub fn annotated_table(&self) -> String {
        let width = self.metrics.iter().map(|m| m.as_str().len()).max().unwrap_or(0).max(9);
        let mut out = format!("Pearson r (n={})\n", self.n);
        out.push_str(&format!("{:width$}", ""));
        for m in &self.metrics {
            out.push_str(&format!(" {:>width$}", m.as_str()));
        }
        out.push('\n');
        for (i, m) in self.metrics.iter().enumerate() {
            out.push_str(&format!("{:width$}", m.as_str()));
            for c in &self.values[i] {
                out.push_str(&format!(" {:>width$}", c.to_string()));
            }
            out.push('\n');
        }
        out
    }
}

/// Metrics that every record has a value for, in canonical order.
pub fn available_metrics(records: &[MetricRecord]) -> Vec<Metric> {
    Metric::ALL
        .into_iter()
        .filter(|m| records.iter().all(|r| m.value(r).is_some()))
        .collect()
}

/// Pairwise correlations over `metrics`. Constant metrics give undefined
/// cells (including on the diagonal), never NaN.
pub fn correlation_matrix(records: &[MetricRecord], metrics: &[Metric]) -> Result<CorrelationMatrix> {
    if records.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "correlation needs at least 3 tokenizer records, got {}",
            records.len()
        )));
    }
    let mut columns = Vec::with_capacity(metrics.len());
    for &m in metrics {
        let col = records
            .iter()
            .map(|r| {
                m.value(r).ok_or_else(|| {
                    Error::InvalidInput(format!("record {} has no {m}", r.tokenizer_name))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        columns.push(col);
    }
    let k = metrics.len();
    let mut values = vec![vec![Correlation::Undefined; k]; k];
    for i in 0..k {
        for j in i..k {
            let cell = match pearson(&columns[i], &columns[j]) {
                Ok(_) if i == j => Correlation::Value(1.0),
                Ok(r) => Correlation::Value(r),
                Err(Error::UndefinedCorrelation(_)) => Correlation::Undefined,
                Err(e) => return Err(e),
            };
            values[i][j] = cell;
            values[j][i] = cell;
        }
    }
    Ok(CorrelationMatrix {
        metrics: metrics.to_vec(),
        n: records.len(),
        values,
    })
}
