//! Plot-ready data. Rendering is left to whatever plotting tool reads it.

use serde::Serialize;

use super::stats::{available_metrics, correlation_matrix, CorrelationMatrix, Metric};
use crate::error::Result;
use crate::metrics::MetricRecord;

/// One tokenizer in the MMLU versus %TR scatter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterPoint {
    pub label: String,
    /// %TR
    pub x: f64,
    /// MMLU score
    pub y: f64,
    /// Parameter count in billions, if known.
    pub size: Option<f64>,
    /// %Pure
    pub color: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotData {
    pub matrix: CorrelationMatrix,
    /// `None` when no record carries an MMLU score.
    pub scatter: Option<Vec<ScatterPoint>>,
    pub warnings: Vec<String>,
}

impl PlotData {
    /// Long-form heatmap: one row per ordered metric pair.
    pub fn heatmap_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["metric_a", "metric_b", "r", "n"]).expect("in-memory csv write");
        let m = &self.matrix;
        for (i, a) in m.metrics.iter().enumerate() {
            for (j, b) in m.metrics.iter().enumerate() {
                let r = m.values[i][j]
                    .value()
                    .map_or_else(|| "undefined".to_string(), |v| v.to_string());
                w.write_record([a.as_str(), b.as_str(), &r, &m.n.to_string()])
                    .expect("in-memory csv write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 csv")
    }

    pub fn scatter_json(&self) -> Option<String> {
        #[derive(Serialize)]
        struct Scatter<'a> {
            x: &'static str,
            y: &'static str,
            size: &'static str,
            color: &'static str,
            points: &'a [ScatterPoint],
        }
        self.scatter.as_ref().map(|points| {
            serde_json::to_string_pretty(&Scatter {
                x: "tr_pct",
                y: "mmlu_score",
                size: "params_billions",
                color: "pure_pct",
                points,
            })
            .expect("scatter serializes")
        })
    }
}

/// Heatmap data over `metrics` (every metric all records share, if empty)
/// plus the scatter series for records that have an MMLU score.
pub fn emit_plot_data(records: &[MetricRecord], metrics: &[Metric]) -> Result<PlotData> {
    let metrics = if metrics.is_empty() {
        available_metrics(records)
    } else {
        metrics.to_vec()
    };
    let matrix = correlation_matrix(records, &metrics)?;
    let mut warnings = Vec::new();
    let points: Vec<ScatterPoint> = records
        .iter()
        .filter_map(|r| {
            Some(ScatterPoint {
                label: r.tokenizer_name.clone(),
                x: r.tr_pct,
                y: r.mmlu_score?,
                size: r.params_billions,
                color: r.pure_pct,
            })
        })
        .collect();
    let scatter = if points.is_empty() {
        warnings.push("scatter omitted: no record has an MMLU score".to_string());
        None
    } else {
        if points.len() < records.len() {
            warnings.push(format!(
                "scatter skips {} record(s) without an MMLU score",
                records.len() - points.len()
            ));
        }
        if points.iter().any(|p| p.size.is_none()) {
            warnings.push("some scatter points have no parameter count".to_string());
        }
        Some(points)
    };
    Ok(PlotData {
        matrix,
        scatter,
        warnings,
    })
}
