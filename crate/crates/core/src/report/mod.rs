//! Correlations, leaderboard tables, and plot data built from metric records.

pub mod leaderboard;
pub mod plot;
pub mod stats;

pub use leaderboard::{leaderboard, thousands, Layout, Table};
pub use plot::{emit_plot_data, PlotData, ScatterPoint};
pub use stats::{
    available_metrics, correlation_matrix, pearson, Correlation, CorrelationMatrix, Metric,
};
