//! Config ingestion, deterministic run execution, condition sweeps, CSV
//! persistence and statistical analysis.

pub mod analyze;
pub mod config;
pub mod results_io;
pub mod run;
pub mod svg;
pub mod sweep;

pub use analyze::{
    analyze, condition_samples, final_window_mean, metric_accessor, write_report, AnalysisReport,
    AnalyzeError, ConditionSummary, MetricStat, PairTest, FIGURES, FINAL_WINDOW, METRICS,
};
pub use config::{
    load_config, load_sweep_config, validate, ConfigError, ExperimentConfig, SweepAxes,
    CONFIG_KEYS,
};
pub use results_io::{read_results, write_results, ResultsError, RESULTS_HEADER};
pub use run::{run_simulation, RoundRow, RunResult};
pub use sweep::{
    conditions_from_axes, derive_run_seed, paper_conditions, run_sweep, ConditionSpec,
    BASELINE_CONDITION, P_INTRA_LEVELS,
};
