//! Cross-run analysis: final-window summaries per condition, Welch tests
//! against the baseline and between adjacent intra-group levels, plot data
//! and chart files.

use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use thiserror::Error;

use crate::stats::{mean_sd, welch_t_test, StatsError, WelchTest};

use super::results_io::ResultsError;
use super::run::{RoundRow, RunResult};
use super::svg;

/// Metrics are summarized over the mean of the last this many recorded
/// rounds of each run, damping single-round noise.
pub const FINAL_WINDOW: usize = 10;

pub type MetricAccessor = fn(&RoundRow) -> Option<f64>;

/// Every analyzed metric with its row accessor, in reporting order.
pub const METRICS: [(&str, MetricAccessor); 13] = [
    ("f1_implicit", |r| Some(r.f1_implicit)),
    ("implicit_precision", |r| Some(r.implicit_precision)),
    ("implicit_recall", |r| Some(r.implicit_recall)),
    ("explicit_rate", |r| Some(r.explicit_rate)),
    ("seg_correct_rate", |r| Some(r.seg_correct_rate)),
    ("mean_agent_lexicon_size", |r| Some(r.mean_agent_lexicon_size)),
    ("male_lexicon_size", |r| r.male_lexicon_size),
    ("mean_agent_synonymy", |r| Some(r.mean_agent_synonymy)),
    ("mean_agent_homonymy", |r| Some(r.mean_agent_homonymy)),
    ("global_synonymy", |r| Some(r.global_synonymy)),
    ("global_homonymy", |r| Some(r.global_homonymy)),
    ("shared_mappings", |r| Some(r.shared_mappings as f64)),
    ("mean_agents_per_mapping", |r| Some(r.mean_agents_per_mapping)),
];

pub fn metric_accessor(name: &str) -> Option<MetricAccessor> {
    METRICS
        .iter()
        .find(|(metric, _)| *metric == name)
        .map(|(_, accessor)| *accessor)
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("no results to analyze")]
    Empty,
    #[error("baseline condition `{0}` not present in the results")]
    MissingBaseline(String),
}

/// Mean of a metric over the final window of one run; `None` when the run
/// recorded no value (e.g. male lexicon size without a male).
pub fn final_window_mean(
    result: &RunResult,
    metric: MetricAccessor,
    window: usize,
) -> Option<f64> {
    let skip = result.rows.len().saturating_sub(window);
    let values: Vec<f64> = result.rows[skip..].iter().filter_map(metric).collect();
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Final-window samples (one value per run) grouped by condition, in order
/// of first appearance.
pub fn condition_samples(
    results: &[RunResult],
    metric: MetricAccessor,
    window: usize,
) -> IndexMap<String, Vec<f64>> {
    let mut samples: IndexMap<String, Vec<f64>> = IndexMap::new();
    for result in results {
        let entry = samples.entry(result.condition_id.clone()).or_default();
        if let Some(v) = final_window_mean(result, metric, window) {
            entry.push(v);
        }
    }
    samples
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricStat {
    pub metric: &'static str,
    pub runs: usize,
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSummary {
    pub id: String,
    pub male_present: bool,
    pub p_intra: f64,
    pub runs: usize,
    /// Aligned with [`METRICS`]; `None` when the condition never recorded
    /// the metric.
    pub stats: Vec<Option<MetricStat>>,
}

/// One Welch comparison; degenerate samples carry the error instead of a
/// fabricated number.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTest {
    pub metric: &'static str,
    pub condition_a: String,
    pub condition_b: String,
    pub outcome: Result<WelchTest, StatsError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub baseline: String,
    pub conditions: Vec<ConditionSummary>,
    /// Every non-baseline condition against the baseline, t for
    /// (condition − baseline).
    pub baseline_tests: Vec<PairTest>,
    /// Adjacent p_intra levels within each male setting, t for
    /// (higher − lower level).
    pub adjacent_tests: Vec<PairTest>,
}

pub fn analyze(results: &[RunResult], baseline_id: &str) -> Result<AnalysisReport, AnalyzeError> {
    if results.is_empty() {
        return Err(AnalyzeError::Empty);
    }

    // Condition identity in order of first appearance.
    let mut meta: IndexMap<String, (bool, f64, usize)> = IndexMap::new();
    for result in results {
        let entry = meta
            .entry(result.condition_id.clone())
            .or_insert((result.male_present, result.p_intra, 0));
        entry.2 += 1;
    }
    if !meta.contains_key(baseline_id) {
        return Err(AnalyzeError::MissingBaseline(baseline_id.to_string()));
    }

    let per_metric: Vec<IndexMap<String, Vec<f64>>> = METRICS
        .iter()
        .map(|(_, accessor)| condition_samples(results, *accessor, FINAL_WINDOW))
        .collect();

    let conditions: Vec<ConditionSummary> = meta
        .iter()
        .map(|(id, &(male_present, p_intra, runs))| ConditionSummary {
            id: id.clone(),
            male_present,
            p_intra,
            runs,
            stats: METRICS
                .iter()
                .enumerate()
                .map(|(mi, (metric, _))| {
                    let xs = &per_metric[mi][id];
                    if xs.is_empty() {
                        None
                    } else {
                        let (mean, sd) = mean_sd(xs);
                        Some(MetricStat {
                            metric,
                            runs: xs.len(),
                            mean,
                            sd,
                        })
                    }
                })
                .collect(),
        })
        .collect();

    let mut baseline_tests = Vec::new();
    for (mi, (metric, _)) in METRICS.iter().enumerate() {
        let samples = &per_metric[mi];
        let base = &samples[baseline_id];
        for id in meta.keys() {
            if id == baseline_id {
                continue;
            }
            let xs = &samples[id];
            if xs.is_empty() || base.is_empty() {
                continue;
            }
            baseline_tests.push(PairTest {
                metric,
                condition_a: id.clone(),
                condition_b: baseline_id.to_string(),
                outcome: welch_t_test(xs, base),
            });
        }
    }

    // Conditions ordered by p_intra within each male setting.
    let mut adjacent_tests = Vec::new();
    for male in [false, true] {
        let mut level_ids: Vec<&String> = meta
            .iter()
            .filter(|(_, &(m, _, _))| m == male)
            .map(|(id, _)| id)
            .collect();
        level_ids.sort_by(|a, b| meta[*a].1.partial_cmp(&meta[*b].1).unwrap());
        for pair in level_ids.windows(2) {
            let (lower, higher) = (pair[0], pair[1]);
            for (mi, (metric, _)) in METRICS.iter().enumerate() {
                let samples = &per_metric[mi];
                let (lo, hi) = (&samples[lower], &samples[higher]);
                if lo.is_empty() || hi.is_empty() {
                    continue;
                }
                adjacent_tests.push(PairTest {
                    metric,
                    condition_a: higher.clone(),
                    condition_b: lower.clone(),
                    outcome: welch_t_test(hi, lo),
                });
            }
        }
    }

    Ok(AnalysisReport {
        baseline: baseline_id.to_string(),
        conditions,
        baseline_tests,
        adjacent_tests,
    })
}

/// The six reported figures: (file stem, metric, chart title).
pub const FIGURES: [(&str, &str, &str); 6] = [
    ("fig1a", "f1_implicit", "Communication success (implicit F1)"),
    ("fig1b", "mean_agent_lexicon_size", "Agent lexicon size"),
    ("fig2a", "mean_agent_synonymy", "Agent lexicon synonymy"),
    ("fig2b", "mean_agent_homonymy", "Agent lexicon homonymy"),
    ("fig3a", "global_synonymy", "Global lexicon synonymy"),
    ("fig3b", "global_homonymy", "Global lexicon homonymy"),
];

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn test_cells(outcome: Option<&Result<WelchTest, StatsError>>) -> [String; 4] {
    match outcome {
        Some(Ok(t)) => [fmt(t.t), fmt(t.df), fmt(t.p), "ok".into()],
        Some(Err(err)) => [
            String::new(),
            String::new(),
            String::new(),
            match err {
                StatsError::TooFewSamples(..) => "too_few_runs".into(),
                _ => "degenerate".into(),
            },
        ],
        None => Default::default(),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), ResultsError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Write the summary table, the adjacent-level test table, and per-figure
/// plot data CSVs plus SVG line charts. Returns the created paths.
pub fn write_report(report: &AnalysisReport, out_dir: &Path) -> Result<Vec<PathBuf>, ResultsError> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();

    // summary.csv: one row per condition, mean/sd plus baseline t/df/p per metric.
    {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header = vec![
            "condition_id".to_string(),
            "male_present".into(),
            "p_intra".into(),
            "runs".into(),
        ];
        for (metric, _) in METRICS {
            for suffix in ["mean", "sd", "t_vs_baseline", "df", "p", "test_status"] {
                header.push(format!("{metric}_{suffix}"));
            }
        }
        wtr.write_record(&header).map_err(ResultsError::from)?;
        for cond in &report.conditions {
            let mut row = vec![
                cond.id.clone(),
                cond.male_present.to_string(),
                fmt(cond.p_intra),
                cond.runs.to_string(),
            ];
            for (mi, (metric, _)) in METRICS.iter().enumerate() {
                match &cond.stats[mi] {
                    Some(stat) => {
                        row.push(fmt(stat.mean));
                        row.push(fmt(stat.sd));
                    }
                    None => {
                        row.push(String::new());
                        row.push(String::new());
                    }
                }
                let outcome = report
                    .baseline_tests
                    .iter()
                    .find(|t| t.metric == *metric && t.condition_a == cond.id)
                    .map(|t| &t.outcome);
                row.extend(test_cells(outcome));
            }
            wtr.write_record(&row).map_err(ResultsError::from)?;
        }
        let path = out_dir.join("summary.csv");
        write_atomic(&path, &wtr.into_inner().expect("in-memory writer"))?;
        written.push(path);
    }

    // adjacent_tests.csv: long format, one row per (pair, metric).
    {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["metric", "higher", "lower", "t", "df", "p", "status"])
            .map_err(ResultsError::from)?;
        for test in &report.adjacent_tests {
            let cells = test_cells(Some(&test.outcome));
            wtr.write_record([
                test.metric.to_string(),
                test.condition_a.clone(),
                test.condition_b.clone(),
                cells[0].clone(),
                cells[1].clone(),
                cells[2].clone(),
                cells[3].clone(),
            ])
            .map_err(ResultsError::from)?;
        }
        let path = out_dir.join("adjacent_tests.csv");
        write_atomic(&path, &wtr.into_inner().expect("in-memory writer"))?;
        written.push(path);
    }

    // Per-figure plot data and charts: x = p_intra, one series per male setting.
    for (stem, metric, title) in FIGURES {
        let mi = METRICS.iter().position(|(m, _)| *m == metric).unwrap();
        let mut series: Vec<svg::Series> = Vec::new();
        for (male, name) in [(false, "no male"), (true, "male")] {
            let mut points: Vec<(f64, f64, f64)> = report
                .conditions
                .iter()
                .filter(|c| c.male_present == male)
                .filter_map(|c| c.stats[mi].as_ref().map(|s| (c.p_intra, s.mean, s.sd)))
                .collect();
            points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            if !points.is_empty() {
                series.push(svg::Series {
                    name: name.to_string(),
                    points,
                });
            }
        }

        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["p_intra", "nomale_mean", "nomale_sd", "male_mean", "male_sd"])
            .map_err(ResultsError::from)?;
        let mut levels: Vec<f64> = series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.0))
            .collect();
        levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        levels.dedup();
        for level in levels {
            let cell = |male: bool| -> (String, String) {
                series
                    .iter()
                    .find(|s| (s.name == "male") == male)
                    .and_then(|s| s.points.iter().find(|p| p.0 == level))
                    .map(|p| (fmt(p.1), fmt(p.2)))
                    .unwrap_or_default()
            };
            let (nm_mean, nm_sd) = cell(false);
            let (m_mean, m_sd) = cell(true);
            wtr.write_record([fmt(level), nm_mean, nm_sd, m_mean, m_sd])
                .map_err(ResultsError::from)?;
        }
        let csv_path = out_dir.join(format!("{stem}.csv"));
        write_atomic(&csv_path, &wtr.into_inner().expect("in-memory writer"))?;
        written.push(csv_path);

        let chart = svg::line_chart(title, "intra-group communication rate", metric, &series);
        let svg_path = out_dir.join(format!("{stem}.svg"));
        write_atomic(&svg_path, chart.as_bytes())?;
        written.push(svg_path);
    }

    Ok(written)
}
