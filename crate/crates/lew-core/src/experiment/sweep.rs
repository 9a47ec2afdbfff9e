//! Condition grids and parallel, order-stable sweep execution.

use rayon::prelude::*;

use super::config::{validate, ConfigError, ExperimentConfig, SweepAxes};
use super::run::{run_simulation, RunResult};

/// The five intra-group communication levels of the replication preset.
pub const P_INTRA_LEVELS: [f64; 5] = [0.0, 1.0 / 3.0, 0.5, 0.8, 1.0];

/// Condition id of the uniform-hearer baseline (no male, p_intra = 1/3).
pub const BASELINE_CONDITION: &str = "nomale_p033";

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSpec {
    pub id: String,
    pub config: ExperimentConfig,
}

fn condition_with(base: &ExperimentConfig, male: bool, p_intra: f64) -> ConditionSpec {
    let mut config = base.clone();
    config.male_present = male;
    config.p_intra = p_intra;
    config.p_male = if male {
        // Keep an explicit base rate, fall back to the standard 20%.
        if base.male_present && base.p_male > 0.0 {
            base.p_male
        } else {
            0.2
        }
    } else {
        0.0
    };
    if male && !base.male_present {
        config.total_agents = base.total_agents + 1;
    } else if !male && base.male_present {
        config.total_agents = base.total_agents - 1;
    }
    ConditionSpec {
        id: config.condition_label(),
        config,
    }
}

/// The fixed ten-condition replication grid: male absent/present crossed
/// with the five intra-group rates, over otherwise unchanged settings.
pub fn paper_conditions(base: &ExperimentConfig) -> Vec<ConditionSpec> {
    let mut conditions = Vec::with_capacity(10);
    for male in [false, true] {
        for p in P_INTRA_LEVELS {
            conditions.push(condition_with(base, male, p));
        }
    }
    conditions
}

/// Cartesian product of the sweep axes over the base config. Axes left
/// empty contribute the base config's own value.
pub fn conditions_from_axes(base: &ExperimentConfig, axes: &SweepAxes) -> Vec<ConditionSpec> {
    let males: Vec<bool> = if axes.male_present.is_empty() {
        vec![base.male_present]
    } else {
        axes.male_present.clone()
    };
    let p_intras: Vec<f64> = if axes.p_intra.is_empty() {
        vec![base.p_intra]
    } else {
        axes.p_intra.clone()
    };
    let mut conditions = Vec::new();
    for &male in &males {
        for &p in &p_intras {
            conditions.push(condition_with(base, male, p));
        }
    }
    conditions
}

/// splitmix64 finalizer; a stable, dependency-free mixing step.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Run seed as a pure function of (master seed, condition index, run index).
pub fn derive_run_seed(master_seed: u64, condition_index: u64, run_index: u64) -> u64 {
    let mut h = splitmix64(master_seed);
    h = splitmix64(h ^ condition_index);
    splitmix64(h ^ run_index)
}

/// Execute `runs_per_condition` runs of every condition. Results are ordered
/// by (condition, run) regardless of how the work interleaves; the output is
/// identical at any parallelism level. `jobs = 0` uses all cores.
pub fn run_sweep(
    conditions: &[ConditionSpec],
    runs_per_condition: usize,
    master_seed: u64,
    jobs: usize,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<Vec<RunResult>, ConfigError> {
    assert!(!conditions.is_empty(), "sweep needs at least one condition");
    for spec in conditions {
        validate(&spec.config)?;
    }

    let tasks: Vec<(usize, u32)> = (0..conditions.len())
        .flat_map(|ci| (0..runs_per_condition as u32).map(move |ri| (ci, ri)))
        .collect();
    let total = tasks.len();
    let done = std::sync::atomic::AtomicUsize::new(0);

    let execute = |&(ci, ri): &(usize, u32)| -> Result<RunResult, ConfigError> {
        let spec = &conditions[ci];
        let seed = derive_run_seed(master_seed, ci as u64, ri as u64);
        let mut result = run_simulation(&spec.config, seed)?;
        result.run_id = ri;
        result.condition_id = spec.id.clone();
        if let Some(report) = progress {
            let n = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            report(n, total);
        }
        Ok(result)
    };

    if jobs == 1 {
        tasks.iter().map(execute).collect()
    } else if jobs == 0 {
        tasks.par_iter().map(execute).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| tasks.par_iter().map(execute).collect())
    }
}
