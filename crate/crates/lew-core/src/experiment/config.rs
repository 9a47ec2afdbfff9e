//! Experiment configuration: line-based `key = value` files, defaults and
//! validation.

use thiserror::Error;

use crate::lexicon::MAX_PHONEME_INVENTORY;
use crate::society::PopulationError;
use crate::world::{WorldConfig, WorldError};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },
}

impl From<WorldError> for ConfigError {
    fn from(err: WorldError) -> Self {
        let key = match err {
            WorldError::InvalidParam { name, .. } => name,
            WorldError::EmptyEntityPool(crate::world::Sort::Animate) => "animates",
            WorldError::EmptyEntityPool(_) => "inanimates",
            WorldError::NoRecursionBase => "event_types",
        };
        ConfigError::Invalid {
            key,
            reason: err.to_string(),
        }
    }
}

impl From<PopulationError> for ConfigError {
    fn from(err: PopulationError) -> Self {
        ConfigError::Invalid {
            key: "ratios",
            reason: err.to_string(),
        }
    }
}

/// All simulation parameters with their defaults. An empty config file
/// yields exactly this (the three-equal-groups, no-male baseline).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub total_agents: usize,
    pub male_present: bool,
    pub n_groups: usize,
    pub ratios: Vec<f64>,
    pub p_male: f64,
    pub p_intra: f64,
    pub event_types: usize,
    pub zipf_s: f64,
    pub phonemes: u16,
    pub animates: usize,
    pub inanimates: usize,
    pub max_depth: u32,
    pub boundary_prob: f64,
    pub synchrony: bool,
    pub hearer_reinforce_retrievals: bool,
    pub decay_lambda: f64,
    pub prune_epsilon: f64,
    pub rounds: usize,
    pub interactions_per_round: usize,
    pub runs: usize,
    pub master_seed: u64,
    pub record_cadence: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            total_agents: 9,
            male_present: false,
            n_groups: 3,
            ratios: vec![1.0 / 3.0; 3],
            p_male: 0.0,
            p_intra: 1.0 / 3.0,
            event_types: 100,
            zipf_s: 1.0,
            phonemes: 41,
            animates: 10,
            inanimates: 10,
            max_depth: 2,
            boundary_prob: 0.5,
            synchrony: false,
            hearer_reinforce_retrievals: true,
            decay_lambda: 0.95,
            prune_epsilon: 0.1,
            rounds: 200,
            interactions_per_round: 10,
            runs: 600,
            master_seed: 42,
            record_cadence: 1,
        }
    }
}

/// (key, default, description) for every config key, in file order. Doubles
/// as the CLI help source.
pub const CONFIG_KEYS: [(&str, &str, &str); 22] = [
    ("total_agents", "9", "population size, male included"),
    ("male_present", "false", "add one hub agent outside all groups"),
    ("n_groups", "3", "number of groups the non-male agents split into"),
    ("ratios", "1/3,1/3,1/3", "group size ratios (must yield whole agents)"),
    ("p_male", "0.2 when male_present, else 0", "chance a non-male speaker addresses the male"),
    ("p_intra", "1/3", "chance of an own-group hearer, given not the male"),
    ("event_types", "100", "number of event types"),
    ("zipf_s", "1", "event type frequency exponent (rank^-s)"),
    ("phonemes", "41", "phoneme inventory size"),
    ("animates", "10", "animate entity pool size"),
    ("inanimates", "10", "inanimate entity pool size"),
    ("max_depth", "2", "event nesting cutoff"),
    ("boundary_prob", "0.5", "chance of a boundary at each junction when segmenting"),
    ("synchrony", "false", "hearer reuses the speaker's word boundaries"),
    ("hearer_reinforce_retrievals", "true", "hearer reinforces retrieved mappings too"),
    ("decay_lambda", "0.95", "per-round multiplicative weight decay"),
    ("prune_epsilon", "0.1", "drop mappings whose weight falls below this"),
    ("rounds", "200", "rounds per run"),
    ("interactions_per_round", "10", "bouts per round"),
    ("runs", "600", "runs per condition"),
    ("master_seed", "42", "seed that all run seeds derive from"),
    ("record_cadence", "1", "record metrics every this many rounds"),
];

/// Values swept over by the `sweep` command; the cartesian product of the
/// axes (each defaulting to the base config's single value) defines the
/// condition grid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepAxes {
    pub male_present: Vec<bool>,
    pub p_intra: Vec<f64>,
}

impl ExperimentConfig {
    /// Stable condition label derived from the two experiment factors,
    /// e.g. `nomale_p033` or `male_p100`.
    pub fn condition_label(&self) -> String {
        format!(
            "{}_p{:03}",
            if self.male_present { "male" } else { "nomale" },
            (self.p_intra * 100.0).round() as u32
        )
    }

    pub fn world_config(&self) -> WorldConfig {
        WorldConfig {
            animates: self.animates,
            inanimates: self.inanimates,
            event_types: self.event_types,
            zipf_exponent: self.zipf_s,
            max_depth: self.max_depth,
            phonemes: self.phonemes,
        }
    }
}

/// Parse and validate a config file; missing keys take their defaults.
pub fn load_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let (config, axes) = parse(text, false)?;
    debug_assert!(axes.male_present.is_empty() && axes.p_intra.is_empty());
    Ok(config)
}

/// Like [`load_config`] but also accepts the `sweep_*` axis keys.
pub fn load_sweep_config(text: &str) -> Result<(ExperimentConfig, SweepAxes), ConfigError> {
    parse(text, true)
}

fn parse(text: &str, allow_axes: bool) -> Result<(ExperimentConfig, SweepAxes), ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut axes = SweepAxes::default();
    let mut p_male_set = false;
    let mut ratios_set = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let Some((key, value)) = stripped.split_once('=') else {
            return Err(ConfigError::Parse {
                line,
                message: format!("expected `key = value`, got `{stripped}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "total_agents" => cfg.total_agents = parse_num(key, value, line)?,
            "male_present" => cfg.male_present = parse_bool(key, value, line)?,
            "n_groups" => cfg.n_groups = parse_num(key, value, line)?,
            "ratios" => {
                cfg.ratios = parse_real_list(key, value, line)?;
                ratios_set = true;
            }
            "p_male" => {
                cfg.p_male = parse_real(key, value, line)?;
                p_male_set = true;
            }
            "p_intra" => cfg.p_intra = parse_real(key, value, line)?,
            "event_types" => cfg.event_types = parse_num(key, value, line)?,
            "zipf_s" => cfg.zipf_s = parse_real(key, value, line)?,
            "phonemes" => cfg.phonemes = parse_num(key, value, line)?,
            "animates" => cfg.animates = parse_num(key, value, line)?,
            "inanimates" => cfg.inanimates = parse_num(key, value, line)?,
            "max_depth" => cfg.max_depth = parse_num(key, value, line)?,
            "boundary_prob" => cfg.boundary_prob = parse_real(key, value, line)?,
            "synchrony" => cfg.synchrony = parse_bool(key, value, line)?,
            "hearer_reinforce_retrievals" => {
                cfg.hearer_reinforce_retrievals = parse_bool(key, value, line)?
            }
            "decay_lambda" => cfg.decay_lambda = parse_real(key, value, line)?,
            "prune_epsilon" => cfg.prune_epsilon = parse_real(key, value, line)?,
            "rounds" => cfg.rounds = parse_num(key, value, line)?,
            "interactions_per_round" => cfg.interactions_per_round = parse_num(key, value, line)?,
            "runs" => cfg.runs = parse_num(key, value, line)?,
            "master_seed" => cfg.master_seed = parse_num(key, value, line)?,
            "record_cadence" => cfg.record_cadence = parse_num(key, value, line)?,
            "sweep_p_intra" if allow_axes => {
                axes.p_intra = parse_real_list(key, value, line)?;
            }
            "sweep_male_present" if allow_axes => {
                axes.male_present = value
                    .split(',')
                    .map(|v| parse_bool(key, v.trim(), line))
                    .collect::<Result<_, _>>()?;
            }
            other => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: other.to_string(),
                })
            }
        }
    }

    if !ratios_set {
        cfg.ratios = vec![1.0 / cfg.n_groups.max(1) as f64; cfg.n_groups.max(1)];
    }
    if cfg.male_present && !p_male_set {
        cfg.p_male = 0.2;
    }
    validate(&cfg)?;
    Ok((cfg, axes))
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Parse {
        line,
        message: format!("`{key}` expects an integer, got `{value}`"),
    })
}

fn parse_bool(key: &str, value: &str, line: usize) -> Result<bool, ConfigError> {
    match value {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(ConfigError::Parse {
            line,
            message: format!("`{key}` expects a boolean, got `{value}`"),
        }),
    }
}

/// Real numbers accept plain literals and `a/b` fractions (so that thirds
/// stay exact in config files).
fn parse_real(key: &str, value: &str, line: usize) -> Result<f64, ConfigError> {
    let parsed = match value.split_once('/') {
        Some((num, den)) => {
            let n: Result<f64, _> = num.trim().parse();
            let d: Result<f64, _> = den.trim().parse();
            match (n, d) {
                (Ok(n), Ok(d)) if d != 0.0 => Some(n / d),
                _ => None,
            }
        }
        None => value.parse().ok(),
    };
    parsed.ok_or_else(|| ConfigError::Parse {
        line,
        message: format!("`{key}` expects a number, got `{value}`"),
    })
}

fn parse_real_list(key: &str, value: &str, line: usize) -> Result<Vec<f64>, ConfigError> {
    value
        .split(',')
        .map(|v| parse_real(key, v.trim(), line))
        .collect()
}

pub fn validate(cfg: &ExperimentConfig) -> Result<(), ConfigError> {
    let invalid = |key: &'static str, reason: String| Err(ConfigError::Invalid { key, reason });

    if cfg.total_agents == 0 {
        return invalid("total_agents", "must be at least 1".into());
    }
    if cfg.n_groups == 0 {
        return invalid("n_groups", "must be at least 1".into());
    }
    if cfg.ratios.len() != cfg.n_groups {
        return invalid(
            "ratios",
            format!("{} values given for {} groups", cfg.ratios.len(), cfg.n_groups),
        );
    }
    for (key, p) in [
        ("p_male", cfg.p_male),
        ("p_intra", cfg.p_intra),
        ("boundary_prob", cfg.boundary_prob),
    ] {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(ConfigError::Invalid {
                key: match key {
                    "p_male" => "p_male",
                    "p_intra" => "p_intra",
                    _ => "boundary_prob",
                },
                reason: format!("probability must be in [0, 1], got {p}"),
            });
        }
    }
    if !cfg.male_present && cfg.p_male > 0.0 {
        return invalid("p_male", "male-directed rate set but no male present".into());
    }
    if cfg.event_types == 0 {
        return invalid("event_types", "must be at least 1".into());
    }
    if !cfg.zipf_s.is_finite() || cfg.zipf_s < 0.0 {
        return invalid("zipf_s", format!("must be non-negative, got {}", cfg.zipf_s));
    }
    if cfg.phonemes == 0 || cfg.phonemes > MAX_PHONEME_INVENTORY {
        return invalid(
            "phonemes",
            format!("must be in 1..={MAX_PHONEME_INVENTORY}"),
        );
    }
    if !(cfg.decay_lambda > 0.0 && cfg.decay_lambda <= 1.0) {
        return invalid(
            "decay_lambda",
            format!("must be in (0, 1], got {}", cfg.decay_lambda),
        );
    }
    if !cfg.prune_epsilon.is_finite() || cfg.prune_epsilon < 0.0 {
        return invalid(
            "prune_epsilon",
            format!("must be non-negative, got {}", cfg.prune_epsilon),
        );
    }
    if cfg.runs == 0 {
        return invalid("runs", "must be at least 1".into());
    }
    if cfg.record_cadence == 0 {
        return invalid("record_cadence", "must be at least 1".into());
    }
    // Vet the group split early so bad ratios fail at load time.
    crate::society::build_population(cfg.total_agents, cfg.male_present, &cfg.ratios)?;
    Ok(())
}
