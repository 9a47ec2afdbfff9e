//! Deterministic execution of a single run: rounds of interactions with
//! per-round decay and metric recording.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ids::EventRef;
use crate::interaction::{run_interaction, InteractionParams};
use crate::lexicon::AgentState;
use crate::metrics::{population_metrics, score_interaction, InteractionScore, PopulationSnapshot};
use crate::society::{build_population, select_pair, SelectionParams};
use crate::world::build_world;

use super::config::{validate, ConfigError, ExperimentConfig};

/// One recorded round: means over the round's interactions plus the
/// population snapshot taken after decay.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRow {
    pub round: u32,
    pub f1_implicit: f64,
    pub implicit_precision: f64,
    pub implicit_recall: f64,
    pub explicit_rate: f64,
    pub seg_correct_rate: f64,
    pub mean_agent_lexicon_size: f64,
    pub male_lexicon_size: Option<f64>,
    pub mean_agent_synonymy: f64,
    pub mean_agent_homonymy: f64,
    pub global_synonymy: f64,
    pub global_homonymy: f64,
    pub shared_mappings: u64,
    pub mean_agents_per_mapping: f64,
}

/// Per-round metric series of one run under one condition.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub run_id: u32,
    pub condition_id: String,
    pub male_present: bool,
    pub p_intra: f64,
    pub rows: Vec<RoundRow>,
}

#[derive(Default)]
struct ScoreAccumulator {
    n: usize,
    f1: f64,
    precision: f64,
    recall: f64,
    explicit: f64,
    seg: f64,
}

impl ScoreAccumulator {
    fn add(&mut self, score: &InteractionScore) {
        self.n += 1;
        self.f1 += score.implicit_f1;
        self.precision += score.implicit_precision;
        self.recall += score.implicit_recall;
        self.explicit += score.explicit_rate;
        self.seg += score.seg_correct_rate;
    }

    fn means(&self) -> (f64, f64, f64, f64, f64) {
        if self.n == 0 {
            return (0.0, 0.0, 0.0, 0.0, 0.0);
        }
        let n = self.n as f64;
        (
            self.f1 / n,
            self.precision / n,
            self.recall / n,
            self.explicit / n,
            self.seg / n,
        )
    }
}

fn make_row(round: u32, acc: &ScoreAccumulator, snap: &PopulationSnapshot) -> RoundRow {
    let (f1, precision, recall, explicit, seg) = acc.means();
    RoundRow {
        round,
        f1_implicit: f1,
        implicit_precision: precision,
        implicit_recall: recall,
        explicit_rate: explicit,
        seg_correct_rate: seg,
        mean_agent_lexicon_size: snap.mean_agent_lexicon_size,
        male_lexicon_size: snap.male_lexicon_size,
        mean_agent_synonymy: snap.mean_agent_synonymy,
        mean_agent_homonymy: snap.mean_agent_homonymy,
        global_synonymy: snap.global_synonymy,
        global_homonymy: snap.global_homonymy,
        shared_mappings: snap.shared_mappings,
        mean_agents_per_mapping: snap.mean_agents_per_mapping,
    }
}

/// Execute one run. World and interaction randomness come from separate
/// streams derived from `run_seed`, so the result is byte-deterministic
/// given (config, seed).
pub fn run_simulation(config: &ExperimentConfig, run_seed: u64) -> Result<RunResult, ConfigError> {
    validate(config)?;

    let mut world_rng = ChaCha8Rng::seed_from_u64(run_seed);
    world_rng.set_stream(0);
    let world = build_world(&config.world_config(), &mut world_rng)?;

    let population = build_population(config.total_agents, config.male_present, &config.ratios)?;
    let mut agents: Vec<AgentState> = population.agent_ids().map(AgentState::new).collect();

    let selection = SelectionParams {
        p_male: config.p_male,
        p_intra: config.p_intra,
    };
    let interaction_params = InteractionParams {
        boundary_prob: config.boundary_prob,
        synchrony: config.synchrony,
        hearer_reinforce_retrievals: config.hearer_reinforce_retrievals,
    };

    let mut sim_rng = ChaCha8Rng::seed_from_u64(run_seed);
    sim_rng.set_stream(1);

    let mut rows = Vec::with_capacity(config.rounds / config.record_cadence);
    let mut bout = 0u64;
    for round in 1..=config.rounds as u32 {
        let mut acc = ScoreAccumulator::default();
        for _ in 0..config.interactions_per_round {
            let (speaker, hearer) = select_pair(&population, &selection, &mut sim_rng);
            let record = run_interaction(
                &world,
                &mut agents,
                speaker,
                hearer,
                &interaction_params,
                EventRef(bout),
                &mut sim_rng,
            );
            acc.add(&score_interaction(&record));
            bout += 1;
        }
        for agent in &mut agents {
            agent
                .lexicon
                .decay_all(config.decay_lambda, config.prune_epsilon);
        }
        if (round as usize).is_multiple_of(config.record_cadence) {
            let snap = population_metrics(&agents, &population);
            rows.push(make_row(round, &acc, &snap));
        }
    }
    debug_assert_eq!(
        bout,
        (config.rounds * config.interactions_per_round) as u64
    );

    Ok(RunResult {
        run_id: 0,
        condition_id: config.condition_label(),
        male_present: config.male_present,
        p_intra: config.p_intra,
        rows,
    })
}
