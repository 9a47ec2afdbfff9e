use lew_core::experiment::{derive_run_seed, ExperimentConfig};
use lew_core::ids::EventRef;
use lew_core::interaction::{run_interaction, InteractionParams};
use lew_core::lexicon::AgentState;
use lew_core::metrics::score_interaction;
use lew_core::society::{build_population, select_pair, SelectionParams};
use lew_core::world::build_world;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run_decomposed(config: &ExperimentConfig, seed: u64, window: usize) -> [(f64, f64); 4] {
    // categories: member-member cross, self-talk, male-as-hearer, male-as-speaker
    let mut wrng = ChaCha8Rng::seed_from_u64(seed);
    wrng.set_stream(0);
    let world = build_world(&config.world_config(), &mut wrng).unwrap();
    let pop = build_population(config.total_agents, config.male_present, &config.ratios).unwrap();
    let mut agents: Vec<AgentState> = pop.agent_ids().map(AgentState::new).collect();
    let sel = SelectionParams { p_male: config.p_male, p_intra: config.p_intra };
    let ip = InteractionParams {
        boundary_prob: config.boundary_prob,
        synchrony: config.synchrony,
        hearer_reinforce_retrievals: config.hearer_reinforce_retrievals,
    };
    let mut srng = ChaCha8Rng::seed_from_u64(seed);
    srng.set_stream(1);
    let mut sums = [(0.0f64, 0.0f64); 4];
    let mut bout = 0u64;
    let start_round = config.rounds - window;
    for round in 0..config.rounds {
        for _ in 0..config.interactions_per_round {
            let (s, h) = select_pair(&pop, &sel, &mut srng);
            let rec = run_interaction(&world, &mut agents, s, h, &ip, EventRef(bout), &mut srng);
            bout += 1;
            if round >= start_round {
                let f1 = score_interaction(&rec).implicit_f1;
                let male = pop.male();
                let cat = if Some(h) == male { 2 } else if Some(s) == male { 3 }
                          else if s == h { 1 } else { 0 };
                sums[cat].0 += f1;
                sums[cat].1 += 1.0;
            }
        }
        for a in &mut agents {
            a.lexicon.decay_all(config.decay_lambda, config.prune_epsilon);
        }
    }
    sums
}

fn main() {
    let runs = 60;
    for (tag, config) in [
        ("nomale 10+10 d2", ExperimentConfig::default()),
        ("male   10+10 d2", ExperimentConfig { total_agents: 10, male_present: true, p_male: 0.2, ..ExperimentConfig::default() }),
        ("nomale 2+2 d1", ExperimentConfig { animates: 2, inanimates: 2, max_depth: 1, ..ExperimentConfig::default() }),
        ("male   2+2 d1", ExperimentConfig { total_agents: 10, male_present: true, p_male: 0.2, animates: 2, inanimates: 2, max_depth: 1, ..ExperimentConfig::default() }),
    ] {
        let mut totals = [(0.0, 0.0); 4];
        for r in 0..runs {
            let sums = run_decomposed(&config, derive_run_seed(7, 0, r), 50);
            for i in 0..4 {
                totals[i].0 += sums[i].0;
                totals[i].1 += sums[i].1;
            }
        }
        let avg = |i: usize| if totals[i].1 > 0.0 { totals[i].0 / totals[i].1 } else { f64::NAN };
        let share = |i: usize| totals[i].1 / totals.iter().map(|t| t.1).sum::<f64>();
        println!("[{tag}] cross={:.3}({:.0}%) self={:.3}({:.0}%) male-hear={:.3}({:.0}%) male-speak={:.3}({:.0}%)  overall={:.3}",
            avg(0), share(0)*100.0, avg(1), share(1)*100.0, avg(2), share(2)*100.0, avg(3), share(3)*100.0,
            totals.iter().map(|t| t.0).sum::<f64>() / totals.iter().map(|t| t.1).sum::<f64>());
    }
}
