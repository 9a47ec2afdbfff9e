//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them all).
//!
//! Criteria 1–7 share a single desk-scale sweep: the ten-condition
//! replication grid at 100 runs per condition, computed once and reused.

use std::sync::OnceLock;

use indexmap::IndexMap;

use lew_core::experiment::{
    analyze, condition_samples, conditions_from_axes, metric_accessor, paper_conditions,
    run_simulation, run_sweep, write_results, ExperimentConfig, RunResult, SweepAxes,
    BASELINE_CONDITION, FINAL_WINDOW,
};
use lew_core::ids::{AgentId, EventRef, TokenId};
use lew_core::interaction::{run_interaction, InteractionParams};
use lew_core::lexicon::{AgentState, Form, Lexicon, Meaning, Phoneme};
use lew_core::metrics::score_interaction;
use lew_core::society::{build_population, select_pair, SelectionParams};
use lew_core::stats::{chi_square_gof_p, welch_t_test};
use lew_core::world::{build_world, random_segmentation, WorldConfig};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RUNS_PER_CONDITION: usize = 100;
const MASTER_SEED: u64 = 42;

const NOMALE_LEVELS: [&str; 5] = [
    "nomale_p000",
    "nomale_p033",
    "nomale_p050",
    "nomale_p080",
    "nomale_p100",
];
const MALE_LEVELS: [&str; 5] = [
    "male_p000",
    "male_p033",
    "male_p050",
    "male_p080",
    "male_p100",
];

fn desk_scale_results() -> &'static Vec<RunResult> {
    static RESULTS: OnceLock<Vec<RunResult>> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let conditions = paper_conditions(&ExperimentConfig::default());
        run_sweep(&conditions, RUNS_PER_CONDITION, MASTER_SEED, 0, None)
            .expect("desk-scale sweep")
    })
}

fn samples(metric: &str) -> IndexMap<String, Vec<f64>> {
    condition_samples(
        desk_scale_results(),
        metric_accessor(metric).expect("known metric"),
        FINAL_WINDOW,
    )
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn pooled(map: &IndexMap<String, Vec<f64>>, ids: &[&str]) -> Vec<f64> {
    ids.iter().flat_map(|id| map[*id].iter().copied()).collect()
}

/// Print the verdict line and fail the test afterwards if needed.
fn verdict(criterion: &str, pass: bool, detail: String) {
    println!(
        "{}: criterion {criterion} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_01_isolation_raises_communication_success() {
    let f1 = samples("f1_implicit");
    let means: Vec<f64> = NOMALE_LEVELS.iter().map(|id| mean(&f1[*id])).collect();
    let strictly_increasing = means.windows(2).all(|w| w[1] > w[0]);
    let test = welch_t_test(&f1["nomale_p100"], &f1["nomale_p000"]).unwrap();
    let pass = strictly_increasing && test.t > 0.0 && test.p < 0.001;
    verdict(
        "1 (isolation effect)",
        pass,
        format!(
            "no-male F1 means {:?} strictly increasing: {strictly_increasing}; p100 vs p000 t={:.2}, p={:.2e}",
            means.iter().map(|m| (m * 1000.0).round() / 1000.0).collect::<Vec<_>>(),
            test.t,
            test.p
        ),
    );
}

#[test]
fn criterion_02_male_presence_penalizes_success() {
    let f1 = samples("f1_implicit");
    let test = welch_t_test(&f1["male_p033"], &f1["nomale_p033"]).unwrap();
    let pass = test.t < 0.0 && test.p < 0.01;
    verdict(
        "2 (male penalty)",
        pass,
        format!(
            "F1 at p_intra=1/3: male {:.4} vs no-male {:.4}, t={:.2}, p={:.4}",
            mean(&f1["male_p033"]),
            mean(&f1["nomale_p033"]),
            test.t,
            test.p
        ),
    );
}

#[test]
fn criterion_03_male_lexicon_outgrows_members() {
    let male_size = samples("male_lexicon_size");
    let member_size = samples("mean_agent_lexicon_size");
    let each_condition = MALE_LEVELS
        .iter()
        .all(|id| mean(&male_size[*id]) > mean(&member_size[*id]));
    let test = welch_t_test(
        &pooled(&male_size, &MALE_LEVELS),
        &pooled(&member_size, &MALE_LEVELS),
    )
    .unwrap();
    let pass = each_condition && test.t > 0.0 && test.p < 0.001;
    verdict(
        "3 (male lexicon inflation)",
        pass,
        format!(
            "male larger in every male condition: {each_condition}; pooled t={:.2}, p={:.2e}",
            test.t, test.p
        ),
    );
}

#[test]
fn criterion_04_members_learn_less_under_a_male() {
    // Matched p_intra levels on both sides, pooled across the five levels.
    let size = samples("mean_agent_lexicon_size");
    let with_male = pooled(&size, &MALE_LEVELS);
    let without = pooled(&size, &NOMALE_LEVELS);
    let test = welch_t_test(&with_male, &without).unwrap();
    let pass = test.t < 0.0 && test.p < 0.01;
    verdict(
        "4 (member lexicon shrinkage)",
        pass,
        format!(
            "member lexicon size: with male {:.1} vs without {:.1}, t={:.2}, p={:.2e}",
            mean(&with_male),
            mean(&without),
            test.t,
            test.p
        ),
    );
}

#[test]
fn criterion_05_homonymy_splits_between_agent_and_global() {
    let agent = samples("mean_agent_homonymy");
    let global = samples("global_homonymy");
    let agent_test = welch_t_test(&agent["nomale_p100"], &agent["nomale_p033"]).unwrap();
    let global_test = welch_t_test(&global["nomale_p100"], &global["nomale_p033"]).unwrap();
    let pass = agent_test.t > 0.0
        && agent_test.p < 0.01
        && global_test.t < 0.0
        && global_test.p < 0.01;
    verdict(
        "5 (homonymy split)",
        pass,
        format!(
            "agent homonymy up t={:.2} p={:.4}; global homonymy down t={:.2} p={:.4}",
            agent_test.t, agent_test.p, global_test.t, global_test.p
        ),
    );
}

#[test]
fn criterion_06_isolated_groups_hold_smaller_leaner_lexicons() {
    let size = samples("mean_agent_lexicon_size");
    let syn = samples("mean_agent_synonymy");
    let size_test = welch_t_test(&size["nomale_p100"], &size[BASELINE_CONDITION]).unwrap();
    let syn_test = welch_t_test(&syn["nomale_p100"], &syn[BASELINE_CONDITION]).unwrap();
    let pass =
        size_test.t < 0.0 && size_test.p < 0.01 && syn_test.t < 0.0 && syn_test.p < 0.01;
    verdict(
        "6 (isolated-group lexicon/synonymy)",
        pass,
        format!(
            "size t={:.2} p={:.4}; synonymy t={:.2} p={:.4} (p100 vs baseline)",
            size_test.t, size_test.p, syn_test.t, syn_test.p
        ),
    );
}

#[test]
fn criterion_07_global_synonymy_shows_no_forced_trend() {
    let report = analyze(desk_scale_results(), BASELINE_CONDITION).unwrap();
    let max_adjacent_p = report
        .adjacent_tests
        .iter()
        .filter(|t| t.metric == "global_synonymy")
        .filter_map(|t| t.outcome.as_ref().ok().map(|w| w.p))
        .fold(f64::NEG_INFINITY, f64::max);
    let pass = max_adjacent_p > 0.05;
    verdict(
        "7 (global synonymy null)",
        pass,
        format!("largest adjacent-level p = {max_adjacent_p:.3}"),
    );
}

#[test]
fn criterion_08_partner_selection_matches_the_probability_table() {
    const DRAWS: usize = 1_000_000;
    const TOLERANCE: f64 = 0.005;
    let mut pass = true;
    let mut details = Vec::new();

    for (p_male, p_intra, male_present, seed) in [
        (0.2, 0.8, true, 1u64),
        (0.0, 1.0 / 3.0, false, 2),
        (0.2, 1.0, true, 3),
    ] {
        let total = if male_present { 10 } else { 9 };
        let pop = build_population(total, male_present, &[1.0 / 3.0; 3]).unwrap();
        let params = SelectionParams { p_male, p_intra };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        // Hearer-category tallies for non-male speakers, bucketed by the
        // speaker's group, plus the male-speaker row.
        let n_groups = 3usize;
        let mut speaker_draws = vec![0u64; n_groups];
        let mut to_male = vec![0u64; n_groups];
        let mut to_own = vec![0u64; n_groups];
        let mut to_other = vec![vec![0u64; n_groups]; n_groups];
        let mut male_spoke = 0u64;
        let mut male_to_member = vec![0u64; total];

        for _ in 0..DRAWS {
            let (s, h) = select_pair(&pop, &params, &mut rng);
            if Some(s) == pop.male() {
                male_spoke += 1;
                assert_ne!(h, s, "male never self-talks");
                male_to_member[h.0] += 1;
                continue;
            }
            let sg = pop.group_of(s).unwrap();
            speaker_draws[sg] += 1;
            if Some(h) == pop.male() {
                to_male[sg] += 1;
            } else {
                let hg = pop.group_of(h).unwrap();
                if hg == sg {
                    to_own[sg] += 1;
                } else {
                    to_other[sg][hg] += 1;
                }
            }
        }

        let expect_own = (1.0 - p_male) * p_intra;
        let expect_other = (1.0 - p_male) * (1.0 - p_intra) / (n_groups as f64 - 1.0);
        for sg in 0..n_groups {
            let n = speaker_draws[sg] as f64;
            let male_freq = to_male[sg] as f64 / n;
            let own_freq = to_own[sg] as f64 / n;
            if (male_freq - p_male).abs() > TOLERANCE || (own_freq - expect_own).abs() > TOLERANCE
            {
                pass = false;
            }
            for hg in 0..n_groups {
                if hg == sg {
                    continue;
                }
                let freq = to_other[sg][hg] as f64 / n;
                if (freq - expect_other).abs() > TOLERANCE {
                    pass = false;
                }
            }
        }
        if male_present {
            // Male hearers are uniform over the nine members.
            for member in 0..total - 1 {
                let freq = male_to_member[member] as f64 / male_spoke as f64;
                if (freq - 1.0 / 9.0).abs() > TOLERANCE {
                    pass = false;
                }
            }
        }
        details.push(format!(
            "(p_male={p_male}, p_intra={p_intra:.2}): own {:.4} vs {expect_own:.4}",
            to_own.iter().sum::<u64>() as f64 / speaker_draws.iter().sum::<u64>() as f64
        ));
    }

    verdict(
        "8 (selection distribution)",
        pass,
        format!("{} within ±{TOLERANCE}", details.join("; ")),
    );
}

fn test_world(seed: u64) -> lew_core::world::World {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_world(&ExperimentConfig::default().world_config(), &mut rng).unwrap()
}

#[test]
fn criterion_09_mechanism_unit_checks() {
    // (a) Segmentation uniformity: k = 4, 8 outcomes, chi-square p > 0.001.
    let tokens: Vec<TokenId> = (0..4).map(TokenId).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut counts = std::collections::HashMap::new();
    const SEG_DRAWS: usize = 100_000;
    for _ in 0..SEG_DRAWS {
        let shape: Vec<usize> = random_segmentation(&tokens, 0.5, &mut rng)
            .iter()
            .map(|c| c.len())
            .collect();
        *counts.entry(shape).or_insert(0u64) += 1;
    }
    let observed: Vec<u64> = counts.values().copied().collect();
    let expected = vec![SEG_DRAWS as f64 / 8.0; observed.len()];
    let seg_p = if observed.len() == 8 {
        chi_square_gof_p(&observed, &expected).unwrap()
    } else {
        0.0
    };
    let seg_ok = seg_p > 0.001;

    // (b) A seeded self-talk bout that maps two meanings to one form.
    let world = test_world(5);
    let params = InteractionParams::default();
    let mut homonym_seed = None;
    for seed in 0..500u64 {
        let mut agents = vec![AgentState::new(AgentId(0))];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        run_interaction(
            &world,
            &mut agents,
            AgentId(0),
            AgentId(0),
            &params,
            EventRef(0),
            &mut rng,
        );
        if agents[0].lexicon.metrics().homonymy > 1.0 {
            homonym_seed = Some(seed);
            break;
        }
    }

    // (c) Noiseless channel over 10^4 random bouts.
    let mut agents = vec![AgentState::new(AgentId(0)), AgentState::new(AgentId(1))];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut noiseless = true;
    for bout in 0..10_000u64 {
        let (s, h) = if bout % 4 == 0 { (0, 0) } else { ((bout % 2) as usize, ((bout + 1) % 2) as usize) };
        let rec = run_interaction(
            &world,
            &mut agents,
            AgentId(s),
            AgentId(h),
            &params,
            EventRef(bout),
            &mut rng,
        );
        let spoken: Vec<Phoneme> = rec
            .speaker_words
            .iter()
            .flat_map(|w| w.phonemes().iter().copied())
            .collect();
        let heard: Vec<Phoneme> = rec
            .hearer_words
            .iter()
            .flat_map(|w| w.phonemes().iter().copied())
            .collect();
        if spoken != heard {
            noiseless = false;
            break;
        }
    }

    // (d) Synchrony plus a shared deterministic lexicon gives F1 = 1. The
    // world is a single nullary event type, so both sides always hold the
    // whole-event chunk; the shared mapping decodes it exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let tiny_world = build_world(
        &WorldConfig {
            animates: 1,
            inanimates: 1,
            event_types: 1,
            zipf_exponent: 1.0,
            max_depth: 0,
            phonemes: 41,
        },
        &mut rng,
    )
    .unwrap();
    let sync = InteractionParams {
        synchrony: true,
        ..InteractionParams::default()
    };
    let predicate = tiny_world.event_types()[0].predicate;
    let shared_meaning = Meaning::new(vec![predicate]);
    let shared_form = Form::new(vec![Phoneme(3), Phoneme(7)]);
    let mut shared = Lexicon::new();
    for _ in 0..5 {
        shared.add_or_reinforce(&shared_meaning, &shared_form);
    }
    let mut agents: Vec<AgentState> = (0..2).map(|i| AgentState::new(AgentId(i))).collect();
    for a in agents.iter_mut() {
        a.lexicon = shared.clone();
    }
    let mut synchrony_f1_one = true;
    for bout in 0..200u64 {
        let rec = run_interaction(
            &tiny_world,
            &mut agents,
            AgentId((bout % 2) as usize),
            AgentId(((bout + 1) % 2) as usize),
            &sync,
            EventRef(bout),
            &mut rng,
        );
        if (score_interaction(&rec).implicit_f1 - 1.0).abs() > 1e-12 {
            synchrony_f1_one = false;
            break;
        }
    }

    let pass = seg_ok && homonym_seed.is_some() && noiseless && synchrony_f1_one;
    verdict(
        "9 (mechanism unit checks)",
        pass,
        format!(
            "segmentation chi-square p={seg_p:.3}; self-talk homonym seed={homonym_seed:?}; \
             noiseless={noiseless}; synchrony F1=1: {synchrony_f1_one}"
        ),
    );
}

#[test]
fn criterion_10_determinism_and_roundtrip() {
    // Byte-identical CSVs at parallelism 1 and 8.
    let base = ExperimentConfig {
        rounds: 12,
        interactions_per_round: 5,
        ..ExperimentConfig::default()
    };
    let conditions = conditions_from_axes(
        &base,
        &SweepAxes {
            male_present: vec![false, true],
            p_intra: vec![1.0 / 3.0, 1.0],
        },
    );
    let dir = tempfile::tempdir().unwrap();
    let serial_path = dir.path().join("serial.csv");
    let parallel_path = dir.path().join("parallel.csv");
    let serial = run_sweep(&conditions, 4, MASTER_SEED, 1, None).unwrap();
    let parallel = run_sweep(&conditions, 4, MASTER_SEED, 8, None).unwrap();
    write_results(&serial, &serial_path).unwrap();
    write_results(&parallel, &parallel_path).unwrap();
    let bytes_equal =
        std::fs::read(&serial_path).unwrap() == std::fs::read(&parallel_path).unwrap();

    // Lossless read-back.
    let roundtrip = lew_core::experiment::read_results(&serial_path).unwrap() == serial;

    // Repeating a single run reproduces it field for field.
    let rerun_equal =
        run_simulation(&base, 99).unwrap() == run_simulation(&base, 99).unwrap();

    // The hand-derived Welch example.
    let a = [1.0, 2.0, 3.0, 4.0, 5.0];
    let b = [3.0, 4.0, 5.0, 6.0, 7.0];
    let w = welch_t_test(&a, &b).unwrap();
    let welch_ok =
        (w.t - -2.0).abs() < 1e-12 && (w.df - 8.0).abs() < 1e-12 && (w.p - 0.0805).abs() < 1e-4;

    let pass = bytes_equal && roundtrip && rerun_equal && welch_ok;
    verdict(
        "10 (determinism and round-trip)",
        pass,
        format!(
            "csv bytes equal at jobs 1 vs 8: {bytes_equal}; roundtrip: {roundtrip}; \
             rerun equal: {rerun_equal}; welch example t={:.2} df={:.1} p={:.5}",
            w.t, w.df, w.p
        ),
    );
}
