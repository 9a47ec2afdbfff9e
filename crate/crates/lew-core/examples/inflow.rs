use lew_core::experiment::{derive_run_seed, ExperimentConfig};
use lew_core::ids::{AgentId, EventRef};
use lew_core::interaction::{decode, hearer_segment, produce};
use lew_core::lexicon::{AgentState, Form, Phoneme};
use lew_core::metrics::population_metrics;
use lew_core::society::{build_population, select_pair, SelectionParams};
use lew_core::world::{build_world, random_segmentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Reimplements the bout loop with instrumentation counters.
fn run(config: &ExperimentConfig, seed: u64) -> ([f64; 4], f64, f64, f64) {
    let mut wrng = ChaCha8Rng::seed_from_u64(seed);
    wrng.set_stream(0);
    let world = build_world(&config.world_config(), &mut wrng).unwrap();
    let pop = build_population(config.total_agents, config.male_present, &config.ratios).unwrap();
    let mut agents: Vec<AgentState> = pop.agent_ids().map(AgentState::new).collect();
    let sel = SelectionParams { p_male: config.p_male, p_intra: config.p_intra };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);

    // [speaker-invention, hearer-fallback-self, hearer-fallback-hetero, hearer-known-new?]
    let mut created = [0.0f64; 4];
    for _round in 0..config.rounds {
        for _ in 0..config.interactions_per_round {
            let (s, h) = select_pair(&pop, &sel, &mut rng);
            let idx = world.sample_event_type(&mut rng);
            let event = world.instantiate_event(idx, 0, &mut rng);
            let tokens = world.linearize(&event);
            let chunks = random_segmentation(tokens.tokens(), config.boundary_prob, &mut rng);
            let production = produce(&agents[s.0].lexicon, &chunks, world.phoneme_inventory(), &mut rng);
            let utterance: Vec<Phoneme> = production.words.iter().flat_map(|w| w.phonemes().iter().copied()).collect();
            let mut bounds = vec![0usize];
            let mut acc = 0;
            for w in &production.words { acc += w.len(); bounds.push(acc); }
            let hearer_words: Vec<Form> = hearer_segment(&utterance, config.synchrony, &bounds, config.boundary_prob, &mut rng);
            let own = random_segmentation(tokens.tokens(), config.boundary_prob, &mut rng);
            let decoded = decode(&agents[h.0].lexicon, &hearer_words, &own, &mut rng);

            for (m, f) in &production.updates {
                if agents[s.0].lexicon.weight(m, f).is_none() {
                    created[0] += 1.0;
                }
                agents[s.0].lexicon.add_or_reinforce(m, f);
            }
            for (d, w) in decoded.iter().zip(&hearer_words) {
                if d.from_lexicon && !config.hearer_reinforce_retrievals { continue; }
                if agents[h.0].lexicon.weight(&d.meaning, w).is_none() {
                    if !d.from_lexicon {
                        created[if s == h { 1 } else { 2 }] += 1.0;
                    } else {
                        created[3] += 1.0;
                    }
                }
                agents[h.0].lexicon.add_or_reinforce(&d.meaning, w);
            }
            agents[s.0].knowledge_base.push(EventRef(0));
        }
        for a in &mut agents {
            a.lexicon.decay_all(config.decay_lambda, config.prune_epsilon);
        }
    }
    let snap = population_metrics(&agents, &pop);
    let mut pairs = std::collections::HashSet::new();
    let mut forms = std::collections::HashSet::new();
    for a in &agents {
        for (m, f, _) in a.lexicon.iter() {
            pairs.insert((m.clone(), f.clone()));
            forms.insert(f.clone());
        }
    }
    (created, snap.mean_agent_lexicon_size, pairs.len() as f64, forms.len() as f64)
}

fn main() {
    let runs = 30;
    for (tag, cfg) in [
        ("D 4+4 d2 slow", ExperimentConfig { animates: 4, inanimates: 4, decay_lambda: 0.99, prune_epsilon: 0.02, ..ExperimentConfig::default() }),
        ("E 2+2 d1", ExperimentConfig { animates: 2, inanimates: 2, max_depth: 1, decay_lambda: 0.98, prune_epsilon: 0.05, ..ExperimentConfig::default() }),
        ("default", ExperimentConfig::default()),
    ] {
        for p in [1.0 / 3.0, 1.0] {
            let config = ExperimentConfig { p_intra: p, ..cfg.clone() };
            let mut created = [0.0; 4];
            let (mut size, mut pairs, mut forms) = (0.0, 0.0, 0.0);
            for r in 0..runs {
                let (c, s, pr, fo) = run(&config, derive_run_seed(3, 0, r));
                for i in 0..4 { created[i] += c[i] / runs as f64; }
                size += s / runs as f64;
                pairs += pr / runs as f64;
                forms += fo / runs as f64;
            }
            println!("[{tag} p={p:.2}] created: invent={:.0} self-fb={:.0} hetero-fb={:.0} known-new={:.0} | size={size:.0} union_pairs={pairs:.0} union_forms={forms:.0} ghom={:.2}",
                created[0], created[1], created[2], created[3], pairs / forms);
        }
    }
}
