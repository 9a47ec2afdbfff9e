//! Scoring: per-interaction understanding rates and population-level lexicon
//! statistics.

use rustc_hash::FxHashMap;

use crate::interaction::InteractionRecord;
use crate::lexicon::{AgentState, Form, LexiconMetrics, Meaning};
use crate::society::Population;

/// Understanding rates for one bout, all in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InteractionScore {
    /// Fraction of speaker words whose span the hearer reproduced exactly.
    pub seg_correct_rate: f64,
    /// Fraction of speaker words that were span-matched and decoded into the
    /// intended meaning.
    pub explicit_rate: f64,
    pub implicit_precision: f64,
    pub implicit_recall: f64,
    pub implicit_f1: f64,
}

/// Population-level lexicon statistics at one point in time. Global values
/// are computed on the deduplicated union of (meaning, form) pairs; means
/// over agents exclude the male, whose lexicon size is reported separately.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationSnapshot {
    pub per_agent: Vec<LexiconMetrics>,
    pub male_lexicon_size: Option<f64>,
    pub mean_agent_lexicon_size: f64,
    pub mean_agent_synonymy: f64,
    pub mean_agent_homonymy: f64,
    pub global_synonymy: f64,
    pub global_homonymy: f64,
    /// Number of (meaning, form) pairs present in every agent's lexicon.
    pub shared_mappings: u64,
    /// Mean, over distinct pairs, of the number of agents holding the pair.
    pub mean_agents_per_mapping: f64,
}

/// Score one bout by comparing the speaker's intended chunks with the
/// hearer's decoded meanings, explicitly (respecting word spans) and
/// implicitly (multiset overlap, F1).
pub fn score_interaction(record: &InteractionRecord) -> InteractionScore {
    let n_speaker = record.speaker_words.len();
    let n_hearer = record.hearer_words.len();
    debug_assert!(n_speaker > 0 && n_hearer > 0);

    // Word spans as (start, end) phoneme indices.
    let speaker_span_index: FxHashMap<(usize, usize), usize> = record
        .speaker_boundaries
        .windows(2)
        .enumerate()
        .map(|(i, w)| ((w[0], w[1]), i))
        .collect();

    let mut span_matched = 0usize;
    let mut explicit = 0usize;
    for (j, w) in record.hearer_boundaries.windows(2).enumerate() {
        if let Some(&i) = speaker_span_index.get(&(w[0], w[1])) {
            span_matched += 1;
            if record.hearer_meanings[j] == record.speaker_chunks[i] {
                explicit += 1;
            }
        }
    }

    // Multiset intersection of intended and understood meanings.
    let mut intended: FxHashMap<&Meaning, usize> = FxHashMap::default();
    for chunk in &record.speaker_chunks {
        *intended.entry(chunk).or_default() += 1;
    }
    let mut matches = 0usize;
    for meaning in &record.hearer_meanings {
        if let Some(count) = intended.get_mut(meaning) {
            if *count > 0 {
                *count -= 1;
                matches += 1;
            }
        }
    }
    let precision = matches as f64 / n_hearer as f64;
    let recall = matches as f64 / n_speaker as f64;
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };

    InteractionScore {
        seg_correct_rate: span_matched as f64 / n_speaker as f64,
        explicit_rate: explicit as f64 / n_speaker as f64,
        implicit_precision: precision,
        implicit_recall: recall,
        implicit_f1: f1,
    }
}

/// Aggregate agent lexicons into a population snapshot.
pub fn population_metrics(agents: &[AgentState], pop: &Population) -> PopulationSnapshot {
    let per_agent: Vec<LexiconMetrics> = agents.iter().map(|a| a.lexicon.metrics()).collect();

    let male = pop.male();
    let mut size_sum = 0.0;
    let mut syn_sum = 0.0;
    let mut hom_sum = 0.0;
    let mut non_male = 0usize;
    let mut male_lexicon_size = None;
    for agent in agents {
        let m = &per_agent[agent.id.0];
        if Some(agent.id) == male {
            male_lexicon_size = Some(m.size as f64);
        } else {
            size_sum += m.size as f64;
            syn_sum += m.synonymy;
            hom_sum += m.homonymy;
            non_male += 1;
        }
    }
    let denom = non_male.max(1) as f64;

    // Union of all pairs with the number of agents holding each; per-agent
    // uniqueness makes one count per agent.
    let mut union: FxHashMap<(&Meaning, &Form), u32> = FxHashMap::default();
    for agent in agents {
        for (meaning, form, _) in agent.lexicon.iter() {
            *union.entry((meaning, form)).or_default() += 1;
        }
    }
    let distinct = union.len();
    let mut meanings: FxHashMap<&Meaning, u32> = FxHashMap::default();
    let mut forms: FxHashMap<&Form, u32> = FxHashMap::default();
    let mut shared = 0u64;
    let mut holder_sum = 0u64;
    for ((meaning, form), holders) in &union {
        *meanings.entry(meaning).or_default() += 1;
        *forms.entry(form).or_default() += 1;
        holder_sum += *holders as u64;
        if *holders as usize == agents.len() {
            shared += 1;
        }
    }

    let (global_synonymy, global_homonymy, mean_agents_per_mapping) = if distinct == 0 {
        (0.0, 0.0, 0.0)
    } else {
        (
            distinct as f64 / meanings.len() as f64,
            distinct as f64 / forms.len() as f64,
            holder_sum as f64 / distinct as f64,
        )
    };

    PopulationSnapshot {
        per_agent,
        male_lexicon_size,
        mean_agent_lexicon_size: size_sum / denom,
        mean_agent_synonymy: syn_sum / denom,
        mean_agent_homonymy: hom_sum / denom,
        global_synonymy,
        global_homonymy,
        shared_mappings: shared,
        mean_agents_per_mapping,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ids::{AgentId, TokenId};
    use crate::lexicon::Phoneme;
    use crate::world::EventInstance;

    fn m(tokens: &[u32]) -> Meaning {
        Meaning::new(tokens.iter().map(|&t| TokenId(t)).collect())
    }

    fn f(phonemes: &[u16]) -> Form {
        Form::new(phonemes.iter().map(|&p| Phoneme(p)).collect())
    }

    fn record(
        speaker_chunks: Vec<Meaning>,
        speaker_words: Vec<Form>,
        hearer_words: Vec<Form>,
        hearer_meanings: Vec<Meaning>,
    ) -> InteractionRecord {
        let bounds = |words: &[Form]| {
            let mut b = vec![0usize];
            let mut acc = 0;
            for w in words {
                acc += w.len();
                b.push(acc);
            }
            b
        };
        InteractionRecord {
            speaker: AgentId(0),
            hearer: AgentId(1),
            event: EventInstance {
                type_index: 0,
                args: vec![],
            },
            speaker_boundaries: bounds(&speaker_words),
            hearer_boundaries: bounds(&hearer_words),
            speaker_chunks,
            speaker_words,
            hearer_words,
            hearer_meanings,
        }
    }

    #[test]
    fn perfect_bout_scores_one_everywhere() {
        let rec = record(
            vec![m(&[1]), m(&[2])],
            vec![f(&[0]), f(&[1, 2])],
            vec![f(&[0]), f(&[1, 2])],
            vec![m(&[1]), m(&[2])],
        );
        let got = score_interaction(&rec);
        assert_eq!(got.seg_correct_rate, 1.0);
        assert_eq!(got.explicit_rate, 1.0);
        assert_eq!(got.implicit_f1, 1.0);
    }

    #[test]
    fn disjoint_meanings_score_zero_f1() {
        let rec = record(
            vec![m(&[1]), m(&[2])],
            vec![f(&[0]), f(&[1])],
            vec![f(&[0]), f(&[1])],
            vec![m(&[8]), m(&[9])],
        );
        let got = score_interaction(&rec);
        assert_eq!(got.implicit_f1, 0.0);
        assert_eq!(got.explicit_rate, 0.0);
        assert_eq!(got.seg_correct_rate, 1.0);
    }

    #[test]
    fn partial_overlap_yields_harmonic_mean() {
        // 3 intended chunks, 2 decoded meanings, 1 shared:
        // precision 1/2, recall 1/3, f1 = 0.4.
        let rec = record(
            vec![m(&[1]), m(&[2]), m(&[3])],
            vec![f(&[0]), f(&[1]), f(&[2])],
            vec![f(&[0, 1]), f(&[2])],
            vec![m(&[1]), m(&[7])],
        );
        let got = score_interaction(&rec);
        assert!((got.implicit_precision - 0.5).abs() < 1e-12);
        assert!((got.implicit_recall - 1.0 / 3.0).abs() < 1e-12);
        assert!((got.implicit_f1 - 0.4).abs() < 1e-12);
    }

    #[test]
    fn explicit_requires_span_match() {
        // Hearer recovers the first word's span but decodes it wrongly, and
        // merges the rest into one unseen span.
        let rec = record(
            vec![m(&[1]), m(&[2]), m(&[3])],
            vec![f(&[0]), f(&[1]), f(&[2])],
            vec![f(&[0]), f(&[1, 2])],
            vec![m(&[9]), m(&[2])],
        );
        let got = score_interaction(&rec);
        assert!((got.seg_correct_rate - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(got.explicit_rate, 0.0);
        assert!(got.explicit_rate <= got.seg_correct_rate);
    }

    #[test]
    fn repeated_meanings_count_with_multiplicity() {
        let rec = record(
            vec![m(&[1]), m(&[1])],
            vec![f(&[0]), f(&[0])],
            vec![f(&[0]), f(&[0])],
            vec![m(&[1]), m(&[1])],
        );
        let got = score_interaction(&rec);
        assert_eq!(got.implicit_f1, 1.0);

        let rec = record(
            vec![m(&[1]), m(&[1])],
            vec![f(&[0]), f(&[0])],
            vec![f(&[0]), f(&[0])],
            vec![m(&[1]), m(&[2])],
        );
        let got = score_interaction(&rec);
        assert!((got.implicit_f1 - 0.5).abs() < 1e-12);
    }

    fn population_of(lexicons: Vec<Vec<(Meaning, Form)>>, male: bool) -> (Vec<AgentState>, Population) {
        let total = lexicons.len();
        let ratios = vec![1.0 / (total - usize::from(male)) as f64; total - usize::from(male)];
        let pop = crate::society::build_population(total, male, &ratios).unwrap();
        let agents = lexicons
            .into_iter()
            .enumerate()
            .map(|(i, pairs)| {
                let mut a = AgentState::new(AgentId(i));
                for (meaning, form) in pairs {
                    a.lexicon.add_or_reinforce(&meaning, &form);
                }
                a
            })
            .collect();
        (agents, pop)
    }

    #[test]
    fn full_consensus_population() {
        let pair = (m(&[1]), f(&[0]));
        let (agents, pop) = population_of(vec![vec![pair.clone()]; 3], false);
        let snap = population_metrics(&agents, &pop);
        assert_eq!(snap.shared_mappings, 1);
        assert_eq!(snap.mean_agents_per_mapping, 3.0);
        assert_eq!(snap.global_synonymy, 1.0);
        assert_eq!(snap.global_homonymy, 1.0);
        assert_eq!(snap.mean_agent_lexicon_size, 1.0);
    }

    #[test]
    fn disjoint_idiolects_share_nothing() {
        let (agents, pop) = population_of(
            vec![vec![(m(&[1]), f(&[0]))], vec![(m(&[2]), f(&[1]))]],
            false,
        );
        let snap = population_metrics(&agents, &pop);
        assert_eq!(snap.shared_mappings, 0);
        assert_eq!(snap.mean_agents_per_mapping, 1.0);
    }

    #[test]
    fn union_synonymy_spans_agents() {
        let (agents, pop) = population_of(
            vec![vec![(m(&[1]), f(&[0]))], vec![(m(&[1]), f(&[1]))]],
            false,
        );
        let snap = population_metrics(&agents, &pop);
        assert_eq!(snap.global_synonymy, 2.0);
        assert_eq!(snap.global_homonymy, 1.0);
        assert_eq!(snap.shared_mappings, 0);
    }

    #[test]
    fn male_is_excluded_from_agent_means() {
        let (agents, pop) = population_of(
            vec![
                vec![(m(&[1]), f(&[0]))],
                vec![(m(&[1]), f(&[0])), (m(&[2]), f(&[1]))],
                vec![
                    (m(&[1]), f(&[0])),
                    (m(&[2]), f(&[1])),
                    (m(&[3]), f(&[2])),
                    (m(&[4]), f(&[3])),
                ],
            ],
            true,
        );
        let snap = population_metrics(&agents, &pop);
        assert_eq!(snap.male_lexicon_size, Some(4.0));
        assert_eq!(snap.mean_agent_lexicon_size, 1.5);
    }

    #[test]
    fn empty_population_snapshot_is_zero() {
        let (agents, pop) = population_of(vec![vec![], vec![]], false);
        let snap = population_metrics(&agents, &pop);
        assert_eq!(snap.global_synonymy, 0.0);
        assert_eq!(snap.global_homonymy, 0.0);
        assert_eq!(snap.shared_mappings, 0);
        assert_eq!(snap.mean_agents_per_mapping, 0.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Brute-force enumeration oracle over the union of mappings.
        fn brute_force(agents: &[AgentState]) -> (f64, f64, u64, f64) {
            let mut union: Vec<(Meaning, Form)> = Vec::new();
            for a in agents {
                for (meaning, form, _) in a.lexicon.iter() {
                    let pair = (meaning.clone(), form.clone());
                    if !union.contains(&pair) {
                        union.push(pair);
                    }
                }
            }
            if union.is_empty() {
                return (0.0, 0.0, 0, 0.0);
            }
            let mut meanings: Vec<&Meaning> = Vec::new();
            let mut forms: Vec<&Form> = Vec::new();
            for (meaning, form) in &union {
                if !meanings.contains(&meaning) {
                    meanings.push(meaning);
                }
                if !forms.contains(&form) {
                    forms.push(form);
                }
            }
            let synonymy = meanings
                .iter()
                .map(|mng| union.iter().filter(|(um, _)| um == *mng).count())
                .sum::<usize>() as f64
                / meanings.len() as f64;
            let homonymy = forms
                .iter()
                .map(|frm| union.iter().filter(|(_, uf)| uf == *frm).count())
                .sum::<usize>() as f64
                / forms.len() as f64;
            let holders = |pair: &(Meaning, Form)| {
                agents
                    .iter()
                    .filter(|a| a.lexicon.weight(&pair.0, &pair.1).is_some())
                    .count()
            };
            let shared = union.iter().filter(|p| holders(p) == agents.len()).count() as u64;
            let mean_holders =
                union.iter().map(holders).sum::<usize>() as f64 / union.len() as f64;
            (synonymy, homonymy, shared, mean_holders)
        }

        fn arb_population() -> impl Strategy<Value = Vec<Vec<(Vec<u32>, Vec<u16>)>>> {
            prop::collection::vec(
                prop::collection::vec(
                    (
                        prop::collection::vec(0u32..4, 1..3),
                        prop::collection::vec(0u16..3, 1..2),
                    ),
                    0..5,
                ),
                1..4,
            )
        }

        proptest! {
            #[test]
            fn matches_brute_force_enumeration(lexicons in arb_population()) {
                let total = lexicons.len();
                let mapped: Vec<Vec<(Meaning, Form)>> = lexicons
                    .iter()
                    .map(|pairs| {
                        pairs
                            .iter()
                            .map(|(tm, tf)| (m(tm), f(tf)))
                            .collect()
                    })
                    .collect();
                let ratios = vec![1.0 / total as f64; total];
                let pop = crate::society::build_population(total, false, &ratios).unwrap();
                let agents: Vec<AgentState> = mapped
                    .into_iter()
                    .enumerate()
                    .map(|(i, pairs)| {
                        let mut a = AgentState::new(AgentId(i));
                        for (meaning, form) in pairs {
                            a.lexicon.add_or_reinforce(&meaning, &form);
                        }
                        a
                    })
                    .collect();
                let snap = population_metrics(&agents, &pop);
                let (syn, hom, shared, holders) = brute_force(&agents);
                prop_assert!((snap.global_synonymy - syn).abs() < 1e-12);
                prop_assert!((snap.global_homonymy - hom).abs() < 1e-12);
                prop_assert_eq!(snap.shared_mappings, shared);
                prop_assert!((snap.mean_agents_per_mapping - holders).abs() < 1e-12);
            }

            #[test]
            fn agent_permutation_invariance(lexicons in arb_population()) {
                let total = lexicons.len();
                let ratios = vec![1.0 / total as f64; total];
                let pop = crate::society::build_population(total, false, &ratios).unwrap();
                let build = |order: Vec<usize>| -> PopulationSnapshot {
                    let agents: Vec<AgentState> = order
                        .iter()
                        .enumerate()
                        .map(|(slot, &src)| {
                            let mut a = AgentState::new(AgentId(slot));
                            for (tm, tf) in &lexicons[src] {
                                a.lexicon.add_or_reinforce(&m(tm), &f(tf));
                            }
                            a
                        })
                        .collect();
                    population_metrics(&agents, &pop)
                };
                let forward = build((0..total).collect());
                let reversed = build((0..total).rev().collect());
                prop_assert!((forward.global_synonymy - reversed.global_synonymy).abs() < 1e-12);
                prop_assert!((forward.global_homonymy - reversed.global_homonymy).abs() < 1e-12);
                prop_assert_eq!(forward.shared_mappings, reversed.shared_mappings);

                let min_size = forward.per_agent.iter().map(|mtr| mtr.size).min().unwrap_or(0);
                prop_assert!(forward.shared_mappings as usize <= min_size);
            }
        }
    }
}
