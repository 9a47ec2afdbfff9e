//! One communicative bout: speaker individuation and production, noiseless
//! transmission, hearer segmentation and decoding, deferred lexicon updates.

use rand::Rng;

use crate::ids::{AgentId, EventRef};
use crate::lexicon::{AgentState, Form, Lexicon, Meaning, Phoneme};
use crate::world::{random_segmentation, EventInstance, World};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionParams {
    /// Probability of an internal boundary, both when individuating event
    /// tokens and when the hearer cuts the heard phoneme string.
    pub boundary_prob: f64,
    /// When set, the hearer reuses the speaker's word boundaries.
    pub synchrony: bool,
    /// When set, the hearer also reinforces mappings it decoded via its
    /// lexicon, not only fallback guesses.
    pub hearer_reinforce_retrievals: bool,
}

impl Default for InteractionParams {
    fn default() -> Self {
        InteractionParams {
            boundary_prob: 0.5,
            synchrony: false,
            hearer_reinforce_retrievals: true,
        }
    }
}

/// Full trace of one speaker–hearer exchange.
///
/// Words are parallel to chunks/meanings on each side; boundary vectors hold
/// the cumulative phoneme indices delimiting the words (first entry 0, last
/// entry the utterance length).
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionRecord {
    pub speaker: AgentId,
    pub hearer: AgentId,
    pub event: EventInstance,
    pub speaker_chunks: Vec<Meaning>,
    pub speaker_words: Vec<Form>,
    pub hearer_words: Vec<Form>,
    pub hearer_meanings: Vec<Meaning>,
    pub speaker_boundaries: Vec<usize>,
    pub hearer_boundaries: Vec<usize>,
}

/// Output of the production step: the uttered words and the (chunk, word)
/// pairs to commit to the speaker's lexicon once the bout completes.
#[derive(Debug, Clone, PartialEq)]
pub struct Production {
    pub words: Vec<Form>,
    pub updates: Vec<(Meaning, Form)>,
}

/// For each chunk in order, retrieve a form from the lexicon or invent a
/// fresh single-phoneme word drawn uniformly from the inventory. Retrievals
/// see the pre-bout lexicon only; repeated unknown chunks invent
/// independently.
pub fn produce<R: Rng + ?Sized>(
    lexicon: &Lexicon,
    chunks: &[Meaning],
    inventory: u16,
    rng: &mut R,
) -> Production {
    assert!(!chunks.is_empty(), "production needs at least one chunk");
    let mut words = Vec::with_capacity(chunks.len());
    let mut updates = Vec::with_capacity(chunks.len());
    for chunk in chunks {
        let word = match lexicon.retrieve_form(chunk, rng) {
            Some(form) => form.clone(),
            None => Form::single(Phoneme(rng.random_range(0..inventory))),
        };
        updates.push((chunk.clone(), word.clone()));
        words.push(word);
    }
    Production { words, updates }
}

/// Cut the heard phoneme string into words. With synchrony the speaker's
/// boundaries are copied; otherwise each internal junction is cut
/// independently with `cut_prob`. The output always concatenates back to
/// the input.
pub fn hearer_segment<R: Rng + ?Sized>(
    utterance: &[Phoneme],
    synchrony: bool,
    speaker_boundaries: &[usize],
    cut_prob: f64,
    rng: &mut R,
) -> Vec<Form> {
    assert!(!utterance.is_empty(), "utterance is never empty");
    let mut words = Vec::new();
    if synchrony {
        for w in speaker_boundaries.windows(2) {
            words.push(Form::new(utterance[w[0]..w[1]].to_vec()));
        }
        return words;
    }
    let mut start = 0;
    for j in 1..utterance.len() {
        if rng.random_bool(cut_prob) {
            words.push(Form::new(utterance[start..j].to_vec()));
            start = j;
        }
    }
    words.push(Form::new(utterance[start..].to_vec()));
    words
}

/// One decoded word and whether it came out of the lexicon snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub meaning: Meaning,
    pub from_lexicon: bool,
}

/// Decode each heard word against the pre-bout lexicon snapshot. Unknown
/// words fall back to the hearer's own perspective on the event: the
/// positionally corresponding own chunk when the counts line up, otherwise a
/// uniformly random own chunk.
pub fn decode<R: Rng + ?Sized>(
    snapshot: &Lexicon,
    hearer_words: &[Form],
    own_chunks: &[Meaning],
    rng: &mut R,
) -> Vec<Decoded> {
    assert!(!own_chunks.is_empty(), "the hearer always individuates");
    let positional = hearer_words.len() == own_chunks.len();
    hearer_words
        .iter()
        .enumerate()
        .map(|(i, word)| match snapshot.retrieve_meaning(word, rng) {
            Some(meaning) => Decoded {
                meaning: meaning.clone(),
                from_lexicon: true,
            },
            None => {
                let chunk = if positional {
                    own_chunks[i].clone()
                } else {
                    own_chunks[rng.random_range(0..own_chunks.len())].clone()
                };
                Decoded {
                    meaning: chunk,
                    from_lexicon: false,
                }
            }
        })
        .collect()
}

fn boundaries_of(words: &[Form]) -> Vec<usize> {
    let mut bounds = Vec::with_capacity(words.len() + 1);
    bounds.push(0);
    let mut acc = 0;
    for w in words {
        acc += w.len();
        bounds.push(acc);
    }
    bounds
}

/// Run one full bout between `speaker` and `hearer` (who may be the same
/// agent). The event is sampled and instantiated, the speaker individuates
/// and produces, the hearer segments, independently individuates and
/// decodes against its pre-bout lexicon, and only then are both agents'
/// lexicon updates committed. The event reference lands in both knowledge
/// bases (once, for self-talk).
pub fn run_interaction<R: Rng + ?Sized>(
    world: &World,
    agents: &mut [AgentState],
    speaker: AgentId,
    hearer: AgentId,
    params: &InteractionParams,
    event_ref: EventRef,
    rng: &mut R,
) -> InteractionRecord {
    let type_index = world.sample_event_type(rng);
    let event = world.instantiate_event(type_index, 0, rng);
    let tokens = world.linearize(&event);

    let speaker_chunks = random_segmentation(tokens.tokens(), params.boundary_prob, rng);
    let production = produce(
        &agents[speaker.0].lexicon,
        &speaker_chunks,
        world.phoneme_inventory(),
        rng,
    );
    let utterance: Vec<Phoneme> = production
        .words
        .iter()
        .flat_map(|w| w.phonemes().iter().copied())
        .collect();
    let speaker_boundaries = boundaries_of(&production.words);

    let hearer_words = hearer_segment(
        &utterance,
        params.synchrony,
        &speaker_boundaries,
        params.boundary_prob,
        rng,
    );
    let hearer_boundaries = boundaries_of(&hearer_words);
    let own_chunks = random_segmentation(tokens.tokens(), params.boundary_prob, rng);
    let decoded = decode(&agents[hearer.0].lexicon, &hearer_words, &own_chunks, rng);

    // Deferred commits keep the hearer's snapshot rule uniform for self-talk.
    for (meaning, form) in &production.updates {
        agents[speaker.0].lexicon.add_or_reinforce(meaning, form);
    }
    for (d, word) in decoded.iter().zip(&hearer_words) {
        if d.from_lexicon && !params.hearer_reinforce_retrievals {
            continue;
        }
        agents[hearer.0].lexicon.add_or_reinforce(&d.meaning, word);
    }
    agents[speaker.0].knowledge_base.push(event_ref);
    if hearer != speaker {
        agents[hearer.0].knowledge_base.push(event_ref);
    }

    InteractionRecord {
        speaker,
        hearer,
        event,
        speaker_chunks,
        speaker_words: production.words,
        hearer_words,
        hearer_meanings: decoded.into_iter().map(|d| d.meaning).collect(),
        speaker_boundaries,
        hearer_boundaries,
    }
}
