//! Agent-internal state: phonemes, forms, meanings, the weighted lexicon and
//! forgetting. Knows nothing about the society or the event generator.

use indexmap::IndexMap;
use rand::Rng;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::ids::{AgentId, EventRef, TokenId};

/// Ordered phone lists used to render phonemes as onset+nucleus pairs.
const ONSETS: [char; 20] = [
    'b', 'c', 'd', 'f', 'g', 'h', 'j', 'k', 'l', 'm', 'n', 'p', 'q', 'r', 's', 't', 'v', 'w',
    'x', 'z',
];
const NUCLEI: [char; 5] = ['a', 'e', 'i', 'o', 'u'];

/// Largest supported phoneme inventory (all onset+nucleus combinations).
pub const MAX_PHONEME_INVENTORY: u16 = (ONSETS.len() * NUCLEI.len()) as u16;

/// A phoneme, identified by its index into the inventory. Rendering as a
/// two-character onset+nucleus string is a bijection over the inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phoneme(pub u16);

impl Phoneme {
    pub fn render(self) -> String {
        let onset = ONSETS[self.0 as usize / NUCLEI.len()];
        let nucleus = NUCLEI[self.0 as usize % NUCLEI.len()];
        let mut s = String::with_capacity(2);
        s.push(onset);
        s.push(nucleus);
        s
    }
}

/// A word: a non-empty phoneme sequence. Freshly invented forms have length 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form(Vec<Phoneme>);

impl Form {
    pub fn new(phonemes: Vec<Phoneme>) -> Self {
        assert!(!phonemes.is_empty(), "a form has at least one phoneme");
        Form(phonemes)
    }

    pub fn single(p: Phoneme) -> Self {
        Form(vec![p])
    }

    pub fn phonemes(&self) -> &[Phoneme] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|p| p.render()).collect()
    }
}

/// A meaning chunk: a non-empty slice of an event's token sequence. Equality
/// is content equality, so two agents segmenting the same event identically
/// hold equal meanings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Meaning(Vec<TokenId>);

impl Meaning {
    pub fn new(tokens: Vec<TokenId>) -> Self {
        assert!(!tokens.is_empty(), "a meaning has at least one token");
        Meaning(tokens)
    }

    pub fn tokens(&self) -> &[TokenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One weighted form–meaning association.
#[derive(Debug, Clone, PartialEq)]
pub struct Mapping {
    pub meaning: Meaning,
    pub form: Form,
    pub weight: f64,
}

/// Summary statistics of one lexicon. An empty lexicon yields all zeroes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexiconMetrics {
    pub size: usize,
    /// Mean, over distinct meanings, of the number of distinct forms each maps to.
    pub synonymy: f64,
    /// Mean, over distinct forms, of the number of distinct meanings each maps to.
    pub homonymy: f64,
}

/// A set of weighted form–meaning mappings, unique by (meaning, form).
/// Synonymy (several forms per meaning) and homonymy (several meanings per
/// form) are both permitted.
///
/// Entries keep insertion order so that retrieval tie-breaking consumes the
/// random stream deterministically.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: IndexMap<(Meaning, Form), f64, FxBuildHasher>,
    by_meaning: FxHashMap<Meaning, Vec<u32>>,
    by_form: FxHashMap<Form, Vec<u32>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self, meaning: &Meaning, form: &Form) -> Option<f64> {
        // Lookup without building an owned key pair.
        self.by_meaning.get(meaning).and_then(|idxs| {
            idxs.iter()
                .map(|&i| self.entries.get_index(i as usize).unwrap())
                .find(|((_, f), _)| f == form)
                .map(|(_, w)| *w)
        })
    }

    /// Reinforce the (meaning, form) association by 1.0, inserting it with
    /// weight 1.0 when absent. All other mappings are untouched.
    pub fn add_or_reinforce(&mut self, meaning: &Meaning, form: &Form) {
        if let Some(idxs) = self.by_meaning.get(meaning) {
            for &i in idxs {
                let (key, w) = self.entries.get_index_mut(i as usize).unwrap();
                if &key.1 == form {
                    *w += 1.0;
                    return;
                }
            }
        }
        let (idx, prev) = self
            .entries
            .insert_full((meaning.clone(), form.clone()), 1.0);
        debug_assert!(prev.is_none());
        self.by_meaning
            .entry(meaning.clone())
            .or_default()
            .push(idx as u32);
        self.by_form
            .entry(form.clone())
            .or_default()
            .push(idx as u32);
    }

    /// The form of the maximum-weight mapping for `meaning`, ties broken
    /// uniformly at random. `None` when the meaning is unknown.
    pub fn retrieve_form<R: Rng + ?Sized>(&self, meaning: &Meaning, rng: &mut R) -> Option<&Form> {
        let idxs = self.by_meaning.get(meaning)?;
        let winner = self.argmax(idxs, rng);
        Some(&self.entries.get_index(winner).unwrap().0 .1)
    }

    /// Mirror image of [`retrieve_form`](Self::retrieve_form): the meaning of
    /// the maximum-weight mapping for `form`.
    pub fn retrieve_meaning<R: Rng + ?Sized>(&self, form: &Form, rng: &mut R) -> Option<&Meaning> {
        let idxs = self.by_form.get(form)?;
        let winner = self.argmax(idxs, rng);
        Some(&self.entries.get_index(winner).unwrap().0 .0)
    }

    fn argmax<R: Rng + ?Sized>(&self, idxs: &[u32], rng: &mut R) -> usize {
        debug_assert!(!idxs.is_empty());
        let mut best = f64::NEG_INFINITY;
        let mut ties: Vec<usize> = Vec::new();
        for &i in idxs {
            let w = *self.entries.get_index(i as usize).unwrap().1;
            if w > best {
                best = w;
                ties.clear();
                ties.push(i as usize);
            } else if w == best {
                ties.push(i as usize);
            }
        }
        if ties.len() == 1 {
            ties[0]
        } else {
            ties[rng.random_range(0..ties.len())]
        }
    }

    /// Multiply every weight by `lambda` and prune mappings whose weight
    /// drops below `epsilon`.
    pub fn decay_all(&mut self, lambda: f64, epsilon: f64) {
        assert!(lambda > 0.0 && lambda <= 1.0, "lambda in (0, 1]");
        assert!(epsilon >= 0.0, "epsilon >= 0");
        let mut any_pruned = false;
        for w in self.entries.values_mut() {
            *w *= lambda;
            any_pruned |= *w < epsilon;
        }
        if !any_pruned {
            return;
        }
        let old = std::mem::take(&mut self.entries);
        self.by_meaning.clear();
        self.by_form.clear();
        for ((meaning, form), w) in old {
            if w < epsilon {
                continue;
            }
            let (idx, _) = self.entries.insert_full((meaning.clone(), form.clone()), w);
            self.by_meaning.entry(meaning).or_default().push(idx as u32);
            self.by_form.entry(form).or_default().push(idx as u32);
        }
    }

    pub fn metrics(&self) -> LexiconMetrics {
        if self.entries.is_empty() {
            return LexiconMetrics {
                size: 0,
                synonymy: 0.0,
                homonymy: 0.0,
            };
        }
        let forms_per_meaning: usize = self.by_meaning.values().map(Vec::len).sum();
        let meanings_per_form: usize = self.by_form.values().map(Vec::len).sum();
        LexiconMetrics {
            size: self.entries.len(),
            synonymy: forms_per_meaning as f64 / self.by_meaning.len() as f64,
            homonymy: meanings_per_form as f64 / self.by_form.len() as f64,
        }
    }

    /// Mappings in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&Meaning, &Form, f64)> {
        self.entries.iter().map(|((m, f), w)| (m, f, *w))
    }

    pub fn mappings(&self) -> impl Iterator<Item = Mapping> + '_ {
        self.iter().map(|(m, f, w)| Mapping {
            meaning: m.clone(),
            form: f.clone(),
            weight: w,
        })
    }
}

/// One agent: a lexicon plus the ordered list of experienced events.
#[derive(Debug, Clone)]
pub struct AgentState {
    pub id: AgentId,
    pub lexicon: Lexicon,
    pub knowledge_base: Vec<EventRef>,
}

impl AgentState {
    pub fn new(id: AgentId) -> Self {
        AgentState {
            id,
            lexicon: Lexicon::new(),
            knowledge_base: Vec::new(),
        }
    }
}
