//! Event generation: entities, event types with Zipfian frequencies,
//! recursive event instances, linearization and random segmentation.

use std::collections::HashSet;

use rand::Rng;
use thiserror::Error;

use crate::ids::TokenId;
use crate::lexicon::{Meaning, MAX_PHONEME_INVENTORY};

pub const MAX_ARITY: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Animate,
    Inanimate,
    /// Argument slot holding another event (recursive composition).
    Event,
}

/// A property-free entity atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entity {
    pub atom: TokenId,
    pub sort: Sort,
}

/// A predicate with its permitted argument sorts. Rank 1 is the most
/// frequent type under the Zipfian event distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventType {
    pub predicate: TokenId,
    pub arg_sorts: Vec<Sort>,
    pub rank: u32,
}

impl EventType {
    /// A recursion base takes no event argument.
    pub fn is_base(&self) -> bool {
        !self.arg_sorts.contains(&Sort::Event)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EventArg {
    Entity(TokenId),
    Event(EventInstance),
}

/// A concrete event: an event type with its argument slots filled.
#[derive(Debug, Clone, PartialEq)]
pub struct EventInstance {
    pub type_index: usize,
    pub args: Vec<EventArg>,
}

/// Linearized event, the shared referent of an interaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence(pub Vec<TokenId>);

impl TokenSequence {
    pub fn tokens(&self) -> &[TokenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum WorldError {
    #[error("invalid world parameter `{name}`: {reason}")]
    InvalidParam {
        name: &'static str,
        reason: String,
    },
    #[error("no {0:?} entities exist, but some event type requires one")]
    EmptyEntityPool(Sort),
    #[error("no recursion-base event type (every type has an event slot)")]
    NoRecursionBase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldConfig {
    pub animates: usize,
    pub inanimates: usize,
    pub event_types: usize,
    pub zipf_exponent: f64,
    pub max_depth: u32,
    pub phonemes: u16,
}

impl Default for WorldConfig {
    fn default() -> Self {
        WorldConfig {
            animates: 10,
            inanimates: 10,
            event_types: 100,
            zipf_exponent: 1.0,
            max_depth: 2,
            phonemes: 41,
        }
    }
}

/// Rank-weighted sampler: item of rank r is drawn with probability
/// proportional to 1/r^s. Sampling inverts a precomputed CDF.
#[derive(Debug, Clone, PartialEq)]
struct ZipfCdf {
    items: Vec<usize>,
    cum: Vec<f64>,
}

impl ZipfCdf {
    /// `ranked` holds (item, rank) pairs; ranks need not be contiguous,
    /// which is what restricting to a subset of types produces.
    fn new(ranked: &[(usize, u32)], s: f64) -> Self {
        let total: f64 = ranked.iter().map(|&(_, r)| (r as f64).powf(-s)).sum();
        let mut cum = Vec::with_capacity(ranked.len());
        let mut acc = 0.0;
        for &(_, r) in ranked {
            acc += (r as f64).powf(-s) / total;
            cum.push(acc);
        }
        // Guard the tail against rounding shortfall.
        if let Some(last) = cum.last_mut() {
            *last = 1.0;
        }
        ZipfCdf {
            items: ranked.iter().map(|&(i, _)| i).collect(),
            cum,
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let x: f64 = rng.random();
        let idx = self.cum.partition_point(|&c| c <= x);
        self.items[idx.min(self.items.len() - 1)]
    }
}

/// Immutable generated world: entity pools, ranked event types and the
/// samplers derived from them. Shareable read-only across runs.
#[derive(Debug, Clone)]
pub struct World {
    token_names: Vec<String>,
    entities: Vec<Entity>,
    animates: Vec<TokenId>,
    inanimates: Vec<TokenId>,
    event_types: Vec<EventType>,
    zipf_all: ZipfCdf,
    zipf_base: ZipfCdf,
    zipf_exponent: f64,
    max_depth: u32,
    phonemes: u16,
}

impl World {
    pub fn event_types(&self) -> &[EventType] {
        &self.event_types
    }

    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn token_name(&self, token: TokenId) -> &str {
        &self.token_names[token.0 as usize]
    }

    pub fn phoneme_inventory(&self) -> u16 {
        self.phonemes
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Probability that a single draw yields the type of the given rank.
    pub fn rank_probability(&self, rank: u32) -> f64 {
        let s = self.zipf_exponent;
        let total: f64 = (1..=self.event_types.len() as u32)
            .map(|r| (r as f64).powf(-s))
            .sum();
        (rank as f64).powf(-s) / total
    }

    /// Draw an event type index, rank r with probability (1/r^s) / Σ 1/r'^s.
    pub fn sample_event_type<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.zipf_all.sample(rng)
    }

    /// Fill the argument slots of the type at `type_index` for a node at
    /// the given nesting depth (the root of an event tree is at depth 0).
    /// Entity slots draw uniformly from the matching pool. An event slot
    /// recurses with a freshly Zipf-sampled type while the child stays
    /// above the depth cutoff, and with a Zipf-sampled recursion-base type
    /// once it would reach it.
    pub fn instantiate_event<R: Rng + ?Sized>(
        &self,
        type_index: usize,
        depth: u32,
        rng: &mut R,
    ) -> EventInstance {
        let ty = &self.event_types[type_index];
        let args = ty
            .arg_sorts
            .iter()
            .map(|sort| match sort {
                Sort::Animate => {
                    EventArg::Entity(self.animates[rng.random_range(0..self.animates.len())])
                }
                Sort::Inanimate => {
                    EventArg::Entity(self.inanimates[rng.random_range(0..self.inanimates.len())])
                }
                Sort::Event => {
                    let child = if depth + 1 < self.max_depth {
                        self.zipf_all.sample(rng)
                    } else {
                        self.zipf_base.sample(rng)
                    };
                    EventArg::Event(self.instantiate_event(child, depth + 1, rng))
                }
            })
            .collect();
        EventInstance { type_index, args }
    }

    /// Depth-first pre-order: predicate token, then each argument.
    pub fn linearize(&self, event: &EventInstance) -> TokenSequence {
        let mut out = Vec::new();
        self.linearize_into(event, &mut out);
        TokenSequence(out)
    }

    fn linearize_into(&self, event: &EventInstance, out: &mut Vec<TokenId>) {
        out.push(self.event_types[event.type_index].predicate);
        for arg in &event.args {
            match arg {
                EventArg::Entity(atom) => out.push(*atom),
                EventArg::Event(inner) => self.linearize_into(inner, out),
            }
        }
    }
}

/// Deterministically generate a world from the config and the random stream.
pub fn build_world<R: Rng + ?Sized>(config: &WorldConfig, rng: &mut R) -> Result<World, WorldError> {
    if config.event_types == 0 {
        return Err(WorldError::InvalidParam {
            name: "event_types",
            reason: "must be at least 1".into(),
        });
    }
    if config.phonemes == 0 || config.phonemes > MAX_PHONEME_INVENTORY {
        return Err(WorldError::InvalidParam {
            name: "phonemes",
            reason: format!("must be in 1..={MAX_PHONEME_INVENTORY}"),
        });
    }
    if !config.zipf_exponent.is_finite() || config.zipf_exponent < 0.0 {
        return Err(WorldError::InvalidParam {
            name: "zipf_exponent",
            reason: "must be finite and non-negative".into(),
        });
    }

    let mut token_names = Vec::new();
    let mut used = HashSet::new();
    let mut fresh_token = |rng: &mut R, token_names: &mut Vec<String>| -> TokenId {
        loop {
            let name: String = (0..5)
                .map(|_| (b'a' + rng.random_range(0..26u8)) as char)
                .collect();
            if used.insert(name.clone()) {
                token_names.push(name);
                return TokenId(token_names.len() as u32 - 1);
            }
        }
    };

    let mut entities = Vec::new();
    let mut animates = Vec::new();
    let mut inanimates = Vec::new();
    for _ in 0..config.animates {
        let atom = fresh_token(rng, &mut token_names);
        entities.push(Entity {
            atom,
            sort: Sort::Animate,
        });
        animates.push(atom);
    }
    for _ in 0..config.inanimates {
        let atom = fresh_token(rng, &mut token_names);
        entities.push(Entity {
            atom,
            sort: Sort::Inanimate,
        });
        inanimates.push(atom);
    }

    const SLOT_SORTS: [Sort; 3] = [Sort::Animate, Sort::Inanimate, Sort::Event];
    let mut event_types = Vec::with_capacity(config.event_types);
    for i in 0..config.event_types {
        let predicate = fresh_token(rng, &mut token_names);
        let arity = rng.random_range(0..=MAX_ARITY);
        let arg_sorts = (0..arity)
            .map(|_| SLOT_SORTS[rng.random_range(0..SLOT_SORTS.len())])
            .collect();
        event_types.push(EventType {
            predicate,
            arg_sorts,
            rank: i as u32 + 1,
        });
    }

    // Cap event slots so that at least 20% of types are recursion bases.
    let quota = (config.event_types.div_ceil(5)).max(1);
    let mut bases = event_types.iter().filter(|t| t.is_base()).count();
    for ty in event_types.iter_mut() {
        if bases >= quota {
            break;
        }
        if !ty.is_base() {
            for sort in ty.arg_sorts.iter_mut() {
                if *sort == Sort::Event {
                    *sort = if rng.random_bool(0.5) {
                        Sort::Animate
                    } else {
                        Sort::Inanimate
                    };
                }
            }
            bases += 1;
        }
    }

    for ty in &event_types {
        for sort in &ty.arg_sorts {
            match sort {
                Sort::Animate if animates.is_empty() => {
                    return Err(WorldError::EmptyEntityPool(Sort::Animate));
                }
                Sort::Inanimate if inanimates.is_empty() => {
                    return Err(WorldError::EmptyEntityPool(Sort::Inanimate));
                }
                _ => {}
            }
        }
    }

    let all_ranked: Vec<(usize, u32)> = event_types.iter().map(|t| (t.rank as usize - 1, t.rank)).collect();
    let base_ranked: Vec<(usize, u32)> = event_types
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_base())
        .map(|(i, t)| (i, t.rank))
        .collect();
    if base_ranked.is_empty() {
        return Err(WorldError::NoRecursionBase);
    }

    let s = config.zipf_exponent;
    Ok(World {
        token_names,
        entities,
        animates,
        inanimates,
        zipf_all: ZipfCdf::new(&all_ranked, s),
        zipf_base: ZipfCdf::new(&base_ranked, s),
        event_types,
        zipf_exponent: s,
        max_depth: config.max_depth,
        phonemes: config.phonemes,
    })
}

/// Cut a token sequence into meaning chunks: each of the k−1 internal
/// boundaries is independently present with the given probability, so every
/// segmentation of the sequence is reachable and (at probability 0.5) they
/// are all equally likely.
pub fn random_segmentation<R: Rng + ?Sized>(
    tokens: &[TokenId],
    boundary_prob: f64,
    rng: &mut R,
) -> Vec<Meaning> {
    assert!(!tokens.is_empty(), "cannot segment an empty sequence");
    let mut chunks = Vec::new();
    let mut start = 0;
    for j in 1..tokens.len() {
        if rng.random_bool(boundary_prob) {
            chunks.push(Meaning::new(tokens[start..j].to_vec()));
            start = j;
        }
    }
    chunks.push(Meaning::new(tokens[start..].to_vec()));
    chunks
}
