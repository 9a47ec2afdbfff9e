//! Agent-based simulation of lexicon emergence under configurable social
//! structures.
//!
//! A population of agents, optionally split into groups and optionally
//! orbiting a single highly-connected "male" hub, evolves form–meaning
//! lexicons through pairwise communicative interactions about randomly
//! generated recursive events. The crate provides the agent model
//! ([`lexicon`]), the event generator ([`world`]), the interaction protocol
//! ([`interaction`]), partner selection ([`society`]), scoring ([`metrics`])
//! and a deterministic experiment harness with statistical analysis
//! ([`experiment`], [`stats`]).

pub mod ids;
pub mod interaction;
pub mod lexicon;
pub mod metrics;
pub mod society;
pub mod stats;
pub mod world;

pub mod experiment;

pub use ids::{AgentId, EventRef, TokenId};
pub use interaction::{InteractionParams, InteractionRecord};
pub use lexicon::{AgentState, Form, Lexicon, LexiconMetrics, Mapping, Meaning, Phoneme};
pub use metrics::{InteractionScore, PopulationSnapshot};
pub use society::{Population, SelectionParams};
pub use world::{EventInstance, EventType, Sort, TokenSequence, World, WorldConfig};
