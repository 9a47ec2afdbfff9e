//! Small identifier newtypes shared across the crate.

/// Index of an agent within a population (dense, starting at 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId(pub usize);

/// Index of a world token (entity atom or predicate symbol) in the world's
/// token table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenId(pub u32);

/// Reference to an experienced event. Events are identified by their bout
/// index within a run; knowledge bases store these in encounter order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EventRef(pub u64);
