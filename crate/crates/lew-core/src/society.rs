//! Population construction (groups, optional male hub) and speaker/hearer
//! selection.

use rand::Rng;
use thiserror::Error;

use crate::ids::AgentId;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PopulationError {
    #[error("population needs at least one non-male agent")]
    TooSmall,
    #[error("ratios must be non-empty, non-negative and sum to 1 (got sum {0})")]
    BadRatios(f64),
    #[error("group {index} size {size} is not integral (ratio {ratio} of {agents} agents)")]
    NonIntegralGroup {
        index: usize,
        ratio: f64,
        agents: usize,
        size: f64,
    },
    #[error("group {0} would be empty")]
    EmptyGroup(usize),
}

/// Disjoint agent groups plus the optional male, who belongs to no group.
/// Agent ids are dense: group members first, the male last.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    groups: Vec<Vec<AgentId>>,
    male: Option<AgentId>,
    group_of: Vec<Option<usize>>,
}

impl Population {
    pub fn groups(&self) -> &[Vec<AgentId>] {
        &self.groups
    }

    pub fn male(&self) -> Option<AgentId> {
        self.male
    }

    pub fn total_agents(&self) -> usize {
        self.group_of.len()
    }

    pub fn non_male_agents(&self) -> usize {
        self.group_of.len() - usize::from(self.male.is_some())
    }

    pub fn group_of(&self, agent: AgentId) -> Option<usize> {
        self.group_of[agent.0]
    }

    pub fn agent_ids(&self) -> impl Iterator<Item = AgentId> {
        (0..self.group_of.len()).map(AgentId)
    }
}

/// Partner-selection probabilities. `p_intra` is conditional on the speaker
/// having decided not to address the male.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionParams {
    pub p_male: f64,
    pub p_intra: f64,
}

/// Split `total` agents into groups of size rᵢ · (total − male), rejecting
/// non-integral sizes.
pub fn build_population(
    total: usize,
    male_present: bool,
    ratios: &[f64],
) -> Result<Population, PopulationError> {
    let grouped = total - usize::from(male_present);
    if grouped == 0 {
        return Err(PopulationError::TooSmall);
    }
    let sum: f64 = ratios.iter().sum();
    if ratios.is_empty() || ratios.iter().any(|&r| !(0.0..=1.0).contains(&r)) || (sum - 1.0).abs() > 1e-9
    {
        return Err(PopulationError::BadRatios(sum));
    }

    let mut sizes = Vec::with_capacity(ratios.len());
    for (index, &ratio) in ratios.iter().enumerate() {
        let size = ratio * grouped as f64;
        let rounded = size.round();
        if (size - rounded).abs() > 1e-6 {
            return Err(PopulationError::NonIntegralGroup {
                index,
                ratio,
                agents: grouped,
                size,
            });
        }
        if rounded < 1.0 {
            return Err(PopulationError::EmptyGroup(index));
        }
        sizes.push(rounded as usize);
    }
    if sizes.iter().sum::<usize>() != grouped {
        return Err(PopulationError::BadRatios(sum));
    }

    let mut groups = Vec::with_capacity(sizes.len());
    let mut group_of = vec![None; total];
    let mut next = 0usize;
    for (g, &size) in sizes.iter().enumerate() {
        let members: Vec<AgentId> = (next..next + size).map(AgentId).collect();
        for id in &members {
            group_of[id.0] = Some(g);
        }
        next += size;
        groups.push(members);
    }
    let male = male_present.then(|| AgentId(total - 1));

    Ok(Population {
        groups,
        male,
        group_of,
    })
}

/// Draw one speaker–hearer pair.
///
/// The speaker is uniform over the whole population, male included. A male
/// speaker addresses a uniformly chosen non-male agent (never himself). A
/// non-male speaker addresses the male with probability `p_male`; otherwise
/// his own group (self included) with conditional probability `p_intra`,
/// else one of the other groups equiprobably, uniformly within it. With a
/// single group the inter-group mass folds back into the own group.
pub fn select_pair<R: Rng + ?Sized>(
    pop: &Population,
    params: &SelectionParams,
    rng: &mut R,
) -> (AgentId, AgentId) {
    let total = pop.total_agents();
    let speaker = AgentId(rng.random_range(0..total));

    if pop.male == Some(speaker) {
        // Non-male ids are contiguous from 0.
        let hearer = AgentId(rng.random_range(0..total - 1));
        return (speaker, hearer);
    }

    if let Some(male) = pop.male {
        if params.p_male > 0.0 && rng.random_bool(params.p_male) {
            return (speaker, male);
        }
    }

    let own = pop.group_of[speaker.0].expect("non-male speaker belongs to a group");
    let n = pop.groups.len();
    let group = if n == 1 || rng.random_bool(params.p_intra) {
        own
    } else {
        let mut other = rng.random_range(0..n - 1);
        if other >= own {
            other += 1;
        }
        other
    };
    let members = &pop.groups[group];
    let hearer = members[rng.random_range(0..members.len())];
    (speaker, hearer)
}
