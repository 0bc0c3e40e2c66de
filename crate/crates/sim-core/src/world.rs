//! The complete mutable simulation state and per-cycle bookkeeping.

use crate::agent::AgentState;
use crate::graph::SocialGraph;
use crate::ledger::UtilityLedger;

/// Everything that evolves from cycle to cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct World {
    pub agents: Vec<AgentState>,
    pub graph: SocialGraph,
    pub ledger: UtilityLedger,
}

impl World {
    pub fn n_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn wealths(&self) -> Vec<f64> {
        self.agents.iter().map(|a| a.wealth).collect()
    }

    pub fn strategies(&self) -> Vec<f64> {
        self.agents.iter().map(|a| a.strategy).collect()
    }
}

/// Snapshot of one completed game cycle: wealths and degrees at the
/// start, floored wealths at the end, and each agent's status change.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleDelta {
    pub wealth_before: Vec<f64>,
    pub wealth_after: Vec<f64>,
    pub degree_before: Vec<usize>,
    pub delta: Vec<f64>,
}

impl CycleDelta {
    /// Floored change in wealth of agent `i` over the cycle.
    pub fn wealth_change(&self, i: usize) -> f64 {
        self.wealth_after[i] - self.wealth_before[i]
    }
}
