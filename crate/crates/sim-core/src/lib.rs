//! Deterministic, seedable simulator of the repeated dictator game on a
//! co-evolving social network.
//!
//! Agents accumulate wealth by playing the dictator game with their
//! neighbours, pay a living cost every cycle, keep a directed ledger of
//! how much every other agent has benefited them (with gradual
//! forgetting), rewire their links from that ledger, and hill-climb
//! their division strategies to maximize their standing relative to
//! their neighbours.

pub mod agent;
pub mod dynamics;
pub mod graph;
pub mod ledger;
pub mod params;
pub mod sim;
pub mod world;

pub use agent::AgentState;
pub use dynamics::{
    init_world, marginal_utility, play_cycle, rewire, status_delta, step, step_magnitude,
    update_strategies, update_utilities,
};
pub use graph::SocialGraph;
pub use ledger::{apply_memory_decay, UtilityLedger};
pub use params::{validate_params, ConfigError, ParamWarning, SimParams};
pub use sim::Simulation;
pub use world::{CycleDelta, World};
