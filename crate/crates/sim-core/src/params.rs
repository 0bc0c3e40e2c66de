//! Simulation parameters and their validation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Full parameter set of a single simulation run.
///
/// `cost` is the living cost deducted once per cycle, in units of the
/// stake `M`. `memory` is the maximum amount by which the magnitude of
/// any ledger entry shrinks toward zero per cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimParams {
    pub n_agents: usize,
    pub cost: f64,
    pub memory: f64,
    pub stake: f64,
    pub cycles: usize,
    pub init_mean_degree: f64,
    pub dx_init: f64,
    pub dx_min: f64,
    pub anneal_cycles: usize,
    pub seed: u64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            n_agents: 100,
            cost: 0.0,
            memory: 0.0,
            stake: 1.0,
            cycles: 10_000,
            init_mean_degree: 4.0,
            dx_init: 0.1,
            dx_min: 0.01,
            anneal_cycles: 1000,
            seed: 0,
        }
    }
}

impl SimParams {
    /// Checks structural validity and returns any soft warnings.
    pub fn validate(&self) -> Result<Vec<ParamWarning>, ConfigError> {
        validate_params(self)
    }
}

/// Structurally invalid parameter values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("n_agents must be at least 1")]
    NoAgents,
    #[error("cost must be finite and nonnegative, got {0}")]
    BadCost(f64),
    #[error("memory must be finite and nonnegative, got {0}")]
    BadMemory(f64),
    #[error("stake must be finite and positive, got {0}")]
    BadStake(f64),
    #[error("step sizes must satisfy 0 < dx_min <= dx_init, got dx_min={dx_min}, dx_init={dx_init}")]
    BadStepSizes { dx_min: f64, dx_init: f64 },
    #[error("anneal_cycles must be at least 1")]
    BadAnnealCycles,
    #[error("init_mean_degree must lie in [0, {max}], got {got}")]
    BadMeanDegree { got: f64, max: f64 },
}

/// Parameter combinations that are valid but leave no interesting dynamics.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamWarning {
    /// cost >= 2(N-1): even a maximally connected agent cannot break even.
    CostExceedsProfitBound { cost: f64, bound: f64 },
    /// memory >= (2(N-1) - cost) * stake: forgetting outpaces any utility
    /// an agent can accumulate, so the ledger is wiped every cycle.
    MemoryDominatesDynamics { memory: f64, bound: f64 },
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamWarning::CostExceedsProfitBound { cost, bound } => write!(
                f,
                "cost {cost} >= {bound} = 2(N-1): no agent can profit even when \
                 connected to everyone"
            ),
            ParamWarning::MemoryDominatesDynamics { memory, bound } => write!(
                f,
                "memory {memory} >= {bound} = (2(N-1) - cost)*stake: forgetting \
                 dominates all ledger dynamics"
            ),
        }
    }
}

/// Validates `params`, returning soft warnings for parameter regimes in
/// which the dynamics degenerate. Only structurally meaningless values
/// (no agents, negative cost, ...) are hard errors.
pub fn validate_params(params: &SimParams) -> Result<Vec<ParamWarning>, ConfigError> {
    if params.n_agents < 1 {
        return Err(ConfigError::NoAgents);
    }
    if !params.cost.is_finite() || params.cost < 0.0 {
        return Err(ConfigError::BadCost(params.cost));
    }
    if !params.memory.is_finite() || params.memory < 0.0 {
        return Err(ConfigError::BadMemory(params.memory));
    }
    if !params.stake.is_finite() || params.stake <= 0.0 {
        return Err(ConfigError::BadStake(params.stake));
    }
    if !params.dx_min.is_finite()
        || !params.dx_init.is_finite()
        || params.dx_min <= 0.0
        || params.dx_min > params.dx_init
    {
        return Err(ConfigError::BadStepSizes {
            dx_min: params.dx_min,
            dx_init: params.dx_init,
        });
    }
    if params.anneal_cycles < 1 {
        return Err(ConfigError::BadAnnealCycles);
    }
    let max_degree = (params.n_agents - 1) as f64;
    if !params.init_mean_degree.is_finite()
        || params.init_mean_degree < 0.0
        || params.init_mean_degree > max_degree
    {
        return Err(ConfigError::BadMeanDegree {
            got: params.init_mean_degree,
            max: max_degree,
        });
    }

    let mut warnings = Vec::new();
    let profit_bound = 2.0 * max_degree;
    if params.cost >= profit_bound {
        warnings.push(ParamWarning::CostExceedsProfitBound {
            cost: params.cost,
            bound: profit_bound,
        });
    }
    let memory_bound = (profit_bound - params.cost) * params.stake;
    if params.memory >= memory_bound {
        warnings.push(ParamWarning::MemoryDominatesDynamics {
            memory: params.memory,
            bound: memory_bound,
        });
    }
    Ok(warnings)
}
