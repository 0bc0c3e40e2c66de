//! Sequential driver that owns a world and its parameters.

use crate::dynamics::{init_world, step};
use crate::params::{ConfigError, SimParams};
use crate::world::{CycleDelta, World};

/// A running simulation. The trajectory is a pure function of the
/// parameters, including the seed: stepping two simulations built from
/// equal parameters yields identical state at every cycle.
#[derive(Clone, Debug)]
pub struct Simulation {
    params: SimParams,
    world: World,
    cycles_run: usize,
}

impl Simulation {
    pub fn new(params: SimParams) -> Result<Self, ConfigError> {
        let world = init_world(&params)?;
        Ok(Simulation {
            params,
            world,
            cycles_run: 0,
        })
    }

    /// Advances by one cycle and returns its bookkeeping.
    pub fn step(&mut self) -> CycleDelta {
        let delta = step(&mut self.world, self.cycles_run, &self.params);
        self.cycles_run += 1;
        delta
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn params(&self) -> &SimParams {
        &self.params
    }

    pub fn cycles_run(&self) -> usize {
        self.cycles_run
    }
}
