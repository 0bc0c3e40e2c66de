//! Sweep plans, per-run seed derivation and the named presets.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sim_core::SimParams;

use crate::error::HarnessError;

/// One grid point of a sweep: the parameters that vary between points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub cost: f64,
    pub memory: f64,
    pub n_agents: usize,
}

/// A full sweep: base parameters, the grid, and how many seeded
/// realizations to run per grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentPlan {
    pub base: SimParams,
    pub grid: Vec<GridPoint>,
    pub realizations: usize,
    pub master_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_cycles: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            base: SimParams::default(),
            grid: Vec::new(),
            realizations: 100,
            master_seed: 0,
            snapshot_cycles: None,
            output_dir: None,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.realizations == 0 {
            return Err(HarnessError::Config(
                "realizations must be at least 1".into(),
            ));
        }
        if self.grid.is_empty() {
            return Err(HarnessError::Config("sweep grid is empty".into()));
        }
        for index in 0..self.grid.len() {
            let params = self.params_at(index, 0);
            params
                .validate()
                .map_err(|e| HarnessError::Config(format!("grid point {index}: {e}")))?;
        }
        Ok(())
    }

    /// Simulation parameters for one realization of one grid point,
    /// including its derived seed.
    pub fn params_at(&self, grid_index: usize, realization: usize) -> SimParams {
        let point = self.grid[grid_index];
        SimParams {
            n_agents: point.n_agents,
            cost: point.cost,
            memory: point.memory,
            seed: derive_seed(self.master_seed, grid_index, realization),
            ..self.base.clone()
        }
    }
}

/// SplitMix64 finalizer; bijective on u64.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-run seed: SplitMix64 of the packed (grid, realization) counter
/// folded into the master seed. Distinct pairs give distinct seeds for
/// any fixed master seed because every stage is a bijection of the
/// packed counter.
pub fn derive_seed(master_seed: u64, grid_index: usize, realization: usize) -> u64 {
    debug_assert!(grid_index < (1 << 32) && realization < (1 << 32));
    let packed = ((grid_index as u64) << 32) | (realization as u64 & 0xFFFF_FFFF);
    splitmix64(master_seed ^ splitmix64(packed))
}

fn constant_values() -> [f64; 5] {
    [0.0, 2.5, 5.0, 7.5, 10.0]
}

fn swept_values() -> Vec<f64> {
    (0..=20).map(|k| k as f64 * 0.5).collect()
}

fn plan_with_grid(grid: Vec<GridPoint>) -> ExperimentPlan {
    ExperimentPlan {
        grid,
        ..ExperimentPlan::default()
    }
}

/// Sweep of the living cost at five constant memory values, N = 100.
fn cost_sweep() -> Vec<GridPoint> {
    let mut grid = Vec::new();
    for &memory in &constant_values() {
        for &cost in &swept_values() {
            grid.push(GridPoint {
                cost,
                memory,
                n_agents: 100,
            });
        }
    }
    grid
}

/// Sweep of the memory value at five constant living costs, N = 100.
fn memory_sweep() -> Vec<GridPoint> {
    let mut grid = Vec::new();
    for &cost in &constant_values() {
        for &memory in &swept_values() {
            grid.push(GridPoint {
                cost,
                memory,
                n_agents: 100,
            });
        }
    }
    grid
}

/// Union of both sweeps, deduplicated.
fn both_sweeps() -> Vec<GridPoint> {
    let mut grid = cost_sweep();
    for point in memory_sweep() {
        if !grid.contains(&point) {
            grid.push(point);
        }
    }
    grid
}

/// Population sweep at the calibration point (c = 7.5, memory = 2).
fn population_sweep() -> Vec<GridPoint> {
    (1..=8)
        .map(|k| GridPoint {
            cost: 7.5,
            memory: 2.0,
            n_agents: 50 * k,
        })
        .collect()
}

/// Named sweeps reproducing the published figures: strategy and
/// hypergenerosity grids (fig3), network properties against cost
/// (fig6) and memory (fig7), inequality against both (fig8), and the
/// population sweep (fig9).
pub fn sweep_presets() -> Vec<(&'static str, ExperimentPlan)> {
    vec![
        ("fig3", plan_with_grid(both_sweeps())),
        ("fig6", plan_with_grid(cost_sweep())),
        ("fig7", plan_with_grid(memory_sweep())),
        ("fig8", plan_with_grid(both_sweeps())),
        ("fig9", plan_with_grid(population_sweep())),
    ]
}

/// Looks up one preset by name.
pub fn preset(name: &str) -> Option<ExperimentPlan> {
    sweep_presets()
        .into_iter()
        .find(|(preset_name, _)| *preset_name == name)
        .map(|(_, plan)| plan)
}
