//! Per-agent state.

/// One agent: accumulated wealth, current division strategy and the
/// state of its hill-climbing walk over strategies.
#[derive(Clone, Debug, PartialEq)]
pub struct AgentState {
    /// Accumulated wealth, floored at zero every cycle.
    pub wealth: f64,
    /// Fraction of the stake given away when dictating, in [0, 1].
    pub strategy: f64,
    /// Direction of the next strategy step, +1 or -1.
    pub step_dir: i8,
    /// Magnitude of the next strategy step.
    pub step_mag: f64,
}

impl AgentState {
    pub fn new(strategy: f64, step_dir: i8, step_mag: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&strategy));
        debug_assert!(step_dir == 1 || step_dir == -1);
        AgentState {
            wealth: 0.0,
            strategy,
            step_dir,
            step_mag,
        }
    }
}
