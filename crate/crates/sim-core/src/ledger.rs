//! Cumulative utility ledger and the forgetting rule.

/// Dense table of directed cumulative utilities.
///
/// Entry `(i, j)` records how much agent `j`'s actions have benefited
/// agent `i` so far; the diagonal is unused and stays zero.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityLedger {
    n: usize,
    values: Vec<f64>,
}

impl UtilityLedger {
    pub fn new(n: usize) -> Self {
        UtilityLedger {
            n,
            values: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        debug_assert_ne!(i, j, "diagonal entries are unused");
        self.values[i * self.n + j] = value;
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Shrinks `u` toward zero by at most `memory`, preserving its sign.
///
/// The result has magnitude `max(0, |u| - memory)`, so an entry of
/// either sign is forgotten completely after `ceil(|u| / memory)`
/// cycles without reinforcement.
pub fn apply_memory_decay(u: f64, memory: f64) -> f64 {
    if u >= 0.0 {
        (u - memory).max(0.0)
    } else {
        (u + memory).min(0.0)
    }
}
