//! Wealth inequality and strategy statistics.

use sim_core::AgentState;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("wealth must be finite and nonnegative, got {value} at index {index}")]
    InvalidWealth { value: f64, index: usize },
}

/// Gini coefficient of a nonnegative wealth distribution: the mean
/// absolute difference between all pairs, normalized by twice the mean
/// wealth. Zero total wealth yields 0 by convention.
pub fn gini(wealths: &[f64]) -> Result<f64, MetricsError> {
    for (index, &value) in wealths.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(MetricsError::InvalidWealth { value, index });
        }
    }
    let n = wealths.len();
    let total: f64 = wealths.iter().sum();
    if total == 0.0 {
        return Ok(0.0);
    }
    let mut sorted = wealths.to_vec();
    sorted.sort_by(f64::total_cmp);
    // Sorted form of the pairwise-difference definition.
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| (2.0 * (i as f64 + 1.0) - n as f64 - 1.0) * v)
        .sum();
    Ok(weighted / (n as f64 * total))
}

/// Mean division strategy and hypergenerosity prevalence (the fraction
/// of agents giving away strictly more than half the stake).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrategyStats {
    pub avg_strategy: f64,
    pub hypergenerosity: f64,
}

pub fn strategy_stats(agents: &[AgentState]) -> StrategyStats {
    if agents.is_empty() {
        return StrategyStats {
            avg_strategy: 0.0,
            hypergenerosity: 0.0,
        };
    }
    let n = agents.len() as f64;
    let total: f64 = agents.iter().map(|a| a.strategy).sum();
    let generous = agents.iter().filter(|a| a.strategy > 0.5).count();
    StrategyStats {
        avg_strategy: total / n,
        hypergenerosity: generous as f64 / n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn agents_with(strategies: &[f64]) -> Vec<AgentState> {
        strategies
            .iter()
            .map(|&x| AgentState::new(x, 1, 0.1))
            .collect()
    }

    #[test]
    fn equal_wealths_have_no_inequality() {
        assert_eq!(gini(&[2.5, 2.5, 2.5]).unwrap(), 0.0);
    }

    #[test]
    fn two_agent_extreme_case() {
        // {0, 1}: (1 + 1) / (2 * 2 * 1) = 0.5.
        assert_eq!(gini(&[0.0, 1.0]).unwrap(), 0.5);
    }

    #[test]
    fn all_zero_wealth_is_zero_by_convention() {
        assert_eq!(gini(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn negative_wealth_is_rejected() {
        assert!(matches!(
            gini(&[1.0, -0.5]),
            Err(MetricsError::InvalidWealth { index: 1, .. })
        ));
    }

    #[test]
    fn gini_matches_pairwise_definition() {
        let wealths = [0.0, 3.0, 1.0, 7.5, 2.25, 2.25];
        let n = wealths.len() as f64;
        let total: f64 = wealths.iter().sum();
        let mut pairwise = 0.0;
        for a in wealths {
            for b in wealths {
                pairwise += (a - b).abs();
            }
        }
        let expected = pairwise / (2.0 * n * total);
        assert!((gini(&wealths).unwrap() - expected).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn gini_is_scale_invariant_and_bounded(
            wealths in proptest::collection::vec(0.0f64..1e4, 1..40),
            scale in 0.1f64..100.0,
        ) {
            let n = wealths.len() as f64;
            let original = gini(&wealths).unwrap();
            prop_assert!((0.0..=1.0 - 1.0 / n + 1e-12).contains(&original));
            let scaled: Vec<f64> = wealths.iter().map(|w| w * scale).collect();
            prop_assert!((gini(&scaled).unwrap() - original).abs() < 1e-9);
        }
    }

    #[test]
    fn fully_generous_population() {
        let stats = strategy_stats(&agents_with(&[1.0, 1.0, 1.0]));
        assert_eq!(stats.avg_strategy, 1.0);
        assert_eq!(stats.hypergenerosity, 1.0);
    }

    #[test]
    fn half_is_not_hypergenerous() {
        let stats = strategy_stats(&agents_with(&[0.5, 0.5]));
        assert_eq!(stats.hypergenerosity, 0.0);
    }

    #[test]
    fn mixed_population_counts_strictly() {
        let stats = strategy_stats(&agents_with(&[0.1, 0.6, 0.8, 0.3]));
        assert!((stats.avg_strategy - 0.45).abs() < 1e-15);
        assert_eq!(stats.hypergenerosity, 0.5);
    }
}
