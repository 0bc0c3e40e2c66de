//! Network and wealth observables of a dictator game world.
//!
//! Every function here is a pure function of the world snapshot it is
//! given, so records for the same snapshot are always identical and all
//! operations are safe to call concurrently.

pub mod cluster;
pub mod correlation;
pub mod inequality;
pub mod structure;

use sim_core::World;

pub use cluster::{components, susceptibility};
pub use correlation::{assortativity, edge_value_pearson, homophily};
pub use inequality::{gini, strategy_stats, MetricsError, StrategyStats};
pub use structure::{
    avg_clustering, avg_path_length, distance_stats, local_clustering, mean_second_neighbours,
    DistanceStats,
};

/// Scalar observables of one cycle.
///
/// `assortativity` and `homophily` are `None` when undefined (no edges
/// or zero variance); they are never folded into 0.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub cycle: usize,
    pub avg_degree: f64,
    pub n_clusters: usize,
    pub max_cluster: usize,
    pub avg_cluster: f64,
    pub susceptibility: f64,
    pub avg_path_len: f64,
    pub avg_clustering: f64,
    pub mean_second_neighbours: f64,
    pub assortativity: Option<f64>,
    pub homophily: Option<f64>,
    pub gini: f64,
    pub min_wealth: f64,
    pub avg_wealth: f64,
    pub max_wealth: f64,
    pub avg_strategy: f64,
    pub hypergenerosity: f64,
}

/// Conventions that the literature leaves open.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsOptions {
    /// Count isolated agents as clusters of size 1 (the percolation
    /// convention). When false, size-1 components are dropped from the
    /// cluster statistics and the susceptibility.
    pub isolated_are_clusters: bool,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        MetricsOptions {
            isolated_are_clusters: true,
        }
    }
}

/// Assembles the full per-cycle record under default conventions.
pub fn collect(world: &World, cycle: usize) -> MetricsRecord {
    collect_with(world, cycle, &MetricsOptions::default())
}

/// Assembles the full per-cycle record in one pass over the snapshot.
pub fn collect_with(world: &World, cycle: usize, options: &MetricsOptions) -> MetricsRecord {
    let graph = &world.graph;
    let n = world.n_agents();
    assert!(n >= 1, "metrics require at least one agent");

    let mut sizes = components(graph);
    if !options.isolated_are_clusters {
        sizes.retain(|&s| s > 1);
    }
    let max_cluster = sizes.iter().copied().max().unwrap_or(0);
    let avg_cluster = if sizes.is_empty() {
        0.0
    } else {
        sizes.iter().sum::<usize>() as f64 / sizes.len() as f64
    };

    let distances = distance_stats(graph);
    let wealths = world.wealths();
    let strategies = strategy_stats(&world.agents);

    let mut min_wealth = f64::INFINITY;
    let mut max_wealth = f64::NEG_INFINITY;
    let mut total_wealth = 0.0;
    for &w in &wealths {
        min_wealth = min_wealth.min(w);
        max_wealth = max_wealth.max(w);
        total_wealth += w;
    }

    MetricsRecord {
        cycle,
        avg_degree: 2.0 * graph.edge_count() as f64 / n as f64,
        n_clusters: sizes.len(),
        max_cluster,
        avg_cluster,
        susceptibility: susceptibility(&sizes),
        avg_path_len: distances.avg_path_len,
        avg_clustering: avg_clustering(graph),
        mean_second_neighbours: distances.mean_second_neighbours,
        assortativity: assortativity(graph),
        homophily: homophily(graph, &wealths),
        gini: gini(&wealths).expect("world wealth must be finite and nonnegative"),
        min_wealth,
        avg_wealth: total_wealth / n as f64,
        max_wealth,
        avg_strategy: strategies.avg_strategy,
        hypergenerosity: strategies.hypergenerosity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sim_core::{AgentState, SocialGraph, UtilityLedger};

    fn world_with(
        n: usize,
        edges: &[(usize, usize)],
        wealths: &[f64],
        strategies: &[f64],
    ) -> World {
        let mut graph = SocialGraph::new(n);
        for &(i, j) in edges {
            graph.set_edge(i, j, true);
        }
        let agents = wealths
            .iter()
            .zip(strategies)
            .map(|(&w, &x)| {
                let mut a = AgentState::new(x, 1, 0.1);
                a.wealth = w;
                a
            })
            .collect();
        World {
            agents,
            graph,
            ledger: UtilityLedger::new(n),
        }
    }

    #[test]
    fn edgeless_zero_world_record() {
        let world = world_with(4, &[], &[0.0; 4], &[0.0; 4]);
        let record = collect(&world, 7);
        assert_eq!(record.cycle, 7);
        assert_eq!(record.avg_degree, 0.0);
        assert_eq!(record.avg_path_len, 0.0);
        assert_eq!(record.avg_clustering, 0.0);
        assert_eq!(record.mean_second_neighbours, 0.0);
        assert_eq!(record.assortativity, None);
        assert_eq!(record.homophily, None);
        assert_eq!(record.gini, 0.0);
        assert_eq!(record.min_wealth, 0.0);
        assert_eq!(record.max_wealth, 0.0);
        assert_eq!(record.avg_strategy, 0.0);
        assert_eq!(record.hypergenerosity, 0.0);
        // Isolated agents are size-1 clusters by default ...
        assert_eq!(record.n_clusters, 4);
        assert_eq!(record.max_cluster, 1);
        assert_eq!(record.susceptibility, 1.0);
        // ... and dropped entirely under the alternative convention.
        let bare = collect_with(
            &world,
            7,
            &MetricsOptions {
                isolated_are_clusters: false,
            },
        );
        assert_eq!(bare.n_clusters, 0);
        assert_eq!(bare.max_cluster, 0);
        assert_eq!(bare.susceptibility, 0.0);
    }

    #[test]
    fn complete_equal_wealth_record() {
        let edges: Vec<(usize, usize)> =
            (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
        let world = world_with(5, &edges, &[4.0; 5], &[0.6; 5]);
        let record = collect(&world, 0);
        assert_eq!(record.avg_clustering, 1.0);
        assert_eq!(record.gini, 0.0);
        assert_eq!(record.avg_path_len, 1.0);
        assert_eq!(record.assortativity, None);
        assert_eq!(record.homophily, None);
        assert_eq!(record.n_clusters, 1);
        assert_eq!(record.max_cluster, 5);
        assert_eq!(record.susceptibility, 0.0);
        assert_eq!(record.hypergenerosity, 1.0);
    }

    #[test]
    fn hand_built_world_matches_straight_line_evaluation() {
        // Graph: triangle {0,1,2}, edge (2,3), isolated 4 and 5.
        let edges = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let wealths = [1.0, 3.0, 5.0, 7.0, 0.0, 9.0];
        let strategies = [0.9, 0.2, 0.55, 0.5, 0.0, 1.0];
        let world = world_with(6, &edges, &wealths, &strategies);
        let record = collect(&world, 42);

        assert_eq!(record.avg_degree, 8.0 / 6.0);
        assert_eq!(record.n_clusters, 3);
        assert_eq!(record.max_cluster, 4);
        assert!((record.avg_cluster - 2.0).abs() < 1e-15);
        // Remaining clusters after dropping the size-4 one: {1, 1}.
        assert_eq!(record.susceptibility, 1.0);
        // Distances within the chain component: the four edges give
        // distance 1 and pairs (0,3),(1,3) are at distance 2.
        let expected_path = (1.0 + 1.0 + 1.0 + 1.0 + 2.0 + 2.0) / 6.0;
        assert!((record.avg_path_len - expected_path).abs() < 1e-12);
        // Second neighbours: agents 0 and 1 see agent 3; agent 3 sees 0 and 1.
        assert!((record.mean_second_neighbours - 4.0 / 6.0).abs() < 1e-12);
        // Clustering: 0 and 1 are 1.0, 2 has one closed pair of three,
        // 3 has degree 1.
        let expected_clustering = (1.0 + 1.0 + 1.0 / 3.0) / 6.0;
        assert!((record.avg_clustering - expected_clustering).abs() < 1e-12);

        // Pearson correlations recomputed naively over both orientations.
        let naive_pearson = |pairs: &[(f64, f64)]| -> f64 {
            let m = pairs.len() as f64;
            let mean_x: f64 = pairs.iter().map(|p| p.0).sum::<f64>() / m;
            let mean_y: f64 = pairs.iter().map(|p| p.1).sum::<f64>() / m;
            let cov: f64 = pairs
                .iter()
                .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
                .sum::<f64>();
            let var_x: f64 = pairs.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
            let var_y: f64 = pairs.iter().map(|p| (p.1 - mean_y).powi(2)).sum::<f64>();
            cov / (var_x * var_y).sqrt()
        };
        let degs = [2.0, 2.0, 3.0, 1.0];
        let mut degree_pairs = Vec::new();
        let mut wealth_pairs = Vec::new();
        for &(i, j) in &edges {
            degree_pairs.push((degs[i], degs[j]));
            degree_pairs.push((degs[j], degs[i]));
            wealth_pairs.push((wealths[i], wealths[j]));
            wealth_pairs.push((wealths[j], wealths[i]));
        }
        let expected_assort = naive_pearson(&degree_pairs);
        let expected_homo = naive_pearson(&wealth_pairs);
        assert!((record.assortativity.unwrap() - expected_assort).abs() < 1e-12);
        assert!((record.homophily.unwrap() - expected_homo).abs() < 1e-12);

        // Gini by the raw double sum.
        let total: f64 = wealths.iter().sum();
        let mut diff = 0.0;
        for a in wealths {
            for b in wealths {
                diff += (a - b).abs();
            }
        }
        let expected_gini = diff / (2.0 * 6.0 * total);
        assert!((record.gini - expected_gini).abs() < 1e-12);

        assert_eq!(record.min_wealth, 0.0);
        assert_eq!(record.max_wealth, 9.0);
        assert!((record.avg_wealth - total / 6.0).abs() < 1e-15);
        assert!((record.avg_strategy - strategies.iter().sum::<f64>() / 6.0).abs() < 1e-15);
        // Strictly above 0.5: agents 0, 2 and 5.
        assert_eq!(record.hypergenerosity, 0.5);
    }

    #[test]
    fn collect_is_pure() {
        let world = world_with(
            4,
            &[(0, 1), (1, 2)],
            &[1.0, 2.0, 3.0, 4.0],
            &[0.1, 0.9, 0.5, 0.3],
        );
        assert_eq!(collect(&world, 3), collect(&world, 3));
    }
}
