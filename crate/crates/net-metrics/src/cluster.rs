//! Connected components and the percolation-style susceptibility.

use sim_core::SocialGraph;

/// Sizes of all connected components, isolated agents included as
/// size-1 clusters. Sizes are listed in order of their smallest member
/// and always sum to the number of agents.
pub fn components(graph: &SocialGraph) -> Vec<usize> {
    let n = graph.n();
    let mut visited = vec![false; n];
    let mut stack = Vec::new();
    let mut sizes = Vec::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push(root);
        let mut size = 0;
        while let Some(node) = stack.pop() {
            size += 1;
            for next in graph.neighbours(node) {
                if !visited[next] {
                    visited[next] = true;
                    stack.push(next);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Second moment of the cluster size distribution with one instance of
/// the largest cluster removed: `sum(s^2) / sum(s)` over the remaining
/// clusters, or 0 when nothing remains.
pub fn susceptibility(sizes: &[usize]) -> f64 {
    if sizes.is_empty() {
        return 0.0;
    }
    let largest = sizes
        .iter()
        .enumerate()
        .max_by_key(|&(_, &s)| s)
        .map(|(i, _)| i)
        .unwrap();
    let mut second_moment = 0.0;
    let mut first_moment = 0.0;
    for (i, &s) in sizes.iter().enumerate() {
        if i == largest {
            continue;
        }
        let s = s as f64;
        second_moment += s * s;
        first_moment += s;
    }
    if first_moment == 0.0 {
        0.0
    } else {
        second_moment / first_moment
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_with(n: usize, edges: &[(usize, usize)]) -> SocialGraph {
        let mut g = SocialGraph::new(n);
        for &(i, j) in edges {
            g.set_edge(i, j, true);
        }
        g
    }

    #[test]
    fn complete_graph_is_one_component() {
        let edges: Vec<(usize, usize)> =
            (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
        assert_eq!(components(&graph_with(5, &edges)), vec![5]);
    }

    #[test]
    fn disjoint_edges_and_isolated_nodes() {
        let g = graph_with(8, &[(0, 1), (2, 3), (4, 5)]);
        let mut sizes = components(&g);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn random_graph_matches_reachability_matrix() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..25 {
            let n = 12;
            let mut g = SocialGraph::new(n);
            let mut reach = vec![vec![false; n]; n];
            for i in 0..n {
                reach[i][i] = true;
                for j in (i + 1)..n {
                    if rng.random_bool(0.15) {
                        g.set_edge(i, j, true);
                        reach[i][j] = true;
                        reach[j][i] = true;
                    }
                }
            }
            // Transitive closure.
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            let mut expected: Vec<usize> = (0..n)
                .filter(|&i| (0..i).all(|j| !reach[i][j]))
                .map(|i| reach[i].iter().filter(|&&r| r).count())
                .collect();
            expected.sort_unstable();
            let mut sizes = components(&g);
            sizes.sort_unstable();
            assert_eq!(sizes, expected);
        }
    }

    #[test]
    fn susceptibility_drops_single_largest() {
        // {5,3,3,1}: (9 + 9 + 1) / (3 + 3 + 1) = 19/7.
        let value = susceptibility(&[5, 3, 3, 1]);
        assert!((value - 19.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn susceptibility_of_single_component_is_zero() {
        assert_eq!(susceptibility(&[100]), 0.0);
    }

    #[test]
    fn susceptibility_tie_removes_one_instance() {
        assert_eq!(susceptibility(&[4, 4]), 4.0);
    }

    #[test]
    fn susceptibility_is_permutation_invariant() {
        let a = susceptibility(&[1, 7, 2, 2, 5]);
        let b = susceptibility(&[7, 5, 2, 1, 2]);
        assert_eq!(a, b);
    }
}
