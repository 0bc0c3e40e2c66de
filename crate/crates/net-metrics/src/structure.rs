//! Clustering coefficients, shortest paths and second neighbours.

use sim_core::SocialGraph;

/// Local clustering coefficient of agent `i`: the fraction of its
/// neighbour pairs that are themselves linked; 0 for degree below 2.
pub fn local_clustering(graph: &SocialGraph, i: usize) -> f64 {
    let degree = graph.degree(i);
    if degree < 2 {
        return 0.0;
    }
    // Each edge between two neighbours of i is counted from both ends.
    let closed: usize = graph
        .neighbours(i)
        .map(|j| graph.shared_neighbours(i, j))
        .sum();
    closed as f64 / (degree * (degree - 1)) as f64
}

/// Mean local clustering over all agents.
pub fn avg_clustering(graph: &SocialGraph) -> f64 {
    let n = graph.n();
    if n == 0 {
        return 0.0;
    }
    (0..n).map(|i| local_clustering(graph, i)).sum::<f64>() / n as f64
}

/// Shortest-path and second-neighbour statistics from one BFS sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceStats {
    /// Mean shortest-path length over all connected pairs; 0 if none.
    pub avg_path_len: f64,
    /// Mean number of agents at distance exactly 2.
    pub mean_second_neighbours: f64,
}

/// Breadth-first distances from every agent, word-parallel over the
/// adjacency bitsets. Disconnected pairs contribute nothing to the
/// path-length average.
pub fn distance_stats(graph: &SocialGraph) -> DistanceStats {
    let n = graph.n();
    if n == 0 {
        return DistanceStats {
            avg_path_len: 0.0,
            mean_second_neighbours: 0.0,
        };
    }
    let words = graph.words_per_row();
    let mut visited = vec![0u64; words];
    let mut frontier = vec![0u64; words];
    let mut next = vec![0u64; words];

    let mut path_total = 0.0f64;
    let mut pair_count = 0u64;
    let mut second_total = 0u64;

    for source in 0..n {
        visited.fill(0);
        frontier.fill(0);
        visited[source / 64] |= 1 << (source % 64);
        frontier[source / 64] |= 1 << (source % 64);
        let mut distance = 0u64;
        loop {
            distance += 1;
            next.fill(0);
            for (word_index, mut word) in frontier.iter().copied().enumerate() {
                while word != 0 {
                    let node = word_index * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    for (acc, row) in next.iter_mut().zip(graph.adjacency_words(node)) {
                        *acc |= row;
                    }
                }
            }
            let mut reached = 0u64;
            for ((nw, vw), fw) in next.iter_mut().zip(&mut visited).zip(&mut frontier) {
                *nw &= !*vw;
                *vw |= *nw;
                *fw = *nw;
                reached += nw.count_ones() as u64;
            }
            if reached == 0 {
                break;
            }
            path_total += (distance * reached) as f64;
            pair_count += reached;
            if distance == 2 {
                second_total += reached;
            }
        }
    }

    DistanceStats {
        avg_path_len: if pair_count == 0 {
            0.0
        } else {
            path_total / pair_count as f64
        },
        mean_second_neighbours: second_total as f64 / n as f64,
    }
}

/// Mean shortest-path length over connected pairs.
pub fn avg_path_length(graph: &SocialGraph) -> f64 {
    distance_stats(graph).avg_path_len
}

/// Mean number of distinct agents at graph distance exactly 2.
pub fn mean_second_neighbours(graph: &SocialGraph) -> f64 {
    distance_stats(graph).mean_second_neighbours
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
    fn triangle_is_fully_clustered() {
        let g = graph_with(3, &[(0, 1), (1, 2), (0, 2)]);
        for i in 0..3 {
            assert_eq!(local_clustering(&g, i), 1.0);
        }
        assert_eq!(avg_clustering(&g), 1.0);
    }

    #[test]
    fn path_has_no_triangles() {
        let g = graph_with(3, &[(0, 1), (1, 2)]);
        assert_eq!(avg_clustering(&g), 0.0);
    }

    #[test]
    fn near_clique_clustering() {
        // 4-clique minus one edge: the two degree-3 nodes have C = 2/3,
        // the others 1; average 5/6.
        let g = graph_with(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(local_clustering(&g, 0), 1.0);
        assert_eq!(local_clustering(&g, 1), 1.0);
        assert!((local_clustering(&g, 2) - 2.0 / 3.0).abs() < 1e-15);
        assert!((local_clustering(&g, 3) - 2.0 / 3.0).abs() < 1e-15);
        assert!((avg_clustering(&g) - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn three_node_path_distances() {
        let g = graph_with(3, &[(0, 1), (1, 2)]);
        let stats = distance_stats(&g);
        assert!((stats.avg_path_len - 4.0 / 3.0).abs() < 1e-15);
        assert!((stats.mean_second_neighbours - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn complete_graph_distances() {
        let edges: Vec<(usize, usize)> =
            (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).collect();
        let g = graph_with(6, &edges);
        let stats = distance_stats(&g);
        assert_eq!(stats.avg_path_len, 1.0);
        assert_eq!(stats.mean_second_neighbours, 0.0);
    }

    #[test]
    fn edgeless_graph_conventions() {
        let g = SocialGraph::new(5);
        let stats = distance_stats(&g);
        assert_eq!(stats.avg_path_len, 0.0);
        assert_eq!(stats.mean_second_neighbours, 0.0);
    }

    #[test]
    fn disconnected_pairs_are_excluded() {
        // Two disjoint edges: only intra-component pairs count.
        let g = graph_with(4, &[(0, 1), (2, 3)]);
        assert_eq!(avg_path_length(&g), 1.0);
        assert_eq!(mean_second_neighbours(&g), 0.0);
    }

    #[test]
    fn distances_cross_word_boundaries() {
        // Path 0-70-130: distance-2 pairs straddle u64 words.
        let g = graph_with(131, &[(0, 70), (70, 130)]);
        let stats = distance_stats(&g);
        assert!((stats.avg_path_len - 4.0 / 3.0).abs() < 1e-15);
        assert!((stats.mean_second_neighbours - 2.0 / 131.0).abs() < 1e-15);
    }
}
