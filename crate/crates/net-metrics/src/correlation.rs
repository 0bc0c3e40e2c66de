//! Edge-list Pearson correlations: assortativity and homophily.

use sim_core::SocialGraph;

/// Pearson correlation of a node value across linked pairs, with each
/// undirected edge contributing both orientations. `None` when there
/// are no edges or the endpoint values have zero spread.
pub fn edge_value_pearson(graph: &SocialGraph, values: &[f64]) -> Option<f64> {
    let mut count = 0u64;
    let mut sum = 0.0f64;
    let mut lowest = f64::INFINITY;
    let mut highest = f64::NEG_INFINITY;
    for (i, j) in graph.edges() {
        for v in [values[i], values[j]] {
            sum += v;
            lowest = lowest.min(v);
            highest = highest.max(v);
        }
        count += 2;
    }
    if count == 0 || lowest == highest {
        return None;
    }
    let mean = sum / count as f64;
    let mut cross = 0.0f64;
    let mut square = 0.0f64;
    for (i, j) in graph.edges() {
        let a = values[i] - mean;
        let b = values[j] - mean;
        cross += 2.0 * a * b;
        square += a * a + b * b;
    }
    // Both marginals are the same multiset, so the normalizer is just
    // the common variance term.
    Some((cross / square).clamp(-1.0, 1.0))
}

/// Degree assortativity: Pearson correlation of the degrees of linked
/// agents. Undefined on regular graphs and edgeless graphs.
pub fn assortativity(graph: &SocialGraph) -> Option<f64> {
    let degrees: Vec<f64> = (0..graph.n()).map(|i| graph.degree(i) as f64).collect();
    edge_value_pearson(graph, &degrees)
}

/// Homophily: Pearson correlation of the wealths of linked agents.
/// Undefined when all linked agents hold identical wealth.
pub fn homophily(graph: &SocialGraph, wealths: &[f64]) -> Option<f64> {
    edge_value_pearson(graph, wealths)
}
