//! Undirected simple graph over the agent population.
//!
//! Adjacency is stored as one bitset row per agent, which keeps the hot
//! per-cycle operations (shared-neighbour counts, rewiring, traversals)
//! cheap at the population sizes used here.

/// Symmetric, irreflexive adjacency over agents `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocialGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    degrees: Vec<usize>,
}

impl SocialGraph {
    /// Edgeless graph on `n` agents.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SocialGraph {
            n,
            words,
            bits: vec![0; n * words],
            degrees: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn linked(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adds or removes the undirected edge `{i, j}`. Self-loops are rejected.
    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert_ne!(i, j, "self-loops are not allowed");
        if self.linked(i, j) == present {
            return;
        }
        let mask_j = 1u64 << (j % 64);
        let mask_i = 1u64 << (i % 64);
        if present {
            self.bits[i * self.words + j / 64] |= mask_j;
            self.bits[j * self.words + i / 64] |= mask_i;
            self.degrees[i] += 1;
            self.degrees[j] += 1;
        } else {
            self.bits[i * self.words + j / 64] &= !mask_j;
            self.bits[j * self.words + i / 64] &= !mask_i;
            self.degrees[i] -= 1;
            self.degrees[j] -= 1;
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    /// Neighbours of `i` in increasing index order.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(i))
    }

    /// All edges as `(i, j)` pairs with `i < j`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbours(i)
                .skip_while(move |&j| j < i)
                .map(move |j| (i, j))
        })
    }

    /// Number of common neighbours of `i` and `j`.
    pub fn shared_neighbours(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of `u64` words in each adjacency row.
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Raw adjacency row of agent `i`: bit `w * 64 + b` of word `w` is
    /// set iff `i` is linked to that agent. Bits at or above `n` are
    /// never set.
    pub fn adjacency_words(&self, i: usize) -> &[u64] {
        self.row(i)
    }

    /// Verifies symmetry, irreflexivity and the cached degree counts.
    pub fn is_consistent(&self) -> bool {
        (0..self.n).all(|i| {
            !self.linked(i, i)
                && self.degree(i) == self.neighbours(i).count()
                && self.neighbours(i).all(|j| self.linked(j, i))
        })
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    current: u64,
    word_index: usize,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            current: words[0],
            word_index: 0,
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_index * 64 + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_symmetric_and_irreflexive() {
        let mut g = SocialGraph::new(5);
        g.set_edge(0, 3, true);
        g.set_edge(3, 4, true);
        assert!(g.linked(3, 0));
        assert!(g.linked(0, 3));
        assert!(!g.linked(0, 0));
        assert_eq!(g.degree(3), 2);
        assert_eq!(g.edge_count(), 2);
        g.set_edge(3, 0, false);
        assert!(!g.linked(0, 3));
        assert_eq!(g.degree(3), 1);
        assert!(g.is_consistent());
    }

    #[test]
    #[should_panic(expected = "self-loops")]
    fn self_loop_panics() {
        let mut g = SocialGraph::new(3);
        g.set_edge(1, 1, true);
    }

    #[test]
    fn neighbour_iteration_crosses_word_boundaries() {
        let mut g = SocialGraph::new(130);
        for j in [1usize, 63, 64, 100, 129] {
            g.set_edge(0, j, true);
        }
        let neigh: Vec<usize> = g.neighbours(0).collect();
        assert_eq!(neigh, vec![1, 63, 64, 100, 129]);
        assert_eq!(g.edges().count(), 5);
    }

    #[test]
    fn shared_neighbours_counts_common_only() {
        // Triangle 0-1-2 plus pendant 3 on node 0.
        let mut g = SocialGraph::new(4);
        g.set_edge(0, 1, true);
        g.set_edge(1, 2, true);
        g.set_edge(0, 2, true);
        g.set_edge(0, 3, true);
        assert_eq!(g.shared_neighbours(0, 1), 1); // only node 2
        assert_eq!(g.shared_neighbours(2, 3), 1); // only node 0
        assert_eq!(g.shared_neighbours(1, 2), 1);
    }
}
