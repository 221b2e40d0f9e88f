// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::cmp::Ordering;
use std::fmt;

use super::Bitset;

/// Fixed-capacity bitset of arbitrary width.
///
/// All sets belonging to one [`BigGraph`] share the same word count, so
/// the word-wise operations never have to deal with ragged lengths.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigSet {
    words: Vec<u64>,
}

impl BigSet {
    pub fn new(capacity: usize) -> Self {
        BigSet { words: vec![0; capacity.div_ceil(64).max(1)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BigSet::new(n);
        for v in 0..n {
            s.words[v / 64] |= 1 << (v % 64);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(capacity: usize, it: I) -> Self {
        let mut s = BigSet::new(capacity);
        for v in it {
            Bitset::insert(&mut s, v);
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

impl Ord for BigSet {
    // Numeric order of the bitmask: compare from the most significant word.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.words.len(), other.words.len());
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for BigSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BigSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Bitset for BigSet {
    fn empty_like(&self) -> Self {
        BigSet { words: vec![0; self.words.len()] }
    }
    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| (w >> (v % 64)) & 1 == 1)
    }
    #[inline]
    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }
    #[inline]
    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn and(&self, other: &Self) -> Self {
        BigSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }
    fn or(&self, other: &Self) -> Self {
        BigSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }
    fn minus(&self, other: &Self) -> Self {
        BigSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect() }
    }
    fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
    fn ones(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Adjacency-set graph without the 64-vertex cap.
///
/// Only the oversized gallery members (`L`, `LLbar`) and the large random
/// split graphs go through this type.
#[derive(Clone, PartialEq, Eq)]
pub struct BigGraph {
    n: usize,
    adj: Vec<BigSet>,
}

impl BigGraph {
    pub fn empty(n: usize) -> Self {
        BigGraph { n, adj: vec![BigSet::new(n); n] }
    }

    /// Panics on out-of-range endpoints or loops; callers construct these
    /// graphs programmatically.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = BigGraph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &BigSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> BigGraph {
        let all = BigSet::full(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut r = all.minus(&self.adj[v]);
                r.remove(v);
                r
            })
            .collect();
        BigGraph { n: self.n, adj }
    }

    pub fn disjoint_union(&self, other: &BigGraph) -> BigGraph {
        let n = self.n + other.n;
        let shift = self.n;
        BigGraph::from_edges(n, self.edges().chain(other.edges().map(|(u, v)| (u + shift, v + shift))))
    }

    /// Converts to the bitset-row representation when it fits.
    pub fn to_small(&self) -> Result<super::Graph, super::GraphError> {
        super::Graph::from_edges(self.n, self.edges())
    }
}

impl fmt::Debug for BigGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigGraph({} vertices, {} edges)", self.n, self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn order_matches_numeric_order() {
        let a = BigSet::from_vertices(130, [1, 70]);
        let b = BigSet::from_vertices(130, [128]);
        let c = BigSet::from_vertices(130, [0, 1, 2, 3]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn round_trip_small() {
        let g = Graph::cycle(5).unwrap();
        let big = g.to_big();
        assert_eq!(big.to_small().unwrap(), g);
        assert_eq!(big.complement().to_small().unwrap(), g.complement());
    }

    #[test]
    fn union_shifts() {
        let g = BigGraph::from_edges(70, [(0, 69)]);
        let h = g.disjoint_union(&g);
        assert_eq!(h.n(), 140);
        assert!(h.has_edge(70, 139));
        assert_eq!(h.edge_count(), 2);
    }
}
