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

use std::fmt::Debug;

use super::{BigGraph, BigSet, Graph, VertexSet};

/// Operations the enumeration and recognizer kernels need from a vertex set.
///
/// Implemented by the single-word [`VertexSet`] and the multi-word
/// [`BigSet`]; `Ord` must agree with numeric order of the bitmask so that
/// families sort the same way on both paths.
pub trait Bitset: Clone + Eq + Ord + Debug {
    fn empty_like(&self) -> Self;
    fn contains(&self, v: usize) -> bool;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn count(&self) -> usize;
    fn is_empty(&self) -> bool;
    fn first(&self) -> Option<usize>;
    fn and(&self, other: &Self) -> Self;
    fn or(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn intersects(&self, other: &Self) -> bool;
    fn is_subset(&self, other: &Self) -> bool;
    fn ones(&self) -> Vec<usize>;
}

impl Bitset for VertexSet {
    #[inline]
    fn empty_like(&self) -> Self {
        VertexSet::EMPTY
    }
    #[inline]
    fn contains(&self, v: usize) -> bool {
        VertexSet::contains(*self, v)
    }
    #[inline]
    fn insert(&mut self, v: usize) {
        VertexSet::insert(self, v)
    }
    #[inline]
    fn remove(&mut self, v: usize) {
        VertexSet::remove(self, v)
    }
    #[inline]
    fn count(&self) -> usize {
        self.len()
    }
    #[inline]
    fn is_empty(&self) -> bool {
        VertexSet::is_empty(*self)
    }
    #[inline]
    fn first(&self) -> Option<usize> {
        VertexSet::first(*self)
    }
    #[inline]
    fn and(&self, other: &Self) -> Self {
        *self & *other
    }
    #[inline]
    fn or(&self, other: &Self) -> Self {
        *self | *other
    }
    #[inline]
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    #[inline]
    fn intersects(&self, other: &Self) -> bool {
        VertexSet::intersects(*self, *other)
    }
    #[inline]
    fn is_subset(&self, other: &Self) -> bool {
        VertexSet::is_subset(*self, *other)
    }
    fn ones(&self) -> Vec<usize> {
        self.to_vec()
    }
}

/// Read-only adjacency access shared by [`Graph`] and [`BigGraph`].
pub trait GraphLike: Sync {
    type Set: Bitset + Send + Sync;

    fn order(&self) -> usize;
    fn all(&self) -> Self::Set;
    fn empty_set(&self) -> Self::Set;
    fn nbrs(&self, v: usize) -> &Self::Set;

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.nbrs(u).contains(v)
    }

    fn singleton(&self, v: usize) -> Self::Set {
        let mut s = self.empty_set();
        s.insert(v);
        s
    }

    fn closed_nbrs(&self, v: usize) -> Self::Set {
        let mut s = self.nbrs(v).clone();
        s.insert(v);
        s
    }

    fn set_is_clique(&self, s: &Self::Set) -> bool {
        s.ones().into_iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(self.nbrs(v))
        })
    }
}

impl GraphLike for Graph {
    type Set = VertexSet;

    #[inline]
    fn order(&self) -> usize {
        self.n()
    }
    #[inline]
    fn all(&self) -> VertexSet {
        self.vertices()
    }
    #[inline]
    fn empty_set(&self) -> VertexSet {
        VertexSet::EMPTY
    }
    #[inline]
    fn nbrs(&self, v: usize) -> &VertexSet {
        &self.rows()[v]
    }
}

impl GraphLike for BigGraph {
    type Set = BigSet;

    fn order(&self) -> usize {
        self.n()
    }
    fn all(&self) -> BigSet {
        BigSet::full(self.n())
    }
    fn empty_set(&self) -> BigSet {
        BigSet::new(self.n())
    }
    fn nbrs(&self, v: usize) -> &BigSet {
        self.neighbors(v)
    }
}
