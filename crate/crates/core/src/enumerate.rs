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

//! Maximal clique and maximal stable set enumeration (Bron–Kerbosch with
//! pivoting), plus the strong/simplicial clique predicates and covering
//! tests built on top of the families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BigGraph, BigSet, Bitset, Graph, GraphLike, VertexSet};

/// Default upper bound on the number of members of an enumerated family.
pub const DEFAULT_FAMILY_CAP: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("more than {cap} maximal sets; graph too rich to enumerate")]
    FamilyTooLarge { cap: usize },
    #[error("{0} is not a clique")]
    NotAClique(VertexSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Clique,
    Stable,
}

impl FamilyKind {
    pub fn dual(self) -> FamilyKind {
        match self {
            FamilyKind::Clique => FamilyKind::Stable,
            FamilyKind::Stable => FamilyKind::Clique,
        }
    }
}

/// Maximal cliques or maximal stable sets of one graph, sorted by bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    kind: FamilyKind,
    sets: Vec<VertexSet>,
}

impl SetFamily {
    /// Wraps `sets` after sorting and deduplicating; maximality is the
    /// caller's responsibility.
    pub fn new(kind: FamilyKind, mut sets: Vec<VertexSet>) -> Self {
        sets.sort_unstable();
        sets.dedup();
        SetFamily { kind, sets }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Same sets reinterpreted in the complement graph.
    pub fn as_dual(&self) -> SetFamily {
        SetFamily { kind: self.kind.dual(), sets: self.sets.clone() }
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = VertexSet;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexSet>>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter().copied()
    }
}

fn expand<G: GraphLike>(
    g: &G,
    r: G::Set,
    mut p: G::Set,
    mut x: G::Set,
    out: &mut Vec<G::Set>,
    cap: usize,
) -> Result<(), EnumerateError> {
    if p.is_empty() {
        if x.is_empty() {
            if out.len() >= cap {
                return Err(EnumerateError::FamilyTooLarge { cap });
            }
            out.push(r);
        }
        return Ok(());
    }
    // pivot: vertex of P ∪ X with the most neighbours in P, lowest index on ties
    let mut pivot = usize::MAX;
    let mut best = 0;
    for u in p.or(&x).ones() {
        let d = p.and(g.nbrs(u)).count();
        if pivot == usize::MAX || d > best {
            pivot = u;
            best = d;
        }
    }
    for v in p.minus(g.nbrs(pivot)).ones() {
        let mut r2 = r.clone();
        r2.insert(v);
        expand(g, r2, p.and(g.nbrs(v)), x.and(g.nbrs(v)), out, cap)?;
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// Maximal cliques of any [`GraphLike`], sorted by bitmask.
pub fn maximal_cliques_generic<G: GraphLike>(g: &G, cap: usize) -> Result<Vec<G::Set>, EnumerateError> {
    let mut out = Vec::new();
    expand(g, g.empty_set(), g.all(), g.empty_set(), &mut out, cap)?;
    out.sort_unstable();
    Ok(out)
}

pub fn maximal_cliques_capped(g: &Graph, cap: usize) -> Result<SetFamily, EnumerateError> {
    Ok(SetFamily { kind: FamilyKind::Clique, sets: maximal_cliques_generic(g, cap)? })
}

pub fn maximal_cliques(g: &Graph) -> Result<SetFamily, EnumerateError> {
    maximal_cliques_capped(g, DEFAULT_FAMILY_CAP)
}

pub fn maximal_stable_sets_capped(g: &Graph, cap: usize) -> Result<SetFamily, EnumerateError> {
    Ok(SetFamily { kind: FamilyKind::Stable, sets: maximal_cliques_generic(&g.complement(), cap)? })
}

pub fn maximal_stable_sets(g: &Graph) -> Result<SetFamily, EnumerateError> {
    maximal_stable_sets_capped(g, DEFAULT_FAMILY_CAP)
}

pub fn maximal_cliques_big(g: &BigGraph) -> Result<Vec<BigSet>, EnumerateError> {
    maximal_cliques_generic(g, DEFAULT_FAMILY_CAP)
}

pub fn maximal_stable_sets_big(g: &BigGraph) -> Result<Vec<BigSet>, EnumerateError> {
    maximal_cliques_generic(&g.complement(), DEFAULT_FAMILY_CAP)
}

/// True iff `c` meets every member of `stables`.
pub fn meets_all(c: VertexSet, stables: &SetFamily) -> bool {
    stables.iter().all(|s| c.intersects(s))
}

/// A clique is strong when it meets every maximal stable set.
pub fn is_strong_clique(g: &Graph, c: VertexSet) -> Result<bool, EnumerateError> {
    if !g.is_clique(c) {
        return Err(EnumerateError::NotAClique(c));
    }
    Ok(meets_all(c, &maximal_stable_sets(g)?))
}

/// Distinct closed neighbourhoods `N[v]` that are cliques, generic form.
pub fn simplicial_cliques_generic<G: GraphLike>(g: &G) -> Vec<G::Set> {
    let mut out: Vec<G::Set> = (0..g.order())
        .map(|v| g.closed_nbrs(v))
        .filter(|c| g.set_is_clique(c))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn simplicial_cliques(g: &Graph) -> SetFamily {
    SetFamily { kind: FamilyKind::Clique, sets: simplicial_cliques_generic(g) }
}

pub fn covers_edges(g: &Graph, fam: &[VertexSet]) -> bool {
    g.edges().all(|(u, v)| covers_pair(fam, u, v))
}

pub fn covers_nonedges(g: &Graph, fam: &[VertexSet]) -> bool {
    g.non_edges().all(|(u, v)| covers_pair(fam, u, v))
}

pub fn covers_vertices(g: &Graph, fam: &[VertexSet]) -> bool {
    let covered = fam.iter().fold(VertexSet::EMPTY, |acc, &s| acc | s);
    g.vertices().is_subset(covered)
}

pub(crate) fn covers_pair(fam: &[VertexSet], u: usize, v: usize) -> bool {
    let pair = VertexSet::from_vertices([u, v]);
    fam.iter().any(|s| pair.is_subset(*s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gallery::{one_indexed, G12_CLIQUES, G12_STABLES, CIR9_STABLES};
    use crate::graph::{gallery, GalleryId};
    use proptest::prelude::*;

    fn brute_maximal(g: &Graph, clique: bool) -> Vec<VertexSet> {
        let n = g.n();
        let good = |s: VertexSet| if clique { g.is_clique(s) } else { g.is_stable(s) };
        let mut out: Vec<VertexSet> = (1u64..1 << n)
            .map(VertexSet)
            .filter(|&s| good(s) && (0..n).all(|v| s.contains(v) || !good(s | VertexSet::singleton(v))))
            .collect();
        out.sort_unstable();
        out
    }

    fn graph_from_bits(n: usize, bits: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (bits >> k) & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
                k += 1;
            }
        }
        g
    }

    #[test]
    fn c4_cliques_are_edges() {
        let f = maximal_cliques(&Graph::cycle(4).unwrap()).unwrap();
        let want: Vec<VertexSet> =
            [[0, 1], [1, 2], [2, 3], [0, 3]].iter().map(|e| VertexSet::from_vertices(*e)).collect();
        assert_eq!(f.len(), 4);
        assert!(want.iter().all(|&s| f.contains(s)));
    }

    #[test]
    fn k1_and_kn() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(maximal_cliques(&k1).unwrap().sets(), &[VertexSet::singleton(0)]);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(maximal_stable_sets(&k5).unwrap().len(), 5);
        assert!(is_strong_clique(&k5, k5.vertices()).unwrap());
    }

    #[test]
    fn g12_families_match_listing() {
        let g = gallery(GalleryId::G12).unwrap();
        let cliques = SetFamily::new(FamilyKind::Clique, G12_CLIQUES.iter().map(|c| one_indexed(c)).collect());
        let stables = SetFamily::new(FamilyKind::Stable, G12_STABLES.iter().map(|s| one_indexed(s)).collect());
        assert_eq!(maximal_cliques(&g).unwrap(), cliques);
        assert_eq!(maximal_stable_sets(&g).unwrap(), stables);
    }

    #[test]
    fn cir9_stables_match_listing() {
        let g = gallery(GalleryId::Cir9).unwrap();
        let want = SetFamily::new(FamilyKind::Stable, CIR9_STABLES.iter().map(|s| one_indexed(s)).collect());
        assert_eq!(maximal_stable_sets(&g).unwrap(), want);
    }

    #[test]
    fn s3_strong_and_simplicial() {
        let s3 = gallery(GalleryId::S3).unwrap();
        assert!(!is_strong_clique(&s3, VertexSet::from_vertices([0, 1, 2])).unwrap());
        let simp = simplicial_cliques(&s3);
        let want = SetFamily::new(
            FamilyKind::Clique,
            vec![
                VertexSet::from_vertices([0, 1, 3]),
                VertexSet::from_vertices([0, 2, 4]),
                VertexSet::from_vertices([1, 2, 5]),
            ],
        );
        assert_eq!(simp, want);
        for c in &simp {
            assert!(is_strong_clique(&s3, c).unwrap());
        }
        assert!(matches!(
            is_strong_clique(&s3, VertexSet::from_vertices([3, 4])),
            Err(EnumerateError::NotAClique(_))
        ));
    }

    #[test]
    fn c4_has_no_simplicial_clique() {
        assert!(simplicial_cliques(&Graph::cycle(4).unwrap()).is_empty());
    }

    #[test]
    fn coverage() {
        let c4 = Graph::cycle(4).unwrap();
        let f = maximal_cliques(&c4).unwrap();
        assert!(covers_edges(&c4, f.sets()));
        assert!(!covers_nonedges(&c4, f.sets()));
        assert!(!covers_vertices(&Graph::empty(1).unwrap(), &[]));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::cycle(9).unwrap().complement();
        assert_eq!(maximal_cliques_capped(&g, 3), Err(EnumerateError::FamilyTooLarge { cap: 3 }));
    }

    #[test]
    fn big_path_agrees() {
        let g = gallery(GalleryId::G12).unwrap();
        let big = g.to_big();
        let small: Vec<Vec<usize>> = maximal_cliques(&g).unwrap().iter().map(|s| s.to_vec()).collect();
        let large: Vec<Vec<usize>> = maximal_cliques_big(&big).unwrap().iter().map(|s| s.ones()).collect();
        assert_eq!(small, large);
        assert_eq!(maximal_stable_sets_big(&big).unwrap().len(), 16);
    }

    proptest! {
        #[test]
        fn matches_subset_scan(n in 1usize..7, bits: u64) {
            let g = graph_from_bits(n, bits);
            prop_assert_eq!(maximal_cliques(&g).unwrap().sets().to_vec(), brute_maximal(&g, true));
            prop_assert_eq!(maximal_stable_sets(&g).unwrap().sets().to_vec(), brute_maximal(&g, false));
        }

        #[test]
        fn every_vertex_is_covered(n in 1usize..9, bits: u64) {
            let g = graph_from_bits(n, bits);
            prop_assert!(covers_vertices(&g, maximal_cliques(&g).unwrap().sets()));
            prop_assert!(covers_vertices(&g, maximal_stable_sets(&g).unwrap().sets()));
        }

        #[test]
        fn strength_is_monotone(n in 1usize..8, bits: u64) {
            let g = graph_from_bits(n, bits);
            let stables = maximal_stable_sets(&g).unwrap();
            for c in &maximal_cliques(&g).unwrap() {
                // every sub-clique of c that is strong makes c strong
                let mut sub = c.0;
                loop {
                    if sub != 0 && meets_all(VertexSet(sub), &stables) {
                        prop_assert!(meets_all(c, &stables));
                    }
                    if sub == 0 { break; }
                    sub = (sub - 1) & c.0;
                }
            }
        }
    }
}
