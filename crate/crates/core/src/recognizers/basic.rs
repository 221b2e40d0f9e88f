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

//! Class predicates that need only the clique and stable-set families.

use thiserror::Error;

use super::certificate::{violates_triangle, Certificate, Pattern};
use crate::enumerate::{maximal_cliques, maximal_stable_sets, EnumerateError, SetFamily};
use crate::graph::{Bitset, Graph, GraphLike, VertexSet};

/// Largest graph accepted by [`perfect`].
pub const PERFECT_MAX_VERTICES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("{what} is supported up to {max} vertices, graph has {n}")]
    OutOfRange { what: &'static str, max: usize, n: usize },
    #[error("search undecided: {0}")]
    Undecided(String),
}

/// A yes/no answer with an optional supporting certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn yes(certificate: Option<Certificate>) -> Self {
        Verdict { holds: true, certificate }
    }

    pub fn no(certificate: Option<Certificate>) -> Self {
        Verdict { holds: false, certificate }
    }
}

/// A graph together with its maximal cliques and maximal stable sets.
#[derive(Debug, Clone)]
pub struct Analysis {
    graph: Graph,
    cliques: SetFamily,
    stables: SetFamily,
}

impl Analysis {
    pub fn new(g: &Graph) -> Result<Self, EnumerateError> {
        Ok(Analysis { graph: g.clone(), cliques: maximal_cliques(g)?, stables: maximal_stable_sets(g)? })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cliques(&self) -> &SetFamily {
        &self.cliques
    }

    pub fn stables(&self) -> &SetFamily {
        &self.stables
    }

    /// Analysis of the complement; the two families trade places.
    pub fn complement(&self) -> Analysis {
        Analysis {
            graph: self.graph.complement(),
            cliques: self.stables.as_dual(),
            stables: self.cliques.as_dual(),
        }
    }
}

/// Disjoint (maximal clique, maximal stable set) pairs, at most `limit`.
pub fn disjoint_pairs(a: &Analysis, limit: usize) -> Vec<(VertexSet, VertexSet)> {
    let mut out = Vec::new();
    for c in a.cliques() {
        for s in a.stables() {
            if !c.intersects(s) {
                out.push((c, s));
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

pub fn cis(a: &Analysis) -> Verdict {
    match disjoint_pairs(a, 1).first() {
        None => Verdict::yes(None),
        Some(&(clique, stable)) => Verdict::no(Some(Certificate::DisjointPair { clique, stable })),
    }
}

/// All split partitions `(clique, stable)`, sorted by clique mask.
///
/// A split partition's clique side extends to a maximal clique `K` that
/// differs from it by at most one vertex `x`, and `x` then has no neighbour
/// outside `K`. So the candidates `(K, V∖K)` and `(K∖x, (V∖K)∪x)` are exhaustive.
pub fn split_partitions(a: &Analysis) -> Vec<(VertexSet, VertexSet)> {
    let g = a.graph();
    let all = g.vertices();
    let mut out = Vec::new();
    for k in a.cliques() {
        let rest = all - k;
        if !g.is_stable(rest) {
            continue;
        }
        out.push((k, rest));
        for x in k.iter() {
            if !g.neighbors(x).intersects(rest) {
                out.push((k - VertexSet::singleton(x), rest | VertexSet::singleton(x)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Induced 2K2, C4 or C5 if the graph has one.
pub fn find_split_obstruction(g: &Graph) -> Option<Certificate> {
    if let Some(c) = find_induced_4(g, &[Pattern::TwoK2, Pattern::C4]) {
        return Some(c);
    }
    find_induced_c5(g).map(|vs| Certificate::InducedSubgraph { pattern: Pattern::C5, vertices: vs })
}

pub fn split(a: &Analysis) -> Verdict {
    match split_partitions(a).first() {
        Some(&(clique, stable)) => Verdict::yes(Some(Certificate::SplitPartition { clique, stable })),
        None => Verdict::no(find_split_obstruction(a.graph())),
    }
}

/// Exactly one disjoint pair. The count is cross-checked against the
/// number of split partitions (a graph is almost CIS iff it is split with a
/// unique split partition).
pub fn almost_cis(a: &Analysis) -> Verdict {
    let pairs = disjoint_pairs(a, 2);
    let by_pairs = pairs.len() == 1;
    debug_assert_eq!(by_pairs, almost_cis_by_partitions(a), "almost-CIS characterizations disagree");
    match pairs.as_slice() {
        [(clique, stable)] => Verdict::yes(Some(Certificate::DisjointPair { clique: *clique, stable: *stable })),
        [first, second] => Verdict::no(Some(Certificate::TwoDisjointPairs { first: *first, second: *second })),
        _ => {
            let parts = split_partitions(a);
            Verdict::no(match parts.as_slice() {
                [] => find_split_obstruction(a.graph()),
                [first, second, ..] => Some(Certificate::TwoSplitPartitions { first: *first, second: *second }),
                [_] => None,
            })
        }
    }
}

pub fn almost_cis_by_partitions(a: &Analysis) -> bool {
    split_partitions(a).len() == 1
}

pub fn quasi_cis(a: &Analysis) -> Verdict {
    match disjoint_pairs(a, 2).as_slice() {
        [first, second] => Verdict::no(Some(Certificate::TwoDisjointPairs { first: *first, second: *second })),
        [(clique, stable)] => Verdict::yes(Some(Certificate::DisjointPair { clique: *clique, stable: *stable })),
        _ => Verdict::yes(None),
    }
}

/// First 4-vertex subset inducing one of `patterns`, vertices in pattern order.
fn find_induced_4(g: &Graph, patterns: &[Pattern]) -> Option<Certificate> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for &p in patterns {
                        if let Some(vs) = orient(g, p, [a, b, c, d]) {
                            return Some(Certificate::InducedSubgraph { pattern: p, vertices: vs });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Orders four vertices to match `p`, if they induce it.
fn orient(g: &Graph, p: Pattern, q: [usize; 4]) -> Option<Vec<usize>> {
    const PERMS: [[usize; 4]; 4] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2], [0, 1, 3, 2]];
    let degs: Vec<usize> = q.iter().map(|&v| (g.neighbors(v) & VertexSet::from_vertices(q)).len()).collect();
    match p {
        Pattern::P4 => {
            let ends: Vec<usize> = (0..4).filter(|&i| degs[i] == 1).collect();
            if ends.len() != 2 || degs.iter().sum::<usize>() != 6 {
                return None;
            }
            let a = q[ends[0]];
            let b = g.neighbors(a).iter().find(|v| q.contains(v))?;
            let d = q[ends[1]];
            let c = g.neighbors(d).iter().find(|v| q.contains(v))?;
            let path = vec![a, b, c, d];
            p.matches(g, &path).then_some(path)
        }
        _ => PERMS.iter().map(|pm| pm.iter().map(|&i| q[i]).collect::<Vec<_>>()).find(|vs| p.matches(g, vs)),
    }
}

fn find_induced_c5(g: &Graph) -> Option<Vec<usize>> {
    find_hole_of_length(g, 5)
}

pub fn find_induced_p4(g: &Graph) -> Option<[usize; 4]> {
    for (b, c) in g.edges() {
        for (b, c) in [(b, c), (c, b)] {
            let left = g.neighbors(b) - g.closed_neighbors(c);
            let right = g.neighbors(c) - g.closed_neighbors(b);
            for a in left.iter() {
                if let Some(d) = (right - g.neighbors(a)).first() {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// No induced 2K2, C4 or P4.
pub fn threshold(g: &Graph) -> Verdict {
    match find_induced_4(g, &[Pattern::TwoK2, Pattern::C4, Pattern::P4]) {
        Some(c) => Verdict::no(Some(c)),
        None => Verdict::yes(None),
    }
}

/// No induced P4.
pub fn cograph(g: &Graph) -> Verdict {
    match find_induced_p4(g) {
        Some(p) => Verdict::no(Some(Certificate::InducedSubgraph { pattern: Pattern::P4, vertices: p.to_vec() })),
        None => Verdict::yes(None),
    }
}

/// Simplicial vertices, i.e. those whose closed neighbourhood is a clique.
pub fn simplicial_vertices<G: GraphLike>(g: &G) -> Vec<usize> {
    (0..g.order()).filter(|&v| g.set_is_clique(&g.closed_nbrs(v))).collect()
}

/// An edge contained in no simplicial clique, if any.
pub fn edge_outside_simplicial_cliques<G: GraphLike>(g: &G) -> Option<(usize, usize)> {
    let simp = simplicial_vertices(g);
    let cliques: Vec<G::Set> = simp.iter().map(|&v| g.closed_nbrs(v)).collect();
    for u in 0..g.order() {
        for v in g.nbrs(u).ones() {
            if v > u && !cliques.iter().any(|c| c.contains(u) && c.contains(v)) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn edge_simplicial(g: &Graph) -> Verdict {
    match edge_outside_simplicial_cliques(g) {
        Some(edge) => Verdict::no(Some(Certificate::EdgeInNoSimplicialClique { edge })),
        None => Verdict::yes(Some(Certificate::SimplicialCover { vertices: simplicial_vertices(g) })),
    }
}

/// Maximal cliques meeting every maximal stable set.
pub fn strong_cliques(a: &Analysis) -> Vec<VertexSet> {
    a.cliques().iter().filter(|&c| a.stables().iter().all(|s| c.intersects(s))).collect()
}

/// Every edge lies in a strong maximal clique.
///
/// Restricting to maximal cliques loses nothing: a clique containing a
/// strong clique is itself strong, so any edge-covering family of strong
/// cliques can be replaced by maximal ones.
pub fn semi_weakly_cis(a: &Analysis) -> Verdict {
    let strong = strong_cliques(a);
    for (u, v) in a.graph().edges() {
        let pair = VertexSet::from_vertices([u, v]);
        if !strong.iter().any(|&c| pair.is_subset(c)) {
            return Verdict::no(Some(Certificate::EdgeInNoStrongClique { edge: (u, v) }));
        }
    }
    Verdict::yes(Some(Certificate::StrongCliqueCover { cliques: strong }))
}

/// First edge violating the triangle condition for the stable set `s`.
pub fn triangle_violation_in<G: GraphLike>(g: &G, s: &G::Set) -> Option<(usize, usize)> {
    for u in 0..g.order() {
        if s.contains(u) {
            continue;
        }
        let nu = g.nbrs(u);
        for v in nu.ones() {
            if v > u && !s.contains(v) && !nu.and(g.nbrs(v)).intersects(s) {
                return Some((u, v));
            }
        }
    }
    None
}

/// First (stable set, edge) pair violating the triangle condition.
pub fn triangle_violation<G: GraphLike>(g: &G, stables: &[G::Set]) -> Option<(G::Set, (usize, usize))> {
    stables.iter().find_map(|s| triangle_violation_in(g, s).map(|e| (s.clone(), e)))
}

pub fn triangle(a: &Analysis) -> Verdict {
    match triangle_violation(a.graph(), a.stables().sets()) {
        Some((stable, edge)) => Verdict::no(Some(Certificate::TriangleViolation { stable, edge })),
        None => Verdict::yes(None),
    }
}

/// True iff the given pair witnesses a triangle-condition failure.
pub fn is_triangle_violation(a: &Analysis, s: VertexSet, edge: (usize, usize)) -> bool {
    a.stables().contains(s) && a.graph().has_edge(edge.0, edge.1) && violates_triangle(a.graph(), s, edge)
}

/// Maximal stable sets that on their own satisfy the triangle condition.
pub fn admissible_stables(a: &Analysis) -> Vec<VertexSet> {
    a.stables().iter().filter(|s| triangle_violation_in(a.graph(), s).is_none()).collect()
}

/// Some non-edge-covering family of maximal stable sets satisfies the
/// triangle condition. The condition is checked set by set, so such a family
/// exists iff the family of all admissible sets covers every non-edge.
pub fn weakly_triangle(a: &Analysis) -> Verdict {
    let adm = admissible_stables(a);
    for (u, v) in a.graph().non_edges() {
        let pair = VertexSet::from_vertices([u, v]);
        if !adm.iter().any(|&s| pair.is_subset(s)) {
            return Verdict::no(Some(Certificate::NonEdgeInNoAdmissibleStable { pair: (u, v) }));
        }
    }
    Verdict::yes(Some(Certificate::AdmissibleStableCover { stables: adm }))
}

/// An induced P4 `a-b-c-d` with a maximal stable set through `a` and `d`
/// avoiding the common neighbours of `b` and `c`.
pub fn find_bad_p4(a: &Analysis) -> Option<([usize; 4], VertexSet)> {
    let g = a.graph();
    for (b, c) in g.edges() {
        let common = g.neighbors(b) & g.neighbors(c);
        for (b, c) in [(b, c), (c, b)] {
            let left = g.neighbors(b) - g.closed_neighbors(c);
            let right = g.neighbors(c) - g.closed_neighbors(b);
            for x in left.iter() {
                for y in (right - g.neighbors(x)).iter() {
                    let ends = VertexSet::from_vertices([x, y]);
                    if let Some(s) = a.stables().iter().find(|&s| ends.is_subset(s) && !s.intersects(common)) {
                        return Some(([x, b, c, y], s));
                    }
                }
            }
        }
    }
    None
}

/// Holds when the graph HAS a bad P4.
pub fn bad_p4(a: &Analysis) -> Verdict {
    match find_bad_p4(a) {
        Some((path, stable)) => Verdict::yes(Some(Certificate::BadP4 { path, stable })),
        None => Verdict::no(None),
    }
}

/// Induced cycle of exactly `len` vertices, smallest vertex first.
fn find_hole_of_length(g: &Graph, len: usize) -> Option<Vec<usize>> {
    find_hole(g, &|k| k == len)
}

/// Induced cycle of odd length at least 5.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    find_hole(g, &|k| k >= 5 && k % 2 == 1)
}

fn find_hole(g: &Graph, accept: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
    for s in 0..g.n() {
        let higher = g.vertices() - VertexSet::full(s + 1);
        for p1 in (g.neighbors(s) & higher).iter() {
            let mut path = vec![s, p1];
            if let Some(c) = extend_hole(g, higher, &mut path, accept) {
                return Some(c);
            }
        }
    }
    None
}

/// Extends the induced path `s, p1, ..., pk` (all later vertices above `s`)
/// until it closes into an accepted induced cycle.
fn extend_hole(
    g: &Graph,
    higher: VertexSet,
    path: &mut Vec<usize>,
    accept: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let s = path[0];
    let last = *path.last().expect("nonempty path");
    let inner = path[1..path.len() - 1].iter().fold(VertexSet::EMPTY, |acc, &v| acc | g.closed_neighbors(v));
    for w in (g.neighbors(last) & higher).iter() {
        if path.contains(&w) || inner.contains(w) {
            continue;
        }
        if g.has_edge(w, s) {
            if path.len() >= 3 && accept(path.len() + 1) {
                let mut out = path.clone();
                out.push(w);
                return Some(out);
            }
            continue;
        }
        path.push(w);
        let found = extend_hole(g, higher, path, accept);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// No odd hole in the graph or its complement.
pub fn perfect(g: &Graph) -> Result<Verdict, RecognizeError> {
    if g.n() > PERFECT_MAX_VERTICES {
        return Err(RecognizeError::OutOfRange { what: "perfection test", max: PERFECT_MAX_VERTICES, n: g.n() });
    }
    if let Some(cycle) = find_odd_hole(g) {
        return Ok(Verdict::no(Some(Certificate::OddHole { cycle })));
    }
    Ok(match find_odd_hole(&g.complement()) {
        Some(cycle) => Verdict::no(Some(Certificate::OddAntihole { cycle })),
        None => Verdict::yes(None),
    })
}
