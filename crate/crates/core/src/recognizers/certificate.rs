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

//! Certificates attached to recognizer verdicts, and their independent
//! re-verification against a graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::{covers_edges, covers_nonedges, covers_vertices, maximal_cliques, maximal_stable_sets};
use crate::graph::{Graph, VertexSet};
use crate::Rational;

/// Small labelled patterns used as forbidden induced subgraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pattern {
    /// path `v0-v1-v2-v3`
    P4,
    /// cycle `v0-v1-v2-v3-v0`
    C4,
    /// cycle `v0-v1-v2-v3-v4-v0`
    C5,
    /// edges `v0v1`, `v2v3`
    TwoK2,
}

impl Pattern {
    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::P4 => &[(0, 1), (1, 2), (2, 3)],
            Pattern::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Pattern::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            Pattern::TwoK2 => &[(0, 1), (2, 3)],
        }
    }

    fn order(self) -> usize {
        if self == Pattern::C5 {
            5
        } else {
            4
        }
    }

    /// True iff `vs` (in order) induces exactly this pattern in `g`.
    pub fn matches(self, g: &Graph, vs: &[usize]) -> bool {
        if vs.len() != self.order() || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        if VertexSet::from_vertices(vs.iter().copied()).len() != vs.len() {
            return false;
        }
        let edges = self.edges();
        (0..vs.len()).all(|i| {
            (i + 1..vs.len()).all(|j| g.has_edge(vs[i], vs[j]) == edges.contains(&(i, j)))
        })
    }
}

/// Covering targets for a cross-intersecting pair of families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    /// cliques cover all edges, stable sets all non-edges
    EdgesAndNonEdges,
    /// both families cover all vertices
    Vertices,
}

/// One checkable fact about a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A maximal clique and a maximal stable set that do not meet.
    DisjointPair { clique: VertexSet, stable: VertexSet },
    /// Two different disjoint (maximal clique, maximal stable set) pairs.
    TwoDisjointPairs { first: (VertexSet, VertexSet), second: (VertexSet, VertexSet) },
    /// A clique and a stable set partitioning the vertex set.
    SplitPartition { clique: VertexSet, stable: VertexSet },
    /// Two different split partitions.
    TwoSplitPartitions { first: (VertexSet, VertexSet), second: (VertexSet, VertexSet) },
    InducedSubgraph { pattern: Pattern, vertices: Vec<usize> },
    /// Simplicial cliques `N[v]` covering every edge.
    SimplicialCover { vertices: Vec<usize> },
    /// An edge inside no simplicial clique.
    EdgeInNoSimplicialClique { edge: (usize, usize) },
    /// Strong maximal cliques covering every edge.
    StrongCliqueCover { cliques: Vec<VertexSet> },
    /// An edge inside no strong maximal clique.
    EdgeInNoStrongClique { edge: (usize, usize) },
    /// A maximal stable set `S` and an edge outside it with no common
    /// neighbour of its endpoints in `S`.
    TriangleViolation { stable: VertexSet, edge: (usize, usize) },
    /// Maximal stable sets, each free of triangle violations, covering
    /// every non-edge.
    AdmissibleStableCover { stables: Vec<VertexSet> },
    /// A non-edge inside no admissible maximal stable set.
    NonEdgeInNoAdmissibleStable { pair: (usize, usize) },
    /// Induced path `a-b-c-d` and a maximal stable set containing `a`, `d`
    /// and no common neighbour of `b` and `c`.
    BadP4 { path: [usize; 4], stable: VertexSet },
    /// Induced cycle of odd length at least 5, in cyclic order.
    OddHole { cycle: Vec<usize> },
    /// Odd hole of the complement.
    OddAntihole { cycle: Vec<usize> },
    CrossIntersecting { mode: CoverMode, cliques: Vec<VertexSet>, stables: Vec<VertexSet> },
    /// Nonnegative weights giving exactly the maximal stable sets weight 1.
    EquistableWeights {
        #[serde(with = "rational_vec")]
        weights: Vec<Rational>,
    },
    /// A subset, not a maximal stable set, whose weight is the same
    /// for every feasible weighting.
    ForcedSubset {
        subset: VertexSet,
        #[serde(with = "rational_str")]
        value: Rational,
    },
    /// No nonnegative weighting gives every maximal stable set weight 1.
    Infeasible,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate does not hold: {0}")]
    Invalid(String),
    #[error("certificate cannot be checked: {0}")]
    Unchecked(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CertificateError> {
    Err(CertificateError::Invalid(msg.into()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CertificateError> {
    if cond {
        Ok(())
    } else {
        invalid(msg())
    }
}

fn check_edge(g: &Graph, (u, v): (usize, usize)) -> Result<(), CertificateError> {
    ensure(u < g.n() && v < g.n() && g.has_edge(u, v), || format!("({u},{v}) is not an edge"))
}

fn in_range(g: &Graph, s: VertexSet) -> Result<(), CertificateError> {
    ensure(s.is_subset(g.vertices()), || format!("{s} has vertices outside the graph"))
}

fn disjoint_pair(g: &Graph, (c, s): (VertexSet, VertexSet)) -> Result<(), CertificateError> {
    in_range(g, c)?;
    in_range(g, s)?;
    ensure(g.is_maximal_clique(c), || format!("{c} is not a maximal clique"))?;
    ensure(g.is_maximal_stable(s), || format!("{s} is not a maximal stable set"))?;
    ensure(!c.intersects(s), || format!("{c} and {s} intersect"))
}

fn partition(g: &Graph, (c, s): (VertexSet, VertexSet)) -> Result<(), CertificateError> {
    ensure((c | s) == g.vertices() && !c.intersects(s), || "parts do not partition V".into())?;
    ensure(g.is_clique(c), || format!("{c} is not a clique"))?;
    ensure(g.is_stable(s), || format!("{s} is not a stable set"))
}

/// `S` is a maximal stable set containing neither endpoint of the edge
/// and no common neighbour of them.
pub fn violates_triangle(g: &Graph, s: VertexSet, (u, v): (usize, usize)) -> bool {
    !s.contains(u) && !s.contains(v) && !(g.neighbors(u) & g.neighbors(v)).intersects(s)
}

fn admissible(g: &Graph, s: VertexSet) -> bool {
    g.edges().all(|e| !violates_triangle(g, s, e))
}

fn strong(c: VertexSet, stables: &[VertexSet]) -> bool {
    stables.iter().all(|&s| c.intersects(s))
}

impl Certificate {
    /// Re-derives the fact this certificate states, from `g` alone.
    pub fn check(&self, g: &Graph) -> Result<(), CertificateError> {
        let cliques = || maximal_cliques(g).map_err(|e| CertificateError::Unchecked(e.to_string()));
        let stables = || maximal_stable_sets(g).map_err(|e| CertificateError::Unchecked(e.to_string()));
        match self {
            Certificate::DisjointPair { clique, stable } => disjoint_pair(g, (*clique, *stable)),
            Certificate::TwoDisjointPairs { first, second } => {
                disjoint_pair(g, *first)?;
                disjoint_pair(g, *second)?;
                ensure(first != second, || "pairs coincide".into())
            }
            Certificate::SplitPartition { clique, stable } => partition(g, (*clique, *stable)),
            Certificate::TwoSplitPartitions { first, second } => {
                partition(g, *first)?;
                partition(g, *second)?;
                ensure(first != second, || "partitions coincide".into())
            }
            Certificate::InducedSubgraph { pattern, vertices } => {
                ensure(pattern.matches(g, vertices), || format!("{vertices:?} does not induce {pattern:?}"))
            }
            Certificate::SimplicialCover { vertices } => {
                let mut fam = Vec::new();
                for &v in vertices {
                    ensure(v < g.n(), || format!("vertex {v} out of range"))?;
                    let c = g.closed_neighbors(v);
                    ensure(g.is_clique(c), || format!("N[{v}] is not a clique"))?;
                    fam.push(c);
                }
                ensure(covers_edges(g, &fam), || "simplicial cliques miss an edge".into())
            }
            Certificate::EdgeInNoSimplicialClique { edge } => {
                check_edge(g, *edge)?;
                let pair = VertexSet::from_vertices([edge.0, edge.1]);
                let hit = g
                    .vertices()
                    .iter()
                    .any(|w| pair.is_subset(g.closed_neighbors(w)) && g.is_clique(g.closed_neighbors(w)));
                ensure(!hit, || format!("edge {edge:?} lies in a simplicial clique"))
            }
            Certificate::StrongCliqueCover { cliques: fam } => {
                let st = stables()?;
                for &c in fam {
                    in_range(g, c)?;
                    ensure(g.is_maximal_clique(c), || format!("{c} is not a maximal clique"))?;
                    ensure(strong(c, st.sets()), || format!("{c} is not strong"))?;
                }
                ensure(covers_edges(g, fam), || "strong cliques miss an edge".into())
            }
            Certificate::EdgeInNoStrongClique { edge } => {
                check_edge(g, *edge)?;
                let st = stables()?;
                let pair = VertexSet::from_vertices([edge.0, edge.1]);
                let hit = cliques()?.iter().any(|c| pair.is_subset(c) && strong(c, st.sets()));
                ensure(!hit, || format!("edge {edge:?} lies in a strong clique"))
            }
            Certificate::TriangleViolation { stable, edge } => {
                in_range(g, *stable)?;
                check_edge(g, *edge)?;
                ensure(g.is_maximal_stable(*stable), || format!("{stable} is not a maximal stable set"))?;
                ensure(violates_triangle(g, *stable, *edge), || {
                    format!("{stable} and edge {edge:?} satisfy the triangle condition")
                })
            }
            Certificate::AdmissibleStableCover { stables: fam } => {
                for &s in fam {
                    in_range(g, s)?;
                    ensure(g.is_maximal_stable(s), || format!("{s} is not a maximal stable set"))?;
                    ensure(admissible(g, s), || format!("{s} violates the triangle condition"))?;
                }
                ensure(covers_nonedges(g, fam), || "admissible stable sets miss a non-edge".into())
            }
            Certificate::NonEdgeInNoAdmissibleStable { pair: (u, v) } => {
                ensure(*u < g.n() && *v < g.n() && u != v && !g.has_edge(*u, *v), || {
                    format!("({u},{v}) is not a non-edge")
                })?;
                let pair = VertexSet::from_vertices([*u, *v]);
                let hit = stables()?.iter().any(|s| pair.is_subset(s) && admissible(g, s));
                ensure(!hit, || format!("({u},{v}) lies in an admissible stable set"))
            }
            Certificate::BadP4 { path, stable } => {
                in_range(g, *stable)?;
                ensure(Pattern::P4.matches(g, path), || format!("{path:?} is not an induced P4"))?;
                let [a, b, c, d] = *path;
                ensure(g.is_maximal_stable(*stable), || format!("{stable} is not a maximal stable set"))?;
                ensure(stable.contains(a) && stable.contains(d), || "stable set misses an end".into())?;
                ensure(!(g.neighbors(b) & g.neighbors(c)).intersects(*stable), || {
                    "stable set has a common neighbour of the middle vertices".into()
                })
            }
            Certificate::OddAntihole { cycle } => Certificate::OddHole { cycle: cycle.clone() }.check(&g.complement()),
            Certificate::OddHole { cycle } => {
                let k = cycle.len();
                ensure(k >= 5 && k % 2 == 1, || format!("cycle length {k} is not odd and at least 5"))?;
                ensure(cycle.iter().all(|&v| v < g.n()), || "vertex out of range".into())?;
                ensure(VertexSet::from_vertices(cycle.iter().copied()).len() == k, || "repeated vertex".into())?;
                for i in 0..k {
                    for j in i + 1..k {
                        let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                        ensure(g.has_edge(cycle[i], cycle[j]) == consecutive, || {
                            format!("cycle is not induced at ({},{})", cycle[i], cycle[j])
                        })?;
                    }
                }
                Ok(())
            }
            Certificate::CrossIntersecting { mode, cliques: cs, stables: ss } => {
                for &c in cs {
                    in_range(g, c)?;
                    ensure(g.is_maximal_clique(c), || format!("{c} is not a maximal clique"))?;
                }
                for &s in ss {
                    in_range(g, s)?;
                    ensure(g.is_maximal_stable(s), || format!("{s} is not a maximal stable set"))?;
                }
                for &c in cs {
                    for &s in ss {
                        ensure(c.intersects(s), || format!("{c} and {s} are disjoint"))?;
                    }
                }
                match mode {
                    CoverMode::EdgesAndNonEdges => {
                        ensure(covers_edges(g, cs), || "cliques miss an edge".into())?;
                        ensure(covers_nonedges(g, ss), || "stable sets miss a non-edge".into())
                    }
                    CoverMode::Vertices => {
                        ensure(covers_vertices(g, cs), || "cliques miss a vertex".into())?;
                        ensure(covers_vertices(g, ss), || "stable sets miss a vertex".into())
                    }
                }
            }
            Certificate::EquistableWeights { weights } => crate::equistable::check_weights(g, weights)
                .map_err(|e| CertificateError::Invalid(e.to_string())),
            Certificate::ForcedSubset { subset, value } => {
                in_range(g, *subset)?;
                ensure(!subset.is_empty(), || "empty subset".into())?;
                let forced = crate::equistable::forced_value(g, *subset)
                    .map_err(|e| CertificateError::Unchecked(e.to_string()))?;
                ensure(forced.as_ref() == Some(value), || match forced {
                    Some(f) => format!("{subset} is forced to {f}, not {value}"),
                    None => format!("{subset} is not forced"),
                })?;
                ensure(!stables()?.contains(*subset), || format!("{subset} is a maximal stable set"))
            }
            Certificate::Infeasible => {
                let poly = crate::equistable::WeightPolytope::new(g)
                    .map_err(|e| CertificateError::Unchecked(e.to_string()))?;
                ensure(!poly.is_feasible(), || "the weight polytope is nonempty".into())
            }
        }
    }

    /// Short tag naming the variant, matching the serialized `kind`.
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DisjointPair { .. } => "disjoint_pair",
            Certificate::TwoDisjointPairs { .. } => "two_disjoint_pairs",
            Certificate::SplitPartition { .. } => "split_partition",
            Certificate::TwoSplitPartitions { .. } => "two_split_partitions",
            Certificate::InducedSubgraph { .. } => "induced_subgraph",
            Certificate::SimplicialCover { .. } => "simplicial_cover",
            Certificate::EdgeInNoSimplicialClique { .. } => "edge_in_no_simplicial_clique",
            Certificate::StrongCliqueCover { .. } => "strong_clique_cover",
            Certificate::EdgeInNoStrongClique { .. } => "edge_in_no_strong_clique",
            Certificate::TriangleViolation { .. } => "triangle_violation",
            Certificate::AdmissibleStableCover { .. } => "admissible_stable_cover",
            Certificate::NonEdgeInNoAdmissibleStable { .. } => "non_edge_in_no_admissible_stable",
            Certificate::BadP4 { .. } => "bad_p4",
            Certificate::OddHole { .. } => "odd_hole",
            Certificate::OddAntihole { .. } => "odd_antihole",
            Certificate::CrossIntersecting { .. } => "cross_intersecting",
            Certificate::EquistableWeights { .. } => "equistable_weights",
            Certificate::ForcedSubset { .. } => "forced_subset",
            Certificate::Infeasible => "infeasible",
        }
    }
}

/// Rationals as `"p/q"` strings (`"p"` for integers).
pub mod rational_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod rational_vec {
    use super::Rational;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rs.len()))?;
        for r in rs {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| s.parse().map_err(|_| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gallery, GalleryId};

    #[test]
    fn patterns() {
        let p4 = Graph::path(4).unwrap();
        assert!(Pattern::P4.matches(&p4, &[0, 1, 2, 3]));
        assert!(Pattern::P4.matches(&p4, &[3, 2, 1, 0]));
        assert!(!Pattern::P4.matches(&p4, &[0, 2, 1, 3]));
        assert!(Pattern::TwoK2.matches(&Graph::cycle(4).unwrap().complement(), &[0, 2, 1, 3]));
        assert!(Pattern::C5.matches(&Graph::cycle(5).unwrap(), &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn p4_disjoint_pair() {
        let p4 = gallery(GalleryId::P4).unwrap();
        let ok = Certificate::DisjointPair {
            clique: VertexSet::from_vertices([1, 2]),
            stable: VertexSet::from_vertices([0, 3]),
        };
        assert_eq!(ok.check(&p4), Ok(()));
        let bad = Certificate::DisjointPair {
            clique: VertexSet::from_vertices([0, 1]),
            stable: VertexSet::from_vertices([0, 2]),
        };
        assert!(bad.check(&p4).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Certificate::ForcedSubset { subset: VertexSet::from_vertices([1, 2]), value: Rational::from_integer(1.into()) };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"forced_subset","subset":[1,2],"value":"1"}"#);
        assert_eq!(serde_json::from_str::<Certificate>(&s).unwrap(), c);
        let w = Certificate::EquistableWeights {
            weights: vec![Rational::new(1.into(), 3.into()), Rational::from_integer(0.into())],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.contains(r#"["1/3","0"]"#));
        assert_eq!(serde_json::from_str::<Certificate>(&s).unwrap(), w);
    }

    #[test]
    fn odd_hole_check() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(Certificate::OddHole { cycle: vec![0, 1, 2, 3, 4] }.check(&c5).is_ok());
        assert!(Certificate::OddHole { cycle: vec![0, 2, 4, 1, 3] }.check(&c5).is_err());
    }
}
