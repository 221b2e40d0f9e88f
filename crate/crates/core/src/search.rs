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

//! Search for cross-intersecting families of maximal cliques and maximal
//! stable sets meeting a coverage target: decides weakly CIS (cliques cover
//! the edges, stable sets the non-edges) and normal (both cover the vertices).
//!
//! The problem is encoded propositionally with one variable per candidate
//! set: a binary clause `¬C ∨ ¬S` for every disjoint pair and a positive
//! clause per element to cover. It is solved by backtracking with unit
//! propagation, branching on the shortest open coverage clause.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::{maximal_cliques, maximal_stable_sets, EnumerateError, SetFamily};
use crate::graph::{Graph, VertexSet};
use crate::recognizers::basic::Analysis;
use crate::recognizers::certificate::{Certificate, CertificateError, CoverMode};

/// Default cap on the number of failed branches before giving up.
pub const DEFAULT_BACKTRACK_LIMIT: u64 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("undecided after {0} backtracks")]
    Undecided(u64),
}

/// Chosen subfamilies `𝒞′`, `𝒮′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub mode: CoverMode,
    pub cliques: Vec<VertexSet>,
    pub stables: Vec<VertexSet>,
}

impl CoverCertificate {
    pub fn to_certificate(&self) -> Certificate {
        Certificate::CrossIntersecting { mode: self.mode, cliques: self.cliques.clone(), stables: self.stables.clone() }
    }

    /// Checks membership, pairwise intersection and coverage from scratch.
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        self.to_certificate().check(g)
    }
}

#[derive(Debug, Clone)]
pub struct CrossIntersectingInstance {
    graph: Graph,
    cliques: SetFamily,
    stables: SetFamily,
    mode: CoverMode,
}

impl CrossIntersectingInstance {
    pub fn new(g: &Graph, mode: CoverMode) -> Result<Self, EnumerateError> {
        Ok(CrossIntersectingInstance {
            graph: g.clone(),
            cliques: maximal_cliques(g)?,
            stables: maximal_stable_sets(g)?,
            mode,
        })
    }

    pub fn from_analysis(a: &Analysis, mode: CoverMode) -> Self {
        CrossIntersectingInstance {
            graph: a.graph().clone(),
            cliques: a.cliques().clone(),
            stables: a.stables().clone(),
            mode,
        }
    }

    /// Coverage clauses as lists of variable indices; cliques are variables
    /// `0..|𝒞|`, stable sets follow.
    fn coverage_clauses(&self) -> Vec<Vec<usize>> {
        let nc = self.cliques.len();
        let containing = |fam: &SetFamily, offset: usize, target: VertexSet| -> Vec<usize> {
            fam.iter().enumerate().filter(|(_, s)| target.is_subset(*s)).map(|(i, _)| offset + i).collect()
        };
        let g = &self.graph;
        let mut out = Vec::new();
        match self.mode {
            CoverMode::EdgesAndNonEdges => {
                for (u, v) in g.edges() {
                    out.push(containing(&self.cliques, 0, VertexSet::from_vertices([u, v])));
                }
                for (u, v) in g.non_edges() {
                    out.push(containing(&self.stables, nc, VertexSet::from_vertices([u, v])));
                }
            }
            CoverMode::Vertices => {
                for v in g.vertices().iter() {
                    out.push(containing(&self.cliques, 0, VertexSet::singleton(v)));
                }
                for v in g.vertices().iter() {
                    out.push(containing(&self.stables, nc, VertexSet::singleton(v)));
                }
            }
        }
        out
    }
}

struct Solver {
    partners: Vec<Vec<usize>>,
    clauses: Vec<Vec<usize>>,
    occurs: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
    backtracks: u64,
    limit: u64,
}

impl Solver {
    /// Assigns and propagates; false on conflict.
    fn set(&mut self, var: usize, val: bool) -> bool {
        let mut queue = vec![(var, val)];
        while let Some((x, b)) = queue.pop() {
            match self.assign[x] {
                Some(cur) if cur == b => continue,
                Some(_) => return false,
                None => {
                    self.assign[x] = Some(b);
                    self.trail.push(x);
                }
            }
            if b {
                queue.extend(self.partners[x].iter().map(|&p| (p, false)));
            } else {
                for &ci in &self.occurs[x] {
                    let clause = &self.clauses[ci];
                    if clause.iter().any(|&y| self.assign[y] == Some(true)) {
                        continue;
                    }
                    let mut open = clause.iter().filter(|&&y| self.assign[y].is_none());
                    match (open.next(), open.next()) {
                        (None, _) => return false,
                        (Some(&y), None) => queue.push((y, true)),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.assign[x] = None;
        }
    }

    fn solve(&mut self) -> Result<bool, SearchError> {
        let mut pick: Option<(usize, usize)> = None;
        for clause in &self.clauses {
            if clause.iter().any(|&y| self.assign[y] == Some(true)) {
                continue;
            }
            let open: Vec<usize> = clause.iter().copied().filter(|&y| self.assign[y].is_none()).collect();
            if pick.map_or(true, |(len, _)| open.len() < len) {
                pick = Some((open.len(), open[0]));
            }
        }
        let Some((_, var)) = pick else {
            return Ok(true);
        };
        let mark = self.trail.len();
        for val in [true, false] {
            if self.set(var, val) && self.solve()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        self.backtracks += 1;
        if self.backtracks > self.limit {
            return Err(SearchError::Undecided(self.backtracks));
        }
        Ok(false)
    }
}

/// Looks for cross-intersecting subfamilies meeting the instance's coverage
/// target. `Ok(None)` is a proof that none exist.
pub fn exists_cross_intersecting(
    inst: &CrossIntersectingInstance,
    limit: u64,
) -> Result<Option<CoverCertificate>, SearchError> {
    let nc = inst.cliques.len();
    let n_vars = nc + inst.stables.len();
    let mut partners = vec![Vec::new(); n_vars];
    for (i, c) in inst.cliques.iter().enumerate() {
        for (j, s) in inst.stables.iter().enumerate() {
            if !c.intersects(s) {
                partners[i].push(nc + j);
                partners[nc + j].push(i);
            }
        }
    }
    let clauses = inst.coverage_clauses();
    if clauses.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut occurs = vec![Vec::new(); n_vars];
    for (ci, c) in clauses.iter().enumerate() {
        for &v in c {
            occurs[v].push(ci);
        }
    }
    let mut solver =
        Solver { partners, clauses, occurs, assign: vec![None; n_vars], trail: Vec::new(), backtracks: 0, limit };
    // single-candidate clauses are forced before any branching
    let units: Vec<usize> = solver.clauses.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    for u in units {
        if !solver.set(u, true) {
            return Ok(None);
        }
    }
    if !solver.solve()? {
        return Ok(None);
    }
    let chosen = |fam: &SetFamily, offset: usize| -> Vec<VertexSet> {
        fam.iter().enumerate().filter(|(i, _)| solver.assign[offset + i] == Some(true)).map(|(_, s)| s).collect()
    };
    Ok(Some(CoverCertificate {
        mode: inst.mode,
        cliques: chosen(&inst.cliques, 0),
        stables: chosen(&inst.stables, nc),
    }))
}

pub fn is_weakly_cis(g: &Graph) -> Result<Option<CoverCertificate>, SearchError> {
    let inst = CrossIntersectingInstance::new(g, CoverMode::EdgesAndNonEdges)?;
    exists_cross_intersecting(&inst, DEFAULT_BACKTRACK_LIMIT)
}

pub fn is_normal(g: &Graph) -> Result<Option<CoverCertificate>, SearchError> {
    let inst = CrossIntersectingInstance::new(g, CoverMode::Vertices)?;
    exists_cross_intersecting(&inst, DEFAULT_BACKTRACK_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gallery::one_indexed;
    use crate::graph::{gallery, GalleryId};
    use proptest::prelude::*;

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

    /// Exhaustive search over all pairs of subfamilies.
    fn brute(g: &Graph, mode: CoverMode) -> bool {
        let cs = maximal_cliques(g).unwrap();
        let ss = maximal_stable_sets(g).unwrap();
        for cm in 0u64..1 << cs.len() {
            let c: Vec<VertexSet> = cs.iter().enumerate().filter(|(i, _)| cm >> i & 1 == 1).map(|x| x.1).collect();
            for sm in 0u64..1 << ss.len() {
                let s: Vec<VertexSet> =
                    ss.iter().enumerate().filter(|(i, _)| sm >> i & 1 == 1).map(|x| x.1).collect();
                let cert = CoverCertificate { mode, cliques: c.clone(), stables: s };
                if cert.verify(g).is_ok() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn g12_is_weakly_cis() {
        let g = gallery(GalleryId::G12).unwrap();
        let cert = is_weakly_cis(&g).unwrap().expect("weakly CIS");
        assert_eq!(cert.verify(&g), Ok(()));
        let listed = CoverCertificate {
            mode: CoverMode::EdgesAndNonEdges,
            cliques: [&[1, 4, 7][..], &[2, 4, 9, 12], &[2, 5, 8], &[2, 6, 7, 11], &[3, 6, 9], &[4, 5, 6, 10], &[10, 11, 12]]
                .iter()
                .map(|s| one_indexed(s))
                .collect(),
            stables: [&[1, 2, 3, 10][..], &[1, 5, 9, 11], &[1, 6, 8, 12], &[3, 4, 8, 11], &[3, 5, 7, 12], &[7, 8, 9, 10]]
                .iter()
                .map(|s| one_indexed(s))
                .collect(),
        };
        assert_eq!(listed.verify(&g), Ok(()));
    }

    #[test]
    fn p4_normal_not_weakly_cis() {
        let p4 = gallery(GalleryId::P4).unwrap();
        assert_eq!(is_weakly_cis(&p4).unwrap(), None);
        let cert = is_normal(&p4).unwrap().expect("normal");
        assert_eq!(cert.verify(&p4), Ok(()));
    }

    #[test]
    fn c9_normal_and_k1() {
        assert!(is_normal(&gallery(GalleryId::C9).unwrap()).unwrap().is_some());
        let k1 = Graph::empty(1).unwrap();
        assert!(is_weakly_cis(&k1).unwrap().is_some());
        assert!(is_normal(&k1).unwrap().is_some());
    }

    #[test]
    fn backtrack_limit_reports_undecided() {
        // (a ∨ b) ∧ (c ∨ d) with every cross pair excluded: unsatisfiable,
        // and only after both branches on `a` fail
        let solver = |limit| Solver {
            partners: vec![vec![2, 3], vec![2, 3], vec![0, 1], vec![0, 1]],
            clauses: vec![vec![0, 1], vec![2, 3]],
            occurs: vec![vec![0], vec![0], vec![1], vec![1]],
            assign: vec![None; 4],
            trail: Vec::new(),
            backtracks: 0,
            limit,
        };
        assert_eq!(solver(0).solve(), Err(SearchError::Undecided(1)));
        assert_eq!(solver(1).solve(), Ok(false));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn agrees_with_exhaustive(n in 1usize..6, bits: u64) {
            let g = graph_from_bits(n, bits);
            for mode in [CoverMode::EdgesAndNonEdges, CoverMode::Vertices] {
                let inst = CrossIntersectingInstance::new(&g, mode).unwrap();
                let found = exists_cross_intersecting(&inst, DEFAULT_BACKTRACK_LIMIT).unwrap();
                if let Some(c) = &found {
                    prop_assert_eq!(c.verify(&g), Ok(()));
                }
                prop_assert_eq!(found.is_some(), brute(&g, mode));
            }
        }

        #[test]
        fn weakly_cis_is_self_complementary(n in 1usize..8, bits: u64) {
            let g = graph_from_bits(n, bits);
            prop_assert_eq!(is_weakly_cis(&g).unwrap().is_some(), is_weakly_cis(&g.complement()).unwrap().is_some());
        }
    }
}
