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

//! Line graphs, root reconstruction, and recognition of CIS line graphs
//! from their root graph.

pub mod matching;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use matching::{max_weight_matching, max_weight_matching_in, EdgeSet, Matching, MatchingBackend, WeightedEdge};

/// Line graph of `h`; vertex `i` is the `i`-th edge of `h` in
/// lexicographic order.
pub fn line_graph(h: &Graph) -> Result<Graph, GraphError> {
    Ok(line_graph_with_edges(h)?.0)
}

/// Line graph together with the root edge behind each vertex.
pub fn line_graph_with_edges(h: &Graph) -> Result<(Graph, Vec<(usize, usize)>), GraphError> {
    let edges: Vec<(usize, usize)> = h.edges().collect();
    if edges.is_empty() {
        return Err(GraphError::Empty);
    }
    if edges.len() > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(edges.len()));
    }
    let mut g = Graph::empty(edges.len())?;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok((g, edges))
}

/// `h` with a new pendant neighbour `v + n` attached to every vertex `v`.
pub fn tilde(h: &Graph) -> Result<Graph, GraphError> {
    let n = h.n();
    Graph::from_edges(2 * n, h.edges().chain((0..n).map(|v| (v, v + n))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootResult {
    NotLineGraph,
    /// `alternative` is present when some component is a triangle; it
    /// then takes the claw instead of the triangle as that component's root.
    Root { root: Graph, alternative: Option<Graph> },
}

impl RootResult {
    pub fn root(&self) -> Option<&Graph> {
        match self {
            RootResult::Root { root, .. } => Some(root),
            RootResult::NotLineGraph => None,
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(self, RootResult::Root { alternative: Some(_), .. })
    }
}

struct Krausz<'a> {
    g: &'a Graph,
    covered: Vec<VertexSet>,
    count: Vec<u8>,
    cliques: Vec<VertexSet>,
}

impl Krausz<'_> {
    fn uncovered(&self, v: usize) -> VertexSet {
        self.g.neighbors(v) - self.covered[v]
    }

    /// `c` is a clique none of whose edges is covered yet.
    fn open_clique(&self, c: VertexSet) -> bool {
        c.iter().all(|x| (c - VertexSet::singleton(x)).is_subset(self.uncovered(x)))
    }

    fn place(&mut self, c: VertexSet) -> bool {
        if c.iter().any(|v| self.count[v] >= 2) {
            return false;
        }
        for v in c.iter() {
            self.count[v] += 1;
            self.covered[v] |= c - VertexSet::singleton(v);
        }
        self.cliques.push(c);
        true
    }

    fn unplace(&mut self) {
        let c = self.cliques.pop().expect("placed clique");
        for v in c.iter() {
            self.count[v] -= 1;
            self.covered[v] = self.covered[v] - (c - VertexSet::singleton(v));
        }
    }

    fn solve(&mut self) -> bool {
        let Some(u) = (0..self.g.n()).find(|&u| !self.uncovered(u).is_empty()) else {
            return true;
        };
        let open = self.uncovered(u);
        let v = open.first().expect("open edge");
        let me = VertexSet::singleton(u);
        if self.count[u] == 1 {
            // the second clique at u must take all its remaining edges
            let c = open | me;
            if self.open_clique(c) && self.place(c) {
                if self.solve() {
                    return true;
                }
                self.unplace();
            }
            return false;
        }
        // split the open neighbourhood into the part joining v and the rest
        let rest: Vec<usize> = (open - VertexSet::singleton(v)).iter().collect();
        let mut found = false;
        self.split(u, &rest, 0, VertexSet::singleton(v), VertexSet::EMPTY, &mut found);
        found
    }

    fn split(&mut self, u: usize, rest: &[usize], i: usize, a: VertexSet, b: VertexSet, found: &mut bool) {
        if *found {
            return;
        }
        if i == rest.len() {
            let c = a | VertexSet::singleton(u);
            if !self.open_clique(c) || !self.place(c) {
                return;
            }
            if self.solve() {
                *found = true;
                return;
            }
            self.unplace();
            return;
        }
        let w = rest[i];
        let nw = self.g.neighbors(w);
        if a.is_subset(nw) {
            self.split(u, rest, i + 1, a | VertexSet::singleton(w), b, found);
        }
        if b.is_subset(nw) {
            self.split(u, rest, i + 1, a, b | VertexSet::singleton(w), found);
        }
    }
}

/// Root of a connected graph on at least two vertices, built from a
/// Krausz partition: vertex `x` of `g` becomes edge `x` of the root.
fn connected_root(g: &Graph) -> Option<(usize, Vec<(usize, usize)>)> {
    let mut k = Krausz { g, covered: vec![VertexSet::EMPTY; g.n()], count: vec![0; g.n()], cliques: Vec::new() };
    if !k.solve() {
        return None;
    }
    let mut next = k.cliques.len();
    let mut ends = Vec::with_capacity(g.n());
    for x in 0..g.n() {
        let mine: Vec<usize> = (0..k.cliques.len()).filter(|&i| k.cliques[i].contains(x)).collect();
        let e = match mine[..] {
            [a, b] => (a, b),
            [a] => {
                next += 1;
                (a, next - 1)
            }
            _ => unreachable!("every vertex lies in one or two cliques"),
        };
        ends.push(e);
    }
    Some((next, ends))
}

/// Reconstructs a root graph; components are handled separately and the
/// roots placed side by side.
pub fn root_graph(g: &Graph) -> Result<RootResult, GraphError> {
    let mut parts: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    let mut triangles = Vec::new();
    for comp in g.components() {
        let c = g.induced(comp)?;
        if c.n() == 1 {
            parts.push((2, vec![(0, 1)]));
            continue;
        }
        if c.n() == 3 && c.edge_count() == 3 {
            triangles.push(parts.len());
            parts.push((3, vec![(0, 1), (0, 2), (1, 2)]));
            continue;
        }
        match connected_root(&c) {
            Some(p) => parts.push(p),
            None => return Ok(RootResult::NotLineGraph),
        }
    }
    let assemble = |swap: bool| -> Result<Graph, GraphError> {
        let mut offset = 0;
        let mut edges = Vec::new();
        for (i, (n, es)) in parts.iter().enumerate() {
            if swap && triangles.contains(&i) {
                edges.extend([(offset, offset + 1), (offset, offset + 2), (offset, offset + 3)]);
                offset += 4;
            } else {
                edges.extend(es.iter().map(|&(a, b)| (a + offset, b + offset)));
                offset += n;
            }
        }
        if offset > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(offset));
        }
        Graph::from_edges(offset, edges)
    };
    let root = assemble(false)?;
    let alternative = if triangles.is_empty() { None } else { Some(assemble(true)?) };
    Ok(RootResult::Root { root, alternative })
}

/// A bull as a (not necessarily induced) subgraph: triangle `a b c` with
/// pendants `d ~ a` and `e ~ b`. Returns `[a, b, c, d, e]`.
pub fn find_bull_subgraph(h: &Graph) -> Option<[usize; 5]> {
    for (a, b) in h.edges() {
        for c in (h.neighbors(a) & h.neighbors(b)).iter().filter(|&c| c > b) {
            let tri = VertexSet::singleton(a) | VertexSet::singleton(b) | VertexSet::singleton(c);
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                for d in (h.neighbors(x) - tri).iter() {
                    if let Some(e) = (h.neighbors(y) - tri - VertexSet::singleton(d)).first() {
                        return Some([x, y, z, d, e]);
                    }
                }
            }
        }
    }
    None
}

/// Why a root graph fails to give a CIS line graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineRootFailure {
    /// triangle `vertices[0..3]` with pendants `vertices[3] ~ vertices[0]`
    /// and `vertices[4] ~ vertices[1]`
    Bull { vertices: [usize; 5] },
    /// `matching` avoids `x` and covers its neighbourhood with two or more edges
    Matching { x: usize, matching: EdgeSet },
}

impl LineRootFailure {
    /// Re-checks the failure against `h`.
    pub fn check(&self, h: &Graph) -> bool {
        match self {
            LineRootFailure::Bull { vertices: [a, b, c, d, e] } => {
                let vs = [*a, *b, *c, *d, *e];
                vs.iter().all(|&v| v < h.n())
                    && vs.iter().collect::<std::collections::BTreeSet<_>>().len() == 5
                    && h.has_edge(*a, *b)
                    && h.has_edge(*b, *c)
                    && h.has_edge(*a, *c)
                    && h.has_edge(*a, *d)
                    && h.has_edge(*b, *e)
            }
            LineRootFailure::Matching { x, matching } => {
                *x < h.n()
                    && matching.len() >= 2
                    && matching.is_matching_in(h)
                    && !matching.covers(*x)
                    && h.neighbors(*x).iter().all(|y| matching.covers(y))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRootVerdict {
    pub holds: bool,
    pub backend: MatchingBackend,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<LineRootFailure>,
}

/// Edges of `H(x)` with weight 2 inside `N(x)` and 1 otherwise.
pub fn local_instance(h: &Graph, x: usize) -> Vec<WeightedEdge> {
    let nx = h.neighbors(x);
    h.edges()
        .filter(|&(a, b)| a != x && b != x && (nx.contains(a) || nx.contains(b)))
        .map(|(a, b)| (a, b, if nx.contains(a) && nx.contains(b) { 2 } else { 1 }))
        .collect()
}

/// Decides whether `L(h)` is CIS by the bull test and one weighted
/// matching per vertex.
pub fn is_cis_line_root(h: &Graph) -> LineRootVerdict {
    is_cis_line_root_with(h, MatchingBackend::Blossom)
}

pub fn is_cis_line_root_with(h: &Graph, backend: MatchingBackend) -> LineRootVerdict {
    if let Some(vertices) = find_bull_subgraph(h) {
        return LineRootVerdict { holds: false, backend, failure: Some(LineRootFailure::Bull { vertices }) };
    }
    for x in 0..h.n() {
        let nx = h.neighbors(x);
        let d = nx.len();
        if d <= 1 || (d == 2 && h.is_clique(nx)) {
            continue;
        }
        let m = max_weight_matching(h.n(), &local_instance(h, x), backend);
        if m.weight == d as i64 {
            return LineRootVerdict {
                holds: false,
                backend,
                failure: Some(LineRootFailure::Matching { x, matching: m.edges }),
            };
        }
    }
    LineRootVerdict { holds: true, backend, failure: None }
}

/// Brute-force test over all maximal matchings; returns a violating
/// `(x, M)` or a bull, `None` when the condition holds.
pub fn condition_vii_violation(h: &Graph) -> Option<LineRootFailure> {
    if let Some(vertices) = find_bull_subgraph(h) {
        return Some(LineRootFailure::Bull { vertices });
    }
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let mut found = None;
    let mut cur = Vec::new();
    maximal_matchings(h, &edges, 0, VertexSet::EMPTY, &mut cur, &mut |m, used| {
        for x in (h.vertices() - used).iter() {
            let nx = h.neighbors(x);
            if !m.iter().any(|&(a, b)| nx.is_subset(VertexSet::singleton(a) | VertexSet::singleton(b))) {
                found = Some(LineRootFailure::Matching { x, matching: EdgeSet::new(m.iter().copied()) });
                return true;
            }
        }
        false
    });
    found
}

pub fn check_condition_vii(h: &Graph) -> bool {
    condition_vii_violation(h).is_none()
}

/// Calls `visit` on every maximal matching; stops when it returns true.
fn maximal_matchings(
    h: &Graph,
    edges: &[(usize, usize)],
    i: usize,
    used: VertexSet,
    cur: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&[(usize, usize)], VertexSet) -> bool,
) -> bool {
    if i == edges.len() {
        let maximal = edges.iter().all(|&(a, b)| used.contains(a) || used.contains(b));
        return maximal && visit(cur, used);
    }
    let (a, b) = edges[i];
    if !used.contains(a) && !used.contains(b) {
        cur.push((a, b));
        let stop = maximal_matchings(h, edges, i + 1, used | VertexSet::singleton(a) | VertexSet::singleton(b), cur, visit);
        cur.pop();
        if stop {
            return true;
        }
        // skipping a free edge only helps if something later can block it
        let blockable = edges[i + 1..].iter().any(|&(c, d)| c == a || c == b || d == a || d == b);
        if !blockable {
            return false;
        }
    }
    maximal_matchings(h, edges, i + 1, used, cur, visit)
}
