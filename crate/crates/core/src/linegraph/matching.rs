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

//! Maximum-weight matching on general graphs.
//!
//! [`blossom`] is the primal-dual blossom algorithm (O(n³)); [`exhaustive`]
//! is a branch-and-bound enumeration used as its test oracle.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// A weighted edge `(u, v, w)` with `u != v`.
pub type WeightedEdge = (usize, usize, i64);

/// Sorted list of vertex pairs `(u, v)` with `u < v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Pairwise disjoint edges of `g`.
    pub fn is_matching_in(&self, g: &Graph) -> bool {
        let mut seen = 0u128;
        for &(u, v) in &self.0 {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) || seen >> u & 1 == 1 || seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << u | 1 << v;
        }
        true
    }

    pub fn covers(&self, v: usize) -> bool {
        self.0.iter().any(|&(a, b)| a == v || b == v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingBackend {
    Blossom,
    Exhaustive,
}

impl MatchingBackend {
    pub fn name(self) -> &'static str {
        match self {
            MatchingBackend::Blossom => "blossom",
            MatchingBackend::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: EdgeSet,
    pub weight: i64,
}

/// Maximum-weight matching of `edges` on `n` vertices.
pub fn max_weight_matching(n: usize, edges: &[WeightedEdge], backend: MatchingBackend) -> Matching {
    match backend {
        MatchingBackend::Blossom => blossom(n, edges),
        MatchingBackend::Exhaustive => exhaustive(n, edges),
    }
}

/// Maximum-weight matching of `g` with edge weights `weight(u, v)`.
pub fn max_weight_matching_in(g: &Graph, weight: impl Fn(usize, usize) -> i64, backend: MatchingBackend) -> Matching {
    let edges: Vec<WeightedEdge> = g.edges().map(|(u, v)| (u, v, weight(u, v))).collect();
    max_weight_matching(g.n(), &edges, backend)
}

fn finish(edges: &[WeightedEdge], chosen: impl IntoIterator<Item = usize>) -> Matching {
    let chosen: Vec<usize> = chosen.into_iter().collect();
    Matching {
        weight: chosen.iter().map(|&k| edges[k].2).sum(),
        edges: EdgeSet::new(chosen.iter().map(|&k| (edges[k].0, edges[k].1))),
    }
}

/// Exhaustive search; exponential in the number of edges.
pub fn exhaustive(n: usize, edges: &[WeightedEdge]) -> Matching {
    let mut order: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].2 > 0).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(edges[k].2));
    let suffix: Vec<i64> = {
        let mut s = vec![0; order.len() + 1];
        for i in (0..order.len()).rev() {
            s[i] = s[i + 1] + edges[order[i]].2;
        }
        s
    };
    struct St<'a> {
        edges: &'a [WeightedEdge],
        order: &'a [usize],
        suffix: &'a [i64],
        used: Vec<bool>,
        cur: Vec<usize>,
        cur_w: i64,
        best: Vec<usize>,
        best_w: i64,
    }
    fn go(s: &mut St, i: usize) {
        if s.cur_w > s.best_w {
            s.best_w = s.cur_w;
            s.best = s.cur.clone();
        }
        if i == s.order.len() || s.cur_w + s.suffix[i] <= s.best_w {
            return;
        }
        let k = s.order[i];
        let (u, v, w) = s.edges[k];
        if !s.used[u] && !s.used[v] {
            s.used[u] = true;
            s.used[v] = true;
            s.cur.push(k);
            s.cur_w += w;
            go(s, i + 1);
            s.cur_w -= w;
            s.cur.pop();
            s.used[u] = false;
            s.used[v] = false;
        }
        go(s, i + 1);
    }
    let mut st = St {
        edges,
        order: &order,
        suffix: &suffix,
        used: vec![false; n],
        cur: Vec::new(),
        cur_w: 0,
        best: Vec::new(),
        best_w: 0,
    };
    go(&mut st, 0);
    finish(edges, st.best)
}

/// Blossom algorithm with integer duals. Weights are doubled internally so
/// every dual update stays integral.
pub fn blossom(n: usize, edges: &[WeightedEdge]) -> Matching {
    if edges.is_empty() {
        return Matching { edges: EdgeSet::default(), weight: 0 };
    }
    let doubled: Vec<WeightedEdge> = edges.iter().map(|&(u, v, w)| (u, v, 2 * w)).collect();
    let mut b = Blossom::new(n, &doubled);
    b.solve();
    let chosen = (0..n).filter(|&v| b.mate[v] != NONE && v < b.endpoint[b.mate[v]]).map(|v| b.mate[v] / 2);
    finish(edges, chosen)
}

struct Blossom<'a> {
    edges: &'a [WeightedEdge],
    nv: usize,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    parent: Vec<usize>,
    childs: Vec<Vec<usize>>,
    base: Vec<usize>,
    endps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    bestedges: Vec<Option<Vec<usize>>>,
    unused: Vec<usize>,
    dual: Vec<i64>,
    allowed: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(n: usize, edges: &'a [WeightedEdge]) -> Self {
        let nv = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0).max(n);
        let maxw = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * edges.len());
        let mut neighbend = vec![Vec::new(); nv];
        for (k, &(u, v, _)) in edges.iter().enumerate() {
            endpoint.push(u);
            endpoint.push(v);
            neighbend[u].push(2 * k + 1);
            neighbend[v].push(2 * k);
        }
        Blossom {
            edges,
            nv,
            endpoint,
            neighbend,
            mate: vec![NONE; nv],
            label: vec![0; 2 * nv],
            labelend: vec![NONE; 2 * nv],
            inblossom: (0..nv).collect(),
            parent: vec![NONE; 2 * nv],
            childs: vec![Vec::new(); 2 * nv],
            base: (0..nv).chain(std::iter::repeat(NONE).take(nv)).collect(),
            endps: vec![Vec::new(); 2 * nv],
            bestedge: vec![NONE; 2 * nv],
            bestedges: vec![None; 2 * nv],
            unused: (nv..2 * nv).collect(),
            dual: std::iter::repeat(maxw).take(nv).chain(std::iter::repeat(0).take(nv)).collect(),
            allowed: vec![false; edges.len()],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dual[i] + self.dual[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.nv {
                out.push(t);
            } else {
                stack.extend(self.childs[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            let l = self.leaves(b);
            self.queue.extend(l);
        } else if t == 2 {
            let m = self.mate[self.base[b]];
            self.assign_label(self.endpoint[m], 1, m ^ 1);
        }
    }

    /// Traces back from `v` and `w`; returns the base of a new blossom, or
    /// `NONE` when an augmenting path was found.
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.base[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unused.pop().expect("free blossom slot");
        self.base[b] = base;
        self.parent[b] = NONE;
        self.parent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.parent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.parent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.childs[b] = path.clone();
        self.endps[b] = endps;
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dual[b] = 0;
        for v in self.leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.nv];
        for &bv in &path {
            let lists: Vec<Vec<usize>> = match self.bestedges[bv].take() {
                Some(l) => vec![l],
                None => self
                    .leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for k in lists.into_iter().flatten() {
                let (i, j, _) = self.edges[k];
                let j = if self.inblossom[j] == b { i } else { j };
                let bj = self.inblossom[j];
                if bj != b
                    && self.label[bj] == 1
                    && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                {
                    bestedgeto[bj] = k;
                }
            }
            self.bestedge[bv] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for &k in &list {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
        self.bestedges[b] = Some(list);
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.childs[b].clone();
        for &s in &childs {
            self.parent[s] = NONE;
            if s < self.nv {
                self.inblossom[s] = s;
            } else if endstage && self.dual[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            let endps = self.endps[b].clone();
            let len = childs.len() as isize;
            let at = |j: isize| j.rem_euclid(len) as usize;
            let entry = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entry).expect("entry child") as isize;
            let (jstep, trick) = if j & 1 == 1 {
                j -= len;
                (1isize, 0usize)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = endps[at(j - trick as isize)];
                self.label[self.endpoint[q ^ trick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowed[q / 2] = true;
                j += jstep;
                p = endps[at(j - trick as isize)] ^ trick;
                self.allowed[p / 2] = true;
                j += jstep;
            }
            let bv = childs[at(j)];
            let e = self.endpoint[p ^ 1];
            self.label[e] = 2;
            self.label[bv] = 2;
            self.labelend[e] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[at(j)] != entry {
                let bv = childs[at(j)];
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let leaves = self.leaves(bv);
                let v = leaves.iter().copied().find(|&v| self.label[v] != 0).unwrap_or(*leaves.last().expect("leaf"));
                if self.label[v] != 0 {
                    self.label[v] = 0;
                    let m = self.endpoint[self.mate[self.base[bv]]];
                    self.label[m] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.label[b] = 0;
        self.labelend[b] = NONE;
        self.childs[b].clear();
        self.endps[b].clear();
        self.base[b] = NONE;
        self.bestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unused.push(b);
    }

    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.parent[t] != b {
            t = self.parent[t];
        }
        if t >= self.nv {
            self.augment_blossom(t, v);
        }
        let childs = self.childs[b].clone();
        let endps = self.endps[b].clone();
        let len = childs.len() as isize;
        let at = |j: isize| j.rem_euclid(len) as usize;
        let i = childs.iter().position(|&c| c == t).expect("child");
        let mut j = i as isize;
        let (jstep, trick) = if i & 1 == 1 {
            j -= len;
            (1isize, 0usize)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = childs[at(j)];
            let p = endps[at(j - trick as isize)] ^ trick;
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = childs[at(j)];
            if t >= self.nv {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.childs[b].rotate_left(i);
        self.endps[b].rotate_left(i);
        self.base[b] = self.base[self.childs[b][0]];
        debug_assert_eq!(self.base[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                if bs >= self.nv {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= self.nv {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self) {
        let nv = self.nv;
        for _ in 0..nv {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            self.bestedges[nv..].iter_mut().for_each(|e| *e = None);
            self.allowed.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..nv {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowed[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowed[k] = true;
                            }
                        }
                        if self.allowed[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }
                // dual adjustment
                let mut dtype = 1;
                let mut delta = self.dual[..nv].iter().copied().min().unwrap_or(0);
                let mut dedge = NONE;
                let mut dblossom = NONE;
                for v in 0..nv {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            dtype = 2;
                            dedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * nv {
                    if self.parent[b] == NONE && self.label[b] == 1 && self.bestedge[b] != NONE {
                        let s = self.slack(self.bestedge[b]);
                        debug_assert_eq!(s % 2, 0);
                        let d = s / 2;
                        if d < delta {
                            delta = d;
                            dtype = 3;
                            dedge = self.bestedge[b];
                        }
                    }
                }
                for b in nv..2 * nv {
                    if self.base[b] != NONE && self.parent[b] == NONE && self.label[b] == 2 && self.dual[b] < delta {
                        delta = self.dual[b];
                        dtype = 4;
                        dblossom = b;
                    }
                }
                for v in 0..nv {
                    match self.label[self.inblossom[v]] {
                        1 => self.dual[v] -= delta,
                        2 => self.dual[v] += delta,
                        _ => {}
                    }
                }
                for b in nv..2 * nv {
                    if self.base[b] != NONE && self.parent[b] == NONE {
                        match self.label[b] {
                            1 => self.dual[b] += delta,
                            2 => self.dual[b] -= delta,
                            _ => {}
                        }
                    }
                }
                match dtype {
                    1 => break,
                    2 => {
                        self.allowed[dedge] = true;
                        let (i, j, _) = self.edges[dedge];
                        let i = if self.label[self.inblossom[i]] == 0 { j } else { i };
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowed[dedge] = true;
                        let (i, _, _) = self.edges[dedge];
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(dblossom, false),
                }
            }
            if !augmented {
                break;
            }
            for b in nv..2 * nv {
                if self.parent[b] == NONE && self.base[b] != NONE && self.label[b] == 1 && self.dual[b] == 0 {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let p3 = Graph::path(3).unwrap();
        for backend in [MatchingBackend::Blossom, MatchingBackend::Exhaustive] {
            assert_eq!(max_weight_matching_in(&p3, |_, _| 1, backend).weight, 1);
            let m = max_weight_matching_in(&Graph::cycle(4).unwrap(), |_, _| 2, backend);
            assert_eq!(m.weight, 4);
            assert_eq!(m.edges.len(), 2);
        }
    }

    #[test]
    fn blossom_needs_odd_cycle_contraction() {
        // triangle with a pendant at each corner: perfect matching uses pendants
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let m = blossom(6, &g.edges().map(|(u, v)| (u, v, if u < 3 && v < 3 { 3 } else { 2 })).collect::<Vec<_>>());
        assert_eq!(m.weight, 6);
        assert!(m.edges.is_matching_in(&g));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn blossom_matches_exhaustive(n in 2usize..11, bits: u64, wbits: u64) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits >> (k % 64) & 1 == 1 {
                        edges.push((i, j, 1 + (wbits >> (k % 64) & 1) as i64 + (wbits >> ((k + 17) % 64) & 1) as i64 * 3));
                    }
                    k += 1;
                }
            }
            let a = blossom(n, &edges);
            let b = exhaustive(n, &edges);
            prop_assert_eq!(a.weight, b.weight);
            let g = Graph::from_edges(n, edges.iter().map(|e| (e.0, e.1))).unwrap();
            prop_assert!(a.edges.is_matching_in(&g));
        }
    }
}
