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

//! Isomorphism testing and canonical labelling for small graphs.
//!
//! Both start from colour refinement (1-dimensional Weisfeiler-Leman) and
//! then search over bijections that respect the refined colour classes.
//! Exponential in the worst case; intended for the desk-scale graphs used
//! by the scans and gallery checks.

use std::collections::BTreeMap;

use super::{Graph, VertexSet};

/// Stable colouring of the vertices of `adj`, invariant under relabelling:
/// colour ids are ranks of sorted signatures, so two isomorphic graphs
/// refined together receive matching colours.
fn refine(adj: &[Vec<usize>], initial: Vec<usize>) -> Vec<usize> {
    let mut colors = initial;
    let mut classes = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = adj
            .iter()
            .enumerate()
            .map(|(v, nb)| {
                let mut s: Vec<usize> = nb.iter().map(|&u| colors[u]).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &sigs {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

/// True iff an adjacency-preserving bijection between `a` and `b` exists.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let mut adj = adjacency_lists(a);
    adj.extend(adjacency_lists(b).into_iter().map(|nb| nb.into_iter().map(|u| u + n).collect()));
    let colors = refine(&adj, vec![0; 2 * n]);
    let (ca, cb) = colors.split_at(n);
    let mut ha = ca.to_vec();
    let mut hb = cb.to_vec();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    // Map a's vertices in order of increasing class size, ties by index.
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));
    let mut map = vec![usize::MAX; n];
    let mut used = VertexSet::EMPTY;
    extend_map(a, b, ca, cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend_map(
    a: &Graph,
    b: &Graph,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in (b.vertices() - *used).iter() {
        if cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used.insert(w);
        if extend_map(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used.remove(w);
        map[v] = usize::MAX;
    }
    false
}

/// Canonical relabelling: isomorphic graphs map to identical graphs.
///
/// Picks, among all labellings compatible with the refined colour classes,
/// the one whose graph6 bit string is lexicographically largest. Limited
/// to 16 vertices (the bit string must fit in a `u128`).
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    assert!(n <= 16, "canonical_form supports at most 16 vertices");
    let adj = adjacency_lists(g);
    let colors = refine(&adj, vec![0; n]);
    // Position p is reserved for colour cell_of_pos[p]; cells in colour order.
    let mut cell_of_pos: Vec<usize> = colors.clone();
    cell_of_pos.sort_unstable();
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut search = CanonSearch {
        g,
        colors: &colors,
        cell_of_pos: &cell_of_pos,
        total_bits,
        best: None,
        at_pos: vec![0; n],
    };
    search.run(0, 0, VertexSet::EMPTY, false);
    let (_, best_at_pos) = search.best.expect("at least one labelling");
    let mut perm = vec![0; n];
    for (pos, &v) in best_at_pos.iter().enumerate() {
        perm[v] = pos;
    }
    g.permute(&perm)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    cell_of_pos: &'a [usize],
    total_bits: usize,
    best: Option<(u128, Vec<usize>)>,
    at_pos: Vec<usize>,
}

impl CanonSearch<'_> {
    /// `prefix` holds the code bits of columns `1..pos` (MSB first);
    /// `ahead` means the prefix already beats the best one.
    fn run(&mut self, pos: usize, prefix: u128, used: VertexSet, ahead: bool) {
        let n = self.g.n();
        if pos == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => prefix > *b,
            };
            if better {
                self.best = Some((prefix, self.at_pos.clone()));
            }
            return;
        }
        for v in (self.g.vertices() - used).iter() {
            if self.colors[v] != self.cell_of_pos[pos] {
                continue;
            }
            let mut code = prefix;
            for i in 0..pos {
                code = (code << 1) | self.g.has_edge(self.at_pos[i], v) as u128;
            }
            let bits_so_far = pos * (pos + 1) / 2;
            let mut now_ahead = ahead;
            if !ahead {
                if let Some((b, _)) = &self.best {
                    let best_prefix = if bits_so_far == 0 { 0 } else { b >> (self.total_bits - bits_so_far) };
                    if code < best_prefix {
                        continue;
                    }
                    now_ahead = code > best_prefix;
                } else {
                    now_ahead = true;
                }
            }
            self.at_pos[pos] = v;
            let mut u = used;
            u.insert(v);
            self.run(pos + 1, code, u, now_ahead);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_graph(n: usize, bits: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (bits >> (k % 64)) & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
                k += 1;
            }
        }
        g
    }

    #[test]
    fn p4_is_self_complementary() {
        let p4 = Graph::path(4).unwrap();
        assert!(is_isomorphic(&p4, &p4.complement()));
    }

    #[test]
    fn c4_not_2k2() {
        let c4 = Graph::cycle(4).unwrap();
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!is_isomorphic(&c4, &two_k2));
    }

    #[test]
    fn regular_non_isomorphic() {
        // C6 vs two triangles: same degree sequence, refinement cannot split.
        let c6 = Graph::cycle(6).unwrap();
        let two_k3 = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        assert!(!is_isomorphic(&c6, &two_k3));
        assert_ne!(canonical_form(&c6), canonical_form(&two_k3));
    }

    proptest! {
        #[test]
        fn relabelling_preserves_isomorphism(n in 1usize..9, bits: u64, seed: u64) {
            let g = random_graph(n, bits);
            let mut perm: Vec<usize> = (0..n).collect();
            // deterministic shuffle from seed
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.permute(&perm);
            prop_assert!(is_isomorphic(&g, &h));
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        }

        #[test]
        fn canonical_agrees_with_isomorphism(n in 1usize..7, a: u64, b: u64) {
            let g = random_graph(n, a);
            let h = random_graph(n, b);
            prop_assert_eq!(is_isomorphic(&g, &h), canonical_form(&g) == canonical_form(&h));
        }
    }
}
