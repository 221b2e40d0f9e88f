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

//! Named graphs used as separating examples, and the two split-graph
//! families (projective-plane incidence graphs and random split graphs).
//!
//! Vertex numbering is fixed:
//!
//! | id       | vertices                                                         |
//! |----------|------------------------------------------------------------------|
//! | `P4`     | path `0-1-2-3` (`a b c d`)                                       |
//! | `C4`     | cycle `0-1-2-3-0`                                                |
//! | `TwoK2`  | edges `01`, `23`                                                 |
//! | `Bull`   | `a..e = 0..4`, edges `ab bc cd be ce`                            |
//! | `Net`    | clique `x1 x2 x3 = 0 1 2`, pendants `y_i = 3+i` on `x_i`         |
//! | `S3`     | clique `v1 v2 v3 = 0 1 2`, `v12 v13 v23 = 3 4 5`                 |
//! | `SK`     | `S3` then the `K2` on `6 7`                                      |
//! | `CK`     | `C4` then the `K2` on `4 5`                                      |
//! | `C5Star` | cycle `0..4`, apex `5+i` on edge `{i, i+1 mod 5}`                |
//! | `C9`     | cycle `0..8`                                                     |
//! | `Cir9`   | labels `1..9` shifted to `0..8`                                  |
//! | `F`      | Fano points `0..6`, lines `7..13` (see [`projective_split`])     |
//! | `FK`     | `F` then the `K2` on `14 15`                                     |
//! | `G12`    | labels `1..12` shifted to `0..11`                                |
//! | `LK33`   | edge `(i, 3+j)` of `K3,3` is vertex `3i+j`                       |
//! | `L`      | edge `(i, j)` of `K5,6` is vertex `6i+j`; apex `30+k` on the k-th edge of `L(K5,6)` |
//! | `LLbar`  | `L` on `0..165`, its complement on `165..330`                    |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BigGraph, Bitset, Graph, GraphError, GraphLike, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GalleryId {
    K1,
    P4,
    C4,
    TwoK2,
    Bull,
    Net,
    S3,
    SK,
    CK,
    C5Star,
    C9,
    Cir9,
    F,
    FK,
    G12,
    LK33,
    L,
    LLbar,
}

impl GalleryId {
    pub const ALL: [GalleryId; 18] = [
        GalleryId::K1,
        GalleryId::P4,
        GalleryId::C4,
        GalleryId::TwoK2,
        GalleryId::Bull,
        GalleryId::Net,
        GalleryId::S3,
        GalleryId::SK,
        GalleryId::CK,
        GalleryId::C5Star,
        GalleryId::C9,
        GalleryId::Cir9,
        GalleryId::F,
        GalleryId::FK,
        GalleryId::G12,
        GalleryId::LK33,
        GalleryId::L,
        GalleryId::LLbar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GalleryId::K1 => "K1",
            GalleryId::P4 => "P4",
            GalleryId::C4 => "C4",
            GalleryId::TwoK2 => "2K2",
            GalleryId::Bull => "bull",
            GalleryId::Net => "net",
            GalleryId::S3 => "S3",
            GalleryId::SK => "SK",
            GalleryId::CK => "CK",
            GalleryId::C5Star => "C5*",
            GalleryId::C9 => "C9",
            GalleryId::Cir9 => "Cir9",
            GalleryId::F => "F",
            GalleryId::FK => "FK",
            GalleryId::G12 => "G12",
            GalleryId::LK33 => "L(K3,3)",
            GalleryId::L => "L",
            GalleryId::LLbar => "LLbar",
        }
    }

    pub fn order(self) -> usize {
        match self {
            GalleryId::K1 => 1,
            GalleryId::P4 | GalleryId::C4 | GalleryId::TwoK2 => 4,
            GalleryId::Bull => 5,
            GalleryId::Net | GalleryId::S3 | GalleryId::CK => 6,
            GalleryId::SK => 8,
            GalleryId::C5Star => 10,
            GalleryId::C9 | GalleryId::Cir9 | GalleryId::LK33 => 9,
            GalleryId::F => 14,
            GalleryId::FK => 16,
            GalleryId::G12 => 12,
            GalleryId::L => 165,
            GalleryId::LLbar => 330,
        }
    }

    pub fn is_big(self) -> bool {
        self.order() > super::MAX_VERTICES
    }
}

impl fmt::Display for GalleryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GalleryId {
    type Err = GraphError;

    /// Accepts the display name or the variant name, case-insensitively.
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let key = s.trim().to_ascii_lowercase();
        GalleryId::ALL
            .into_iter()
            .find(|id| id.name().to_ascii_lowercase() == key || format!("{id:?}").to_ascii_lowercase() == key)
            .ok_or_else(|| GraphError::InvalidParameter(format!("unknown gallery id {s:?}")))
    }
}

/// Maximal cliques of `G12` as listed in its definition (1-indexed).
pub const G12_CLIQUES: [&[usize]; 13] = [
    &[1, 4, 7],
    &[2, 4, 5, 6],
    &[2, 4, 6, 7],
    &[2, 4, 6, 9],
    &[2, 4, 9, 12],
    &[2, 5, 8],
    &[2, 6, 7, 11],
    &[2, 11, 12],
    &[3, 6, 9],
    &[4, 5, 6, 10],
    &[4, 10, 12],
    &[6, 10, 11],
    &[10, 11, 12],
];

/// Maximal stable sets of `G12` (1-indexed).
pub const G12_STABLES: [&[usize]; 16] = [
    &[1, 2, 3, 10],
    &[1, 3, 5, 11],
    &[1, 3, 5, 12],
    &[1, 3, 8, 10],
    &[1, 3, 8, 11],
    &[1, 3, 8, 12],
    &[1, 5, 9, 11],
    &[1, 6, 8, 12],
    &[1, 8, 9, 10],
    &[1, 8, 9, 11],
    &[3, 4, 8, 11],
    &[3, 5, 7, 12],
    &[3, 7, 8, 10],
    &[3, 7, 8, 12],
    &[5, 7, 9],
    &[7, 8, 9, 10],
];

/// Maximal stable sets of `Cir9` (1-indexed).
pub const CIR9_STABLES: [&[usize]; 5] = [&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[1, 4, 7], &[3, 6, 9]];

/// Converts a 1-indexed label list to a vertex set.
pub fn one_indexed(labels: &[usize]) -> VertexSet {
    labels.iter().map(|&l| l - 1).collect()
}

fn g12() -> Graph {
    let mut g = Graph::empty(12).expect("12 vertices");
    for c in G12_CLIQUES {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                g.add_edge(u - 1, v - 1).expect("valid labels");
            }
        }
    }
    g
}

fn cir9() -> Graph {
    let mut g = Graph::complete(9).expect("9 vertices");
    for s in CIR9_STABLES {
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                g.remove_edge(u - 1, v - 1);
            }
        }
    }
    g
}

fn line_graph_of_bipartite(a: usize, b: usize) -> Vec<(usize, usize)> {
    // vertex b*i + j is the edge (i, j); adjacent iff they share i or j
    let mut edges = Vec::new();
    for x in 0..a * b {
        for y in x + 1..a * b {
            if x / b == y / b || x % b == y % b {
                edges.push((x, y));
            }
        }
    }
    edges
}

fn big_l() -> BigGraph {
    let base = line_graph_of_bipartite(5, 6);
    let n = 30 + base.len();
    let mut edges = base.clone();
    for (k, &(x, y)) in base.iter().enumerate() {
        edges.push((x, 30 + k));
        edges.push((y, 30 + k));
    }
    BigGraph::from_edges(n, edges)
}

/// Builds a gallery graph in the 64-vertex representation. `L` and
/// `LLbar` do not fit; use [`gallery_big`] for those.
pub fn gallery(id: GalleryId) -> Result<Graph, GraphError> {
    let k2 = || Graph::complete(2);
    let g = match id {
        GalleryId::K1 => Graph::empty(1)?,
        GalleryId::P4 => Graph::path(4)?,
        GalleryId::C4 => Graph::cycle(4)?,
        GalleryId::TwoK2 => Graph::from_edges(4, [(0, 1), (2, 3)])?,
        GalleryId::Bull => Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)])?,
        GalleryId::Net => Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)])?,
        GalleryId::S3 => {
            Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (2, 4), (1, 5), (2, 5)])?
        }
        GalleryId::SK => gallery(GalleryId::S3)?.disjoint_union(&k2()?)?,
        GalleryId::CK => Graph::cycle(4)?.disjoint_union(&k2()?)?,
        GalleryId::C5Star => {
            let mut g = Graph::empty(10)?;
            for i in 0..5 {
                let j = (i + 1) % 5;
                g.add_edge(i, j)?;
                g.add_edge(i, 5 + i)?;
                g.add_edge(j, 5 + i)?;
            }
            g
        }
        GalleryId::C9 => Graph::cycle(9)?,
        GalleryId::Cir9 => cir9(),
        GalleryId::F => projective_split(2)?,
        GalleryId::FK => projective_split(2)?.disjoint_union(&k2()?)?,
        GalleryId::G12 => g12(),
        GalleryId::LK33 => Graph::from_edges(9, line_graph_of_bipartite(3, 3))?,
        GalleryId::L | GalleryId::LLbar => return Err(GraphError::TooManyVertices(id.order())),
    };
    Ok(g)
}

/// Builds any gallery graph in the unbounded representation.
pub fn gallery_big(id: GalleryId) -> BigGraph {
    match id {
        GalleryId::L => big_l(),
        GalleryId::LLbar => {
            let l = big_l();
            l.disjoint_union(&l.complement())
        }
        _ => gallery(id).expect("small gallery graph").to_big(),
    }
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Points (equivalently lines) of the projective plane over GF(q):
/// nonzero vectors of GF(q)^3 whose first nonzero coordinate is 1,
/// in lexicographic order.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Split incidence graph of the projective plane of prime order `q`:
/// points `0..m` form a clique, lines `m..2m` a stable set, and a point is
/// adjacent to a line iff incident (`m = q^2 + q + 1`).
pub fn projective_split(q: u64) -> Result<Graph, GraphError> {
    if !is_prime(q) {
        return Err(GraphError::InvalidParameter(format!("plane order {q} is not prime")));
    }
    let m = (q * q + q + 1) as usize;
    if 2 * m > super::MAX_VERTICES {
        return Err(GraphError::TooManyVertices(2 * m));
    }
    let pts = projective_points(q);
    debug_assert_eq!(pts.len(), m);
    let mut g = Graph::empty(2 * m)?;
    for i in 0..m {
        for j in i + 1..m {
            g.add_edge(i, j)?;
        }
    }
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                g.add_edge(i, m + j)?;
            }
        }
    }
    Ok(g)
}

fn random_split_edges(k: usize, l: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
        }
    }
    for c in 0..k {
        for s in 0..l {
            if rng.gen::<bool>() {
                edges.push((c, k + s));
            }
        }
    }
    edges
}

/// Random split graph: clique `0..k`, stable set `k..k+l`, each cross pair
/// an edge with probability 1/2. Cross pairs are drawn in order
/// `(c, s)` with `c` outer, from a ChaCha8 stream seeded with `seed`.
pub fn random_split(k: usize, l: usize, seed: u64) -> Result<Graph, GraphError> {
    if k == 0 || l == 0 {
        return Err(GraphError::InvalidParameter("k and l must be positive".into()));
    }
    Graph::from_edges(k + l, random_split_edges(k, l, seed))
}

/// Same graph as [`random_split`] without the 64-vertex cap.
pub fn random_split_big(k: usize, l: usize, seed: u64) -> Result<BigGraph, GraphError> {
    if k == 0 || l == 0 {
        return Err(GraphError::InvalidParameter("k and l must be positive".into()));
    }
    Ok(BigGraph::from_edges(k + l, random_split_edges(k, l, seed)))
}

/// The four structural properties a large random split graph has with high
/// probability, for the split partition clique `0..k` / stable `k..k+l`:
/// 1. the stable side is a maximal stable set,
/// 2. the clique side is a maximal clique,
/// 3. every two clique vertices have a common neighbour on the stable side,
/// 4. every two stable vertices have a common non-neighbour on the clique side.
pub fn split_partition_properties<G: GraphLike>(g: &G, k: usize) -> [bool; 4] {
    let n = g.order();
    let mut clique = g.empty_set();
    let mut stable = g.empty_set();
    for v in 0..k {
        clique.insert(v);
    }
    for v in k..n {
        stable.insert(v);
    }
    let stable_maximal = (0..k).all(|c| g.nbrs(c).intersects(&stable));
    let clique_maximal = (k..n).all(|s| !clique.is_subset(g.nbrs(s)));
    let clique_pairs = (0..k).all(|a| (a + 1..k).all(|b| g.nbrs(a).and(g.nbrs(b)).intersects(&stable)));
    let stable_pairs = (k..n).all(|a| {
        (a + 1..n).all(|b| !clique.minus(g.nbrs(a)).minus(g.nbrs(b)).is_empty())
    });
    [stable_maximal, clique_maximal, clique_pairs, stable_pairs]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn orders_match() {
        for id in GalleryId::ALL {
            assert_eq!(gallery_big(id).n(), id.order(), "{id}");
            if !id.is_big() {
                assert_eq!(gallery(id).unwrap().n(), id.order());
            } else {
                assert!(gallery(id).is_err());
            }
        }
    }

    #[test]
    fn names_parse() {
        for id in GalleryId::ALL {
            assert_eq!(id.name().parse::<GalleryId>().unwrap(), id);
            assert_eq!(format!("{id:?}").parse::<GalleryId>().unwrap(), id);
        }
        assert!("nope".parse::<GalleryId>().is_err());
    }

    #[test]
    fn bull_edges() {
        let b = gallery(GalleryId::Bull).unwrap();
        assert_eq!(b.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (1, 4), (2, 3), (2, 4)]);
    }

    #[test]
    fn complements() {
        let c = |id| gallery(id).unwrap();
        assert!(is_isomorphic(&c(GalleryId::TwoK2).complement(), &c(GalleryId::C4)));
        assert!(is_isomorphic(&c(GalleryId::S3).complement(), &c(GalleryId::Net)));
        assert!(is_isomorphic(&c(GalleryId::P4).complement(), &c(GalleryId::P4)));
        let lk33 = c(GalleryId::LK33);
        assert!(is_isomorphic(&lk33, &lk33.complement()));
    }

    #[test]
    fn sk_is_union_of_s3_and_k2() {
        let sk = gallery(GalleryId::S3).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(sk, gallery(GalleryId::SK).unwrap());
    }

    #[test]
    fn g12_pairs_split_between_families() {
        let cliques: Vec<VertexSet> = G12_CLIQUES.iter().map(|c| one_indexed(c)).collect();
        let stables: Vec<VertexSet> = G12_STABLES.iter().map(|s| one_indexed(s)).collect();
        for u in 0..12 {
            for v in u + 1..12 {
                let pair = VertexSet::from_vertices([u, v]);
                let in_c = cliques.iter().any(|c| pair.is_subset(*c));
                let in_s = stables.iter().any(|s| pair.is_subset(*s));
                assert!(in_c ^ in_s, "pair {{{},{}}}", u + 1, v + 1);
            }
        }
    }

    #[test]
    fn fano_is_projective_split_2() {
        assert!(is_isomorphic(&projective_split(2).unwrap(), &gallery(GalleryId::F).unwrap()));
    }

    #[test]
    fn projective_plane_axioms() {
        for q in [2u64, 3, 5] {
            let g = projective_split(q).unwrap();
            let m = (q * q + q + 1) as usize;
            let lines = VertexSet::full(2 * m) - VertexSet::full(m);
            for a in 0..m {
                assert_eq!((g.neighbors(a) & lines).len(), q as usize + 1);
                for b in a + 1..m {
                    assert_eq!((g.neighbors(a) & g.neighbors(b) & lines).len(), 1);
                }
            }
            for l in m..2 * m {
                assert_eq!(g.degree(l), q as usize + 1);
            }
        }
        let g3 = projective_split(3).unwrap();
        assert_eq!(g3.n(), 26);
        // clique-degree 12 plus 4 lines
        assert!((0..13).all(|p| g3.degree(p) == 12 + 4));
    }

    #[test]
    fn projective_split_errors() {
        assert!(matches!(projective_split(4), Err(GraphError::InvalidParameter(_))));
        assert!(matches!(projective_split(1), Err(GraphError::InvalidParameter(_))));
        assert_eq!(projective_split(7), Err(GraphError::TooManyVertices(114)));
    }

    #[test]
    fn random_split_basics() {
        for seed in 0..20 {
            let g = random_split(1, 1, seed).unwrap();
            assert!(g.edge_count() <= 1);
        }
        let a = random_split(10, 12, 7).unwrap();
        assert_eq!(a, random_split(10, 12, 7).unwrap());
        assert!(a.is_clique(VertexSet::full(10)));
        assert!(a.is_stable(VertexSet::full(22) - VertexSet::full(10)));
        assert_eq!(random_split_big(10, 12, 7).unwrap().to_small().unwrap(), a);
        assert!(random_split(40, 40, 0).is_err());
        assert!(random_split(0, 3, 0).is_err());
    }

    #[test]
    fn fano_split_properties() {
        let f = gallery(GalleryId::F).unwrap();
        assert_eq!(split_partition_properties(&f, 7), [true; 4]);
    }
}
