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

//! Text formats: graph6 (canonical) and a plain edge list (fallback).
//!
//! graph6 layout: `N(n)` followed by the upper triangle of the adjacency
//! matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`), packed
//! six bits per byte, most significant bit first, each byte offset by 63.

use super::{BigGraph, Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode_graph6(g: &Graph) -> String {
    encode(g.n(), |i, j| g.has_edge(i, j))
}

/// graph6 for graphs beyond the 64-vertex representation.
pub fn encode_graph6_big(g: &BigGraph) -> String {
    encode(g.n(), |i, j| g.has_edge(i, j))
}

fn encode(n: usize, has_edge: impl Fn(usize, usize) -> bool) -> String {
    let mut out = String::with_capacity(4 + payload_len(n));
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

fn sextet(c: u8) -> Result<u8, GraphError> {
    if (63..=126).contains(&c) {
        Ok(c - 63)
    } else {
        Err(GraphError::Graph6Char(c as char))
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(GraphError::Graph6Header("empty input".into()));
    };
    let (n, rest) = if first == b'~' {
        if bytes.get(1) == Some(&b'~') {
            return Err(GraphError::TooManyVertices(usize::MAX));
        }
        if bytes.len() < 4 {
            return Err(GraphError::Graph6Header("truncated size field".into()));
        }
        let mut n = 0usize;
        for &c in &bytes[1..4] {
            n = (n << 6) | sextet(c)? as usize;
        }
        if n < 63 {
            return Err(GraphError::Graph6Header(format!("long size form used for n = {n}")));
        }
        (n, &bytes[4..])
    } else {
        (sextet(first)? as usize, &bytes[1..])
    };
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let expected = payload_len(n);
    if rest.len() != expected {
        return Err(GraphError::Graph6Length { expected, found: rest.len() });
    }
    let mut g = Graph::empty(n)?;
    let total = n * (n - 1) / 2;
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = sextet(rest[k / 6])?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
            if k == total {
                break 'outer;
            }
        }
    }
    if total % 6 != 0 {
        let last = sextet(rest[expected - 1])?;
        let pad = 6 - total % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(GraphError::Graph6Padding);
        }
    }
    for &c in rest {
        sextet(c)?;
    }
    Ok(g)
}

/// Parses one `u v` pair per line. `#` starts a comment. A first data line
/// holding a single integer fixes the vertex count (needed for isolated
/// vertices); otherwise the count is one more than the largest index.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_data = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GraphError::EdgeList { line: lineno + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let nums: Vec<usize> = fields
            .iter()
            .map(|f| f.parse::<usize>().map_err(|e| err(format!("{f:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        match nums.as_slice() {
            [n] if !seen_data => declared = Some(*n),
            [u, v] => edges.push((*u, *v)),
            _ => return Err(err(format!("expected `u v`, got {} fields", nums.len()))),
        }
        seen_data = true;
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Graph::from_edges(n, edges)
}

/// graph6 unless the text looks like an edge list (contains whitespace
/// inside a line or several data lines).
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let data: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let looks_like_edges = data.len() > 1
        || data.first().is_some_and(|l| l.contains(char::is_whitespace) || l.parse::<usize>().is_ok());
    if looks_like_edges {
        parse_edge_list(text)
    } else {
        parse_graph6(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_from_graph6() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g, Graph::complete(4).unwrap());
        assert_eq!(encode_graph6(&g), "C~");
    }

    #[test]
    fn k1_has_empty_payload() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g, Graph::empty(1).unwrap());
        assert_eq!(encode_graph6(&g), "@");
    }

    #[test]
    fn known_strings() {
        // Values produced by the nauty/networkx encoders.
        assert_eq!(encode_graph6(&Graph::path(4).unwrap()), "Ch");
        assert_eq!(encode_graph6(&Graph::cycle(5).unwrap()), "Dhc");
        let petgraph_example = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&petgraph_example), "DQc");
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap().edge_count(), 6);
    }

    #[test]
    fn long_size_form() {
        let g = Graph::path(64).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with("~?@"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        let g63 = Graph::cycle(63).unwrap();
        assert_eq!(parse_graph6(&encode_graph6(&g63)).unwrap(), g63);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_graph6(""), Err(GraphError::Graph6Header(_))));
        assert!(matches!(parse_graph6("C"), Err(GraphError::Graph6Length { expected: 1, found: 0 })));
        assert!(matches!(parse_graph6("C~~"), Err(GraphError::Graph6Length { .. })));
        assert!(matches!(parse_graph6("C\u{7f}"), Err(GraphError::Graph6Char(_))));
        assert_eq!(parse_graph6("?"), Err(GraphError::Empty));
        // n = 65 in long form
        assert_eq!(parse_graph6("~?@@"), Err(GraphError::TooManyVertices(65)));
        // K3 is "Bw" (111 + three pad bits); "Bx" sets a pad bit
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6("Bx"), Err(GraphError::Graph6Padding));
    }

    #[test]
    fn edge_list() {
        let g = parse_edge_list("# bull\n0 1\n1 2\n2 3\n1 4\n2 4\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        let iso = parse_edge_list("3\n0 1\n").unwrap();
        assert_eq!(iso.n(), 3);
        assert!(parse_edge_list("0 1 2").is_err());
        assert!(parse_edge_list("0 0").is_err());
        assert!(parse_edge_list("x y").is_err());
    }

    #[test]
    fn auto_detect() {
        assert_eq!(parse_graph("C~").unwrap().n(), 4);
        assert_eq!(parse_graph("0 1\n1 2").unwrap().n(), 3);
        assert_eq!(parse_graph("0 1").unwrap().n(), 2);
    }
}
