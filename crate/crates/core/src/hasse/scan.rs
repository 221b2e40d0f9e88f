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

//! Exhaustive scans over all small graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{table_cell, Cell, TABLE_CLASSES};
use crate::enumerate::EnumerateError;
use crate::graph::{canonical_form, encode_graph6, parse_graph6, Graph, GraphError, VertexSet};
use crate::recognizers::basic::bad_p4;
use crate::recognizers::{BaseProperty as B, Evaluator, Modifier, Options, PropertyId, Status};

/// Largest order accepted by [`generate_graphs`].
pub const MAX_SCAN_ORDER: usize = 7;

const fn p(b: B) -> PropertyId {
    PropertyId::plain(b)
}
const fn cap(b: B) -> PropertyId {
    PropertyId::cap(b)
}
const fn cup(b: B) -> PropertyId {
    PropertyId::cup(b)
}

/// Covering relations of the inclusion diagram.
pub const HASSE_ARROWS: [(PropertyId, PropertyId); 41] = [
    (p(B::Threshold), cap(B::EdgeSimplicial)),
    (p(B::Threshold), p(B::Cograph)),
    (p(B::Cograph), p(B::Perfect)),
    (p(B::Cograph), p(B::Cis)),
    (cap(B::EdgeSimplicial), p(B::EdgeSimplicial)),
    (cap(B::EdgeSimplicial), cap(B::SemiWeaklyCis)),
    (cap(B::EdgeSimplicial), p(B::Split)),
    (p(B::Cis), cap(B::SemiWeaklyCis)),
    (p(B::Cis), p(B::QuasiCis)),
    (p(B::AlmostCis), p(B::Split)),
    (p(B::Split), p(B::QuasiCis)),
    (p(B::EdgeSimplicial), cup(B::EdgeSimplicial)),
    (p(B::EdgeSimplicial), p(B::SemiWeaklyCis)),
    (cup(B::EdgeSimplicial), cup(B::SemiWeaklyCis)),
    (cap(B::SemiWeaklyCis), p(B::SemiWeaklyCis)),
    (cap(B::SemiWeaklyCis), cap(B::StronglyEquistable)),
    (p(B::SemiWeaklyCis), cup(B::SemiWeaklyCis)),
    (p(B::SemiWeaklyCis), p(B::StronglyEquistable)),
    (cup(B::SemiWeaklyCis), p(B::WeaklyCis)),
    (cup(B::SemiWeaklyCis), cup(B::StronglyEquistable)),
    (cap(B::StronglyEquistable), cap(B::Equistable)),
    (cap(B::StronglyEquistable), p(B::StronglyEquistable)),
    (p(B::StronglyEquistable), p(B::Equistable)),
    (p(B::StronglyEquistable), cup(B::StronglyEquistable)),
    (cup(B::StronglyEquistable), cup(B::Equistable)),
    (cap(B::Equistable), cap(B::Triangle)),
    (cap(B::Equistable), p(B::Equistable)),
    (p(B::Equistable), p(B::Triangle)),
    (p(B::Equistable), cup(B::Equistable)),
    (cup(B::Equistable), cup(B::Triangle)),
    (cap(B::Triangle), p(B::Triangle)),
    (cap(B::Triangle), cap(B::WeaklyTriangle)),
    (p(B::Triangle), cup(B::Triangle)),
    (p(B::Triangle), p(B::WeaklyTriangle)),
    (cup(B::Triangle), cup(B::WeaklyTriangle)),
    (p(B::WeaklyCis), cap(B::WeaklyTriangle)),
    (p(B::WeaklyCis), p(B::Normal)),
    (cap(B::WeaklyTriangle), p(B::WeaklyTriangle)),
    (p(B::WeaklyTriangle), cup(B::WeaklyTriangle)),
    (p(B::QuasiCis), p(B::Normal)),
    (p(B::Perfect), p(B::Normal)),
];

/// Inclusions whose status is unsettled; scans only log candidates.
pub const OPEN_INCLUSIONS: [(PropertyId, PropertyId); 3] = [
    (cap(B::Triangle), p(B::WeaklyCis)),
    (cap(B::WeaklyTriangle), p(B::WeaklyCis)),
    (cap(B::WeaklyTriangle), p(B::Normal)),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    Class(PropertyId),
    /// contains no bad P4
    NoBadP4,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Class(id) => write!(f, "{id}"),
            Target::NoBadP4 => f.write_str("no-bad-P4"),
        }
    }
}

/// All connected and disconnected graphs of order `1..=max_n`, one per
/// isomorphism class, grouped by order and sorted by canonical graph6.
pub fn generate_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>, GraphError> {
    if max_n == 0 || max_n > MAX_SCAN_ORDER {
        return Err(GraphError::InvalidParameter(format!("scan order must be in 1..={MAX_SCAN_ORDER}")));
    }
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::empty(1)?]];
    for n in 2..=max_n {
        let prev = &levels[n - 2];
        let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
        let found: Vec<(String, Graph)> = prev
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (n - 1)).map(move |mask| {
                    let mut h = Graph::empty(n).expect("small order");
                    for (u, v) in g.edges() {
                        h.add_edge(u, v).expect("edge in range");
                    }
                    for v in VertexSet::new(mask).iter() {
                        h.add_edge(v, n - 1).expect("edge in range");
                    }
                    let c = canonical_form(&h);
                    (encode_graph6(&c), c)
                })
            })
            .collect();
        for (code, g) in found {
            seen.entry(code).or_insert(g);
        }
        levels.push(seen.into_values().collect());
    }
    Ok(levels)
}

/// Graphs from a graph6 list, one per line; blank lines, `#` comments and
/// `>>graph6<<` headers are ignored.
pub fn read_graph6_list(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_graph6)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub max_n: usize,
    /// equistability is evaluated only up to this order
    pub lp_max_n: usize,
    pub backtrack_limit: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_n: 6, lp_max_n: 6, backtrack_limit: crate::search::DEFAULT_BACKTRACK_LIMIT }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowResult {
    pub from: String,
    pub to: String,
    /// `diagram`, `table`, or `diagram+table`
    pub origin: String,
    /// graphs in the source class with a decided target verdict
    pub checked: usize,
    /// graphs in the source class whose target verdict was unavailable
    pub undecided: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfComplementResult {
    pub property: String,
    pub checked: usize,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenQuestionLog {
    pub question: String,
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub max_n: usize,
    pub lp_max_n: usize,
    /// number of graphs scanned per order `1..`
    pub graphs_per_order: Vec<usize>,
    pub arrows: Vec<ArrowResult>,
    pub self_complementary: Vec<SelfComplementResult>,
    pub open_questions: Vec<OpenQuestionLog>,
}

impl ScanReport {
    pub fn violations(&self) -> usize {
        self.arrows.iter().map(|a| a.violations.len()).sum::<usize>()
            + self.self_complementary.iter().map(|s| s.mismatches.len()).sum::<usize>()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    pub fn arrow(&self, from: &str, to: &str) -> Option<&ArrowResult> {
        self.arrows.iter().find(|a| a.from == from && a.to == to)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("from,to,origin,checked,undecided,violations\n");
        for a in &self.arrows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                a.from,
                a.to,
                a.origin,
                a.checked,
                a.undecided,
                a.violations.len()
            ));
        }
        out
    }
}

/// Every arrow checked by a scan, with its origin.
pub fn scan_arrows() -> Vec<(PropertyId, Target, &'static str)> {
    let mut m: BTreeMap<(PropertyId, Target), &'static str> = BTreeMap::new();
    for &(x, y) in &HASSE_ARROWS {
        m.insert((x, Target::Class(y)), "diagram");
    }
    for (r, &x) in TABLE_CLASSES.iter().enumerate() {
        for (c, &y) in TABLE_CLASSES.iter().enumerate() {
            if table_cell(r, c) == Cell::Subset {
                m.entry((x, Target::Class(y))).and_modify(|o| *o = "diagram+table").or_insert("table");
            }
        }
    }
    m.insert((p(B::Equistable), Target::NoBadP4), "diagram");
    let mut out: Vec<_> = m.into_iter().map(|((x, y), o)| (x, y, o)).collect();
    out.sort_by_key(|&(x, y, _)| (x, y));
    out
}

struct GraphVerdicts {
    code: String,
    statuses: BTreeMap<PropertyId, Status>,
    no_bad_p4: bool,
}

fn needed_properties() -> BTreeSet<PropertyId> {
    let mut s = BTreeSet::new();
    for (x, y, _) in scan_arrows() {
        s.insert(x);
        if let Target::Class(y) = y {
            s.insert(y);
        }
    }
    for &(x, y) in &OPEN_INCLUSIONS {
        s.insert(x);
        s.insert(y);
    }
    for &t in &TABLE_CLASSES {
        s.insert(t);
        s.insert(t.complemented());
    }
    s
}

fn evaluate_graph(g: &Graph, props: &BTreeSet<PropertyId>, options: &ScanOptions) -> Result<GraphVerdicts, EnumerateError> {
    let eval = Options { include_lp: g.n() <= options.lp_max_n, backtrack_limit: options.backtrack_limit };
    let mut ev = Evaluator::new(g, eval)?;
    let statuses = props.iter().map(|&id| (id, ev.evaluate(id).status)).collect();
    Ok(GraphVerdicts { code: encode_graph6(g), statuses, no_bad_p4: !bad_p4(ev.analysis()).holds })
}

/// Scans every graph of order `1..=max_n`.
pub fn scan(options: ScanOptions) -> Result<ScanReport, ScanError> {
    let levels = generate_graphs(options.max_n)?;
    let graphs: Vec<Graph> = levels.iter().flatten().cloned().collect();
    let mut report = scan_graphs(&graphs, options)?;
    report.graphs_per_order = levels.iter().map(|l| l.len()).collect();
    Ok(report)
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// Scans an explicit list of graphs.
pub fn scan_graphs(graphs: &[Graph], options: ScanOptions) -> Result<ScanReport, ScanError> {
    let props = needed_properties();
    let verdicts: Vec<GraphVerdicts> =
        graphs.par_iter().map(|g| evaluate_graph(g, &props, &options)).collect::<Result<_, _>>()?;
    let mut per_order = Vec::new();
    for g in graphs {
        if per_order.len() < g.n() {
            per_order.resize(g.n(), 0);
        }
        per_order[g.n() - 1] += 1;
    }
    let arrows = scan_arrows()
        .into_iter()
        .map(|(x, y, origin)| {
            let mut r = ArrowResult {
                from: x.to_string(),
                to: y.to_string(),
                origin: origin.to_string(),
                checked: 0,
                undecided: 0,
                violations: Vec::new(),
            };
            for v in verdicts.iter().filter(|v| v.statuses[&x] == Status::Holds) {
                let target = match y {
                    Target::Class(y) => v.statuses[&y],
                    Target::NoBadP4 if v.no_bad_p4 => Status::Holds,
                    Target::NoBadP4 => Status::Fails,
                };
                match target {
                    Status::Holds => r.checked += 1,
                    Status::Fails => {
                        r.checked += 1;
                        r.violations.push(v.code.clone());
                    }
                    Status::Unsupported => r.undecided += 1,
                }
            }
            r
        })
        .collect();
    let self_complementary = TABLE_CLASSES
        .iter()
        .filter(|t| t.modifier == Modifier::Plain)
        .map(|&t| {
            let mut r = SelfComplementResult { property: t.to_string(), checked: 0, mismatches: Vec::new() };
            for v in &verdicts {
                let (a, b) = (v.statuses[&t], v.statuses[&t.complemented()]);
                if a != Status::Unsupported && b != Status::Unsupported {
                    r.checked += 1;
                    if a != b {
                        r.mismatches.push(v.code.clone());
                    }
                }
            }
            r
        })
        .collect();
    let open_questions = OPEN_INCLUSIONS
        .iter()
        .map(|&(x, y)| OpenQuestionLog {
            question: format!("{x} => {y}"),
            candidates: verdicts
                .iter()
                .filter(|v| v.statuses[&x] == Status::Holds && v.statuses[&y] == Status::Fails)
                .map(|v| v.code.clone())
                .collect(),
        })
        .collect();
    Ok(ScanReport {
        schema: "cisgraph.scan/1".into(),
        max_n: options.max_n,
        lp_max_n: options.lp_max_n,
        graphs_per_order: per_order,
        arrows,
        self_complementary,
        open_questions,
    })
}

/// Scanned graphs in `x` but not in `y`; an empty result proves nothing
/// beyond the scanned range.
pub fn find_separators(x: PropertyId, y: PropertyId, max_n: usize) -> Result<Vec<Graph>, ScanError> {
    let graphs: Vec<Graph> = generate_graphs(max_n)?.into_iter().flatten().collect();
    let opts = Options::default();
    let keep: Vec<bool> = graphs
        .par_iter()
        .map(|g| -> Result<bool, EnumerateError> {
            let mut ev = Evaluator::new(g, opts)?;
            Ok(ev.evaluate(x).status == Status::Holds && ev.evaluate(y).status == Status::Fails)
        })
        .collect::<Result<_, _>>()?;
    Ok(graphs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect())
}
