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

//! The inclusion table between the seventeen self-complementary classes,
//! its witness-by-witness verification, and exhaustive small-graph scans.

pub mod scan;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::{maximal_cliques_big, maximal_stable_sets_big, EnumerateError};
use crate::graph::{gallery, gallery_big, Bitset, BigSet, GalleryId, GraphLike};
use crate::recognizers::basic::{edge_outside_simplicial_cliques, triangle_violation};
use crate::recognizers::{BaseProperty as B, Evaluator, Options, PropertyId, Status};

pub use scan::{find_separators, generate_graphs, read_graph6_list, scan, scan_graphs, ArrowResult, ScanError, ScanOptions, ScanReport, Target, HASSE_ARROWS};

/// Row and column order of the table.
pub const TABLE_CLASSES: [PropertyId; 17] = [
    PropertyId::plain(B::AlmostCis),
    PropertyId::cap(B::EdgeSimplicial),
    PropertyId::plain(B::Split),
    PropertyId::plain(B::Cis),
    PropertyId::plain(B::QuasiCis),
    PropertyId::cap(B::SemiWeaklyCis),
    PropertyId::plain(B::WeaklyCis),
    PropertyId::cap(B::StronglyEquistable),
    PropertyId::cap(B::Equistable),
    PropertyId::cap(B::Triangle),
    PropertyId::cap(B::WeaklyTriangle),
    PropertyId::cup(B::EdgeSimplicial),
    PropertyId::cup(B::SemiWeaklyCis),
    PropertyId::cup(B::StronglyEquistable),
    PropertyId::cup(B::Equistable),
    PropertyId::cup(B::Triangle),
    PropertyId::cup(B::WeaklyTriangle),
];

/// Short column labels, in [`TABLE_CLASSES`] order.
pub const TABLE_LABELS: [&str; 17] = [
    "aCIS", "cap-es", "split", "CIS", "qCIS", "cap-swCIS", "wCIS", "cap-seq", "cap-eq", "cap-tri", "cap-wtri", "cup-es",
    "cup-swCIS", "cup-seq", "cup-eq", "cup-tri", "cup-wtri",
];

// "=" diagonal, "S" inclusion, "?" open, anything else names a separating graph
const RAW: [[&str; 17]; 17] = [
    ["=", "P4", "S", "P4", "S", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4"],
    ["K1", "=", "S", "F", "S", "S", "S", "S", "S", "S", "S", "S", "S", "S", "S", "S", "S"],
    ["K1", "P4", "=", "P4", "S", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4"],
    ["K1", "C4", "C4", "=", "S", "S", "S", "S", "S", "S", "S", "CK", "S", "S", "S", "S", "S"],
    ["K1", "C4", "C4", "P4", "=", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4", "P4"],
    ["K1", "C4", "C4", "F", "FK", "=", "S", "S", "S", "S", "S", "CK", "S", "S", "S", "S", "S"],
    ["K1", "C4", "C4", "F", "G12", "G12", "=", "G12", "G12", "G12", "S", "LK33", "G12", "G12", "G12", "G12", "S"],
    ["K1", "C4", "C4", "F", "FL", "G12", "?", "=", "S", "S", "S", "LK33", "?", "S", "S", "S", "S"],
    ["K1", "C4", "C4", "F", "FL", "G12", "?", "?", "=", "S", "S", "LK33", "?", "?", "S", "S", "S"],
    ["K1", "C4", "C4", "F", "FL", "LLbar", "?", "LLbar", "LLbar", "=", "S", "LK33", "LLbar", "LLbar", "LLbar", "S", "S"],
    ["K1", "C4", "C4", "F", "FL", "LLbar", "?", "LLbar", "LLbar", "G12", "=", "LK33", "LLbar", "LLbar", "LLbar", "G12", "S"],
    ["K1", "C4", "C4", "S3", "SK", "S3", "S", "S3", "S3", "S3", "S", "=", "S", "S", "S", "S", "S"],
    ["K1", "C4", "C4", "S3", "SK", "S3", "S", "S3", "S3", "S3", "S", "LK33", "=", "S", "S", "S", "S"],
    ["K1", "C4", "C4", "S3", "SK", "S3", "?", "S3", "S3", "S3", "?", "LK33", "G22", "=", "S", "S", "S"],
    ["K1", "C4", "C4", "S3", "SK", "S3", "?", "S3", "S3", "S3", "?", "LK33", "G22", "G14", "=", "S", "S"],
    ["K1", "C4", "C4", "S3", "SK", "S3", "Cir9", "S3", "S3", "S3", "Cir9", "LK33", "Cir9", "Cir9", "Cir9", "=", "S"],
    ["K1", "C4", "C4", "S3", "SK", "S3", "Cir9", "S3", "S3", "S3", "Cir9", "LK33", "Cir9", "Cir9", "Cir9", "G12", "="],
];

/// Graphs named in the table that are not constructed here.
pub const UNAVAILABLE_WITNESSES: [&str; 3] = ["FL", "G14", "G22"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "graph", rename_all = "snake_case")]
pub enum Cell {
    Equal,
    Subset,
    Unknown,
    Separated(GalleryId),
    /// separating graph not available in the gallery
    Unavailable(&'static str),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Equal => f.write_str("="),
            Cell::Subset => f.write_str("⊆"),
            Cell::Unknown => f.write_str("?"),
            Cell::Separated(id) => write!(f, "{id}"),
            Cell::Unavailable(name) => f.write_str(name),
        }
    }
}

fn parse_cell(s: &'static str) -> Cell {
    match s {
        "=" => Cell::Equal,
        "S" => Cell::Subset,
        "?" => Cell::Unknown,
        _ if UNAVAILABLE_WITNESSES.contains(&s) => Cell::Unavailable(s),
        _ => Cell::Separated(s.parse().expect("gallery id in table")),
    }
}

/// The table entry in row `x`, column `y`.
pub fn table_cell(row: usize, col: usize) -> Cell {
    parse_cell(RAW[row][col])
}

/// All cells, row-major.
pub fn relation_table() -> Vec<(usize, usize, Cell)> {
    (0..17).flat_map(|r| (0..17).map(move |c| (r, c, table_cell(r, c)))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    /// nothing to check by a single witness (`=`, `⊆`, `?`)
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellResult {
    pub row: String,
    pub column: String,
    pub entry: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Decomposed facts about `L` and `LLbar` (165 and 330 vertices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LlbarChecks {
    pub l_vertices: usize,
    pub l_maximal_cliques: usize,
    pub l_maximal_stables: usize,
    /// every edge of `L` lies in a simplicial clique
    pub l_edge_simplicial: bool,
    pub l_triangle: bool,
    /// the complement of `L` is triangle
    pub l_co_triangle: bool,
    /// six disjoint maximal 5-cliques and five disjoint maximal 6-cliques
    /// covering the same vertex set
    pub clique_partitions: bool,
}

impl LlbarChecks {
    /// Both components triangle and co-triangle, so the disjoint union
    /// is ∩-triangle (hence ∩-weakly triangle).
    pub fn cap_triangle(&self) -> bool {
        self.l_triangle && self.l_co_triangle
    }

    /// The clique partitions contradict any equistable weighting of the
    /// complement side and, through the same sets read as stable sets of
    /// the complement, of `LLbar` itself.
    pub fn not_cup_equistable(&self) -> bool {
        self.clique_partitions
    }
}

fn disjoint_cover(sets: &[&BigSet]) -> Option<BigSet> {
    let mut union = sets.first()?.empty_like();
    for s in sets {
        if union.intersects(s) {
            return None;
        }
        union = union.or(s);
    }
    Some(union)
}

pub fn llbar_checks() -> Result<LlbarChecks, EnumerateError> {
    let l = gallery_big(GalleryId::L);
    let cliques = maximal_cliques_big(&l)?;
    let stables = maximal_stable_sets_big(&l)?;
    let co = l.complement();
    let fives: Vec<&BigSet> = cliques.iter().filter(|c| c.count() == 5).collect();
    let sixes: Vec<&BigSet> = cliques.iter().filter(|c| c.count() == 6).collect();
    let clique_partitions = fives.len() == 6
        && sixes.len() == 5
        && matches!((disjoint_cover(&fives), disjoint_cover(&sixes)), (Some(a), Some(b)) if a == b);
    Ok(LlbarChecks {
        l_vertices: l.order(),
        l_maximal_cliques: cliques.len(),
        l_maximal_stables: stables.len(),
        l_edge_simplicial: edge_outside_simplicial_cliques(&l).is_none(),
        l_triangle: triangle_violation(&l, &stables).is_none(),
        l_co_triangle: triangle_violation(&co, &cliques).is_none(),
        clique_partitions,
    })
}

/// Result of [`verify_table`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub labels: Vec<String>,
    pub cells: Vec<CellResult>,
    pub llbar: LlbarChecks,
    /// gallery graphs each `⊆` cell was spot-checked on
    pub inclusion_checks: usize,
}

impl TableReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.cells.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Outcome::Fail) == 0
    }

    pub fn cell(&self, row: &str, column: &str) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.row == row && c.column == column)
    }

    /// Grid with one `entry:outcome` field per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X\\Y");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (r, row) in self.labels.iter().enumerate() {
            out.push_str(row);
            for c in 0..self.labels.len() {
                let cell = &self.cells[r * self.labels.len() + c];
                out.push(',');
                out.push_str(&cell.entry);
                match cell.outcome {
                    Outcome::Pass => out.push_str(":pass"),
                    Outcome::Fail => out.push_str(":FAIL"),
                    Outcome::Skipped => out.push_str(":skipped"),
                    Outcome::NotApplicable => {}
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// evaluate the equistability cells
    pub include_lp: bool,
    /// run the `LLbar` decomposed checks
    pub include_llbar: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { include_lp: true, include_llbar: true }
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Unsupported => "undecided",
    }
}

/// Checks every witness cell: the witness must lie in the row class and
/// not in the column class. `⊆` cells are spot-checked on every small
/// gallery graph.
pub fn verify_table(options: TableOptions) -> Result<TableReport, EnumerateError> {
    let eval_options = Options { include_lp: options.include_lp, ..Options::default() };
    let small: Vec<GalleryId> = GalleryId::ALL.into_iter().filter(|g| !g.is_big()).collect();
    let mut evals: BTreeMap<GalleryId, Evaluator> = BTreeMap::new();
    for &id in &small {
        let g = gallery(id).expect("small gallery graph");
        evals.insert(id, Evaluator::new(&g, eval_options)?);
    }
    let llbar = if options.include_llbar {
        llbar_checks()?
    } else {
        LlbarChecks {
            l_vertices: 0,
            l_maximal_cliques: 0,
            l_maximal_stables: 0,
            l_edge_simplicial: false,
            l_triangle: false,
            l_co_triangle: false,
            clique_partitions: false,
        }
    };
    let mut cells = Vec::with_capacity(289);
    for (r, c, cell) in relation_table() {
        let (x, y) = (TABLE_CLASSES[r], TABLE_CLASSES[c]);
        let (outcome, note) = match cell {
            Cell::Equal | Cell::Unknown => (Outcome::NotApplicable, None),
            Cell::Unavailable(name) => (Outcome::Skipped, Some(format!("{name} is not constructed"))),
            Cell::Subset => {
                let mut bad = Vec::new();
                for (id, ev) in evals.iter_mut() {
                    if ev.evaluate(x).status == Status::Holds && ev.evaluate(y).status == Status::Fails {
                        bad.push(id.to_string());
                    }
                }
                if bad.is_empty() {
                    (Outcome::NotApplicable, None)
                } else {
                    (Outcome::Fail, Some(format!("violated by {}", bad.join(", "))))
                }
            }
            Cell::Separated(GalleryId::LLbar) => {
                if !options.include_llbar {
                    (Outcome::Skipped, Some("LLbar checks not requested".into()))
                } else {
                    let ok = llbar.cap_triangle() && llbar.not_cup_equistable();
                    (
                        if ok { Outcome::Pass } else { Outcome::Fail },
                        Some("decomposed: component checks and clique partitions".into()),
                    )
                }
            }
            Cell::Separated(id) => {
                let ev = evals.get_mut(&id).expect("small witness");
                let (sx, sy) = (ev.evaluate(x).status, ev.evaluate(y).status);
                match (sx, sy) {
                    (Status::Holds, Status::Fails) => (Outcome::Pass, None),
                    (Status::Unsupported, _) | (_, Status::Unsupported) => (
                        Outcome::Skipped,
                        Some(format!("{x}: {}, {y}: {}", status_name(sx), status_name(sy))),
                    ),
                    _ => (Outcome::Fail, Some(format!("{x}: {}, {y}: {}", status_name(sx), status_name(sy)))),
                }
            }
        };
        cells.push(CellResult {
            row: TABLE_LABELS[r].to_string(),
            column: TABLE_LABELS[c].to_string(),
            entry: cell.to_string(),
            outcome,
            note,
        });
    }
    Ok(TableReport {
        labels: TABLE_LABELS.iter().map(|s| s.to_string()).collect(),
        cells,
        llbar,
        inclusion_checks: small.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        for r in 0..17 {
            assert_eq!(table_cell(r, r), Cell::Equal);
            for c in 0..17 {
                // a subset cell never has a subset cell in the transpose
                if r != c && table_cell(r, c) == Cell::Subset {
                    assert_ne!(table_cell(c, r), Cell::Subset, "{r} {c}");
                }
            }
        }
        assert_eq!(table_cell(3, 1), Cell::Separated(GalleryId::C4));
        assert_eq!(table_cell(7, 4), Cell::Unavailable("FL"));
        assert_eq!(table_cell(14, 13), Cell::Unavailable("G14"));
        assert_eq!(table_cell(6, 11), Cell::Separated(GalleryId::LK33));
    }

    #[test]
    fn subset_cells_are_transitively_closed() {
        for a in 0..17 {
            for b in 0..17 {
                for c in 0..17 {
                    let sub = |x, y| x == y || table_cell(x, y) == Cell::Subset;
                    if sub(a, b) && sub(b, c) {
                        assert!(sub(a, c), "{} {} {}", TABLE_LABELS[a], TABLE_LABELS[b], TABLE_LABELS[c]);
                    }
                }
            }
        }
    }

    #[test]
    fn cheap_cells_verify() {
        let report = verify_table(TableOptions { include_lp: false, include_llbar: false }).unwrap();
        for (row, col) in [("CIS", "cap-es"), ("aCIS", "cup-wtri"), ("wCIS", "cup-es"), ("wCIS", "cap-swCIS")] {
            assert_eq!(report.cell(row, col).unwrap().outcome, Outcome::Pass, "{row} {col}");
        }
        assert_eq!(report.cell("cap-seq", "qCIS").unwrap().outcome, Outcome::Skipped);
        assert!(report.passed(), "{:?}", report.cells.iter().filter(|c| c.outcome == Outcome::Fail).collect::<Vec<_>>());
        assert!(report.to_csv().starts_with("X\\Y,aCIS,cap-es"));
    }
}
