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

//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process fails only when a criterion's outcome differs from the
//! expected one. Criterion 1 is expected to report two failing cells: the
//! table lists G12 as a member of the ∩-strongly-equistable and
//! ∩-equistable classes, while G12 is not triangle and every equistable
//! graph is triangle.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cisgraph::enumerate::{maximal_cliques, maximal_stable_sets, FamilyKind};
use cisgraph::equistable::{forced_value, is_equistable, verify_forced_subset};
use cisgraph::graph::gallery::{one_indexed, split_partition_properties, CIR9_STABLES, G12_CLIQUES, G12_STABLES};
use cisgraph::graph::{gallery, projective_split, random_split_big, GalleryId};
use cisgraph::hasse::{
    generate_graphs, llbar_checks, scan, verify_table, Cell, Outcome, ScanOptions, TableOptions, TABLE_LABELS,
    UNAVAILABLE_WITNESSES,
};
use cisgraph::linegraph::{check_condition_vii, is_cis_line_root, line_graph, tilde};
use cisgraph::recognizers::{BaseProperty as B, Certificate, CoverMode, Evaluator, Options, PropertyId};
use cisgraph::search::CoverCertificate;
use cisgraph::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line { passed, detail: detail.into() }
}

fn plain(b: B) -> PropertyId {
    PropertyId::plain(b)
}

fn decided(ev: &mut Evaluator, id: PropertyId) -> Option<bool> {
    ev.evaluate(id).holds()
}

const TABLE_WITNESSES: [GalleryId; 13] = [
    GalleryId::K1,
    GalleryId::P4,
    GalleryId::C4,
    GalleryId::Bull,
    GalleryId::Net,
    GalleryId::S3,
    GalleryId::SK,
    GalleryId::CK,
    GalleryId::Cir9,
    GalleryId::G12,
    GalleryId::F,
    GalleryId::FK,
    GalleryId::LK33,
];

/// Cells whose listed witness contradicts other stated results.
const CONTRADICTED_CELLS: [(&str, &str); 2] = [("cap-seq", "cap-swCIS"), ("cap-eq", "cap-swCIS")];

fn criterion_1() -> (Line, bool) {
    let start = Instant::now();
    let report = verify_table(TableOptions { include_lp: true, include_llbar: false }).expect("table");
    let total = start.elapsed();
    let mut slowest = Duration::ZERO;
    for id in [GalleryId::F, GalleryId::FK, GalleryId::G12, GalleryId::Cir9] {
        let t = Instant::now();
        let mut ev = Evaluator::new(&gallery(id).unwrap(), Options::default()).unwrap();
        for b in [B::Equistable, B::StronglyEquistable] {
            for id in [PropertyId::cap(b), PropertyId::cup(b)] {
                ev.evaluate(id);
            }
        }
        slowest = slowest.max(t.elapsed());
    }
    let names: BTreeSet<String> = TABLE_WITNESSES.iter().map(|g| g.to_string()).collect();
    let relevant: Vec<_> = report.cells.iter().filter(|c| names.contains(&c.entry)).collect();
    let failing: BTreeSet<(String, String)> =
        relevant.iter().filter(|c| c.outcome != Outcome::Pass).map(|c| (c.row.clone(), c.column.clone())).collect();
    let expected: BTreeSet<(String, String)> =
        CONTRADICTED_CELLS.iter().map(|(r, c)| (r.to_string(), c.to_string())).collect();
    let timing = total < Duration::from_secs(300) && slowest < Duration::from_secs(60);
    let detail = format!(
        "{} of {} witness cells hold exactly; failing: {}; total {:.2?}, slowest LP witness {:.2?}",
        relevant.len() - failing.len(),
        relevant.len(),
        if failing.is_empty() {
            "none".to_string()
        } else {
            failing.iter().map(|(r, c)| format!("{r}/{c}")).collect::<Vec<_>>().join(", ")
                + " (G12 listed as cap-eq/cap-seq, but G12 is not triangle)"
        },
        total,
        slowest
    );
    let passed = failing.is_empty() && timing;
    // the run is as expected when exactly the contradicted cells fail
    (line(passed, detail), failing == expected && timing)
}

fn criterion_2() -> Line {
    let g = gallery(GalleryId::G12).unwrap();
    let as_set = |fam: &[&[usize]]| fam.iter().map(|s| one_indexed(s)).collect::<BTreeSet<VertexSet>>();
    let cliques: BTreeSet<VertexSet> = maximal_cliques(&g).unwrap().iter().collect();
    let stables: BTreeSet<VertexSet> = maximal_stable_sets(&g).unwrap().iter().collect();
    let families = cliques == as_set(&G12_CLIQUES) && stables == as_set(&G12_STABLES);
    let cert = CoverCertificate {
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
    let weakly_cis = cert.verify(&g).is_ok();
    let mut ev = Evaluator::new(&g, Options { include_lp: false, ..Options::default() }).unwrap();
    let triangle = decided(&mut ev, plain(B::Triangle));
    let co_triangle = decided(&mut ev, PropertyId::co(B::Triangle));
    let violation = Certificate::TriangleViolation { stable: one_indexed(&[5, 7, 9]), edge: (9, 10) };
    let co_violation = Certificate::TriangleViolation { stable: one_indexed(&[4, 10, 12]), edge: (4, 8) };
    let pair_ok = violation.check(&g).is_ok();
    let co_pair_ok = co_violation.check(&g.complement()).is_ok();
    let passed = families && weakly_cis && triangle == Some(false) && co_triangle == Some(false) && pair_ok && co_pair_ok;
    line(
        passed,
        format!(
            "{} cliques / {} stables match: {families}; stored cover certificate verifies: {weakly_cis}; \
             triangle {triangle:?} via ({{5,7,9}}, {{10,11}}): {pair_ok}; co-triangle {co_triangle:?} via ({{4,10,12}}, {{5,9}}): {co_pair_ok}",
            cliques.len(),
            stables.len()
        ),
    )
}

fn criterion_3() -> Line {
    let g = gallery(GalleryId::Cir9).unwrap();
    let mut ev = Evaluator::new(&g, Options::default()).unwrap();
    let got = [
        decided(&mut ev, plain(B::Triangle)),
        decided(&mut ev, plain(B::WeaklyTriangle)),
        decided(&mut ev, plain(B::Equistable)),
        decided(&mut ev, PropertyId::co(B::Equistable)),
        decided(&mut ev, PropertyId::co(B::WeaklyTriangle)),
    ];
    let want = [Some(true), Some(true), Some(false), Some(false), Some(false)];
    let stables_ok = maximal_stable_sets(&g).unwrap().iter().collect::<BTreeSet<_>>()
        == CIR9_STABLES.iter().map(|s| one_indexed(s)).collect();
    let terms: Vec<(VertexSet, i64)> =
        [(&[1, 5, 9][..], 1), (&[2, 6, 7], 1), (&[3, 4, 8], 1), (&[1, 6, 8], -1), (&[2, 5, 7], -1)]
            .iter()
            .map(|(s, c)| (one_indexed(s), *c))
            .collect();
    let forced = verify_forced_subset(&g, FamilyKind::Clique, &terms).unwrap();
    let one = cisgraph::Rational::from_integer(1.into());
    let t = one_indexed(&[3, 4, 9]);
    let recovered = forced.subset == t
        && forced.value == one
        && forced_value(&g.complement(), t).unwrap() == Some(one.clone())
        && !is_equistable(&g.complement()).unwrap().holds();
    line(
        got == want && stables_ok && recovered,
        format!(
            "triangle {:?}, weakly-triangle {:?}, equistable {:?}, co-equistable {:?}, co-weakly-triangle {:?}; \
             forced subset {{3,4,9}} of the complement has weight 1: {recovered}",
            got[0], got[1], got[2], got[3], got[4]
        ),
    )
}

fn criterion_4() -> Line {
    let mut graphs: Vec<Graph> = generate_graphs(7).unwrap().into_iter().flatten().collect();
    let small: Vec<Graph> = GalleryId::ALL
        .into_iter()
        .filter(|id| id.order() <= 16)
        .map(|id| gallery(id).unwrap())
        .collect();
    let generated = graphs.len();
    graphs.extend(small);
    let mut exceptions = Vec::new();
    let options = Options { include_lp: false, ..Options::default() };
    for g in &graphs {
        let mut ev = Evaluator::new(g, options).unwrap();
        let split = decided(&mut ev, plain(B::Split)).unwrap();
        let acis = decided(&mut ev, plain(B::AlmostCis)).unwrap();
        let cap_es = decided(&mut ev, PropertyId::cap(B::EdgeSimplicial)).unwrap();
        if split != (acis || cap_es) {
            exceptions.push(cisgraph::graph::encode_graph6(g));
        }
    }
    line(
        exceptions.is_empty(),
        format!(
            "split = almost-CIS or cap-edge-simplicial on {generated} graphs with n <= 7 and {} gallery graphs; exceptions: {}",
            graphs.len() - generated,
            exceptions.len()
        ),
    )
}

fn criterion_5() -> Line {
    let report = scan(ScanOptions { max_n: 6, lp_max_n: 6, ..ScanOptions::default() }).unwrap();
    let graphs: Vec<Graph> = generate_graphs(6).unwrap().into_iter().flatten().collect();
    let chain = [
        (plain(B::EdgeSimplicial), plain(B::SemiWeaklyCis)),
        (plain(B::SemiWeaklyCis), plain(B::StronglyEquistable)),
        (plain(B::StronglyEquistable), plain(B::Equistable)),
        (plain(B::Equistable), plain(B::Triangle)),
        (plain(B::Triangle), plain(B::WeaklyTriangle)),
        (plain(B::Cis), plain(B::SemiWeaklyCis)),
        (plain(B::WeaklyCis), plain(B::Normal)),
        (plain(B::WeaklyCis), PropertyId::cap(B::WeaklyTriangle)),
        (plain(B::Perfect), plain(B::Normal)),
    ];
    let mut violations = 0;
    let mut undecided = 0;
    for g in &graphs {
        let mut ev = Evaluator::new(g, Options::default()).unwrap();
        for &(x, y) in &chain {
            match (decided(&mut ev, x), decided(&mut ev, y)) {
                (Some(true), Some(false)) => violations += 1,
                (Some(true), None) | (None, _) => undecided += 1,
                _ => {}
            }
        }
        if decided(&mut ev, plain(B::Equistable)) == Some(true) && ev.bad_p4().holds {
            violations += 1;
        }
    }
    let at_six = report.graphs_per_order.get(5).copied().unwrap_or(0);
    line(
        violations == 0 && undecided == 0 && report.passed() && at_six == 156,
        format!(
            "{} graphs ({at_six} at n = 6); listed implications: {violations} violations, {undecided} undecided; \
             full diagram scan: {} violations over {} arrows",
            graphs.len(),
            report.violations(),
            report.arrows.len()
        ),
    )
}

fn random_triangle_free(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.gen_range(2..=6);
        let mut g = Graph::empty(n).unwrap();
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.5) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        let triangle = g.edges().any(|(u, v)| g.neighbors(u).intersects(g.neighbors(v)));
        if g.edge_count() > 0 && !triangle {
            return g;
        }
    }
}

fn criterion_6() -> Line {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for h in generate_graphs(7).unwrap().into_iter().flatten() {
        if h.n() < 2 || !h.is_connected() {
            continue;
        }
        checked += 1;
        let lg = line_graph(&h).unwrap();
        let direct = Evaluator::new(&lg, Options { include_lp: false, ..Options::default() })
            .unwrap()
            .evaluate(PropertyId::cap(B::Triangle))
            .holds();
        let cis = cisgraph::recognizers::is_cis(&lg).unwrap().holds;
        let fast = is_cis_line_root(&h).holds;
        let vii = check_condition_vii(&h);
        if !(cis == fast && fast == vii && direct == Some(cis)) {
            disagreements.push(cisgraph::graph::encode_graph6(&h));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut tilde_failures = 0;
    for _ in 0..50 {
        let h = random_triangle_free(&mut rng);
        if !cisgraph::recognizers::is_cis(&line_graph(&tilde(&h).unwrap()).unwrap()).unwrap().holds {
            tilde_failures += 1;
        }
    }
    line(
        disagreements.is_empty() && tilde_failures == 0,
        format!(
            "{checked} connected roots with 2..=7 vertices: {} disagreements among direct CIS, matching test, \
             maximal-matching condition, cap-triangle; 50 random triangle-free tilde graphs: {tilde_failures} not CIS",
            disagreements.len()
        ),
    )
}

fn criterion_7() -> Line {
    let options = Options { include_lp: false, ..Options::default() };
    let mut projective = Vec::new();
    for q in [2, 3] {
        let g = projective_split(q).unwrap();
        let mut ev = Evaluator::new(&g, options).unwrap();
        let cap_es = decided(&mut ev, PropertyId::cap(B::EdgeSimplicial));
        let cis = decided(&mut ev, plain(B::Cis));
        projective.push(cap_es == Some(true) && cis == Some(false));
    }
    let good = (0..100u64)
        .filter(|&seed| {
            let g = random_split_big(40, 40, seed).unwrap();
            split_partition_properties(&g, 40).iter().all(|&b| b)
        })
        .count();
    line(
        projective.iter().all(|&b| b) && good >= 95,
        format!(
            "projective q=2: {}, q=3: {} (cap-edge-simplicial and not CIS); random split k=l=40: {good}/100 seeds satisfy all four properties",
            projective[0], projective[1]
        ),
    )
}

fn criterion_8() -> Line {
    let c = llbar_checks().unwrap();
    line(
        c.l_edge_simplicial && c.clique_partitions && c.cap_triangle() && c.not_cup_equistable(),
        format!(
            "L: {} vertices, {} maximal cliques, {} maximal stable sets; edge-simplicial {}; six disjoint maximal \
             5-cliques and five disjoint maximal 6-cliques on one vertex set: {}; triangle {}, co-triangle {}; \
             full equistability of LLbar not attempted",
            c.l_vertices, c.l_maximal_cliques, c.l_maximal_stables, c.l_edge_simplicial, c.clique_partitions, c.l_triangle, c.l_co_triangle
        ),
    )
}

fn criterion_9() -> Line {
    let report = verify_table(TableOptions { include_lp: false, include_llbar: false }).unwrap();
    let mut skipped_ok = true;
    let mut count = 0;
    for (r, row) in TABLE_LABELS.iter().enumerate() {
        for (c, col) in TABLE_LABELS.iter().enumerate() {
            if let Cell::Unavailable(name) = cisgraph::hasse::table_cell(r, c) {
                count += 1;
                let cell = report.cell(row, col).unwrap();
                skipped_ok &= cell.outcome == Outcome::Skipped && UNAVAILABLE_WITNESSES.contains(&name);
            }
        }
    }
    let absent = ["G14", "G22"].iter().all(|n| n.parse::<GalleryId>().is_err());
    line(
        skipped_ok && absent && count > 0,
        format!(
            "not reproduced: the G14 and G22 separations (equistable but not strongly equistable; constructions not \
             available here, and a 22-vertex subset-LP loop is out of reach); FL likewise absent; {count} cells marked skipped"
        ),
    )
}

fn main() {
    let mut unexpected = Vec::new();
    let (first, first_as_expected) = criterion_1();
    if !first_as_expected {
        unexpected.push(1);
    }
    let mut lines = vec![first];
    let rest: [fn() -> Line; 8] =
        [criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9];
    for f in rest {
        lines.push(f());
    }
    for (i, l) in lines.iter().enumerate() {
        let n = i + 1;
        println!("criterion {n}: {} - {}", if l.passed { "PASS" } else { "FAIL" }, l.detail);
        if n > 1 && !l.passed {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
