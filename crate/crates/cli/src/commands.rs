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

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use cisgraph::equistable::{is_equistable, is_equistable_lp, is_strongly_equistable, EquistableCertificate, EquistableError};
use cisgraph::graph::{encode_graph6, encode_graph6_big, gallery as build_gallery, is_isomorphic, parse_graph6, GalleryId};
use cisgraph::hasse::{
    llbar_checks, read_graph6_list, relation_table, scan as run_scan, scan_graphs, verify_table, Outcome, ScanOptions,
    ScanReport, TableOptions, TableReport, TABLE_CLASSES, TABLE_LABELS,
};
use cisgraph::linegraph::{
    check_condition_vii, is_cis_line_root_with, line_graph, root_graph, LineRootVerdict, MatchingBackend, RootResult,
};
use cisgraph::recognizers::{
    classify as classify_graph, equistable_certificate, is_cis, supports, verify_report, BaseProperty, Certificate,
    ClassReport, Evaluator, Options, PropertyId, Status,
};
use cisgraph::Graph;
use rayon::prelude::*;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::input::{construction, load_graphs, read_text, Construction};
use crate::{
    CisLineArgs, ClassifyArgs, EmitFormat, EquistableArgs, Format, GalleryAction, GalleryArgs, Interpret, ScanArgs,
    TableArgs,
};

pub const CIS_LINE_SCHEMA: &str = "cisgraph.cis-line/1";
pub const EQUISTABLE_SCHEMA: &str = "cisgraph.equistable/1";

/// Largest edge count for which the maximal-matching enumeration and the
/// direct checks on the line graph are run alongside the recognizer.
const CROSS_CHECK_EDGES: usize = 20;

/// Rendered output plus any self-verification failures.
pub struct Output {
    pub text: String,
    pub issues: Vec<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, issues: Vec::new() }
    }
}

fn to_json<T: Serialize>(items: &[T]) -> Result<String> {
    let mut s = match items {
        [one] => serde_json::to_string_pretty(one)?,
        many => serde_json::to_string_pretty(many)?,
    };
    s.push('\n');
    Ok(s)
}

/// One JSON object, or an array of them.
fn from_json<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    let value: serde_json::Value = serde_json::from_str(text).context("parsing JSON")?;
    if value.is_array() {
        Ok(serde_json::from_value(value).context("decoding report list")?)
    } else {
        Ok(vec![serde_json::from_value(value).context("decoding report")?])
    }
}

fn certificate_kinds(r: &cisgraph::recognizers::PropertyResult) -> String {
    if r.witnesses.is_empty() {
        return "-".into();
    }
    r.witnesses
        .iter()
        .map(|w| {
            if w.on_complement {
                format!("{} (complement)", w.certificate.kind())
            } else {
                w.certificate.kind().to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Unsupported => "unsupported",
    }
}

fn render_reports(reports: &[ClassReport], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => {
            let mut out = String::from("graph,graph6,property,status,certificates\n");
            for r in reports {
                let label = r.label.clone().unwrap_or_default();
                for p in &r.properties {
                    writeln!(out, "{},{},{},{},{}", label, r.graph6, p.property, status_str(p.status), certificate_kinds(p))?;
                }
                writeln!(out, "{},{},bad-P4,{},-", label, r.graph6, if r.has_bad_p4 { "holds" } else { "fails" })?;
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let label = r.label.as_deref().unwrap_or("graph");
                writeln!(out, "{label}  {}  n={} m={}", r.graph6, r.vertices, r.edges)?;
                for p in &r.properties {
                    let mut line = format!("  {:<26} {:<12} {}", p.property.to_string(), status_str(p.status), certificate_kinds(p));
                    if let Some(reason) = &p.reason {
                        write!(line, " ({reason})")?;
                    }
                    writeln!(out, "{}", line.trim_end())?;
                }
                writeln!(out, "  {:<26} {}", "bad-P4", if r.has_bad_p4 { "present" } else { "absent" })?;
            }
            Ok(out)
        }
    }
}

fn report_issues(r: &ClassReport) -> Result<Vec<String>> {
    let label = r.label.as_deref().unwrap_or(&r.graph6);
    Ok(verify_report(r)?.into_iter().map(|i| format!("{label}: {}: {}", i.property, i.message)).collect())
}

pub fn classify(args: &ClassifyArgs) -> Result<Output> {
    let source = args.input.source()?;
    if args.verify {
        let reports: Vec<ClassReport> = from_json(&read_text(source)?)?;
        let mut issues = Vec::new();
        let mut text = String::new();
        for r in &reports {
            let found = report_issues(r)?;
            let certs: usize = r.properties.iter().map(|p| p.witnesses.len()).sum();
            let label = r.label.as_deref().unwrap_or(&r.graph6);
            writeln!(text, "{label}: {} certificates, {}", certs, if found.is_empty() { "ok" } else { "FAILED" })?;
            issues.extend(found);
        }
        return Ok(Output { text, issues });
    }
    let properties: Vec<PropertyId> =
        args.properties.iter().map(|p| p.parse()).collect::<Result<_, _>>().context("--property")?;
    let options = Options { include_lp: !args.skip_lp, ..Options::default() };
    let graphs = load_graphs(source, args.input.seed)?;
    let reports: Vec<ClassReport> = graphs
        .par_iter()
        .map(|(label, g)| classify_graph(g, Some(label.clone()), &properties, options))
        .collect::<Result<_, _>>()?;
    let mut issues = Vec::new();
    for r in &reports {
        issues.extend(report_issues(r)?);
    }
    Ok(Output { text: render_reports(&reports, args.format)?, issues })
}

fn render_table(report: &TableReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(std::slice::from_ref(report)),
        Format::Csv => Ok(report.to_csv()),
        Format::Text => {
            let k = report.labels.len();
            let field = |i: usize| {
                let c = &report.cells[i];
                match c.outcome {
                    Outcome::Fail => format!("!{}", c.entry),
                    Outcome::Skipped => format!("({})", c.entry),
                    _ => c.entry.clone(),
                }
            };
            let width = (0..report.cells.len()).map(|i| field(i).chars().count()).chain(report.labels.iter().map(|l| l.len())).max().unwrap_or(1);
            let mut out = format!("{:>width$}", "");
            for l in &report.labels {
                write!(out, " {l:>width$}")?;
            }
            out.push('\n');
            for (r, row) in report.labels.iter().enumerate() {
                write!(out, "{row:>width$}")?;
                for c in 0..k {
                    write!(out, " {:>width$}", field(r * k + c))?;
                }
                out.push('\n');
            }
            writeln!(
                out,
                "\nwitness cells: {} passed, {} failed, {} skipped; inclusions spot-checked on {} gallery graphs",
                report.count(Outcome::Pass),
                report.count(Outcome::Fail),
                report.count(Outcome::Skipped),
                report.inclusion_checks
            )?;
            for c in &report.cells {
                if let (Outcome::Fail | Outcome::Skipped, Some(note)) = (c.outcome, &c.note) {
                    writeln!(out, "  {} / {} [{}]: {note}", c.row, c.column, c.entry)?;
                }
            }
            let l = &report.llbar;
            if l.l_vertices > 0 {
                writeln!(
                    out,
                    "LLbar: L has {} vertices, {} maximal cliques, {} maximal stable sets; edge-simplicial {}, triangle {}, co-triangle {}, clique partitions {}",
                    l.l_vertices, l.l_maximal_cliques, l.l_maximal_stables, l.l_edge_simplicial, l.l_triangle, l.l_co_triangle, l.clique_partitions
                )?;
            }
            Ok(out)
        }
    }
}

/// Recomputes every passing witness cell of a table report, re-checking
/// the certificates behind both verdicts.
fn verify_table_report(report: &TableReport) -> Result<Vec<String>> {
    let mut issues = Vec::new();
    if report.labels.iter().map(String::as_str).ne(TABLE_LABELS.iter().copied()) || report.cells.len() != 289 {
        bail!("table report does not have the expected 17 x 17 layout");
    }
    let mut wanted: BTreeMap<GalleryId, Vec<PropertyId>> = BTreeMap::new();
    let mut llbar_needed = false;
    for (r, c, cell) in relation_table() {
        let got = &report.cells[r * 17 + c];
        if got.entry != cell.to_string() {
            issues.push(format!("{} / {}: entry {:?}, expected {:?}", got.row, got.column, got.entry, cell.to_string()));
            continue;
        }
        match got.outcome {
            Outcome::Fail => issues.push(format!("{} / {}: reported as failing", got.row, got.column)),
            Outcome::Pass => match got.entry.parse::<GalleryId>() {
                Ok(GalleryId::LLbar) => llbar_needed = true,
                Ok(id) => wanted.entry(id).or_default().extend([TABLE_CLASSES[r], TABLE_CLASSES[c]]),
                Err(_) => issues.push(format!("{} / {}: no witness to check", got.row, got.column)),
            },
            _ => {}
        }
    }
    let options = Options::default();
    let mut verdicts: BTreeMap<GalleryId, ClassReport> = BTreeMap::new();
    for (id, props) in wanted {
        let g = build_gallery(id)?;
        let mut props = props;
        props.sort_by_key(|p| p.to_string());
        props.dedup();
        let rep = classify_graph(&g, Some(id.to_string()), &props, options)?;
        issues.extend(report_issues(&rep)?);
        verdicts.insert(id, rep);
    }
    for (r, c, _) in relation_table() {
        let got = &report.cells[r * 17 + c];
        if got.outcome != Outcome::Pass {
            continue;
        }
        if let Ok(id) = got.entry.parse::<GalleryId>() {
            if let Some(rep) = verdicts.get(&id) {
                let (x, y) = (rep.holds(TABLE_CLASSES[r]), rep.holds(TABLE_CLASSES[c]));
                if (x, y) != (Some(true), Some(false)) {
                    issues.push(format!("{} / {}: {id} gives {x:?} / {y:?}", got.row, got.column));
                }
            }
        }
    }
    if llbar_needed {
        let fresh = llbar_checks()?;
        if fresh != report.llbar {
            issues.push("LLbar checks differ from the report".into());
        }
        if !(fresh.cap_triangle() && fresh.not_cup_equistable()) {
            issues.push("LLbar checks do not separate".into());
        }
    }
    Ok(issues)
}

pub fn table(args: &TableArgs) -> Result<Output> {
    if args.verify {
        let source = args.input.as_deref().context("--verify needs --input with a JSON table report")?;
        let report: TableReport = serde_json::from_str(&read_text(source)?).context("decoding table report")?;
        let issues = verify_table_report(&report)?;
        let text = format!(
            "{} witness cells re-checked: {}\n",
            report.count(Outcome::Pass),
            if issues.is_empty() { "ok" } else { "FAILED" }
        );
        return Ok(Output { text, issues });
    }
    if args.input.is_some() {
        bail!("--input is only used with --verify");
    }
    let report = verify_table(TableOptions { include_lp: !args.skip_lp, include_llbar: !args.skip_llbar })?;
    let issues = report
        .cells
        .iter()
        .filter(|c| c.outcome == Outcome::Fail)
        .map(|c| format!("{} / {} [{}]: {}", c.row, c.column, c.entry, c.note.as_deref().unwrap_or("")))
        .collect();
    Ok(Output { text: render_table(&report, args.format)?, issues })
}

fn render_scan(report: &ScanReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(std::slice::from_ref(report)),
        Format::Csv => Ok(report.to_csv()),
        Format::Text => {
            let total: usize = report.graphs_per_order.iter().sum();
            let mut out = format!(
                "scanned {total} graphs (orders 1..={}: {:?}); equistability up to order {}\n",
                report.max_n, report.graphs_per_order, report.lp_max_n
            );
            for a in &report.arrows {
                let verdict = if a.violations.is_empty() { "ok".to_string() } else { format!("VIOLATED by {}", a.violations.join(" ")) };
                writeln!(
                    out,
                    "  {:<14} => {:<14} checked {:>5} undecided {:>5}  {verdict}  [{}]",
                    a.from, a.to, a.checked, a.undecided, a.origin
                )?;
            }
            for s in &report.self_complementary {
                let verdict = if s.mismatches.is_empty() { "ok".to_string() } else { format!("MISMATCH {}", s.mismatches.join(" ")) };
                writeln!(out, "  self-complementary {:<16} checked {:>5}  {verdict}", s.property, s.checked)?;
            }
            for q in &report.open_questions {
                writeln!(out, "  open: {} - {} candidate(s) {}", q.question, q.candidates.len(), q.candidates.join(" "))?;
            }
            writeln!(out, "violations: {}", report.violations())?;
            Ok(out)
        }
    }
}

fn scan_issues(report: &ScanReport) -> Vec<String> {
    let mut issues: Vec<String> = report
        .arrows
        .iter()
        .flat_map(|a| a.violations.iter().map(move |v| format!("{} => {}: {v}", a.from, a.to)))
        .collect();
    for s in &report.self_complementary {
        issues.extend(s.mismatches.iter().map(|m| format!("self-complementary {}: {m}", s.property)));
    }
    issues
}

pub fn scan(args: &ScanArgs) -> Result<Output> {
    if args.verify {
        let source = args.input.as_deref().context("--verify needs --input with a JSON scan report")?;
        let old: ScanReport = serde_json::from_str(&read_text(source)?).context("decoding scan report")?;
        let fresh = run_scan(ScanOptions { max_n: old.max_n, lp_max_n: old.lp_max_n, ..ScanOptions::default() })?;
        let mut issues = scan_issues(&fresh);
        if fresh != old {
            issues.push("re-running the scan gives a different report".into());
        }
        let text = format!("scan up to order {} re-run: {}\n", old.max_n, if issues.is_empty() { "ok" } else { "FAILED" });
        return Ok(Output { text, issues });
    }
    let options = ScanOptions { max_n: args.max_n, lp_max_n: if args.include_lp { args.max_n } else { 0 }, ..ScanOptions::default() };
    let report = match &args.input {
        Some(source) => scan_graphs(&read_graph6_list(&read_text(source)?)?, options)?,
        None => run_scan(options)?,
    };
    Ok(Output { issues: scan_issues(&report), text: render_scan(&report, args.format)? })
}

#[derive(Serialize)]
struct EmittedGraph {
    name: String,
    vertices: usize,
    graph6: String,
    edges: Vec<(usize, usize)>,
}

pub fn gallery(args: &GalleryArgs) -> Result<Output> {
    match &args.action {
        GalleryAction::List => {
            let mut out = String::new();
            for id in GalleryId::ALL {
                writeln!(out, "{:<8} {:>3} vertices", id.name(), id.order())?;
            }
            writeln!(out, "projective:Q      split incidence graph of the projective plane of order Q")?;
            writeln!(out, "random-split:K:L  random split graph, clique K, stable set L (see --seed)")?;
            Ok(Output::ok(out))
        }
        GalleryAction::Emit { id, format, seed } => {
            let (name, g) = construction(id, *seed)?;
            let (vertices, graph6, edges) = match &g {
                Construction::Small(g) => (g.n(), encode_graph6(g), g.edges().collect::<Vec<_>>()),
                Construction::Big(g) => (g.n(), encode_graph6_big(g), g.edges().collect::<Vec<_>>()),
            };
            let text = match format {
                EmitFormat::Graph6 => format!("{graph6}\n"),
                EmitFormat::Edges => {
                    let mut out = format!("{vertices}\n");
                    for (u, v) in &edges {
                        writeln!(out, "{u} {v}")?;
                    }
                    out
                }
                EmitFormat::Json => to_json(&[EmittedGraph { name, vertices, graph6, edges }])?,
            };
            Ok(Output::ok(text))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CisLineChecks {
    /// the exhaustive matching backend gives the same verdict
    pub exhaustive_backend: bool,
    /// verdict of the recognizer on the other root of a triangle component
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative_root: Option<bool>,
    /// CIS decided directly on the line graph
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct_cis: Option<bool>,
    /// the maximal-matching condition, by enumeration
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_vii: Option<bool>,
    /// the line graph and its complement are both triangle graphs
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap_triangle: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CisLineReport {
    pub schema: String,
    pub label: String,
    pub input_graph6: String,
    /// `root` or `line`
    pub interpreted_as: String,
    pub root_graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative_root_graph6: Option<String>,
    pub verdict: LineRootVerdict,
    pub checks: CisLineChecks,
}

impl CisLineReport {
    fn disagreements(&self) -> Vec<String> {
        let want = self.verdict.holds;
        let c = &self.checks;
        let mut out = Vec::new();
        if !c.exhaustive_backend {
            out.push("exhaustive matching backend disagrees".to_string());
        }
        for (name, v) in [
            ("alternative root", c.alternative_root),
            ("direct CIS check", c.direct_cis),
            ("maximal-matching condition", c.condition_vii),
            ("cap-triangle check", c.cap_triangle),
        ] {
            if v.is_some_and(|v| v != want) {
                out.push(format!("{name} disagrees"));
            }
        }
        out.into_iter().map(|m| format!("{}: {m}", self.label)).collect()
    }
}

fn cis_line_report(label: &str, g: &Graph, interpret: Interpret) -> Result<CisLineReport> {
    let roots = match interpret {
        Interpret::Root => None,
        Interpret::Line | Interpret::Auto => match root_graph(g)? {
            RootResult::Root { root, alternative } => Some((root, alternative)),
            RootResult::NotLineGraph if interpret == Interpret::Line => bail!("{label} is not a line graph"),
            RootResult::NotLineGraph => None,
        },
    };
    let (interpreted_as, h, alternative) = match roots {
        Some((root, alt)) => ("line", root, alt),
        None => ("root", g.clone(), None),
    };
    if h.edge_count() == 0 {
        bail!("{label}: the root graph has no edges");
    }
    let verdict = is_cis_line_root_with(&h, MatchingBackend::Blossom);
    if let Some(f) = &verdict.failure {
        if !f.check(&h) {
            bail!("{label}: the recognizer returned an invalid failure certificate");
        }
    }
    let exhaustive = is_cis_line_root_with(&h, MatchingBackend::Exhaustive).holds == verdict.holds;
    let small = h.edge_count() <= CROSS_CHECK_EDGES;
    let lg = if h.edge_count() <= cisgraph::graph::MAX_VERTICES { Some(line_graph(&h)?) } else { None };
    let direct_cis = lg.as_ref().and_then(|l| is_cis(l).ok()).map(|v| v.holds);
    let cap_triangle = match (&lg, small) {
        (Some(l), true) => Evaluator::new(l, Options::default())?.evaluate(PropertyId::cap(BaseProperty::Triangle)).holds(),
        _ => None,
    };
    Ok(CisLineReport {
        schema: CIS_LINE_SCHEMA.into(),
        label: label.into(),
        input_graph6: encode_graph6(g),
        interpreted_as: interpreted_as.into(),
        root_graph6: encode_graph6(&h),
        alternative_root_graph6: alternative.as_ref().map(encode_graph6),
        checks: CisLineChecks {
            exhaustive_backend: exhaustive,
            alternative_root: alternative.as_ref().map(|a| is_cis_line_root_with(a, MatchingBackend::Blossom).holds),
            direct_cis,
            condition_vii: small.then(|| check_condition_vii(&h)),
            cap_triangle,
        },
        verdict,
    })
}

fn verify_cis_line(r: &CisLineReport) -> Result<Vec<String>> {
    if r.schema != CIS_LINE_SCHEMA {
        bail!("unsupported schema {:?}", r.schema);
    }
    let input = parse_graph6(&r.input_graph6)?;
    let h = parse_graph6(&r.root_graph6)?;
    let mut issues = Vec::new();
    let mut note = |m: &str| issues.push(format!("{}: {m}", r.label));
    match r.interpreted_as.as_str() {
        "root" if input != h => note("root differs from the input"),
        "line" if !is_isomorphic(&line_graph(&h)?, &input) => note("line graph of the root is not the input"),
        "root" | "line" => {}
        other => bail!("unknown interpretation {other:?}"),
    }
    match &r.verdict.failure {
        Some(f) if r.verdict.holds => {
            let _ = f;
            note("a holding verdict carries a failure");
        }
        Some(f) if !f.check(&h) => note("failure certificate does not check"),
        None if !r.verdict.holds => note("failing verdict without certificate"),
        _ => {}
    }
    if is_cis_line_root_with(&h, MatchingBackend::Exhaustive).holds != r.verdict.holds {
        note("recomputed verdict differs");
    }
    issues.extend(r.disagreements());
    Ok(issues)
}

fn render_cis_line(reports: &[CisLineReport], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => {
            let mut out = String::from("graph,input,as,root,cis,failure,exhaustive,direct_cis,condition_vii,cap_triangle\n");
            let opt = |v: Option<bool>| v.map_or(String::new(), |v| v.to_string());
            for r in reports {
                let failure = match &r.verdict.failure {
                    Some(cisgraph::linegraph::LineRootFailure::Bull { .. }) => "bull",
                    Some(cisgraph::linegraph::LineRootFailure::Matching { .. }) => "matching",
                    None => "",
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.label,
                    r.input_graph6,
                    r.interpreted_as,
                    r.root_graph6,
                    r.verdict.holds,
                    failure,
                    r.checks.exhaustive_backend,
                    opt(r.checks.direct_cis),
                    opt(r.checks.condition_vii),
                    opt(r.checks.cap_triangle)
                )?;
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                writeln!(out, "{}  input {} read as {} graph", r.label, r.input_graph6, r.interpreted_as)?;
                writeln!(out, "  root {}", r.root_graph6)?;
                if let Some(a) = &r.alternative_root_graph6 {
                    writeln!(out, "  alternative root {a}")?;
                }
                writeln!(out, "  line graph CIS: {} (matching backend {})", r.verdict.holds, r.verdict.backend.name())?;
                if let Some(f) = &r.verdict.failure {
                    writeln!(out, "  failure: {}", serde_json::to_string(f)?)?;
                }
                let show = |v: Option<bool>| v.map_or("not run".to_string(), |v| v.to_string());
                writeln!(out, "  exhaustive backend agrees: {}", r.checks.exhaustive_backend)?;
                if r.checks.alternative_root.is_some() {
                    writeln!(out, "  alternative root verdict: {}", show(r.checks.alternative_root))?;
                }
                writeln!(out, "  direct CIS on line graph: {}", show(r.checks.direct_cis))?;
                writeln!(out, "  maximal-matching condition: {}", show(r.checks.condition_vii))?;
                writeln!(out, "  cap-triangle on line graph: {}", show(r.checks.cap_triangle))?;
            }
            Ok(out)
        }
    }
}

pub fn cis_line(args: &CisLineArgs) -> Result<Output> {
    let source = args.input.source()?;
    if args.verify {
        let reports: Vec<CisLineReport> = from_json(&read_text(source)?)?;
        let mut issues = Vec::new();
        for r in &reports {
            issues.extend(verify_cis_line(r)?);
        }
        let text = format!("{} report(s) re-checked: {}\n", reports.len(), if issues.is_empty() { "ok" } else { "FAILED" });
        return Ok(Output { text, issues });
    }
    let graphs = load_graphs(source, args.input.seed)?;
    let reports: Vec<CisLineReport> =
        graphs.par_iter().map(|(label, g)| cis_line_report(label, g, args.interpret)).collect::<Result<_>>()?;
    let issues = reports.iter().flat_map(CisLineReport::disagreements).collect();
    Ok(Output { text: render_cis_line(&reports, args.format)?, issues })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub holds: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquistableReport {
    pub schema: String,
    pub label: String,
    pub graph6: String,
    /// `affine-hull` or `lp-loop`
    pub method: String,
    pub equistable: Decision,
    pub strongly_equistable: Decision,
}

fn decision(c: EquistableCertificate) -> Decision {
    Decision { holds: c.holds(), certificate: equistable_certificate(c) }
}

fn check_decision(g: &Graph, base: BaseProperty, d: &Decision) -> Option<String> {
    if !supports(base, d.holds, &d.certificate) {
        return Some(format!("{}: a {} certificate cannot support this verdict", base.name(), d.certificate.kind()));
    }
    d.certificate.check(g).err().map(|e| format!("{}: {e}", base.name()))
}

fn equistable_issues(r: &EquistableReport) -> Result<Vec<String>> {
    if r.schema != EQUISTABLE_SCHEMA {
        bail!("unsupported schema {:?}", r.schema);
    }
    let g = parse_graph6(&r.graph6)?;
    let mut issues: Vec<String> = [
        check_decision(&g, BaseProperty::Equistable, &r.equistable),
        check_decision(&g, BaseProperty::StronglyEquistable, &r.strongly_equistable),
    ]
    .into_iter()
    .flatten()
    .map(|m| format!("{}: {m}", r.label))
    .collect();
    if r.strongly_equistable.holds && !r.equistable.holds {
        issues.push(format!("{}: strongly equistable but not equistable", r.label));
    }
    Ok(issues)
}

fn equistable_report(label: &str, g: &Graph, lp_loop: bool) -> Result<EquistableReport, EquistableError> {
    let (eq, seq) = if lp_loop {
        (is_equistable_lp(g, false)?, is_equistable_lp(g, true)?)
    } else {
        (is_equistable(g)?, is_strongly_equistable(g)?)
    };
    Ok(EquistableReport {
        schema: EQUISTABLE_SCHEMA.into(),
        label: label.into(),
        graph6: encode_graph6(g),
        method: if lp_loop { "lp-loop" } else { "affine-hull" }.into(),
        equistable: decision(eq),
        strongly_equistable: decision(seq),
    })
}

fn render_equistable(reports: &[EquistableReport], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => {
            let mut out = String::from("graph,graph6,equistable,equistable_certificate,strongly_equistable,strongly_equistable_certificate\n");
            for r in reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.label,
                    r.graph6,
                    r.equistable.holds,
                    r.equistable.certificate.kind(),
                    r.strongly_equistable.holds,
                    r.strongly_equistable.certificate.kind()
                )?;
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                writeln!(out, "{}  {} ({})", r.label, r.graph6, r.method)?;
                for (name, d) in [("equistable", &r.equistable), ("strongly equistable", &r.strongly_equistable)] {
                    writeln!(out, "  {name}: {}  {}", d.holds, serde_json::to_string(&d.certificate)?)?;
                }
            }
            Ok(out)
        }
    }
}

pub fn equistable(args: &EquistableArgs) -> Result<Output> {
    let source = args.input.source()?;
    if args.verify {
        let reports: Vec<EquistableReport> = from_json(&read_text(source)?)?;
        let mut issues = Vec::new();
        for r in &reports {
            issues.extend(equistable_issues(r)?);
        }
        let text = format!("{} report(s) re-checked: {}\n", reports.len(), if issues.is_empty() { "ok" } else { "FAILED" });
        return Ok(Output { text, issues });
    }
    let graphs = load_graphs(source, args.input.seed)?;
    let reports: Vec<EquistableReport> = graphs
        .par_iter()
        .map(|(label, g)| equistable_report(label, g, args.lp_loop))
        .collect::<Result<_, _>>()?;
    let mut issues = Vec::new();
    for r in &reports {
        issues.extend(equistable_issues(r)?);
    }
    Ok(Output { text: render_equistable(&reports, args.format)?, issues })
}
