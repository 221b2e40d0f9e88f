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

//! Class predicates, the co-/∩-/∪- modifiers, and per-graph class reports.
//!
//! Every verdict carries zero or more certificates; [`verify_report`]
//! re-checks them from the graph alone and also checks that each
//! certificate is of a kind that supports the verdict it is attached to.

pub mod basic;
pub mod certificate;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use basic::{Analysis, RecognizeError, Verdict};
pub use certificate::{Certificate, CertificateError, CoverMode, Pattern};

use crate::enumerate::EnumerateError;
use crate::equistable::{self, EquistableCertificate, EquistableError, EQUISTABLE_MAX_VERTICES};
use crate::graph::{encode_graph6, parse_graph6, Graph, GraphError};
use crate::search::{self, CrossIntersectingInstance, SearchError};
use crate::Rational;

/// Version tag written into every serialized report.
pub const REPORT_SCHEMA: &str = "cisgraph.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseProperty {
    Threshold,
    Cograph,
    Split,
    EdgeSimplicial,
    Cis,
    AlmostCis,
    QuasiCis,
    SemiWeaklyCis,
    WeaklyCis,
    Triangle,
    WeaklyTriangle,
    Normal,
    Perfect,
    Equistable,
    StronglyEquistable,
}

impl BaseProperty {
    pub const ALL: [BaseProperty; 15] = [
        BaseProperty::Threshold,
        BaseProperty::Cograph,
        BaseProperty::Split,
        BaseProperty::EdgeSimplicial,
        BaseProperty::Cis,
        BaseProperty::AlmostCis,
        BaseProperty::QuasiCis,
        BaseProperty::SemiWeaklyCis,
        BaseProperty::WeaklyCis,
        BaseProperty::Triangle,
        BaseProperty::WeaklyTriangle,
        BaseProperty::Normal,
        BaseProperty::Perfect,
        BaseProperty::Equistable,
        BaseProperty::StronglyEquistable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseProperty::Threshold => "threshold",
            BaseProperty::Cograph => "cograph",
            BaseProperty::Split => "split",
            BaseProperty::EdgeSimplicial => "edge-simplicial",
            BaseProperty::Cis => "CIS",
            BaseProperty::AlmostCis => "almost-CIS",
            BaseProperty::QuasiCis => "quasi-CIS",
            BaseProperty::SemiWeaklyCis => "semi-weakly-CIS",
            BaseProperty::WeaklyCis => "weakly-CIS",
            BaseProperty::Triangle => "triangle",
            BaseProperty::WeaklyTriangle => "weakly-triangle",
            BaseProperty::Normal => "normal",
            BaseProperty::Perfect => "perfect",
            BaseProperty::Equistable => "equistable",
            BaseProperty::StronglyEquistable => "strongly-equistable",
        }
    }

    /// Needs the linear-programming deciders.
    pub fn uses_lp(self) -> bool {
        matches!(self, BaseProperty::Equistable | BaseProperty::StronglyEquistable)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modifier {
    Plain,
    /// the complement has the property
    Co,
    /// graph and complement both have it
    Cap,
    /// graph or complement has it
    Cup,
}

impl Modifier {
    pub const ALL: [Modifier; 4] = [Modifier::Plain, Modifier::Co, Modifier::Cap, Modifier::Cup];

    fn prefix(self) -> &'static str {
        match self {
            Modifier::Plain => "",
            Modifier::Co => "co-",
            Modifier::Cap => "cap-",
            Modifier::Cup => "cup-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropertyId {
    pub base: BaseProperty,
    pub modifier: Modifier,
}

impl PropertyId {
    pub const fn new(base: BaseProperty, modifier: Modifier) -> Self {
        PropertyId { base, modifier }
    }

    pub const fn plain(base: BaseProperty) -> Self {
        PropertyId { base, modifier: Modifier::Plain }
    }

    pub const fn co(base: BaseProperty) -> Self {
        PropertyId { base, modifier: Modifier::Co }
    }

    pub const fn cap(base: BaseProperty) -> Self {
        PropertyId { base, modifier: Modifier::Cap }
    }

    pub const fn cup(base: BaseProperty) -> Self {
        PropertyId { base, modifier: Modifier::Cup }
    }

    /// The property of the complement: co swaps with plain, cap and cup
    /// are fixed.
    pub fn complemented(self) -> Self {
        let modifier = match self.modifier {
            Modifier::Plain => Modifier::Co,
            Modifier::Co => Modifier::Plain,
            m => m,
        };
        PropertyId { base: self.base, modifier }
    }

    /// All 60 combinations, base-major.
    pub fn all() -> Vec<PropertyId> {
        BaseProperty::ALL
            .iter()
            .flat_map(|&b| Modifier::ALL.iter().map(move |&m| PropertyId::new(b, m)))
            .collect()
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.modifier.prefix(), self.base.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown property {0:?}")]
pub struct UnknownProperty(pub String);

impl FromStr for PropertyId {
    type Err = UnknownProperty;

    /// Accepts `co-`, `cap-`/`∩-`, `cup-`/`∪-` prefixes; names are
    /// case-insensitive.
    fn from_str(s: &str) -> Result<Self, UnknownProperty> {
        let lower = s.trim().to_lowercase();
        let t = lower.as_str();
        let (modifier, rest) = [
            ("co-", Modifier::Co),
            ("cap-", Modifier::Cap),
            ("∩-", Modifier::Cap),
            ("cup-", Modifier::Cup),
            ("∪-", Modifier::Cup),
        ]
        .iter()
        .find_map(|(p, m)| t.strip_prefix(p).map(|r| (*m, r)))
        .unwrap_or((Modifier::Plain, t));
        BaseProperty::ALL
            .iter()
            .find(|b| b.name().eq_ignore_ascii_case(rest))
            .map(|&base| PropertyId { base, modifier })
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

impl Serialize for PropertyId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PropertyId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unsupported,
}

/// A certificate about the graph, or about its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub on_complement: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: PropertyId,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

impl PropertyResult {
    pub fn holds(&self) -> Option<bool> {
        match self.status {
            Status::Holds => Some(true),
            Status::Fails => Some(false),
            Status::Unsupported => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// evaluate the LP-backed properties
    pub include_lp: bool,
    pub backtrack_limit: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { include_lp: true, backtrack_limit: search::DEFAULT_BACKTRACK_LIMIT }
    }
}

type BaseOutcome = Result<Verdict, String>;

/// Evaluates properties of one graph, caching base verdicts for the graph
/// and its complement.
pub struct Evaluator {
    sides: [Analysis; 2],
    options: Options,
    cache: HashMap<(BaseProperty, bool), BaseOutcome>,
}

/// Certificate form of an equistability decision.
pub fn equistable_certificate(c: EquistableCertificate) -> Certificate {
    match c {
        EquistableCertificate::Weights(weights) => Certificate::EquistableWeights { weights },
        EquistableCertificate::Infeasible => Certificate::Infeasible,
        EquistableCertificate::Forced { subset, value } => Certificate::ForcedSubset { subset, value },
    }
}

fn equistable_verdict(r: Result<EquistableCertificate, EquistableError>) -> BaseOutcome {
    let c = r.map_err(|e| e.to_string())?;
    Ok(Verdict { holds: c.holds(), certificate: Some(equistable_certificate(c)) })
}

fn search_verdict(r: Result<Option<search::CoverCertificate>, SearchError>) -> BaseOutcome {
    match r.map_err(|e| e.to_string())? {
        Some(c) => Ok(Verdict::yes(Some(c.to_certificate()))),
        None => Ok(Verdict::no(None)),
    }
}

impl Evaluator {
    pub fn new(g: &Graph, options: Options) -> Result<Self, EnumerateError> {
        let a = Analysis::new(g)?;
        let co = a.complement();
        Ok(Evaluator { sides: [a, co], options, cache: HashMap::new() })
    }

    pub fn graph(&self) -> &Graph {
        self.sides[0].graph()
    }

    pub fn analysis(&self) -> &Analysis {
        &self.sides[0]
    }

    /// Verdict of `p` on the graph (`on_complement = false`) or its complement.
    pub fn base(&mut self, p: BaseProperty, on_complement: bool) -> BaseOutcome {
        if let Some(r) = self.cache.get(&(p, on_complement)) {
            return r.clone();
        }
        let r = self.compute(p, on_complement);
        self.cache.insert((p, on_complement), r.clone());
        r
    }

    fn compute(&self, p: BaseProperty, on_complement: bool) -> BaseOutcome {
        let a = &self.sides[on_complement as usize];
        let g = a.graph();
        Ok(match p {
            BaseProperty::Threshold => basic::threshold(g),
            BaseProperty::Cograph => basic::cograph(g),
            BaseProperty::Split => basic::split(a),
            BaseProperty::EdgeSimplicial => basic::edge_simplicial(g),
            BaseProperty::Cis => basic::cis(a),
            BaseProperty::AlmostCis => basic::almost_cis(a),
            BaseProperty::QuasiCis => basic::quasi_cis(a),
            BaseProperty::SemiWeaklyCis => basic::semi_weakly_cis(a),
            BaseProperty::Triangle => basic::triangle(a),
            BaseProperty::WeaklyTriangle => basic::weakly_triangle(a),
            BaseProperty::Perfect => basic::perfect(g).map_err(|e| e.to_string())?,
            BaseProperty::WeaklyCis => {
                let inst = CrossIntersectingInstance::from_analysis(a, CoverMode::EdgesAndNonEdges);
                return search_verdict(search::exists_cross_intersecting(&inst, self.options.backtrack_limit));
            }
            BaseProperty::Normal => {
                let inst = CrossIntersectingInstance::from_analysis(a, CoverMode::Vertices);
                return search_verdict(search::exists_cross_intersecting(&inst, self.options.backtrack_limit));
            }
            BaseProperty::Equistable | BaseProperty::StronglyEquistable => {
                if !self.options.include_lp {
                    return Err("LP-backed properties not requested".into());
                }
                if g.n() > EQUISTABLE_MAX_VERTICES {
                    return Err(EquistableError::TooLarge(g.n()).to_string());
                }
                return equistable_verdict(if p == BaseProperty::Equistable {
                    equistable::is_equistable(g)
                } else {
                    equistable::is_strongly_equistable(g)
                });
            }
        })
    }

    pub fn evaluate(&mut self, id: PropertyId) -> PropertyResult {
        let side = |ev: &mut Evaluator, on_complement: bool| -> (Option<bool>, Option<String>, Vec<Witness>) {
            match ev.base(id.base, on_complement) {
                Ok(v) => (
                    Some(v.holds),
                    None,
                    v.certificate.into_iter().map(|certificate| Witness { on_complement, certificate }).collect(),
                ),
                Err(reason) => (None, Some(reason), Vec::new()),
            }
        };
        let (status, reason, witnesses) = match id.modifier {
            Modifier::Plain | Modifier::Co => {
                let (h, r, w) = side(self, id.modifier == Modifier::Co);
                (h, r, w)
            }
            Modifier::Cap | Modifier::Cup => {
                let want = id.modifier == Modifier::Cup;
                let (h0, r0, w0) = side(self, false);
                let (h1, r1, w1) = side(self, true);
                // cup: decided by any side that holds; cap: by any side that fails
                if h0 == Some(want) || h1 == Some(want) {
                    let w = [(h0, w0), (h1, w1)].into_iter().filter(|(h, _)| *h == Some(want)).flat_map(|x| x.1).collect();
                    (Some(want), None, w)
                } else if h0.is_some() && h1.is_some() {
                    (Some(!want), None, w0.into_iter().chain(w1).collect())
                } else {
                    (None, r0.or(r1), Vec::new())
                }
            }
        };
        let status = match status {
            Some(true) => Status::Holds,
            Some(false) => Status::Fails,
            None => Status::Unsupported,
        };
        PropertyResult { property: id, status, reason, witnesses }
    }

    /// Some induced P4 is bad (certificate) or none is.
    pub fn bad_p4(&self) -> Verdict {
        basic::bad_p4(&self.sides[0])
    }
}

/// Membership verdicts and certificates for one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub graph6: String,
    pub vertices: usize,
    pub edges: usize,
    pub properties: Vec<PropertyResult>,
    pub has_bad_p4: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bad_p4: Option<Certificate>,
}

impl ClassReport {
    pub fn get(&self, id: PropertyId) -> Option<&PropertyResult> {
        self.properties.iter().find(|r| r.property == id)
    }

    pub fn holds(&self, id: PropertyId) -> Option<bool> {
        self.get(id).and_then(|r| r.holds())
    }
}

/// Evaluates `properties` (all 60 when empty) on `g`.
pub fn classify(
    g: &Graph,
    label: Option<String>,
    properties: &[PropertyId],
    options: Options,
) -> Result<ClassReport, EnumerateError> {
    let mut ev = Evaluator::new(g, options)?;
    let ids = if properties.is_empty() { PropertyId::all() } else { properties.to_vec() };
    let results = ids.into_iter().map(|id| ev.evaluate(id)).collect();
    let bad = ev.bad_p4();
    Ok(ClassReport {
        schema: REPORT_SCHEMA.to_string(),
        label,
        graph6: encode_graph6(g),
        vertices: g.n(),
        edges: g.edge_count(),
        properties: results,
        has_bad_p4: bad.holds,
        bad_p4: bad.certificate,
    })
}

/// True iff a certificate of this kind can support `holds` for `base`.
pub fn supports(base: BaseProperty, holds: bool, cert: &Certificate) -> bool {
    use BaseProperty as B;
    use Certificate as C;
    let one = Rational::from_integer(1.into());
    match (base, holds, cert) {
        (B::Cis, false, C::DisjointPair { .. }) => true,
        (B::AlmostCis | B::QuasiCis, true, C::DisjointPair { .. }) => true,
        (B::AlmostCis | B::QuasiCis, false, C::TwoDisjointPairs { .. }) => true,
        (B::AlmostCis, false, C::TwoSplitPartitions { .. }) => true,
        (B::AlmostCis | B::Split, false, C::InducedSubgraph { pattern, .. }) => {
            matches!(pattern, Pattern::TwoK2 | Pattern::C4 | Pattern::C5)
        }
        (B::Split, true, C::SplitPartition { .. }) => true,
        (B::Threshold, false, C::InducedSubgraph { pattern, .. }) => pattern != &Pattern::C5,
        (B::Cograph, false, C::InducedSubgraph { pattern, .. }) => pattern == &Pattern::P4,
        (B::EdgeSimplicial, true, C::SimplicialCover { .. }) => true,
        (B::EdgeSimplicial, false, C::EdgeInNoSimplicialClique { .. }) => true,
        (B::SemiWeaklyCis, true, C::StrongCliqueCover { .. }) => true,
        (B::SemiWeaklyCis, false, C::EdgeInNoStrongClique { .. }) => true,
        (B::WeaklyCis, true, C::CrossIntersecting { mode, .. }) => *mode == CoverMode::EdgesAndNonEdges,
        (B::Normal, true, C::CrossIntersecting { mode, .. }) => *mode == CoverMode::Vertices,
        (B::Triangle, false, C::TriangleViolation { .. }) => true,
        (B::WeaklyTriangle, true, C::AdmissibleStableCover { .. }) => true,
        (B::WeaklyTriangle, false, C::NonEdgeInNoAdmissibleStable { .. }) => true,
        (B::Perfect, false, C::OddHole { .. } | C::OddAntihole { .. }) => true,
        (B::Equistable | B::StronglyEquistable, true, C::EquistableWeights { .. }) => true,
        (B::Equistable | B::StronglyEquistable, false, C::Infeasible) => true,
        (B::Equistable, false, C::ForcedSubset { value, .. }) => *value == one,
        (B::StronglyEquistable, false, C::ForcedSubset { value, .. }) => *value <= one,
        _ => false,
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report graph: {0}")]
    Graph(#[from] GraphError),
    #[error("unsupported schema {0:?}")]
    Schema(String),
}

/// One failed check while re-verifying a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyIssue {
    pub property: String,
    pub message: String,
}

/// Re-checks every certificate in `report` against its embedded graph.
/// An empty list means everything verified.
pub fn verify_report(report: &ClassReport) -> Result<Vec<VerifyIssue>, ReportError> {
    if report.schema != REPORT_SCHEMA {
        return Err(ReportError::Schema(report.schema.clone()));
    }
    let g = parse_graph6(&report.graph6)?;
    let co = g.complement();
    let mut issues = Vec::new();
    for r in &report.properties {
        let holds = match r.status {
            Status::Holds => true,
            Status::Fails => false,
            Status::Unsupported => continue,
        };
        for w in &r.witnesses {
            let issue = |message: String| VerifyIssue { property: r.property.to_string(), message };
            if matches!(r.property.modifier, Modifier::Plain) && w.on_complement
                || matches!(r.property.modifier, Modifier::Co) && !w.on_complement
            {
                issues.push(issue("witness is about the wrong graph".into()));
                continue;
            }
            if !supports(r.property.base, holds, &w.certificate) {
                issues.push(issue(format!("{} cannot support this verdict", w.certificate.kind())));
                continue;
            }
            if let Err(e) = w.certificate.check(if w.on_complement { &co } else { &g }) {
                issues.push(issue(e.to_string()));
            }
        }
    }
    if let Some(c) = &report.bad_p4 {
        let ok = matches!(c, Certificate::BadP4 { .. }) && report.has_bad_p4;
        if !ok {
            issues.push(VerifyIssue { property: "bad-P4".into(), message: "unexpected certificate".into() });
        } else if let Err(e) = c.check(&g) {
            issues.push(VerifyIssue { property: "bad-P4".into(), message: e.to_string() });
        }
    }
    Ok(issues)
}

/// Evaluates a single property with default options.
pub fn apply_modifier(id: PropertyId, g: &Graph) -> Result<Option<bool>, EnumerateError> {
    Ok(Evaluator::new(g, Options::default())?.evaluate(id).holds())
}

macro_rules! predicate {
    ($(#[$m:meta])* $name:ident, $base:expr) => {
        $(#[$m])*
        pub fn $name(g: &Graph) -> Result<Verdict, RecognizeError> {
            let mut ev = Evaluator::new(g, Options::default())?;
            ev.base($base, false).map_err(RecognizeError::Undecided)
        }
    };
}

predicate!(is_threshold, BaseProperty::Threshold);
predicate!(is_cograph, BaseProperty::Cograph);
predicate!(is_split, BaseProperty::Split);
predicate!(is_edge_simplicial, BaseProperty::EdgeSimplicial);
predicate!(
    /// Every maximal clique meets every maximal stable set.
    is_cis,
    BaseProperty::Cis
);
predicate!(is_almost_cis, BaseProperty::AlmostCis);
predicate!(is_quasi_cis, BaseProperty::QuasiCis);
predicate!(is_semi_weakly_cis, BaseProperty::SemiWeaklyCis);
predicate!(is_triangle, BaseProperty::Triangle);
predicate!(is_weakly_triangle, BaseProperty::WeaklyTriangle);

pub fn is_perfect(g: &Graph) -> Result<Verdict, RecognizeError> {
    basic::perfect(g)
}

pub fn has_bad_p4(g: &Graph) -> Result<Verdict, RecognizeError> {
    Ok(basic::bad_p4(&Analysis::new(g)?))
}
