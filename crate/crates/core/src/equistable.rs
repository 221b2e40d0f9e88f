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

//! Equistable and strongly equistable graphs.
//!
//! The feasible weightings form the polytope
//! `P = { φ ≥ 0 : φ(S) = 1 for every maximal stable set S }`. A graph is
//! equistable iff `P` is nonempty and no nonempty `T` outside the family of
//! maximal stable sets has `φ(T) = 1` for every `φ ∈ P` (a convex set avoids
//! finitely many hyperplanes at once iff it lies in none of them). It is
//! strongly equistable iff `P` is nonempty and no such `T` has a constant
//! weight `γ ≤ 1` on `P`.
//!
//! Whether `φ(T)` is constant on `P` is decided through the affine hull of
//! `P`: with `Z` the vertices that are zero throughout `P`, the hull is
//! `{ φ : φ(S) = 1, φ|Z = 0 }`, and `φ(T)` is constant iff the indicator of
//! `T` is orthogonal to every direction of that hull. Finding `Z` takes at
//! most `n` linear programs; the `2^n` subsets are then scanned with integer
//! arithmetic only. The direct route (minimise and maximise `φ(T)` for every
//! `T`) is kept as [`is_equistable_lp`] and [`forced_value`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::enumerate::{maximal_cliques, maximal_stable_sets, EnumerateError, FamilyKind, SetFamily};
use crate::graph::{Graph, VertexSet};
use crate::lp::{LpOutcome, Relation, Sense};
use crate::{ExactProgram, Rational};

/// Largest graph the equistability deciders accept.
pub const EQUISTABLE_MAX_VERTICES: usize = 16;

const WITNESS_ATTEMPTS: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquistableError {
    #[error("equistability is decided for at most {EQUISTABLE_MAX_VERTICES} vertices, graph has {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("the weight polytope is empty")]
    Infeasible,
    #[error("integer overflow while scanning subsets")]
    Overflow,
    #[error("no valid weighting found after {0} perturbations")]
    WitnessFailed(u32),
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("invalid combination: {0}")]
    BadCombination(String),
}

/// Outcome of an equistability decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquistableCertificate {
    /// The property holds; the weights are a valid equistable weighting.
    Weights(Vec<Rational>),
    /// No nonnegative weighting gives every maximal stable set weight 1.
    Infeasible,
    /// `subset` has weight `value` under every feasible weighting.
    Forced { subset: VertexSet, value: Rational },
}

impl EquistableCertificate {
    pub fn holds(&self) -> bool {
        matches!(self, EquistableCertificate::Weights(_))
    }
}

/// Characteristic-vector bookkeeping for the affine hull of `P`.
#[derive(Debug, Clone)]
struct Hull {
    zero: VertexSet,
    /// integer basis of the direction space, one vector per dimension
    basis: Vec<Vec<i128>>,
    /// relative-interior point, as numerators over `denom`
    interior: Vec<Rational>,
    interior_num: Vec<i128>,
    denom: i128,
}

/// The polytope of feasible weightings of a graph.
#[derive(Debug, Clone)]
pub struct WeightPolytope {
    graph: Graph,
    stables: SetFamily,
    program: ExactProgram,
    hull: Option<Hull>,
}

fn indicator(n: usize, s: VertexSet) -> Vec<Rational> {
    (0..n).map(|v| if s.contains(v) { Rational::one() } else { Rational::zero() }).collect()
}

fn to_i128(x: &BigInt) -> Result<i128, EquistableError> {
    x.to_i128().ok_or(EquistableError::Overflow)
}

/// Rational vector scaled by the lcm of its denominators.
fn common_denominator(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = v.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (nums, d)
}

/// Basis of `{ x : M x = 0 }` by reduced row echelon form.
fn null_space(rows: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

impl WeightPolytope {
    pub fn new(g: &Graph) -> Result<Self, EquistableError> {
        let stables = maximal_stable_sets(g)?;
        Self::with_stables(g, stables)
    }

    fn with_stables(g: &Graph, stables: SetFamily) -> Result<Self, EquistableError> {
        let n = g.n();
        let mut program = ExactProgram::new(n);
        for s in &stables {
            program.add(indicator(n, s), Relation::Eq, Rational::one());
        }
        let mut poly = WeightPolytope { graph: g.clone(), stables, program, hull: None };
        poly.hull = poly.compute_hull()?;
        Ok(poly)
    }

    fn compute_hull(&self) -> Result<Option<Hull>, EquistableError> {
        let n = self.graph.n();
        let Some(first) = self.program.feasible_point() else {
            return Ok(None);
        };
        let mut points = vec![first];
        let positive_in = |p: &Vec<Rational>| -> VertexSet {
            (0..n).filter(|&v| p[v].is_positive()).collect()
        };
        let mut positive = positive_in(&points[0]);
        let mut zero = VertexSet::EMPTY;
        for v in 0..n {
            if positive.contains(v) {
                continue;
            }
            let obj = indicator(n, VertexSet::singleton(v));
            match self.program.optimize(&obj, Sense::Maximize) {
                LpOutcome::Optimal { value, point } => {
                    if value.is_positive() {
                        positive = positive | positive_in(&point);
                        points.push(point);
                    } else {
                        zero.insert(v);
                    }
                }
                other => unreachable!("bounded feasible polytope gave {other:?}"),
            }
        }
        let k = Rational::from_integer(BigInt::from(points.len()));
        let interior: Vec<Rational> =
            (0..n).map(|v| points.iter().fold(Rational::zero(), |acc, p| acc + &p[v]) / &k).collect();

        let mut rows: Vec<Vec<Rational>> = self.stables.iter().map(|s| indicator(n, s)).collect();
        rows.extend(zero.iter().map(|z| indicator(n, VertexSet::singleton(z))));
        let mut basis = Vec::new();
        for b in null_space(rows, n) {
            let (nums, _) = common_denominator(&b);
            let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            basis.push(nums.iter().map(|x| to_i128(&(x / &g))).collect::<Result<Vec<_>, _>>()?);
        }
        let (nums, d) = common_denominator(&interior);
        let interior_num = nums.iter().map(to_i128).collect::<Result<Vec<_>, _>>()?;
        Ok(Some(Hull { zero, basis, interior, interior_num, denom: to_i128(&d)? }))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn stables(&self) -> &SetFamily {
        &self.stables
    }

    pub fn program(&self) -> &ExactProgram {
        &self.program
    }

    pub fn is_feasible(&self) -> bool {
        self.hull.is_some()
    }

    /// Vertices with weight 0 in every feasible weighting.
    pub fn zero_vertices(&self) -> Option<VertexSet> {
        self.hull.as_ref().map(|h| h.zero)
    }

    /// Dimension of the polytope.
    pub fn dimension(&self) -> Option<usize> {
        self.hull.as_ref().map(|h| h.basis.len())
    }

    /// A feasible weighting positive on every vertex not forced to zero.
    pub fn interior_point(&self) -> Option<&[Rational]> {
        self.hull.as_ref().map(|h| h.interior.as_slice())
    }

    /// The common value of `φ(T)` over the polytope, if it is constant.
    pub fn forced_value(&self, t: VertexSet) -> Option<Rational> {
        let h = self.hull.as_ref()?;
        let constant = h.basis.iter().all(|b| t.iter().map(|v| b[v]).sum::<i128>() == 0);
        constant.then(|| t.iter().fold(Rational::zero(), |acc, v| acc + &h.interior[v]))
    }

    /// Minimum or maximum of `φ(T)` over the polytope by linear programming.
    pub fn optimize_subset(&self, t: VertexSet, sense: Sense) -> Option<Rational> {
        self.program.optimize(&indicator(self.graph.n(), t), sense).optimal().map(|(v, _)| v)
    }

    /// Every nonempty subset outside the maximal stable sets whose weight is
    /// constant on the polytope and satisfies `keep`, in (size, mask) order.
    pub fn forced_subsets(&self, keep: impl Fn(&Rational) -> bool) -> Result<Vec<(VertexSet, Rational)>, EquistableError> {
        let mut out = Vec::new();
        self.scan_forced(|t, num, denom| {
            let value = Rational::new(BigInt::from(num), BigInt::from(denom));
            if keep(&value) {
                out.push((t, value));
            }
            false
        })?;
        out.sort_by_key(|(t, _)| (t.len(), t.0));
        Ok(out)
    }

    /// Smallest forced subset (in (size, mask) order) whose value numerator
    /// over `denom` satisfies `bad`.
    fn first_forced(&self, bad: impl Fn(i128, i128) -> bool) -> Result<Option<(VertexSet, Rational)>, EquistableError> {
        let mut best: Option<(VertexSet, i128, i128)> = None;
        self.scan_forced(|t, num, denom| {
            if bad(num, denom) && best.map_or(true, |(b, _, _)| (t.len(), t.0) < (b.len(), b.0)) {
                best = Some((t, num, denom));
            }
            false
        })?;
        Ok(best.map(|(t, num, d)| (t, Rational::new(BigInt::from(num), BigInt::from(d)))))
    }

    /// Visits the forced subsets outside the stable family, in Gray-code
    /// order, with value `num / denom`. Stops when `visit` returns true.
    fn scan_forced(&self, mut visit: impl FnMut(VertexSet, i128, i128) -> bool) -> Result<(), EquistableError> {
        let n = self.graph.n();
        if n > EQUISTABLE_MAX_VERTICES {
            return Err(EquistableError::TooLarge(n));
        }
        let h = self.hull.as_ref().ok_or(EquistableError::Infeasible)?;
        let mut dots = vec![0i128; h.basis.len()];
        let mut num = 0i128;
        let mut mask = 0u64;
        for k in 1u64..(1 << n) {
            let v = k.trailing_zeros() as usize;
            mask ^= 1 << v;
            let sign = if mask & (1 << v) != 0 { 1 } else { -1 };
            for (d, b) in dots.iter_mut().zip(&h.basis) {
                *d += sign * b[v];
            }
            num = num.checked_add(sign * h.interior_num[v]).ok_or(EquistableError::Overflow)?;
            if dots.iter().all(|&d| d == 0) {
                let t = VertexSet(mask);
                if !self.stables.contains(t) && visit(t, num, h.denom) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// A weighting giving weight 1 exactly to the maximal stable sets, if
    /// the polytope has one; `None` when some other subset is forced to 1.
    fn witness(&self) -> Result<Option<Vec<Rational>>, EquistableError> {
        if self.first_forced(|num, d| num == d)?.is_some() {
            return Ok(None);
        }
        let h = self.hull.as_ref().ok_or(EquistableError::Infeasible)?;
        let n = self.graph.n();
        // d = Σ c^i b_i with c exceeding every |x(T)·b_i|, so d(T) = 0 only
        // when T is orthogonal to every b_i
        let c = 2 * h.basis.iter().map(|b| b.iter().map(|x| x.abs()).sum::<i128>()).max().unwrap_or(0) + 1;
        let mut dir = vec![BigInt::zero(); n];
        let mut weight = BigInt::one();
        for b in &h.basis {
            for v in 0..n {
                dir[v] += &weight * BigInt::from(b[v]);
            }
            weight *= BigInt::from(c);
        }
        let dir: Vec<Rational> = dir.into_iter().map(Rational::from_integer).collect();
        // largest step keeping every coordinate nonnegative (halved)
        let mut eps_max: Option<Rational> = None;
        for v in 0..n {
            if dir[v].is_negative() {
                let r = &h.interior[v] / -&dir[v];
                if eps_max.as_ref().map_or(true, |e| r < *e) {
                    eps_max = Some(r);
                }
            }
        }
        let eps_max = eps_max.unwrap_or_else(Rational::one) / Rational::from_integer(BigInt::from(2));
        for attempt in 1..=WITNESS_ATTEMPTS {
            let eps = &eps_max / Rational::from_integer(BigInt::from(attempt));
            let phi: Vec<Rational> = (0..n).map(|v| &h.interior[v] + &eps * &dir[v]).collect();
            if check_weights_with(&self.graph, &self.stables, &phi).is_ok() {
                return Ok(Some(phi));
            }
        }
        Err(EquistableError::WitnessFailed(WITNESS_ATTEMPTS))
    }
}

fn check_size(g: &Graph) -> Result<(), EquistableError> {
    if g.n() > EQUISTABLE_MAX_VERTICES {
        Err(EquistableError::TooLarge(g.n()))
    } else {
        Ok(())
    }
}

pub fn is_equistable(g: &Graph) -> Result<EquistableCertificate, EquistableError> {
    check_size(g)?;
    let poly = WeightPolytope::new(g)?;
    if !poly.is_feasible() {
        return Ok(EquistableCertificate::Infeasible);
    }
    if let Some((subset, value)) = poly.first_forced(|num, d| num == d)? {
        return Ok(EquistableCertificate::Forced { subset, value });
    }
    match poly.witness()? {
        Some(w) => Ok(EquistableCertificate::Weights(w)),
        None => unreachable!("no forced subset but no witness"),
    }
}

/// When the property holds, the returned weights are an equistable
/// weighting (strongly equistable graphs are equistable).
pub fn is_strongly_equistable(g: &Graph) -> Result<EquistableCertificate, EquistableError> {
    check_size(g)?;
    let poly = WeightPolytope::new(g)?;
    if !poly.is_feasible() {
        return Ok(EquistableCertificate::Infeasible);
    }
    if let Some((subset, value)) = poly.first_forced(|num, d| num <= d)? {
        return Ok(EquistableCertificate::Forced { subset, value });
    }
    match poly.witness()? {
        Some(w) => Ok(EquistableCertificate::Weights(w)),
        None => unreachable!("a subset forced to 1 is forced to at most 1"),
    }
}

/// Constant value of `φ(T)` over all feasible weightings (by minimising and
/// maximising it), or `None` when it varies.
pub fn forced_value(g: &Graph, t: VertexSet) -> Result<Option<Rational>, EquistableError> {
    let stables = maximal_stable_sets(g)?;
    let n = g.n();
    let mut lp = ExactProgram::new(n);
    for s in &stables {
        lp.add(indicator(n, s), Relation::Eq, Rational::one());
    }
    let obj = indicator(n, t);
    let lo = lp.optimize(&obj, Sense::Minimize).optimal().ok_or(EquistableError::Infeasible)?.0;
    let hi = lp.optimize(&obj, Sense::Maximize).optimal().ok_or(EquistableError::Infeasible)?.0;
    Ok((lo == hi).then_some(lo))
}

/// Direct decision by two linear programs per subset, subsets visited in
/// (size, mask) order. Exponentially many LPs: an oracle for small graphs.
pub fn is_equistable_lp(g: &Graph, strongly: bool) -> Result<EquistableCertificate, EquistableError> {
    check_size(g)?;
    let poly = WeightPolytope::new(g)?;
    if !poly.is_feasible() {
        return Ok(EquistableCertificate::Infeasible);
    }
    let n = g.n();
    let mut subsets: Vec<u64> = (1u64..1 << n).collect();
    subsets.sort_by_key(|&m| (m.count_ones(), m));
    for m in subsets {
        let t = VertexSet(m);
        if poly.stables().contains(t) {
            continue;
        }
        let lo = poly.optimize_subset(t, Sense::Minimize).expect("feasible");
        let hi = poly.optimize_subset(t, Sense::Maximize).expect("feasible");
        let one = Rational::one();
        if lo == hi && (lo == one || (strongly && lo < one)) {
            return Ok(EquistableCertificate::Forced { subset: t, value: lo });
        }
    }
    Ok(EquistableCertificate::Weights(poly.interior_point().expect("feasible").to_vec()))
}

fn check_weights_with(g: &Graph, stables: &SetFamily, w: &[Rational]) -> Result<(), EquistableError> {
    let n = g.n();
    if w.len() != n {
        return Err(EquistableError::BadWeights(format!("{} weights for {n} vertices", w.len())));
    }
    if n > EQUISTABLE_MAX_VERTICES {
        return Err(EquistableError::TooLarge(n));
    }
    if let Some(v) = (0..n).find(|&v| w[v].is_negative()) {
        return Err(EquistableError::BadWeights(format!("vertex {v} has negative weight")));
    }
    let (nums, d) = common_denominator(w);
    let nums = nums.iter().map(to_i128).collect::<Result<Vec<_>, _>>()?;
    let d = to_i128(&d)?;
    let mut sum = 0i128;
    let mut mask = 0u64;
    for k in 1u64..(1 << n) {
        let v = k.trailing_zeros() as usize;
        mask ^= 1 << v;
        sum += if mask & (1 << v) != 0 { nums[v] } else { -nums[v] };
        let is_stable = stables.contains(VertexSet(mask));
        if (sum == d) != is_stable {
            let what = if is_stable { "maximal stable set" } else { "other subset" };
            return Err(EquistableError::BadWeights(format!("{what} {} has weight {}/{d}", VertexSet(mask), sum)));
        }
    }
    Ok(())
}

/// Checks that `w` is nonnegative and gives weight 1 to exactly the
/// maximal stable sets of `g`.
pub fn check_weights(g: &Graph, w: &[Rational]) -> Result<(), EquistableError> {
    check_weights_with(g, &maximal_stable_sets(g)?, w)
}

/// Subset and value implied by a signed combination of maximal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpliedSubset {
    pub subset: VertexSet,
    pub value: Rational,
    /// the value is forced in the complement's polytope (clique terms)
    pub on_complement: bool,
}

/// Evaluates `x = Σ c_i · x(M_i)` for maximal stable sets (or maximal
/// cliques, which are the maximal stable sets of the complement). When `x`
/// is 0/1-valued it is the indicator of a subset `T`, and every feasible
/// weighting gives `T` the weight `Σ c_i`.
pub fn verify_forced_subset(
    g: &Graph,
    kind: FamilyKind,
    terms: &[(VertexSet, i64)],
) -> Result<ImpliedSubset, EquistableError> {
    let family = match kind {
        FamilyKind::Stable => maximal_stable_sets(g)?,
        FamilyKind::Clique => maximal_cliques(g)?,
    };
    let mut x = vec![0i64; g.n()];
    for &(m, c) in terms {
        if !family.contains(m) {
            return Err(EquistableError::BadCombination(format!("{m} is not a maximal {kind:?} set")));
        }
        for v in m.iter() {
            x[v] += c;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| x[v] != 0 && x[v] != 1) {
        return Err(EquistableError::BadCombination(format!("coefficient {} at vertex {v}", x[v])));
    }
    let subset: VertexSet = (0..g.n()).filter(|&v| x[v] == 1).collect();
    let value = Rational::from_integer(BigInt::from(terms.iter().map(|t| t.1).sum::<i64>()));
    Ok(ImpliedSubset { subset, value, on_complement: kind == FamilyKind::Clique })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gallery::one_indexed;
    use crate::graph::{gallery, GalleryId};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn graph_from_bits(n: usize, bits: u64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (bits >> k) & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
                k += 1;
            }
        }
        g
    }

    #[test]
    fn k3_is_equistable_with_unit_weights() {
        let k3 = Graph::complete(3).unwrap();
        let poly = WeightPolytope::new(&k3).unwrap();
        assert_eq!(poly.dimension(), Some(0));
        assert_eq!(poly.interior_point().unwrap(), &[q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(is_equistable(&k3).unwrap(), EquistableCertificate::Weights(vec![q(1, 1); 3]));
        assert!(is_strongly_equistable(&k3).unwrap().holds());
    }

    #[test]
    fn p4_middle_edge_forced() {
        let p4 = gallery(GalleryId::P4).unwrap();
        let poly = WeightPolytope::new(&p4).unwrap();
        assert_eq!(poly.dimension(), Some(1));
        assert_eq!(poly.optimize_subset(VertexSet::singleton(0), Sense::Maximize), Some(q(1, 1)));
        let mid = VertexSet::from_vertices([1, 2]);
        assert_eq!(
            is_equistable(&p4).unwrap(),
            EquistableCertificate::Forced { subset: mid, value: q(1, 1) }
        );
        assert_eq!(forced_value(&p4, mid).unwrap(), Some(q(1, 1)));
        assert_eq!(forced_value(&p4, VertexSet::singleton(0)).unwrap(), None);
    }

    #[test]
    fn two_k2_strongly_equistable() {
        let g = gallery(GalleryId::TwoK2).unwrap();
        assert!(is_strongly_equistable(&g).unwrap().holds());
        assert!(is_equistable_lp(&g, true).unwrap().holds());
    }

    #[test]
    fn cir9_not_equistable() {
        let g = gallery(GalleryId::Cir9).unwrap();
        assert!(!is_equistable(&g).unwrap().holds());
        assert!(!is_strongly_equistable(&g).unwrap().holds());
    }

    #[test]
    fn cir9_complement_combination() {
        let g = gallery(GalleryId::Cir9).unwrap();
        let terms: Vec<(VertexSet, i64)> = [
            (&[1, 5, 9][..], 1),
            (&[2, 6, 7][..], 1),
            (&[3, 4, 8][..], 1),
            (&[1, 6, 8][..], -1),
            (&[2, 5, 7][..], -1),
        ]
        .iter()
        .map(|(s, c)| (one_indexed(s), *c))
        .collect();
        let r = verify_forced_subset(&g, FamilyKind::Clique, &terms).unwrap();
        assert_eq!(r.subset, one_indexed(&[3, 4, 9]));
        assert_eq!(r.value, q(1, 1));
        assert!(r.on_complement);
        assert_eq!(forced_value(&g.complement(), r.subset).unwrap(), Some(q(1, 1)));
    }

    #[test]
    fn p4_combination_and_trivial() {
        let p4 = gallery(GalleryId::P4).unwrap();
        let s = |v: [usize; 2]| VertexSet::from_vertices(v);
        let r = verify_forced_subset(&p4, FamilyKind::Stable, &[(s([0, 2]), 1), (s([1, 3]), 1), (s([0, 3]), -1)]).unwrap();
        assert_eq!(r.subset, s([1, 2]));
        assert_eq!(r.value, q(1, 1));
        let r = verify_forced_subset(&p4, FamilyKind::Stable, &[(s([0, 3]), 1)]).unwrap();
        assert_eq!(r.subset, s([0, 3]));
        assert!(verify_forced_subset(&p4, FamilyKind::Stable, &[(s([0, 2]), 2)]).is_err());
        assert!(verify_forced_subset(&p4, FamilyKind::Stable, &[(s([0, 1]), 1)]).is_err());
    }

    #[test]
    fn infeasible_polytope() {
        // complement of L(K2,3): the two rows and the three columns are
        // maximal stable sets partitioning V, so φ(V) would be both 2 and 3
        let mut l = Graph::empty(6).unwrap();
        for x in 0..6 {
            for y in x + 1..6 {
                if x / 3 == y / 3 || x % 3 == y % 3 {
                    l.add_edge(x, y).unwrap();
                }
            }
        }
        let g = l.complement();
        assert!(!WeightPolytope::new(&g).unwrap().is_feasible());
        assert_eq!(is_equistable(&g).unwrap(), EquistableCertificate::Infeasible);
        assert_eq!(is_equistable_lp(&g, false).unwrap(), EquistableCertificate::Infeasible);
        assert_eq!(forced_value(&g, VertexSet::singleton(0)), Err(EquistableError::Infeasible));
    }

    #[test]
    fn size_limit() {
        let g = Graph::empty(17).unwrap();
        assert_eq!(is_equistable(&g), Err(EquistableError::TooLarge(17)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn hull_agrees_with_lp_loop(n in 1usize..6, bits: u64) {
            let g = graph_from_bits(n, bits);
            for strongly in [false, true] {
                let fast = if strongly { is_strongly_equistable(&g) } else { is_equistable(&g) }.unwrap();
                let slow = is_equistable_lp(&g, strongly).unwrap();
                prop_assert_eq!(fast.holds(), slow.holds());
                match (&fast, &slow) {
                    (EquistableCertificate::Forced { .. }, EquistableCertificate::Forced { .. }) => prop_assert_eq!(&fast, &slow),
                    (EquistableCertificate::Weights(w), _) => prop_assert!(check_weights(&g, w).is_ok()),
                    _ => {}
                }
            }
        }

        #[test]
        fn forced_values_agree(n in 1usize..6, bits: u64, t in 1u64..64) {
            let g = graph_from_bits(n, bits);
            let t = VertexSet(t & ((1 << n) - 1));
            prop_assume!(!t.is_empty());
            let poly = WeightPolytope::new(&g).unwrap();
            if poly.is_feasible() {
                prop_assert_eq!(poly.forced_value(t), forced_value(&g, t).unwrap());
                let p = poly.interior_point().unwrap();
                prop_assert!(poly.program().satisfies(p));
                prop_assert!(p.iter().all(|x| *x >= q(0, 1) && *x <= q(1, 1)));
            }
        }
    }
}
