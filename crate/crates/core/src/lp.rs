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

//! Dense two-phase simplex with Bland's rule, generic over the scalar.
//!
//! With an exact scalar such as [`crate::Rational`] every pivot is exact and
//! the reported optimum and witness satisfy the constraints with equality
//! where required. Floating-point scalars use a fixed tolerance and are only
//! meant for quick estimates.

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Arithmetic the simplex needs from its scalar type.
pub trait LpScalar: Clone + Debug + PartialOrd + Num + Signed {
    /// Treat `self` as zero (exact for rationals, within tolerance for floats).
    fn near_zero(&self) -> bool;

    fn strictly_positive(&self) -> bool {
        !self.near_zero() && self.is_positive()
    }

    fn strictly_negative(&self) -> bool {
        !self.near_zero() && self.is_negative()
    }
}

impl<T: Clone + Debug + Integer + Signed> LpScalar for Ratio<T> {
    fn near_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl LpScalar for f64 {
    fn near_zero(&self) -> bool {
        self.abs() <= 1e-9
    }
}

impl LpScalar for f32 {
    fn near_zero(&self) -> bool {
        self.abs() <= 1e-5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Infeasible,
    Unbounded,
    Optimal { value: T, point: Vec<T> },
}

impl<T> LpOutcome<T> {
    pub fn optimal(self) -> Option<(T, Vec<T>)> {
        match self {
            LpOutcome::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }
}

/// `{ x ≥ 0 : constraints }` over `n_vars` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    n_vars: usize,
    constraints: Vec<Constraint<T>>,
}

impl<T: LpScalar> LinearProgram<T> {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram { n_vars, constraints: Vec::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) {
        assert_eq!(coeffs.len(), self.n_vars, "coefficient count");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// True iff `x` is nonnegative and satisfies every constraint.
    pub fn satisfies(&self, x: &[T]) -> bool {
        x.len() == self.n_vars
            && x.iter().all(|v| !v.strictly_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                let d = lhs - c.rhs.clone();
                match c.relation {
                    Relation::Le => !d.strictly_positive(),
                    Relation::Ge => !d.strictly_negative(),
                    Relation::Eq => d.near_zero(),
                }
            })
    }

    pub fn optimize(&self, objective: &[T], sense: Sense) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.n_vars, "objective length");
        let cost: Vec<T> = match sense {
            Sense::Minimize => objective.to_vec(),
            Sense::Maximize => objective.iter().map(|c| -c.clone()).collect(),
        };
        let mut t = match Tableau::phase_one(self) {
            Some(t) => t,
            None => return LpOutcome::Infeasible,
        };
        if !t.phase_two(&cost) {
            return LpOutcome::Unbounded;
        }
        let point = t.solution(self.n_vars);
        let value = dot(objective, &point);
        LpOutcome::Optimal { value, point }
    }

    /// Some feasible point, if any.
    pub fn feasible_point(&self) -> Option<Vec<T>> {
        let zero = vec![T::zero(); self.n_vars];
        self.optimize(&zero, Sense::Minimize).optimal().map(|(_, p)| p)
    }
}

fn dot<T: LpScalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

struct Tableau<T> {
    /// rows of `[A | b]`
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    /// columns `>= first_artificial` are artificial
    first_artificial: usize,
    width: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn phase_one(lp: &LinearProgram<T>) -> Option<Self> {
        let m = lp.constraints.len();
        let n = lp.n_vars;
        let n_slack = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        // normalise to nonnegative right-hand sides
        let rows_in: Vec<(Vec<T>, Relation, T)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v.clone()).collect(), flipped, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let n_art = rows_in.iter().filter(|r| r.1 != Relation::Le).count();
        let first_artificial = n + n_slack;
        let width = first_artificial + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (n, first_artificial);
        for (coeffs, rel, rhs) in rows_in {
            let mut row = vec![T::zero(); width + 1];
            row[..n].clone_from_slice(&coeffs);
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = T::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -T::one();
                    slack += 1;
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        let mut t = Tableau { rows, basis, first_artificial, width };
        if n_art > 0 {
            let mut cost = vec![T::zero(); width];
            for c in cost.iter_mut().skip(first_artificial) {
                *c = T::one();
            }
            let bounded = t.run(&cost, width);
            debug_assert!(bounded, "phase one is bounded below by zero");
            let infeasibility = t
                .basis
                .iter()
                .zip(&t.rows)
                .filter(|(&b, _)| b >= first_artificial)
                .fold(T::zero(), |acc, (_, r)| acc + r[width].clone());
            if infeasibility.strictly_positive() {
                return None;
            }
            t.drive_out_artificials();
        }
        Some(t)
    }

    /// Pivots remaining (zero-valued) artificial variables out of the basis,
    /// dropping rows that turn out to be redundant.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].near_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn phase_two(&mut self, cost: &[T]) -> bool {
        let mut full = vec![T::zero(); self.width];
        full[..cost.len()].clone_from_slice(cost);
        self.run(&full, self.first_artificial)
    }

    /// Minimises `cost · x` using columns `< limit`. Returns false if unbounded.
    fn run(&mut self, cost: &[T], limit: usize) -> bool {
        loop {
            let reduced = |j: usize| {
                self.basis.iter().zip(&self.rows).fold(cost[j].clone(), |acc, (&b, r)| {
                    acc - cost[b].clone() * r[j].clone()
                })
            };
            let Some(enter) = (0..limit).find(|&j| !self.basis.contains(&j) && reduced(j).strictly_negative())
            else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[enter].strictly_positive() {
                    continue;
                }
                let ratio = r[self.width].clone() / r[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, enter),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].near_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.near_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        self.basis[r] = c;
    }

    fn solution(&self, n: usize) -> Vec<T> {
        let mut x = vec![T::zero(); n];
        for (&b, r) in self.basis.iter().zip(&self.rows) {
            if b < n {
                x[b] = r[self.width].clone();
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn triangle_polytope_is_a_point() {
        // K3: every vertex is a maximal stable set
        let mut lp = LinearProgram::new(3);
        for i in 0..3 {
            let mut row = ints(&[0, 0, 0]);
            row[i] = q(1, 1);
            lp.add(row, Relation::Eq, q(1, 1));
        }
        let (v, p) = lp.optimize(&ints(&[1, 1, 1]), Sense::Maximize).optimal().unwrap();
        assert_eq!(v, q(3, 1));
        assert_eq!(p, ints(&[1, 1, 1]));
    }

    #[test]
    fn p4_segment() {
        // stables {a,c}, {a,d}, {b,d}
        let mut lp = LinearProgram::new(4);
        lp.add(ints(&[1, 0, 1, 0]), Relation::Eq, q(1, 1));
        lp.add(ints(&[1, 0, 0, 1]), Relation::Eq, q(1, 1));
        lp.add(ints(&[0, 1, 0, 1]), Relation::Eq, q(1, 1));
        let (v, _) = lp.optimize(&ints(&[1, 0, 0, 0]), Sense::Maximize).optimal().unwrap();
        assert_eq!(v, q(1, 1));
        let (v, p) = lp.optimize(&ints(&[0, 1, 1, 0]), Sense::Minimize).optimal().unwrap();
        assert_eq!(v, q(1, 1));
        assert!(lp.satisfies(&p));
        let (v, _) = lp.optimize(&ints(&[0, 1, 1, 0]), Sense::Maximize).optimal().unwrap();
        assert_eq!(v, q(1, 1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(2);
        lp.add(ints(&[1, 1]), Relation::Eq, q(1, 1));
        lp.add(ints(&[1, 1]), Relation::Ge, q(2, 1));
        assert_eq!(lp.optimize(&ints(&[0, 0]), Sense::Minimize), LpOutcome::Infeasible);
        let mut open = LinearProgram::new(2);
        open.add(ints(&[1, -1]), Relation::Le, q(1, 1));
        assert_eq!(open.optimize(&ints(&[0, 1]), Sense::Maximize), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        let mut lp = LinearProgram::new(2);
        lp.add(ints(&[-1, -1]), Relation::Le, q(-2, 1));
        lp.add(ints(&[1, 1]), Relation::Eq, q(2, 1));
        lp.add(ints(&[2, 2]), Relation::Eq, q(4, 1));
        let (v, p) = lp.optimize(&ints(&[1, 3]), Sense::Minimize).optimal().unwrap();
        assert_eq!(v, q(2, 1));
        assert_eq!(p, ints(&[2, 0]));
    }

    #[test]
    fn float_scalar() {
        let mut lp = LinearProgram::<f64>::new(2);
        lp.add(vec![1.0, 2.0], Relation::Le, 4.0);
        lp.add(vec![3.0, 1.0], Relation::Le, 6.0);
        let (v, _) = lp.optimize(&[1.0, 1.0], Sense::Maximize).optimal().unwrap();
        assert!((v - 2.8).abs() < 1e-9);
        let mut lp32 = LinearProgram::<f32>::new(1);
        lp32.add(vec![2.0], Relation::Le, 1.0);
        assert!((lp32.optimize(&[1.0], Sense::Maximize).optimal().unwrap().0 - 0.5).abs() < 1e-6);
    }

    fn brute_max(a: &[[i64; 2]], b: &[i64], c: [i64; 2]) -> Option<Rational> {
        // vertices of {x >= 0, A x <= b} in the plane
        let mut lines: Vec<([i64; 2], i64)> = a.iter().copied().zip(b.iter().copied()).collect();
        lines.push(([1, 0], 0));
        lines.push(([0, 1], 0));
        let mut best: Option<Rational> = None;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let ([a1, b1], c1) = lines[i];
                let ([a2, b2], c2) = lines[j];
                let det = a1 * b2 - a2 * b1;
                if det == 0 {
                    continue;
                }
                let x = q(c1 * b2 - c2 * b1, det);
                let y = q(a1 * c2 - a2 * c1, det);
                let zero = q(0, 1);
                if x < zero || y < zero {
                    continue;
                }
                let ok = a.iter().zip(b).all(|(r, &bb)| q(r[0], 1) * &x + q(r[1], 1) * &y <= q(bb, 1));
                if ok {
                    let val = q(c[0], 1) * &x + q(c[1], 1) * &y;
                    if best.as_ref().map_or(true, |bv| val > *bv) {
                        best = Some(val);
                    }
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn agrees_with_vertex_enumeration(
            rows in prop::collection::vec((1i64..6, 1i64..6, 1i64..20), 1..5),
            c0 in 0i64..5, c1 in 0i64..5,
        ) {
            let a: Vec<[i64; 2]> = rows.iter().map(|r| [r.0, r.1]).collect();
            let b: Vec<i64> = rows.iter().map(|r| r.2).collect();
            let mut lp = LinearProgram::new(2);
            for (r, &bb) in a.iter().zip(&b) {
                lp.add(ints(r), Relation::Le, q(bb, 1));
            }
            let (v, p) = lp.optimize(&ints(&[c0, c1]), Sense::Maximize).optimal().unwrap();
            prop_assert!(lp.satisfies(&p));
            prop_assert_eq!(Some(v), brute_max(&a, &b, [c0, c1]));
        }
    }
}
