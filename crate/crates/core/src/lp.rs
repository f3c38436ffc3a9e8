//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! All variables are nonnegative. Pivoting is deterministic: the entering
//! column is the lowest-index improving column and ties in the ratio test go
//! to the lowest-index basic variable, so the same program always returns
//! the same optimal vertex.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·z subject to constraints, z ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    num_vars: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        // normalise to nonnegative right-hand sides
        let normalised: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|a| -a).collect(), flipped, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let slacks = normalised.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificials = normalised.iter().filter(|c| c.1 != Relation::Le).count();
        let width = n + slacks + artificials;
        let first_artificial = n + slacks;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, first_artificial);
        for (coeffs, relation, b) in normalised {
            let mut row = coeffs;
            row.resize(width, Rational::zero());
            match relation {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
            rhs.push(b);
        }
        Tableau { rows, rhs, basis, num_vars: n, first_artificial }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(self.num_vars, Vec::len)
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational], obj_val: &mut Rational) {
        let p = self.rows[r][c].recip();
        if !p.is_one() {
            for a in self.rows[r].iter_mut() {
                if !a.is_zero() {
                    *a *= &p;
                }
            }
            self.rhs[r] *= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][c].is_zero() {
                continue;
            }
            let f = self.rows[k][c].clone();
            for (a, b) in self.rows[k].iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &(&f * b);
                }
            }
            self.rhs[k] -= &(&f * &pivot_rhs);
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (a, b) in obj.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &(&f * b);
                }
            }
            *obj_val -= &(&f * &pivot_rhs);
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule on reduced costs `obj` (negative entries improve),
    /// restricted to columns below `limit`. Returns false if unbounded.
    fn iterate(&mut self, obj: &mut [Rational], obj_val: &mut Rational, limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, obj, obj_val);
        }
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        let width = self.width();
        let m = self.rows.len();

        if self.first_artificial < width {
            // phase 1: maximise −Σ artificials
            let mut obj = vec![Rational::zero(); width];
            let mut val = Rational::zero();
            for r in 0..m {
                if self.basis[r] >= self.first_artificial {
                    for j in 0..self.first_artificial {
                        obj[j] -= &self.rows[r][j];
                    }
                    val -= &self.rhs[r];
                }
            }
            self.iterate(&mut obj, &mut val, width);
            if val.is_negative() {
                return LpOutcome::Infeasible;
            }
            // drive remaining (zero-valued) artificials out of the basis
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j, &mut obj, &mut val),
                        None => {
                            // redundant equality
                            self.rows.remove(r);
                            self.rhs.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
            for row in &mut self.rows {
                row.truncate(self.first_artificial);
            }
        }

        // phase 2
        let width = self.first_artificial;
        let mut obj: Vec<Rational> = (0..width)
            .map(|j| if j < self.num_vars { -&objective[j] } else { Rational::zero() })
            .collect();
        let mut val = Rational::zero();
        for r in 0..self.rows.len() {
            let b = self.basis[r];
            if b < self.num_vars && !objective[b].is_zero() {
                let cb = objective[b].clone();
                for j in 0..width {
                    if !self.rows[r][j].is_zero() {
                        obj[j] += &(&cb * &self.rows[r][j]);
                    }
                }
                val += &(&cb * &self.rhs[r]);
            }
        }
        if !self.iterate(&mut obj, &mut val, width) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); self.num_vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_vars {
                point[b] = self.rhs[r].clone();
            }
        }
        LpOutcome::Optimal { value: val, point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[3, 5]);
        lp.add(v(&[1, 0]), Relation::Le, int(4));
        lp.add(v(&[0, 2]), Relation::Le, int(12));
        lp.add(v(&[3, 2]), Relation::Le, int(18));
        assert_eq!(lp.maximize(), LpOutcome::Optimal { value: int(36), point: v(&[2, 6]) });
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x − y, x + y = 1, x ≥ 1/3, y ≥ 1/4 → x = 3/4
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, -1]);
        lp.add(v(&[1, 1]), Relation::Eq, int(1));
        lp.add(v(&[1, 0]), Relation::Ge, rat(1, 3));
        lp.add(v(&[0, 1]), Relation::Ge, rat(1, 4));
        assert_eq!(lp.maximize(), LpOutcome::Optimal { value: rat(1, 2), point: vec![rat(3, 4), rat(1, 4)] });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(v(&[1]), Relation::Le, int(1));
        lp.add(v(&[1]), Relation::Ge, int(2));
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, 0]);
        lp.add(v(&[1, -1]), Relation::Le, int(1));
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_and_negative_rhs() {
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[0, 1]);
        lp.add(v(&[1, 1]), Relation::Eq, int(2));
        lp.add(v(&[2, 2]), Relation::Eq, int(4));
        lp.add(v(&[-1, 0]), Relation::Le, int(-1)); // x ≥ 1
        assert_eq!(lp.maximize(), LpOutcome::Optimal { value: int(1), point: v(&[1, 1]) });
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule.
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![rat(3, 4), int(-20), rat(1, 2), int(-6)];
        lp.add(vec![rat(1, 4), int(-8), int(-1), int(9)], Relation::Le, int(0));
        lp.add(vec![rat(1, 2), int(-12), rat(-1, 2), int(3)], Relation::Le, int(0));
        lp.add(v(&[0, 0, 1, 0]), Relation::Le, int(1));
        match lp.maximize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(5, 4)),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        // Feasible bounded programs: the returned point satisfies every row and
        // no lattice point of the box does better.
        #[test]
        fn optimal_point_is_feasible_and_beats_grid(
            c in proptest::collection::vec(-3i64..=3, 2),
            rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 2), 0i64..=6), 1..4),
        ) {
            let mut lp = LinearProgram::new(2);
            lp.objective = v(&c);
            lp.add(v(&[1, 0]), Relation::Le, int(4));
            lp.add(v(&[0, 1]), Relation::Le, int(4));
            for (a, b) in &rows {
                lp.add(v(a), Relation::Le, int(*b));
            }
            let LpOutcome::Optimal { value, point } = lp.maximize() else {
                return Err(TestCaseError::fail("origin is feasible and the box is bounded"));
            };
            let dot = |a: &[Rational], x: &[Rational]| a.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>();
            prop_assert_eq!(dot(&lp.objective, &point), value.clone());
            for con in &lp.constraints {
                prop_assert!(dot(&con.coeffs, &point) <= con.rhs);
            }
            for x in 0..=4 {
                for y in 0..=4 {
                    let p = v(&[x, y]);
                    if lp.constraints.iter().all(|con| dot(&con.coeffs, &p) <= con.rhs) {
                        prop_assert!(dot(&lp.objective, &p) <= value);
                    }
                }
            }
        }
    }
}
