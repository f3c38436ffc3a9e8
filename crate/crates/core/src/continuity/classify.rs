//! Exact decisions for upper semicontinuity and its transfer relaxations.
//!
//! Everything runs on a skeleton of the function: the sorted special points
//! (domain ends, piece ends, overrides) with their values, and the open cells
//! between them. On a cell the function is one rule, so each branch is an
//! affine map on a dense class of points (all, rationals or irrationals).
//!
//! # Transfer continuity through local upper limits
//!
//! Let `M = sup f` and `L(y) = max(f(y), limsup_{z→y} f(z))`. On a cell the
//! limsup at `y` is the largest branch value at `y`; at a special point it is
//! the largest one-sided branch limit.
//!
//! Take `y` with `f(y) < M` (otherwise nothing is required of `y`).
//!
//! * If `L(y) < M`, some attained value `v` exceeds `L(y)`, and a small
//!   enough neighbourhood has supremum below `v`. Both conditions hold.
//! * If `L(y) = M`, every neighbourhood has supremum `M`. The weak variant
//!   then needs an attained value `≥ M`, i.e. the maximum is attained. The
//!   strict variant needs `f(z) < f(x') ≤ M` on a neighbourhood, i.e. the
//!   maximum is attained and `f < M` near `y`. Near `y` the values come from
//!   the adjacent branches, and an affine branch equals `M` at points
//!   accumulating at `y` only when it is the constant `M`.
//!
//! So `y` violates transfer weak upper continuity iff `f(y) < M = L(y)` and
//! the maximum is not attained, and violates transfer upper continuity iff
//! `f(y) < M = L(y)` and either the maximum is not attained or a branch next
//! to `y` is the constant `M`.
//!
//! # Critical levels
//!
//! The upper contour `{f ≥ r}` is a union of one set per special point and
//! per branch. Its combinatorial shape can only change at the values of
//! special points, at branch limits at cell ends, and at levels where the two
//! branches of a split cell cross. Between consecutive critical levels the
//! thresholds move but no piece appears, vanishes or changes closedness, so
//! testing every critical level, every midpoint and one level beyond each end
//! covers all levels.

use std::collections::BTreeSet;
use std::fmt;

use super::function::{Affine, SymbolicFn1D};
use super::pointset::{PointSet1D, Qualifier};
use crate::rational::Rational;

pub(crate) struct Cell<'a> {
    pub lo: Rational,
    pub hi: Rational,
    pub branches: Vec<(&'a Affine, Qualifier)>,
}

pub(crate) struct Skeleton<'a> {
    pub points: Vec<(Rational, Rational)>,
    pub cells: Vec<Cell<'a>>,
}

impl<'a> Skeleton<'a> {
    pub fn new(f: &'a SymbolicFn1D) -> Self {
        let (lo, hi) = f.domain();
        let mut special: BTreeSet<Rational> = BTreeSet::from([lo.clone(), hi.clone()]);
        for p in f.pieces() {
            special.insert(p.lo.clone());
            special.insert(p.hi.clone());
        }
        special.extend(f.overrides().keys().cloned());
        let special: Vec<Rational> = special.into_iter().collect();
        let points = special.iter().map(|p| (p.clone(), f.at(p).expect("special points lie in the domain"))).collect();
        let cells = special
            .windows(2)
            .map(|w| {
                let mid = w[0].midpoint(&w[1]);
                let piece = f.pieces().iter().find(|p| p.contains(&mid)).expect("pieces partition the domain");
                Cell { lo: w[0].clone(), hi: w[1].clone(), branches: piece.rule.branches() }
            })
            .collect();
        Skeleton { points, cells }
    }

    /// Branches of the cells touching special point `k`, with the limit each
    /// one approaches there.
    fn side_branches(&self, k: usize) -> Vec<(&'a Affine, Rational)> {
        let p = &self.points[k].0;
        let mut out = Vec::new();
        if k > 0 {
            out.extend(self.cells[k - 1].branches.iter().map(|(a, _)| (*a, a.at(p))));
        }
        if k < self.cells.len() {
            out.extend(self.cells[k].branches.iter().map(|(a, _)| (*a, a.at(p))));
        }
        out
    }

    pub fn sup(&self) -> Rational {
        let mut m = self.points.iter().map(|(_, v)| v.clone()).max().expect("a domain has at least one point");
        for c in &self.cells {
            for (a, _) in &c.branches {
                m = m.max(a.at(&c.lo)).max(a.at(&c.hi));
            }
        }
        m
    }

    pub fn critical_levels(&self) -> BTreeSet<Rational> {
        let mut levels: BTreeSet<Rational> = self.points.iter().map(|(_, v)| v.clone()).collect();
        for c in &self.cells {
            for (a, _) in &c.branches {
                levels.insert(a.at(&c.lo));
                levels.insert(a.at(&c.hi));
            }
            if let [(r, _), (i, _)] = c.branches[..] {
                let ds = &r.slope - &i.slope;
                if !ds.is_zero() {
                    let x = (&i.intercept - &r.intercept) / ds;
                    if c.lo < x && x < c.hi {
                        levels.insert(r.at(&x));
                    }
                }
            }
        }
        levels
    }

    /// Critical levels, their midpoints, and one level beyond each end.
    pub fn test_levels(&self) -> Vec<Rational> {
        let crit: Vec<Rational> = self.critical_levels().into_iter().collect();
        let mut out = vec![&crit[0] - Rational::one()];
        for (k, c) in crit.iter().enumerate() {
            out.push(c.clone());
            if let Some(next) = crit.get(k + 1) {
                out.push(c.midpoint(next));
            }
        }
        out.push(crit.last().unwrap() + Rational::one());
        out
    }

    pub fn upper_contour(&self, level: &Rational) -> PointSet1D {
        let mut out = PointSet1D::points(self.points.iter().filter(|(_, v)| v >= level).map(|(p, _)| p.clone()));
        for c in &self.cells {
            for (a, q) in &c.branches {
                out = out.union(&branch_contour(a, *q, &c.lo, &c.hi, level));
            }
        }
        out
    }
}

/// `{x ∈ (lo, hi) of class q : a(x) ≥ level}`.
fn branch_contour(a: &Affine, q: Qualifier, lo: &Rational, hi: &Rational, level: &Rational) -> PointSet1D {
    match a.solve(level) {
        None if a.intercept >= *level => PointSet1D::interval(lo.clone(), false, hi.clone(), false, q),
        None => PointSet1D::empty(),
        Some(t) if a.slope.is_positive() => {
            if t <= *lo {
                PointSet1D::interval(lo.clone(), false, hi.clone(), false, q)
            } else {
                PointSet1D::interval(t, true, hi.clone(), false, q)
            }
        }
        Some(t) => {
            if t >= *hi {
                PointSet1D::interval(lo.clone(), false, hi.clone(), false, q)
            } else {
                PointSet1D::interval(lo.clone(), false, t, true, q)
            }
        }
    }
}

/// `{x : f(x) ≥ level}`.
pub fn upper_contour(f: &SymbolicFn1D, level: &Rational) -> PointSet1D {
    Skeleton::new(f).upper_contour(level)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub usc: bool,
    /// Points where the upper limit exceeds the value.
    pub usc_violations: PointSet1D,
    pub transfer_uc: bool,
    pub transfer_uc_violations: PointSet1D,
    pub transfer_wuc: bool,
    pub transfer_wuc_violations: PointSet1D,
    pub property_m: bool,
    pub attains_max: bool,
    pub argmax: PointSet1D,
    pub sup: Rational,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "usc: {}", self.usc)?;
        if !self.usc {
            match self.usc_violations.first_rational() {
                Some(x) => write!(f, " (x={x})")?,
                None => write!(f, " (x∈{})", self.usc_violations)?,
            }
        }
        write!(
            f,
            " transfer_wuc: {} attains_max: {} sup={} argmax={} transfer_uc: {} property_M: {}",
            self.transfer_wuc, self.attains_max, self.sup, self.argmax, self.transfer_uc, self.property_m
        )
    }
}

/// The maximum is attained at a special point or by a branch that is the
/// constant `sup` on its cell; a sloped branch never reaches its supremum
/// inside an open cell.
fn attains_sup(sk: &Skeleton, m: &Rational) -> bool {
    sk.points.iter().any(|(_, v)| v == m)
        || sk.cells.iter().any(|c| c.branches.iter().any(|(a, _)| a.is_constant() && a.intercept == *m))
}

/// Points `y` of a cell (restricted to the class where `own` applies) with
/// `f(y) < M` and some branch value at `y` equal to `M`.
fn cell_limit_violations(cell: &Cell, own: &Affine, class: Qualifier, m: &Rational) -> PointSet1D {
    let at_m = cell.branches.iter().fold(PointSet1D::empty(), |acc, (a, _)| {
        let hit = match a.solve(m) {
            None if a.intercept == *m => PointSet1D::open(cell.lo.clone(), cell.hi.clone()),
            None => PointSet1D::empty(),
            Some(t) if cell.lo < t && t < cell.hi => PointSet1D::point(t),
            Some(_) => PointSet1D::empty(),
        };
        acc.union(&hit)
    });
    let class_set = PointSet1D::interval(cell.lo.clone(), false, cell.hi.clone(), false, class);
    let own_at_m = match own.solve(m) {
        None if own.intercept == *m => class_set.clone(),
        None => PointSet1D::empty(),
        Some(t) => PointSet1D::point(t),
    };
    at_m.intersection(&class_set).difference(&own_at_m)
}

/// Points of the open cell, in the class where `own` applies, at which
/// another branch lies strictly above `own`.
fn cell_usc_violations(cell: &Cell, own: &Affine, class: Qualifier) -> PointSet1D {
    let class_set = PointSet1D::interval(cell.lo.clone(), false, cell.hi.clone(), false, class);
    let above = cell.branches.iter().fold(PointSet1D::empty(), |acc, (a, _)| {
        let slope = &a.slope - &own.slope;
        let gap = &a.intercept - &own.intercept;
        let hit = if slope.is_zero() {
            if gap.is_positive() {
                PointSet1D::open(cell.lo.clone(), cell.hi.clone())
            } else {
                PointSet1D::empty()
            }
        } else {
            let t = -gap / &slope;
            if slope.is_positive() {
                PointSet1D::open(t.max(cell.lo.clone()), cell.hi.clone())
            } else {
                PointSet1D::open(cell.lo.clone(), t.min(cell.hi.clone()))
            }
        };
        acc.union(&hit)
    });
    above.intersection(&class_set)
}

pub fn classify(f: &SymbolicFn1D) -> ClassificationReport {
    let sk = Skeleton::new(f);
    let m = sk.sup();
    let levels = sk.test_levels();

    let contours: Vec<PointSet1D> = levels.iter().map(|r| sk.upper_contour(r)).collect();
    let mut usc_violations = PointSet1D::empty();
    for (k, (p, v)) in sk.points.iter().enumerate() {
        if sk.side_branches(k).iter().any(|(_, lim)| lim > v) {
            usc_violations = usc_violations.union(&PointSet1D::point(p.clone()));
        }
    }
    for cell in &sk.cells {
        for (own, class) in &cell.branches {
            usc_violations = usc_violations.union(&cell_usc_violations(cell, own, *class));
        }
    }

    let argmax = sk.upper_contour(&m);
    let attained = !argmax.is_empty();
    let attains_max = attains_sup(&sk, &m);

    // every y with f(y) < M = L(y), and the subset next to a constant-M branch
    let mut limit_points = PointSet1D::empty();
    let mut near_constant_max = PointSet1D::empty();
    for (k, (p, v)) in sk.points.iter().enumerate() {
        if *v >= m {
            continue;
        }
        let sides = sk.side_branches(k);
        if sides.iter().any(|(_, lim)| *lim == m) {
            limit_points = limit_points.union(&PointSet1D::point(p.clone()));
        }
        if sides.iter().any(|(a, _)| a.is_constant() && a.intercept == m) {
            near_constant_max = near_constant_max.union(&PointSet1D::point(p.clone()));
        }
    }
    for cell in &sk.cells {
        let has_constant_max = cell.branches.iter().any(|(a, _)| a.is_constant() && a.intercept == m);
        for (own, class) in &cell.branches {
            let bad = cell_limit_violations(cell, own, *class, &m);
            if has_constant_max {
                near_constant_max = near_constant_max.union(&bad);
            }
            limit_points = limit_points.union(&bad);
        }
    }
    let transfer_wuc_violations = if attained { PointSet1D::empty() } else { limit_points.clone() };
    let transfer_uc_violations = if attained { near_constant_max } else { limit_points };

    // property M: at each representative level, closure points missing from
    // the contour must have a strictly better point, i.e. lie outside argmax
    let property_m = contours.iter().all(|u| u.closure().difference(u).intersection(&argmax).is_empty());

    ClassificationReport {
        usc: usc_violations.is_empty(),
        usc_violations,
        transfer_uc: transfer_uc_violations.is_empty(),
        transfer_uc_violations,
        transfer_wuc: transfer_wuc_violations.is_empty(),
        transfer_wuc_violations,
        property_m,
        attains_max,
        argmax,
        sup: m,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// `F(x) = {y : f(y) ≥ f(x)}` is transfer closed-valued.
    pub transfer_closed_valued: bool,
    /// Points `y ∉ F(x)` for some `x` that lie in `cl F(x')` for every `x'`.
    pub closed_valued_violations: PointSet1D,
    pub transfer_uc: bool,
    /// `∩_x cl F(x)`.
    pub closure_intersection: PointSet1D,
    /// `∩_x F(x)`.
    pub intersection: PointSet1D,
    /// The two intersections agree.
    pub intersection_identity: bool,
    /// Both equivalences hold on this function.
    pub holds: bool,
}

/// Decides transfer closed-valuedness of `F(x) = {y : f(y) ≥ f(x)}` from the
/// contour sets, and compares it with the transfer upper continuity verdict
/// and with `∩ cl F(x) = ∩ F(x)`.
///
/// The sets `F(x)` shrink as `f(x)` grows. When the maximum is attained the
/// smallest is `F(argmax) = {f ≥ M}`. Otherwise, as `f(x')` increases to
/// `M`, the closures `cl F(x')` decrease to the points of the closed cells
/// where some branch, extended continuously to the cell ends, reaches `M`.
pub fn check_transfer_closed_duality(f: &SymbolicFn1D) -> DualityReport {
    let sk = Skeleton::new(f);
    let m = sk.sup();
    let top = sk.upper_contour(&m);
    let attained = !top.is_empty();

    let closure_intersection = if attained {
        top.closure()
    } else {
        sk.cells.iter().fold(PointSet1D::empty(), |acc, c| {
            c.branches.iter().fold(acc, |acc, (a, _)| {
                let reach = match a.solve(&m) {
                    None if a.intercept >= m => PointSet1D::closed(c.lo.clone(), c.hi.clone()),
                    None => PointSet1D::empty(),
                    Some(t) if c.lo <= t && t <= c.hi => PointSet1D::point(t),
                    Some(_) => PointSet1D::empty(),
                };
                acc.union(&reach)
            })
        })
    };
    let intersection = if attained { top.clone() } else { PointSet1D::empty() };

    // y outside some F(x) means f(y) < M; it needs an x' with y ∉ cl F(x')
    let (lo, hi) = f.domain();
    let below_max = PointSet1D::closed(lo.clone(), hi.clone()).difference(&top);
    let closed_valued_violations = below_max.intersection(&closure_intersection);
    let transfer_closed_valued = closed_valued_violations.is_empty();
    let intersection_identity = closure_intersection == intersection;
    let transfer_uc = classify(f).transfer_uc;
    DualityReport {
        transfer_closed_valued,
        closed_valued_violations,
        transfer_uc,
        closure_intersection,
        intersection,
        intersection_identity,
        holds: transfer_closed_valued == transfer_uc && intersection_identity == transfer_closed_valued,
    }
}

#[cfg(test)]
mod tests {
    use super::super::function::fixtures::{example1, example2};
    use super::super::function::{Arg, Piece, Rule};
    use super::*;
    use crate::rational::{int, rat};
    use std::collections::BTreeMap;

    fn ps(s: &str) -> PointSet1D {
        s.parse().unwrap()
    }

    fn func(s: &str) -> SymbolicFn1D {
        s.parse().unwrap()
    }

    #[test]
    fn contours_of_the_examples() {
        let f = example1();
        assert_eq!(upper_contour(&f, &int(1)), ps("[0,2]"));
        assert_eq!(upper_contour(&f, &int(2)), ps("(0,2]"));
        assert_eq!(upper_contour(&f, &rat(5, 2)), ps("[3/2,2]"));
        assert_eq!(upper_contour(&f, &int(3)), ps("{2}"));
        assert_eq!(upper_contour(&f, &int(4)), PointSet1D::empty());
        assert_eq!(upper_contour(&example2(), &int(1)), ps("[0,1]∩Q"));
        assert_eq!(upper_contour(&example2(), &rat(1, 2)), ps("[0,1]∩Q"));
    }

    #[test]
    fn example1_classification() {
        let r = classify(&example1());
        assert!(!r.usc);
        assert_eq!(r.usc_violations, ps("{0}"));
        assert!(r.transfer_wuc && r.transfer_uc && r.attains_max && r.property_m);
        assert_eq!(r.sup, int(3));
        assert_eq!(r.argmax, ps("{2}"));
        assert_eq!(
            r.to_string(),
            "usc: false (x=0) transfer_wuc: true attains_max: true sup=3 argmax={2} transfer_uc: true property_M: true"
        );
    }

    #[test]
    fn example2_classification() {
        let r = classify(&example2());
        assert!(r.property_m && r.transfer_wuc && r.attains_max);
        assert_eq!(r.argmax, ps("[0,1]∩Q"));
        // every irrational sits in the closure of the rationals
        assert!(!r.usc);
        assert_eq!(r.usc_violations, ps("(0,1)∖Q"));
        // rationals carry the constant maximum arbitrarily close to each irrational
        assert!(!r.transfer_uc);
        assert_eq!(r.transfer_uc_violations, ps("(0,1)∖Q"));
    }

    #[test]
    fn constant_and_affine_functions() {
        let c = SymbolicFn1D::constant(int(0), int(1), int(5)).unwrap();
        let r = classify(&c);
        assert!(r.usc && r.transfer_uc && r.transfer_wuc && r.property_m && r.attains_max);
        assert_eq!(r.argmax, ps("[0,1]"));
        let a = SymbolicFn1D::affine(int(0), int(1), int(2), int(-1)).unwrap();
        let r = classify(&a);
        assert!(r.usc && r.transfer_uc && r.transfer_wuc);
        assert_eq!(r.argmax, ps("{1}"));
        assert!(check_transfer_closed_duality(&a).holds);
    }

    #[test]
    fn open_maximum_is_not_attained() {
        // x on [0,1), 0 at 1
        let f = func("domain: 0 1\npiece: [0,1) affine 1 0\npiece: [1,1] affine 0 0\n");
        let r = classify(&f);
        assert!(!r.attains_max && !r.transfer_wuc && !r.transfer_uc && !r.usc);
        assert_eq!(r.transfer_wuc_violations, ps("{1}"));
        assert_eq!(r.sup, int(1));
        assert!(r.argmax.is_empty());
        let d = check_transfer_closed_duality(&f);
        assert!(d.holds && !d.transfer_closed_valued);
        assert_eq!(d.closure_intersection, ps("{1}"));
    }

    #[test]
    fn transfer_uc_is_stricter_than_wuc() {
        // 1 on [0,1], except 0 at 1/2: the maximum is attained right next to 1/2
        let f = func("domain: 0 1\npiece: [0,1] affine 0 1\noverride: 1/2 0\n");
        let r = classify(&f);
        assert!(r.transfer_wuc && !r.transfer_uc && !r.usc);
        assert_eq!(r.transfer_uc_violations, ps("{1/2}"));
        let d = check_transfer_closed_duality(&f);
        assert!(d.holds);
        assert_eq!(d.closure_intersection, ps("[0,1]"));
        assert_eq!(d.intersection, ps("[0,1/2) ∪ (1/2,1]"));
    }

    #[test]
    fn split_pieces_cross() {
        // rationals follow x, irrationals 1 - x on [0,1]
        let f = SymbolicFn1D::new(
            int(0),
            int(1),
            vec![Piece::new(
                int(0),
                true,
                int(1),
                true,
                Rule::Split { rational: Affine::new(int(1), int(0)), irrational: Affine::new(int(-1), int(1)) },
            )],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(f.eval(&Arg::Irrational { lo: int(0), hi: int(1) }).is_err());
        assert!(Skeleton::new(&f).critical_levels().contains(&rat(1, 2)));
        assert_eq!(upper_contour(&f, &rat(1, 2)), ps("[0,1/2)∖Q ∪ [1/2,1]∩Q"));
        let r = classify(&f);
        assert!(r.attains_max && r.transfer_wuc && r.transfer_uc && !r.usc);
        assert_eq!(r.argmax, ps("{1}"));
        assert!(check_transfer_closed_duality(&f).holds);
    }

    #[test]
    fn examples_satisfy_duality() {
        for f in [example1(), example2()] {
            let d = check_transfer_closed_duality(&f);
            assert!(d.holds, "{d:?}");
        }
    }
}
