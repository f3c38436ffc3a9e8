//! Exact subsets of the real line built from rational breakpoints.
//!
//! A set is stored as sorted breakpoints `p_0 < … < p_{m-1}`, a membership
//! flag for each breakpoint, and a [`Fill`] for each of the `m + 1` open gaps
//! between them (the outer two are unbounded). A gap's fill says whether its
//! rationals, its irrationals, both or neither belong to the set. Both kinds
//! are dense, so the closure of any nonempty gap is the whole closed gap.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qualifier {
    All,
    RationalsOnly,
    IrrationalsOnly,
}

impl Qualifier {
    fn fill(self) -> Fill {
        match self {
            Qualifier::All => Fill::ALL,
            Qualifier::RationalsOnly => Fill::RAT,
            Qualifier::IrrationalsOnly => Fill::IRR,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Qualifier::All => "",
            Qualifier::RationalsOnly => "∩Q",
            Qualifier::IrrationalsOnly => "∖Q",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub(crate) struct Fill {
    pub rat: bool,
    pub irr: bool,
}

impl Fill {
    pub const NONE: Fill = Fill { rat: false, irr: false };
    pub const RAT: Fill = Fill { rat: true, irr: false };
    pub const IRR: Fill = Fill { rat: false, irr: true };
    pub const ALL: Fill = Fill { rat: true, irr: true };

    pub fn is_empty(self) -> bool {
        !self.rat && !self.irr
    }

    fn zip(self, other: Fill, op: impl Fn(bool, bool) -> bool) -> Fill {
        Fill { rat: op(self.rat, other.rat), irr: op(self.irr, other.irr) }
    }

    fn qualifier(self) -> Option<Qualifier> {
        match (self.rat, self.irr) {
            (true, true) => Some(Qualifier::All),
            (true, false) => Some(Qualifier::RationalsOnly),
            (false, true) => Some(Qualifier::IrrationalsOnly),
            (false, false) => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet1D {
    breaks: Vec<Rational>,
    at: Vec<bool>,
    gaps: Vec<Fill>,
}

impl PointSet1D {
    pub fn empty() -> Self {
        PointSet1D { breaks: Vec::new(), at: Vec::new(), gaps: vec![Fill::NONE] }
    }

    pub fn point(p: Rational) -> Self {
        PointSet1D { breaks: vec![p], at: vec![true], gaps: vec![Fill::NONE; 2] }
    }

    pub fn points(ps: impl IntoIterator<Item = Rational>) -> Self {
        ps.into_iter().fold(Self::empty(), |acc, p| acc.union(&Self::point(p)))
    }

    /// The interval between `lo` and `hi` restricted by `q`. Endpoint flags
    /// only matter for qualifiers that admit rationals.
    pub fn interval(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool, q: Qualifier) -> Self {
        let fill = q.fill();
        if lo > hi {
            return Self::empty();
        }
        if lo == hi {
            return if lo_closed && hi_closed && fill.rat { Self::point(lo) } else { Self::empty() };
        }
        Self::canonical(vec![lo, hi], vec![lo_closed && fill.rat, hi_closed && fill.rat], vec![Fill::NONE, fill, Fill::NONE])
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::interval(lo, true, hi, true, Qualifier::All)
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::interval(lo, false, hi, false, Qualifier::All)
    }

    pub fn is_empty(&self) -> bool {
        !self.at.iter().any(|&b| b) && self.gaps.iter().all(|g| g.is_empty())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.breaks.binary_search(x) {
            Ok(k) => self.at[k],
            Err(k) => self.gaps[k].rat,
        }
    }

    /// Whether some irrational number strictly between `lo` and `hi` belongs
    /// to the set.
    pub fn meets_irrationals_in(&self, lo: &Rational, hi: &Rational) -> bool {
        !self.intersection(&Self::interval(lo.clone(), false, hi.clone(), false, Qualifier::IrrationalsOnly)).is_empty()
    }

    pub fn has_irrationals(&self) -> bool {
        self.gaps.iter().any(|g| g.irr)
    }

    pub fn is_subset(&self, other: &PointSet1D) -> bool {
        self.difference(other).is_empty()
    }

    pub fn union(&self, other: &PointSet1D) -> PointSet1D {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &PointSet1D) -> PointSet1D {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &PointSet1D) -> PointSet1D {
        self.combine(other, |a, b| a && !b)
    }

    /// Complement in the real line.
    pub fn complement(&self) -> PointSet1D {
        Self::canonical(
            self.breaks.clone(),
            self.at.iter().map(|b| !b).collect(),
            self.gaps.iter().map(|g| Fill { rat: !g.rat, irr: !g.irr }).collect(),
        )
    }

    pub fn closure(&self) -> PointSet1D {
        let gaps: Vec<Fill> = self.gaps.iter().map(|g| if g.is_empty() { Fill::NONE } else { Fill::ALL }).collect();
        let at = (0..self.breaks.len()).map(|k| self.at[k] || !gaps[k].is_empty() || !gaps[k + 1].is_empty()).collect();
        Self::canonical(self.breaks.clone(), at, gaps)
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    /// The smallest element when the set has one, else the leftmost
    /// rational member found by scanning gaps in order. `None` when the set
    /// holds no rational at all.
    pub fn first_rational(&self) -> Option<Rational> {
        let n = self.breaks.len();
        if self.gaps[0].rat {
            return Some(match self.breaks.first() {
                Some(p) => p - Rational::one(),
                None => Rational::zero(),
            });
        }
        for k in 0..n {
            if self.at[k] {
                return Some(self.breaks[k].clone());
            }
            if self.gaps[k + 1].rat {
                return Some(match self.breaks.get(k + 1) {
                    Some(q) => self.breaks[k].midpoint(q),
                    None => &self.breaks[k] + Rational::one(),
                });
            }
        }
        None
    }

    /// Infimum and supremum, `None` when empty or unbounded.
    pub fn bounds(&self) -> Option<(Rational, Rational)> {
        if self.is_empty() || !self.gaps[0].is_empty() || !self.gaps.last().unwrap().is_empty() {
            return None;
        }
        Some((self.breaks[0].clone(), self.breaks.last().unwrap().clone()))
    }

    /// The connected pieces of the canonical form: intervals with a
    /// qualifier, and isolated points.
    pub fn components(&self) -> Vec<Component> {
        let n = self.breaks.len();
        let mut out = Vec::new();
        // whether break k was printed as the closed right end of gap k
        let mut claimed = vec![false; n];
        for k in 0..=n {
            let fill = self.gaps[k];
            if let Some(q) = fill.qualifier() {
                let lo = if k == 0 { None } else { Some(self.breaks[k - 1].clone()) };
                let hi = self.breaks.get(k).cloned();
                let lo_closed = k > 0 && fill.rat && self.at[k - 1] && !claimed[k - 1];
                let hi_closed = k < n && fill.rat && self.at[k];
                if hi_closed {
                    claimed[k] = true;
                }
                out.push(Component::Interval { lo, lo_closed, hi, hi_closed, qualifier: q });
            }
            if k < n && self.at[k] && !claimed[k] && !self.gaps[k + 1].rat {
                out.push(Component::Point(self.breaks[k].clone()));
            }
        }
        out
    }

    fn refine(&self, breaks: &[Rational]) -> (Vec<bool>, Vec<Fill>) {
        let mut at = Vec::with_capacity(breaks.len());
        let mut gaps = Vec::with_capacity(breaks.len() + 1);
        for p in breaks {
            // the open gap just left of p lies inside our gap `gap_left`
            let gap_left = match self.breaks.binary_search(p) {
                Ok(j) => {
                    at.push(self.at[j]);
                    j
                }
                Err(j) => {
                    at.push(self.gaps[j].rat);
                    j
                }
            };
            gaps.push(self.gaps[gap_left]);
        }
        gaps.push(*self.gaps.last().unwrap());
        (at, gaps)
    }

    fn combine(&self, other: &PointSet1D, op: impl Fn(bool, bool) -> bool) -> PointSet1D {
        let mut breaks: Vec<Rational> = self.breaks.iter().chain(&other.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let (a_at, a_gaps) = self.refine(&breaks);
        let (b_at, b_gaps) = other.refine(&breaks);
        let at = a_at.iter().zip(&b_at).map(|(&x, &y)| op(x, y)).collect();
        let gaps = a_gaps.iter().zip(&b_gaps).map(|(&x, &y)| x.zip(y, &op)).collect();
        Self::canonical(breaks, at, gaps)
    }

    fn canonical(breaks: Vec<Rational>, at: Vec<bool>, gaps: Vec<Fill>) -> PointSet1D {
        let mut out = PointSet1D { breaks: Vec::new(), at: Vec::new(), gaps: vec![gaps[0]] };
        for (k, p) in breaks.into_iter().enumerate() {
            let left = *out.gaps.last().unwrap();
            let right = gaps[k + 1];
            if left == right && at[k] == left.rat {
                continue;
            }
            out.breaks.push(p);
            out.at.push(at[k]);
            out.gaps.push(right);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    /// `None` bounds are infinite.
    Interval { lo: Option<Rational>, lo_closed: bool, hi: Option<Rational>, hi_closed: bool, qualifier: Qualifier },
    Point(Rational),
}

impl fmt::Display for PointSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "∅");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, parts: &mut Vec<String>| {
            if !run.is_empty() {
                parts.push(format!("{{{}}}", run.join(",")));
                run.clear();
            }
        };
        for c in comps {
            match c {
                Component::Point(p) => run.push(p.to_string()),
                Component::Interval { lo, lo_closed, hi, hi_closed, qualifier } => {
                    flush(&mut run, &mut parts);
                    let lo = lo.map_or("-inf".to_string(), |p| p.to_string());
                    let hi = hi.map_or("inf".to_string(), |p| p.to_string());
                    parts.push(format!(
                        "{}{lo},{hi}{}{}",
                        if lo_closed { '[' } else { '(' },
                        if hi_closed { ']' } else { ')' },
                        qualifier.suffix()
                    ));
                }
            }
        }
        flush(&mut run, &mut parts);
        write!(f, "{}", parts.join(" ∪ "))
    }
}

impl fmt::Debug for PointSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse point set {input:?}: {message}")]
pub struct ParsePointSetError {
    pub input: String,
    pub message: String,
}

impl FromStr for PointSet1D {
    type Err = ParsePointSetError;

    /// Reads the [`Display`](fmt::Display) syntax. ASCII spellings are
    /// accepted too: `U` for `∪`, `&Q` for `∩Q` and `-Q` for `∖Q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |message: String| ParsePointSetError { input: s.to_string(), message };
        let text = s.trim();
        if text == "∅" || text == "{}" || text.is_empty() {
            return Ok(Self::empty());
        }
        let mut out = Self::empty();
        for part in text.split('∪').flat_map(|p| p.split(" U ")) {
            let part = part.trim();
            if let Some(inner) = part.strip_prefix('{').and_then(|p| p.strip_suffix('}')) {
                for p in inner.split(',').filter(|p| !p.trim().is_empty()) {
                    let p: Rational = p.parse().map_err(|e| err(format!("{e}")))?;
                    out = out.union(&Self::point(p));
                }
                continue;
            }
            let (body, q) = if let Some(b) = part.strip_suffix("∩Q").or_else(|| part.strip_suffix("&Q")) {
                (b, Qualifier::RationalsOnly)
            } else if let Some(b) = part.strip_suffix("∖Q").or_else(|| part.strip_suffix("-Q")) {
                (b, Qualifier::IrrationalsOnly)
            } else {
                (part, Qualifier::All)
            };
            let lo_closed = match body.chars().next() {
                Some('[') => true,
                Some('(') => false,
                _ => return Err(err(format!("component {part:?} must start with [ or ("))),
            };
            let hi_closed = match body.chars().last() {
                Some(']') => true,
                Some(')') => false,
                _ => return Err(err(format!("component {part:?} must end with ] or )"))),
            };
            let (l, r) = body[1..body.len() - 1]
                .split_once(',')
                .ok_or_else(|| err(format!("component {part:?} needs two endpoints")))?;
            let l: Rational = l.parse().map_err(|e| err(format!("{e}")))?;
            let r: Rational = r.parse().map_err(|e| err(format!("{e}")))?;
            if l > r {
                return Err(err(format!("component {part:?} has lo > hi")));
            }
            out = out.union(&Self::interval(l, lo_closed, r, hi_closed, q));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn ps(s: &str) -> PointSet1D {
        s.parse().unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(PointSet1D::empty().to_string(), "∅");
        assert_eq!(PointSet1D::point(int(2)).to_string(), "{2}");
        assert_eq!(PointSet1D::closed(rat(3, 2), int(2)).to_string(), "[3/2,2]");
        let q = PointSet1D::interval(int(0), true, int(1), true, Qualifier::RationalsOnly);
        assert_eq!(q.to_string(), "[0,1]∩Q");
        let irr = PointSet1D::interval(int(0), true, int(1), true, Qualifier::IrrationalsOnly);
        assert_eq!(irr.to_string(), "(0,1)∖Q");
        assert_eq!(PointSet1D::points([int(0), int(1)]).to_string(), "{0,1}");
        assert_eq!(ps("[0,1)∪(1,2]").to_string(), "[0,1) ∪ (1,2]");
        assert_eq!(ps("[0,1]&Q U (1,2]").to_string(), "[0,1]∩Q ∪ (1,2]");
        assert_eq!(PointSet1D::closed(int(0), int(1)).complement().to_string(), "(-inf,0) ∪ (1,inf)");
    }

    #[test]
    fn merging_is_canonical() {
        let a = PointSet1D::closed(int(0), int(1)).union(&PointSet1D::interval(int(1), false, int(2), true, Qualifier::All));
        assert_eq!(a, PointSet1D::closed(int(0), int(2)));
        let q = PointSet1D::interval(int(0), true, int(1), true, Qualifier::RationalsOnly);
        let i = PointSet1D::interval(int(0), true, int(1), true, Qualifier::IrrationalsOnly);
        assert_eq!(q.union(&i), PointSet1D::closed(int(0), int(1)));
        assert!(q.intersection(&i).is_empty());
        assert_eq!(PointSet1D::closed(int(0), int(1)).difference(&q), i);
    }

    #[test]
    fn closure_and_membership() {
        let half_open = PointSet1D::interval(int(0), false, int(2), true, Qualifier::All);
        assert!(!half_open.is_closed());
        assert_eq!(half_open.closure(), PointSet1D::closed(int(0), int(2)));
        let q = PointSet1D::interval(int(0), true, int(1), true, Qualifier::RationalsOnly);
        assert_eq!(q.closure(), PointSet1D::closed(int(0), int(1)));
        assert!(q.contains(&rat(1, 3)));
        assert!(!q.meets_irrationals_in(&int(0), &int(1)));
        assert!(PointSet1D::point(int(3)).is_closed());
        assert_eq!(q.first_rational(), Some(int(0)));
        assert_eq!(ps("(0,1]").first_rational(), Some(rat(1, 2)));
        assert_eq!(ps("(0,1)-Q").first_rational(), None);
        assert_eq!(ps("(0,1]∪{3}").bounds(), Some((int(0), int(3))));
    }

    fn arb_set() -> impl proptest::strategy::Strategy<Value = PointSet1D> {
        let comp = (0i64..6, 0i64..4, any::<bool>(), any::<bool>(), 0u8..3).prop_map(|(l, w, lc, hc, q)| {
            let q = [Qualifier::All, Qualifier::RationalsOnly, Qualifier::IrrationalsOnly][q as usize];
            PointSet1D::interval(rat(l, 2), lc, rat(l + w, 2), hc, q)
        });
        proptest::collection::vec(comp, 0..4).prop_map(|cs| cs.iter().fold(PointSet1D::empty(), |a, c| a.union(c)))
    }

    proptest! {
        #[test]
        fn set_algebra(a in arb_set(), b in arb_set(), x in -2i64..10) {
            let x = rat(x, 4);
            prop_assert_eq!(a.union(&b).contains(&x), a.contains(&x) || b.contains(&x));
            prop_assert_eq!(a.intersection(&b).contains(&x), a.contains(&x) && b.contains(&x));
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
            prop_assert!(a.is_subset(&a.closure()));
            prop_assert!(a.closure().is_closed());
            let round: PointSet1D = a.to_string().parse().unwrap();
            prop_assert_eq!(round, a);
        }
    }
}
