//! Piecewise functions on a closed rational interval.
//!
//! Each piece is an interval with its own endpoint flags and a rule: affine
//! `αx + β`, or a split rule with one affine map on rationals and another on
//! irrationals. Point overrides take precedence over pieces.
//!
//! Text format, one directive per line (`#` starts a comment):
//!
//! ```text
//! domain: 0 2
//! piece: [0,1) affine 0 2
//! piece: [1,2] affine 1 1
//! override: 0 1
//! ```
//!
//! A split piece reads `piece: [0,1] split 0 1 / 0 0`, rationals first.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::pointset::Qualifier;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FnError {
    #[error("empty domain {0}")]
    EmptyDomain(String),
    #[error("no pieces")]
    NoPieces,
    #[error("bad piece interval {0}")]
    BadInterval(String),
    #[error("pieces leave {0} uncovered")]
    Gap(String),
    #[error("pieces overlap on {0}")]
    Overlap(String),
    #[error("{0} lies outside the domain")]
    OutsideDomain(Rational),
    #[error("duplicate override at {0}")]
    DuplicateOverride(Rational),
    #[error("irrational argument in {0} spans more than one piece")]
    SpansPieces(String),
    #[error("irrational argument in {0} meets a non-constant rule, so the value is irrational")]
    NonConstant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseFnError {
    pub line: usize,
    pub message: String,
}

/// `slope · x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Affine { slope, intercept }
    }

    pub fn constant(c: Rational) -> Self {
        Affine { slope: Rational::zero(), intercept: c }
    }

    pub fn at(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    /// The point where the map equals `level`, if the slope is nonzero.
    pub fn solve(&self, level: &Rational) -> Option<Rational> {
        (!self.slope.is_zero()).then(|| (level - &self.intercept) / &self.slope)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Affine(Affine),
    Split { rational: Affine, irrational: Affine },
}

impl Rule {
    /// The maps in force on a piece, with the points each one covers.
    pub fn branches(&self) -> Vec<(&Affine, Qualifier)> {
        match self {
            Rule::Affine(a) => vec![(a, Qualifier::All)],
            Rule::Split { rational, irrational } => {
                vec![(rational, Qualifier::RationalsOnly), (irrational, Qualifier::IrrationalsOnly)]
            }
        }
    }

    fn rational_branch(&self) -> &Affine {
        match self {
            Rule::Affine(a) | Rule::Split { rational: a, .. } => a,
        }
    }

    fn irrational_branch(&self) -> &Affine {
        match self {
            Rule::Affine(a) | Rule::Split { irrational: a, .. } => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
    pub rule: Rule,
}

impl Piece {
    pub fn new(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool, rule: Rule) -> Self {
        Piece { lo, lo_closed, hi, hi_closed, rule }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (self.lo < *x || (self.lo_closed && self.lo == *x)) && (*x < self.hi || (self.hi_closed && self.hi == *x))
    }

    fn interval_text(&self) -> String {
        format!(
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Where to evaluate: a rational point, or any irrational inside an open
/// interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Rational(Rational),
    Irrational { lo: Rational, hi: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicFn1D {
    lo: Rational,
    hi: Rational,
    pieces: Vec<Piece>,
    overrides: BTreeMap<Rational, Rational>,
}

impl SymbolicFn1D {
    /// Checks that the pieces partition `[lo, hi]` exactly. Pieces may come
    /// in any order; they are stored sorted.
    pub fn new(
        lo: Rational,
        hi: Rational,
        mut pieces: Vec<Piece>,
        overrides: BTreeMap<Rational, Rational>,
    ) -> Result<Self, FnError> {
        if lo > hi {
            return Err(FnError::EmptyDomain(format!("[{lo},{hi}]")));
        }
        if pieces.is_empty() {
            return Err(FnError::NoPieces);
        }
        for p in &pieces {
            if p.lo > p.hi || (p.lo == p.hi && !(p.lo_closed && p.hi_closed)) {
                return Err(FnError::BadInterval(p.interval_text()));
            }
        }
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)).then(a.hi.cmp(&b.hi)));

        let first = &pieces[0];
        if first.lo > lo || (first.lo == lo && !first.lo_closed) {
            return Err(FnError::Gap(format!("[{lo},{}{}", first.lo, if first.lo_closed { ')' } else { ']' })));
        }
        if first.lo < lo {
            return Err(FnError::OutsideDomain(first.lo.clone()));
        }
        for w in pieces.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.hi < b.lo {
                return Err(FnError::Gap(format!(
                    "{}{},{}{}",
                    if a.hi_closed { '(' } else { '[' },
                    a.hi,
                    b.lo,
                    if b.lo_closed { ')' } else { ']' }
                )));
            }
            if a.hi > b.lo {
                let end = a.hi.clone().min(b.hi.clone());
                return Err(FnError::Overlap(format!("[{},{end}]", b.lo)));
            }
            match (a.hi_closed, b.lo_closed) {
                (true, true) => return Err(FnError::Overlap(format!("{{{}}}", a.hi))),
                (false, false) => return Err(FnError::Gap(format!("{{{}}}", a.hi))),
                _ => {}
            }
        }
        let last = pieces.last().unwrap();
        if last.hi < hi || (last.hi == hi && !last.hi_closed) {
            return Err(FnError::Gap(format!("{}{},{hi}]", if last.hi_closed { '(' } else { '[' }, last.hi)));
        }
        if last.hi > hi {
            return Err(FnError::OutsideDomain(last.hi.clone()));
        }
        if let Some(p) = overrides.keys().find(|p| **p < lo || **p > hi) {
            return Err(FnError::OutsideDomain(p.clone()));
        }
        Ok(SymbolicFn1D { lo, hi, pieces, overrides })
    }

    pub fn affine(lo: Rational, hi: Rational, slope: Rational, intercept: Rational) -> Result<Self, FnError> {
        let piece = Piece::new(lo.clone(), true, hi.clone(), true, Rule::Affine(Affine::new(slope, intercept)));
        Self::new(lo, hi, vec![piece], BTreeMap::new())
    }

    pub fn constant(lo: Rational, hi: Rational, c: Rational) -> Result<Self, FnError> {
        Self::affine(lo, hi, Rational::zero(), c)
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn overrides(&self) -> &BTreeMap<Rational, Rational> {
        &self.overrides
    }

    fn piece_at(&self, x: &Rational) -> &Piece {
        self.pieces.iter().find(|p| p.contains(x)).expect("pieces partition the domain")
    }

    pub fn eval(&self, arg: &Arg) -> Result<Rational, FnError> {
        match arg {
            Arg::Rational(x) => self.at(x),
            Arg::Irrational { lo, hi } => {
                for p in [lo, hi] {
                    if *p < self.lo || *p > self.hi {
                        return Err(FnError::OutsideDomain(p.clone()));
                    }
                }
                if lo >= hi {
                    return Err(FnError::BadInterval(format!("({lo},{hi})")));
                }
                let piece = self
                    .pieces
                    .iter()
                    .find(|p| p.lo <= *lo && *hi <= p.hi)
                    .ok_or_else(|| FnError::SpansPieces(format!("({lo},{hi})")))?;
                let branch = piece.rule.irrational_branch();
                if !branch.is_constant() {
                    return Err(FnError::NonConstant(format!("({lo},{hi})")));
                }
                Ok(branch.intercept.clone())
            }
        }
    }

    /// Value at a rational point.
    pub fn at(&self, x: &Rational) -> Result<Rational, FnError> {
        if *x < self.lo || *x > self.hi {
            return Err(FnError::OutsideDomain(x.clone()));
        }
        if let Some(v) = self.overrides.get(x) {
            return Ok(v.clone());
        }
        Ok(self.piece_at(x).rule.rational_branch().at(x))
    }

    /// `x ↦ f(lo + hi − x)` on the same domain.
    pub fn reflect(&self) -> SymbolicFn1D {
        let s = &self.lo + &self.hi;
        let flip = |a: &Affine| Affine::new(-a.slope.clone(), &a.slope * &s + &a.intercept);
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let rule = match &p.rule {
                    Rule::Affine(a) => Rule::Affine(flip(a)),
                    Rule::Split { rational, irrational } => Rule::Split { rational: flip(rational), irrational: flip(irrational) },
                };
                Piece::new(&s - &p.hi, p.hi_closed, &s - &p.lo, p.lo_closed, rule)
            })
            .collect();
        let overrides = self.overrides.iter().map(|(p, v)| (&s - p, v.clone())).collect();
        SymbolicFn1D::new(self.lo.clone(), self.hi.clone(), pieces, overrides).expect("reflection keeps the partition")
    }
}

impl fmt::Display for SymbolicFn1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain: {} {}", self.lo, self.hi)?;
        for p in &self.pieces {
            match &p.rule {
                Rule::Affine(a) => writeln!(f, "piece: {} affine {} {}", p.interval_text(), a.slope, a.intercept)?,
                Rule::Split { rational: r, irrational: i } => writeln!(
                    f,
                    "piece: {} split {} {} / {} {}",
                    p.interval_text(),
                    r.slope,
                    r.intercept,
                    i.slope,
                    i.intercept
                )?,
            }
        }
        for (p, v) in &self.overrides {
            writeln!(f, "override: {p} {v}")?;
        }
        Ok(())
    }
}

fn parse_interval(text: &str) -> Result<(Rational, bool, Rational, bool), String> {
    let lo_closed = match text.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(format!("interval {text:?} must start with [ or (")),
    };
    let hi_closed = match text.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(format!("interval {text:?} must end with ] or )")),
    };
    let (l, r) = text[1..text.len() - 1].split_once(',').ok_or_else(|| format!("interval {text:?} needs two endpoints"))?;
    let l: Rational = l.parse().map_err(|e| format!("{e}"))?;
    let r: Rational = r.parse().map_err(|e| format!("{e}"))?;
    Ok((l, lo_closed, r, hi_closed))
}

fn parse_affine(words: &[&str]) -> Result<Affine, String> {
    match words {
        [a, b] => Ok(Affine::new(a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?)),
        _ => Err(format!("expected slope and intercept, found {:?}", words.join(" "))),
    }
}

pub fn parse_function(text: &str) -> Result<SymbolicFn1D, ParseFnError> {
    let mut domain: Option<(Rational, Rational)> = None;
    let mut pieces = Vec::new();
    let mut overrides = BTreeMap::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| ParseFnError { line, message };
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        last_line = line;
        let (key, rest) = content.split_once(':').ok_or_else(|| err(format!("expected `key: value`, found {content:?}")))?;
        let rest = rest.trim();
        match key.trim() {
            "domain" => {
                if domain.is_some() {
                    return Err(err("domain given twice".into()));
                }
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = words[..] else {
                    return Err(err(format!("expected `domain: a b`, found {rest:?}")));
                };
                let a: Rational = a.parse().map_err(|e| err(format!("{e}")))?;
                let b: Rational = b.parse().map_err(|e| err(format!("{e}")))?;
                if a > b {
                    return Err(err(format!("empty domain [{a},{b}]")));
                }
                domain = Some((a, b));
            }
            "piece" => {
                let close = rest.find([']', ')']).ok_or_else(|| err(format!("missing interval in {rest:?}")))?;
                let (lo, lc, hi, hc) = parse_interval(&rest[..=close]).map_err(err)?;
                let words: Vec<&str> = rest[close + 1..].split_whitespace().collect();
                let rule = match words.first() {
                    Some(&"affine") => Rule::Affine(parse_affine(&words[1..]).map_err(err)?),
                    Some(&"split") => {
                        let body = &words[1..];
                        let slash = body.iter().position(|w| *w == "/").ok_or_else(|| err("split rule needs `/`".into()))?;
                        Rule::Split {
                            rational: parse_affine(&body[..slash]).map_err(err)?,
                            irrational: parse_affine(&body[slash + 1..]).map_err(err)?,
                        }
                    }
                    _ => return Err(err(format!("expected `affine` or `split` after the interval in {rest:?}"))),
                };
                pieces.push(Piece::new(lo, lc, hi, hc, rule));
            }
            "override" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [p, v] = words[..] else {
                    return Err(err(format!("expected `override: p v`, found {rest:?}")));
                };
                let p: Rational = p.parse().map_err(|e| err(format!("{e}")))?;
                let v: Rational = v.parse().map_err(|e| err(format!("{e}")))?;
                if overrides.insert(p.clone(), v).is_some() {
                    return Err(err(FnError::DuplicateOverride(p).to_string()));
                }
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    let (lo, hi) = domain.ok_or(ParseFnError { line: last_line.max(1), message: "missing `domain:` line".into() })?;
    SymbolicFn1D::new(lo, hi, pieces, overrides).map_err(|e| ParseFnError { line: last_line.max(1), message: e.to_string() })
}

impl FromStr for SymbolicFn1D {
    type Err = ParseFnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_function(s)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn evaluation() {
        let f = example1();
        assert_eq!(f.at(&int(0)), Ok(int(1)));
        assert_eq!(f.at(&rat(1, 2)), Ok(int(2)));
        assert_eq!(f.at(&rat(3, 2)), Ok(rat(5, 2)));
        assert_eq!(f.at(&int(3)), Err(FnError::OutsideDomain(int(3))));
        assert_eq!(f.eval(&Arg::Irrational { lo: rat(1, 4), hi: rat(1, 2) }), Ok(int(2)));
        assert!(matches!(f.eval(&Arg::Irrational { lo: rat(1, 2), hi: rat(3, 2) }), Err(FnError::SpansPieces(_))));
        assert!(matches!(f.eval(&Arg::Irrational { lo: rat(5, 4), hi: rat(3, 2) }), Err(FnError::NonConstant(_))));

        let g = example2();
        assert_eq!(g.eval(&Arg::Irrational { lo: int(0), hi: int(1) }), Ok(int(0)));
        assert_eq!(g.at(&rat(1, 3)), Ok(int(1)));
    }

    #[test]
    fn partition_errors() {
        let parse = |s: &str| s.parse::<SymbolicFn1D>().unwrap_err().to_string();
        assert_eq!(parse("domain: 0 2\npiece: [0,1) affine 0 0\npiece: (1,2] affine 0 0"), "line 3: pieces leave {1} uncovered");
        assert_eq!(parse("domain: 0 2\npiece: [0,1] affine 0 0\npiece: [1,2] affine 0 0"), "line 3: pieces overlap on {1}");
        assert_eq!(parse("domain: 0 2\npiece: [0,1] affine 0 0\npiece: [3/2,2] affine 0 0"), "line 3: pieces leave (1,3/2) uncovered");
        assert_eq!(parse("domain: 0 2\npiece: [0,3/2] affine 0 0\npiece: (1,2] affine 0 0"), "line 3: pieces overlap on [1,3/2]");
        assert_eq!(parse("domain: 0 2\npiece: (0,2] affine 0 0"), "line 2: pieces leave [0,0] uncovered");
        assert_eq!(parse("domain: 0 2\npiece: [0,2) affine 0 0"), "line 2: pieces leave [2,2] uncovered");
        assert_eq!(parse("domain: 0 2\npiece: [0,2] affine 0\n"), "line 2: expected slope and intercept, found \"0\"");
        assert_eq!(parse("piece: [0,2] affine 0 0"), "line 1: missing `domain:` line");
        assert_eq!(parse("domain: 0 1\npiece: [0,1] affine 0 0\noverride: 2 0"), "line 3: 2 lies outside the domain");
        assert_eq!(parse("domain: 0 1\npiece: [0,1] cubic"), "line 2: expected `affine` or `split` after the interval in \"[0,1] cubic\"");
    }

    #[test]
    fn text_round_trip_and_reflection() {
        for f in [example1(), example2()] {
            assert_eq!(f.to_string().parse::<SymbolicFn1D>().unwrap(), f);
            assert_eq!(f.reflect().reflect(), f);
        }
        let r = example1().reflect();
        assert_eq!(r.at(&int(2)), Ok(int(1)));
        assert_eq!(r.at(&rat(1, 2)), Ok(rat(5, 2)));
        assert_eq!(r.at(&rat(3, 2)), Ok(int(2)));
    }
}
