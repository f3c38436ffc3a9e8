//! Random functions for corpus checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::function::{Affine, Piece, Rule, SymbolicFn1D};
use crate::rational::{rat, Rational};

fn small(rng: &mut impl Rng, range: std::ops::RangeInclusive<i64>) -> Rational {
    rat(rng.gen_range(range), *[1, 2].choose(rng).unwrap())
}

fn rule(rng: &mut impl Rng) -> Rule {
    if rng.gen_bool(0.3) {
        Rule::Split { rational: affine(rng), irrational: affine(rng) }
    } else {
        Rule::Affine(affine(rng))
    }
}

fn affine(rng: &mut impl Rng) -> Affine {
    // constants are common so that plateaus and attained maxima show up
    let slope = if rng.gen_bool(0.4) { Rational::zero() } else { small(rng, -2..=2) };
    Affine::new(slope, small(rng, -2..=4))
}

/// A function on `[0, d]` with up to three interior breakpoints on a
/// quarter grid, random endpoint ownership, occasional split pieces and
/// point pieces, and up to two overrides.
pub fn random_function(rng: &mut impl Rng) -> SymbolicFn1D {
    let d: i64 = rng.gen_range(1..=3);
    let grid: Vec<Rational> = (1..4 * d).map(|k| rat(k, 4)).collect();
    let count = rng.gen_range(0..=3.min(grid.len()));
    let mut cuts: Vec<Rational> = grid.choose_multiple(rng, count).cloned().collect();
    cuts.sort();
    let mut bounds = vec![Rational::zero()];
    bounds.extend(cuts);
    bounds.push(Rational::from_integer(d));

    let mut pieces = Vec::new();
    // whether the current piece owns its left end
    let mut lo_closed = true;
    for w in bounds.windows(2) {
        let last = w[1] == *bounds.last().unwrap();
        let (hi_closed, next_lo_closed, point_piece) = match (last, rng.gen_range(0..3)) {
            (true, _) => (true, true, false),
            (false, 0) => (true, false, false),
            (false, 1) => (false, true, false),
            (false, _) => (false, false, true),
        };
        pieces.push(Piece::new(w[0].clone(), lo_closed, w[1].clone(), hi_closed, rule(rng)));
        if point_piece {
            pieces.push(Piece::new(w[1].clone(), true, w[1].clone(), true, rule(rng)));
        }
        lo_closed = next_lo_closed;
    }

    let mut overrides = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=2) {
        let p = rat(rng.gen_range(0..=4 * d), 4);
        overrides.insert(p, small(rng, -2..=5));
    }
    SymbolicFn1D::new(Rational::zero(), Rational::from_integer(d), pieces, overrides).expect("generated pieces partition the domain")
}
