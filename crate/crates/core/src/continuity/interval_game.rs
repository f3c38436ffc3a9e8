//! Two-player games on closed intervals where each payoff depends only on
//! the player's own strategy.
//!
//! With `u_i(z, s) = f_i(z)` and `H_{-i}` nonempty, `z ⪰_H z₀` is just
//! `f_i(z) ≥ f_i(z₀)`, so the contour `{z : z ⪰_H z₀}` is an upper contour
//! of `f_i`. Both `H_i` are required to be nonempty.

use std::fmt;

use thiserror::Error;

use super::classify::{Skeleton, upper_contour};
use super::function::SymbolicFn1D;
use super::pointset::{PointSet1D, Qualifier};
use crate::game::Player;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalGameError {
    #[error("player {0} does not exist")]
    NoSuchPlayer(usize),
    #[error("H_{0} is empty")]
    EmptyH(usize),
    #[error("H_{player} = {set} leaves the strategy interval")]
    HOutsideDomain { player: usize, set: String },
    #[error("{0} lies outside the strategy interval")]
    OutsideDomain(Rational),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no witness: {0}")]
    NoWitness(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalGame1D {
    payoffs: [SymbolicFn1D; 2],
}

impl IntervalGame1D {
    pub fn new(f1: SymbolicFn1D, f2: SymbolicFn1D) -> Self {
        IntervalGame1D { payoffs: [f1, f2] }
    }

    /// Both players share the payoff `f`, as in a symmetric own-payoff game.
    pub fn symmetric(f: SymbolicFn1D) -> Self {
        IntervalGame1D { payoffs: [f.clone(), f] }
    }

    pub fn payoff(&self, player: Player) -> &SymbolicFn1D {
        &self.payoffs[player]
    }

    pub fn strategies(&self, player: Player) -> PointSet1D {
        let (lo, hi) = self.payoffs[player].domain();
        PointSet1D::closed(lo.clone(), hi.clone())
    }

    fn check(&self, h: &[PointSet1D; 2], player: Player) -> Result<(), IntervalGameError> {
        if player > 1 {
            return Err(IntervalGameError::NoSuchPlayer(player + 1));
        }
        for (i, set) in h.iter().enumerate() {
            if !set.is_subset(&self.strategies(i)) {
                return Err(IntervalGameError::HOutsideDomain { player: i + 1, set: set.to_string() });
            }
        }
        if h[player].is_empty() {
            return Err(IntervalGameError::EmptyH(player + 1));
        }
        Ok(())
    }

    /// `{z : z ⪰_H z₀}` for player `i`, given `f_i(z₀) = level`.
    fn contour(&self, player: Player, level: &Rational) -> PointSet1D {
        upper_contour(&self.payoffs[player], level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KWitness {
    /// `z₀ = y` works for every `y` in the class; the contour is shown for
    /// a sample `y`.
    Itself { sample: Rational, contour: PointSet1D },
    /// One point serves the whole class.
    Point { z0: Rational, contour: PointSet1D },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClass {
    /// The strategies `y` this verdict covers.
    pub ys: PointSet1D,
    pub witness: KWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerK {
    pub player: Player,
    pub classes: Vec<KClass>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyKReport {
    pub players: Vec<PlayerK>,
    pub holds: bool,
}

impl fmt::Display for PropertyKReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.players {
            writeln!(f, "player {} property_K: {}", p.player + 1, p.holds)?;
            for c in &p.classes {
                match &c.witness {
                    KWitness::Itself { sample, contour } if c.ys.first_rational().is_some() => {
                        writeln!(f, "  y ∈ {}: z0 = y (at y={sample}: {contour})", c.ys)?
                    }
                    // a class of irrationals: the contour is the one of its level
                    KWitness::Itself { contour, .. } => writeln!(f, "  y ∈ {}: z0 = y ({contour})", c.ys)?,
                    KWitness::Point { z0, contour } => writeln!(f, "  y ∈ {}: z0 = {z0} ({contour})", c.ys)?,
                    KWitness::None => writeln!(f, "  y ∈ {}: no witness", c.ys)?,
                }
            }
        }
        Ok(())
    }
}

/// The smallest rational point where `f` equals `level`, if any.
fn rational_point_at(sk: &Skeleton, level: &Rational) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let mut offer = |x: Rational| {
        if best.as_ref().is_none_or(|b| x < *b) {
            best = Some(x);
        }
    };
    for (p, v) in &sk.points {
        if v == level {
            offer(p.clone());
        }
    }
    for c in &sk.cells {
        for (a, q) in &c.branches {
            if *q == Qualifier::IrrationalsOnly {
                continue;
            }
            match a.solve(level) {
                None if a.intercept == *level => offer(c.lo.midpoint(&c.hi)),
                Some(t) if c.lo < t && t < c.hi => offer(t),
                _ => {}
            }
        }
    }
    best
}

/// A point `z₀` with `f(z₀) ≥ floor` whose upper contour is closed, trying
/// representative levels upward from `floor`.
fn point_witness(g: &IntervalGame1D, player: Player, floor: &Rational) -> Option<(Rational, PointSet1D)> {
    let sk = Skeleton::new(&g.payoffs[player]);
    for level in sk.test_levels().into_iter().filter(|l| l >= floor) {
        let contour = g.contour(player, &level);
        if !contour.is_closed() {
            continue;
        }
        if let Some(z0) = rational_point_at(&sk, &level) {
            return Some((z0, contour));
        }
    }
    None
}

/// Decides property K player by player, one class of strategies `y` at a
/// time.
///
/// Classes are the special points of `f_i` and, inside each cell, the
/// stretches of one branch between points where it crosses a critical
/// level. Over such a stretch the contour `{f ≥ f(y)}` keeps its shape, so
/// `z₀ = y` works for all of it or for none. Otherwise a single `z₀` is
/// sought at or above the stretch's supremum.
pub fn property_k_check(g: &IntervalGame1D, h: &[PointSet1D; 2]) -> Result<PropertyKReport, IntervalGameError> {
    let mut players = Vec::new();
    for i in 0..2 {
        g.check(h, i)?;
        let f = &g.payoffs[i];
        let sk = Skeleton::new(f);
        let critical: Vec<Rational> = sk.critical_levels().into_iter().collect();
        let mut classes = Vec::new();

        let mut decide = |ys: PointSet1D, sample: Rational, level: Rational, sup: Rational, single: bool| {
            let own = g.contour(i, &level);
            let witness = if own.is_closed() {
                if single {
                    KWitness::Point { z0: sample, contour: own }
                } else {
                    KWitness::Itself { sample, contour: own }
                }
            } else {
                match point_witness(g, i, &sup) {
                    Some((z0, contour)) => KWitness::Point { z0, contour },
                    None => KWitness::None,
                }
            };
            classes.push(KClass { ys, witness });
        };

        for (k, (p, v)) in sk.points.iter().enumerate() {
            decide(PointSet1D::point(p.clone()), p.clone(), v.clone(), v.clone(), true);
            let Some(cell) = sk.cells.get(k) else { continue };
            for (a, q) in &cell.branches {
                let mut cuts: Vec<Rational> = critical
                    .iter()
                    .filter_map(|c| a.solve(c))
                    .filter(|t| cell.lo < *t && *t < cell.hi)
                    .collect();
                cuts.sort();
                cuts.dedup();
                let mut bounds = vec![cell.lo.clone()];
                bounds.extend(cuts.iter().cloned());
                bounds.push(cell.hi.clone());
                for w in bounds.windows(2) {
                    let mid = w[0].midpoint(&w[1]);
                    let sup = a.at(&w[0]).max(a.at(&w[1]));
                    let ys = PointSet1D::interval(w[0].clone(), false, w[1].clone(), false, *q);
                    decide(ys, mid.clone(), a.at(&mid), sup, false);
                }
                if *q != Qualifier::IrrationalsOnly {
                    for t in cuts {
                        let v = a.at(&t);
                        decide(PointSet1D::point(t.clone()), t, v.clone(), v, true);
                    }
                }
            }
        }
        let holds = classes.iter().all(|c| c.witness != KWitness::None);
        players.push(PlayerK { player: i, classes, holds });
    }
    let holds = players.iter().all(|p| p.holds);
    Ok(PropertyKReport { players, holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Witness {
    pub z0: Rational,
    /// `U = {z : z ⪰_H z₀}`.
    pub contour: PointSet1D,
    pub z_star: Rational,
    pub value: Rational,
    /// Whether `z*` lies in the given `H_i`.
    pub in_h: bool,
}

/// Follows the construction: take the property-K point `z₀` for `y`, then
/// maximise `f_i` over `U = {z : f_i(z) ≥ f_i(z₀)}`.
///
/// `U` is an upper contour below the supremum, so its supremum is the global
/// one and its maximisers are the global maximisers.
pub fn lemma3_witness(
    g: &IntervalGame1D,
    h: &[PointSet1D; 2],
    player: Player,
    x: &Rational,
    y: &Rational,
) -> Result<Lemma3Witness, IntervalGameError> {
    g.check(h, player)?;
    g.check(h, 1 - player)?;
    let f = &g.payoffs[player];
    let fx = f.at(x).map_err(|_| IntervalGameError::OutsideDomain(x.clone()))?;
    let fy = f.at(y).map_err(|_| IntervalGameError::OutsideDomain(y.clone()))?;
    if fy <= fx {
        return Err(IntervalGameError::Precondition(format!("f({y}) = {fy} does not exceed f({x}) = {fx}")));
    }
    let own = g.contour(player, &fy);
    let (z0, contour) = if own.is_closed() {
        (y.clone(), own)
    } else {
        point_witness(g, player, &fy)
            .ok_or_else(|| IntervalGameError::Precondition(format!("property K fails at y = {y}")))?
    };

    let sk = Skeleton::new(f);
    let m = sk.sup();
    let argmax = upper_contour(f, &m).intersection(&contour);
    let z_star = argmax.first_rational().ok_or_else(|| {
        if argmax.is_empty() {
            IntervalGameError::NoWitness(format!("sup {m} is not attained on {contour}"))
        } else {
            IntervalGameError::NoWitness(format!("maximisers {argmax} are all irrational"))
        }
    })?;
    let value = f.at(&z_star).expect("z* lies in the domain");
    if value <= fx || value != m {
        return Err(IntervalGameError::NoWitness(format!("z* = {z_star} fails validation")));
    }
    Ok(Lemma3Witness { z0, contour, in_h: h[player].contains(&z_star), z_star, value })
}
