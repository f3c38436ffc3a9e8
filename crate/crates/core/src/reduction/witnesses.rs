//! Constructive witnesses for the undominated-dominator lemmas.
//!
//! Given a reduction `G →* H` and `y ≻_H x`, the pure version asks for a
//! `z* ∈ H_i` with `z* ≻_H x` that no mixture over `G_i` dominates. The mixed
//! version starts from `μ' ≻_H x` and asks for such a `μ* ∈ Δ(H_i)`.
//!
//! The pure version can fail in finite games: a pure dominator that survives
//! pure elimination may still be beaten by a mixture (see the tests). The
//! search reports that as [`LemmaError::Counterexample`] instead of hiding it.

use thiserror::Error;

use super::ReductionTrace;
use crate::dominance::{best_mixture, dominates_pure, find_mixed_dominator, DominanceError, Support};
use crate::game::{opponents_profiles, Game, Pairing, Player, Strategy, StrategySet};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::measures::{min_gap, MixedStrategy};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Dominance(#[from] DominanceError),
    #[error("counterexample: {0}")]
    Counterexample(String),
}

/// A `z* ∈ H_i` with `z* ≻_H x` and no `μ ∈ Δ(G_i)` with `μ ≻_H z*`, where
/// `H` is the trace's terminal pairing and `y ≻_H x`.
///
/// First tries the direct construction: among `Z = {z : u_i(z,s) ≥ u_i(y,s)
/// ∀ s ∈ H_{-i}}`, take a maximiser of `u_i(·, s*)` for the first profile
/// `s*`. If that candidate fails, every `z ∈ H_i` is tried in index order.
pub fn lemma6_witness(
    game: &Game,
    trace: &ReductionTrace,
    player: Player,
    x: Strategy,
    y: Strategy,
) -> Result<Strategy, LemmaError> {
    let h = &trace.terminal;
    if x == y {
        return Err(LemmaError::Precondition("x = y, and strict dominance is irreflexive".into()));
    }
    if !dominates_pure(game, h, player, y, x)? {
        return Err(LemmaError::Precondition(format!(
            "{} does not strictly dominate {} on the terminal pairing",
            game.label(player, y),
            game.label(player, x)
        )));
    }
    let profiles: Vec<_> = opponents_profiles(game, h, player).collect();
    let valid = |z: Strategy| -> Result<bool, LemmaError> {
        Ok(h.contains(player, z)
            && dominates_pure(game, h, player, z, x)?
            && find_mixed_dominator(game, h, player, z, Support::Ambient)?.is_none())
    };

    let contour: Vec<Strategy> = (0..game.num_strategies(player))
        .filter(|&z| profiles.iter().all(|o| game.payoff_at(player, z, o.offset) >= game.payoff_at(player, y, o.offset)))
        .collect();
    let s_star = profiles[0].offset;
    let constructed = contour
        .iter()
        .copied()
        .max_by(|&a, &b| game.payoff_at(player, a, s_star).cmp(game.payoff_at(player, b, s_star)).then(b.cmp(&a)))
        .expect("y lies in its own contour");
    if valid(constructed)? {
        return Ok(constructed);
    }
    for z in h.set(player).iter() {
        if valid(z)? {
            return Ok(z);
        }
    }
    let blockers: Vec<String> = h
        .set(player)
        .iter()
        .filter(|&z| dominates_pure(game, h, player, z, x).unwrap_or(false))
        .map(|z| {
            let cert = find_mixed_dominator(game, h, player, z, Support::Ambient).ok().flatten();
            match cert {
                Some(c) => format!("{} <= {}", game.label(player, z), c.weights.render(game)),
                None => game.label(player, z).to_string(),
            }
        })
        .collect();
    Err(LemmaError::Counterexample(format!(
        "player {} strategy {}: every surviving pure dominator is beaten by a mixture [{}] on {}",
        player + 1,
        game.label(player, x),
        blockers.join("; "),
        h.render(game)
    )))
}

/// A `μ* ∈ Δ(H_i)` with `μ* ≻_H x` that no mixture over `G_i` dominates,
/// given `μ' ≻_H x`.
///
/// Solves `max V_i(μ, s*)` over `Z = {μ ∈ Δ(G_i) : V_i(μ,s) ≥ V_i(μ',s) ∀ s
/// ∈ H_{-i}}` with `s*` the first profile of `H_{-i}`. Any maximiser is
/// undominated: a dominator would lie in `Z` and score higher at `s*`. Its
/// support lies in `H_i` whenever `H` is reached from the game by mixed
/// reduction; the result is checked rather than assumed.
pub fn lemma8_witness(
    game: &Game,
    h: &Pairing,
    player: Player,
    mu_prime: &MixedStrategy,
    x: Strategy,
) -> Result<MixedStrategy, LemmaError> {
    if mu_prime.player() != player {
        return Err(LemmaError::Precondition("μ' belongs to another player".into()));
    }
    let profiles: Vec<_> = opponents_profiles(game, h, player).collect();
    if profiles.is_empty() {
        return Err(LemmaError::Precondition("opponents have no surviving profile".into()));
    }
    let dx = MixedStrategy::dirac(game, player, x).map_err(DominanceError::from)?;
    if !min_gap(game, h, mu_prime, &dx).map_err(DominanceError::from)?.is_some_and(|(g, _)| g.is_positive()) {
        return Err(LemmaError::Precondition("μ' does not strictly dominate x".into()));
    }

    let k = game.num_strategies(player);
    let mut lp = LinearProgram::new(k);
    lp.objective = (0..k).map(|y| game.payoff_at(player, y, profiles[0].offset).clone()).collect();
    for o in &profiles {
        let row = (0..k).map(|y| game.payoff_at(player, y, o.offset).clone()).collect();
        lp.add(row, Relation::Ge, mu_prime.value_at(game, o.offset));
    }
    lp.add(vec![Rational::one(); k], Relation::Eq, Rational::one());
    let LpOutcome::Optimal { point, .. } = lp.maximize() else {
        unreachable!("μ' is feasible and the simplex is bounded");
    };
    let mu_star = MixedStrategy::from_parts(
        player,
        point.into_iter().enumerate().filter(|(_, w)| !w.is_zero()).collect(),
    );

    let render = mu_star.render(game);
    if !min_gap(game, h, &mu_star, &dx).map_err(DominanceError::from)?.is_some_and(|(g, _)| g.is_positive()) {
        return Err(LemmaError::Counterexample(format!("maximiser {render} does not dominate {}", game.label(player, x))));
    }
    let challenger = best_mixture(game, StrategySet::full(k), h, &mu_star)?;
    if challenger.margin.is_positive() {
        return Err(LemmaError::Counterexample(format!(
            "maximiser {render} is dominated by {}",
            challenger.weights.render(game)
        )));
    }
    if !mu_star.is_supported_in(h.set(player)) {
        return Err(LemmaError::Counterexample(format!("maximiser {render} puts weight outside {}", h.render(game))));
    }
    Ok(mu_star)
}
