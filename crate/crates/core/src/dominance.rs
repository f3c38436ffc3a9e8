//! Strict dominance between pure and mixed strategies on a pairing, and the
//! exact LP search for a dominating mixture.
//!
//! Every relation is false when the opponents of the player have no
//! surviving profile. Dominance against product measures of the opponents
//! reduces to dominance against pure profiles: the expected payoff is
//! multilinear in the opponents' measures, so its minimum over the product of
//! simplices is attained at a vertex.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fourier_motzkin;
use crate::game::{opponents_profiles, Game, GameError, OpponentProfile, Pairing, Player, Strategy, StrategySet};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::measures::{min_gap, MeasureError, MixedStrategy};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominanceError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("player {player}'s opponents have no surviving profile; dominance is undefined")]
    EmptyOpponents { player: Player },
    #[error("candidate support is empty")]
    EmptySupport,
    #[error("oracle unavailable: support {support} > 4 or {profiles} > 8 opponent profiles")]
    OracleUnavailable { support: usize, profiles: usize },
}

/// Where a dominating mixture may put weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Support {
    /// Any strategy of the ambient game, `Δ(G_i)`.
    Ambient,
    /// Only the pairing's own strategies, `Δ(H_i)`.
    Pairing,
}

impl Support {
    pub fn strategies(self, game: &Game, pairing: &Pairing, player: Player) -> StrategySet {
        match self {
            Support::Ambient => StrategySet::full(game.num_strategies(player)),
            Support::Pairing => pairing.set(player),
        }
    }
}

/// An optimal dominating mixture: `margin` is the optimal `ε*`, i.e. the
/// smallest payoff gap over the opponent profiles, and `binding` is a profile
/// where that gap is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub weights: MixedStrategy,
    pub margin: Rational,
    pub binding: Vec<Strategy>,
}

/// `y ≻_H x`.
pub fn dominates_pure(game: &Game, pairing: &Pairing, player: Player, y: Strategy, x: Strategy) -> Result<bool, DominanceError> {
    Ok(pure_gap(game, pairing, player, y, x)?.is_some_and(|(gap, _)| gap.is_positive()))
}

/// `min_{s ∈ H_{-i}} u_i(y,s) − u_i(x,s)` with a minimising profile, `None`
/// when `H_{-i}` is empty.
pub fn pure_gap(
    game: &Game,
    pairing: &Pairing,
    player: Player,
    y: Strategy,
    x: Strategy,
) -> Result<Option<(Rational, Vec<Strategy>)>, DominanceError> {
    game.check_strategy(player, y)?;
    game.check_strategy(player, x)?;
    let mut best: Option<(Rational, Vec<Strategy>)> = None;
    for opp in opponents_profiles(game, pairing, player) {
        let gap = game.payoff_at(player, y, opp.offset) - game.payoff_at(player, x, opp.offset);
        let lower = best.as_ref().is_none_or(|(b, _)| gap < *b);
        if lower {
            let stop = !gap.is_positive();
            best = Some((gap, opp.choices));
            if stop {
                break;
            }
        }
    }
    Ok(best)
}

/// `μ ≻_H x`.
pub fn dominates_mixed_over_pure(game: &Game, pairing: &Pairing, mu: &MixedStrategy, x: Strategy) -> Result<bool, DominanceError> {
    let dx = MixedStrategy::dirac(game, mu.player(), x)?;
    dominates_mixed_over_mixed(game, pairing, mu, &dx)
}

/// `μ ≻_H m`: strictly higher expected payoff at every `s ∈ H_{-i}`.
pub fn dominates_mixed_over_mixed(
    game: &Game,
    pairing: &Pairing,
    mu: &MixedStrategy,
    m: &MixedStrategy,
) -> Result<bool, DominanceError> {
    Ok(min_gap(game, pairing, mu, m)?.is_some_and(|(gap, _)| gap.is_positive()))
}

/// `μ ≻_{Δ(H)} m`: dominance against every product measure of the
/// opponents. Decided through the vertex reduction described in the module
/// documentation.
pub fn dominates_delta(game: &Game, pairing: &Pairing, mu: &MixedStrategy, m: &MixedStrategy) -> Result<bool, DominanceError> {
    dominates_mixed_over_mixed(game, pairing, mu, m)
}

/// Searches `Δ(G_i)` or `Δ(H_i)` for a mixture strictly dominating `x`.
pub fn find_mixed_dominator(
    game: &Game,
    pairing: &Pairing,
    player: Player,
    x: Strategy,
    support: Support,
) -> Result<Option<LpCertificate>, DominanceError> {
    let target = MixedStrategy::dirac(game, player, x)?;
    let candidates = support.strategies(game, pairing, player);
    let cert = best_mixture(game, candidates, pairing, &target)?;
    Ok(cert.margin.is_positive().then_some(cert))
}

/// The mixture over `candidates` maximising the worst-case gap over the
/// target `m` on `eval`'s opponent profiles, whether or not that gap is
/// positive.
pub fn best_mixture(
    game: &Game,
    candidates: StrategySet,
    eval: &Pairing,
    target: &MixedStrategy,
) -> Result<LpCertificate, DominanceError> {
    let player = target.player();
    let ys: Vec<Strategy> = candidates.iter().collect();
    if ys.is_empty() {
        return Err(DominanceError::EmptySupport);
    }
    for &y in &ys {
        game.check_strategy(player, y)?;
    }
    let profiles: Vec<OpponentProfile> = opponents_profiles(game, eval, player).collect();
    if profiles.is_empty() {
        return Err(DominanceError::EmptyOpponents { player });
    }
    let gaps: Vec<Vec<Rational>> = profiles
        .iter()
        .map(|opp| {
            let base = target.value_at(game, opp.offset);
            ys.iter().map(|&y| game.payoff_at(player, y, opp.offset) - &base).collect()
        })
        .collect();

    // maximise t subject to Σ w_y d_y(s) − t ≥ −D, Σ w = 1, where ε = t − D
    // and D bounds |d| so that t ≥ 0 loses nothing.
    let shift = gaps.iter().flatten().map(Rational::abs).max().unwrap_or_default();
    let k = ys.len();
    let mut lp = LinearProgram::new(k + 1);
    lp.objective[k] = Rational::one();
    for row in &gaps {
        let mut coeffs = row.clone();
        coeffs.push(-Rational::one());
        lp.add(coeffs, Relation::Ge, -&shift);
    }
    let mut simplex = vec![Rational::one(); k];
    simplex.push(Rational::zero());
    lp.add(simplex, Relation::Eq, Rational::one());

    let LpOutcome::Optimal { value, point } = lp.maximize() else {
        unreachable!("the dominance program is feasible and bounded");
    };
    let margin = value - &shift;
    let weights = MixedStrategy::from_parts(
        player,
        ys.iter().zip(&point).filter(|(_, w)| !w.is_zero()).map(|(&y, w)| (y, w.clone())).collect::<BTreeMap<_, _>>(),
    );
    let binding = profiles
        .iter()
        .zip(&gaps)
        .find(|(_, row)| row.iter().zip(&point).map(|(d, w)| d * w).sum::<Rational>() == margin)
        .map(|(opp, _)| opp.choices.clone())
        .expect("some constraint is tight at the optimum");
    Ok(LpCertificate { weights, margin, binding })
}

/// Fourier–Motzkin decision of the same question as
/// [`find_mixed_dominator`], limited to small instances.
pub fn fm_oracle_dominated(
    game: &Game,
    pairing: &Pairing,
    player: Player,
    x: Strategy,
    support: Support,
) -> Result<bool, DominanceError> {
    game.check_strategy(player, x)?;
    let ys: Vec<Strategy> = support.strategies(game, pairing, player).iter().collect();
    let profiles: Vec<OpponentProfile> = opponents_profiles(game, pairing, player).collect();
    if ys.len() > 4 || profiles.len() > 8 {
        return Err(DominanceError::OracleUnavailable { support: ys.len(), profiles: profiles.len() });
    }
    if profiles.is_empty() {
        return Err(DominanceError::EmptyOpponents { player });
    }
    let gaps: Vec<Vec<Rational>> = profiles
        .iter()
        .map(|opp| {
            let ux = game.payoff_at(player, x, opp.offset);
            ys.iter().map(|&y| game.payoff_at(player, y, opp.offset) - ux).collect()
        })
        .collect();
    Ok(fourier_motzkin::strictly_positive_mixture(&gaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures::{matching_pennies, prisoners_dilemma, three_by_two};
    use crate::game::pure_nash_in;
    use crate::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_game(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Game {
        Game::from_fn(sizes, |_, _| rat(rng.gen_range(-4..=4), [1, 2, 4][rng.gen_range(0..3)])).unwrap()
    }

    fn random_pairing(rng: &mut ChaCha8Rng, game: &Game) -> Pairing {
        let sets = (0..game.num_players())
            .map(|p| {
                let k = game.num_strategies(p);
                loop {
                    let bits: StrategySet = (0..k).filter(|_| rng.gen_bool(0.6)).collect();
                    if !bits.is_empty() {
                        break bits;
                    }
                }
            })
            .collect();
        Pairing::from_sets(game, sets).unwrap()
    }

    fn random_measure(rng: &mut ChaCha8Rng, game: &Game, player: Player) -> MixedStrategy {
        let k = game.num_strategies(player);
        loop {
            let raw: Vec<i64> = (0..k).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0..5) } else { 0 }).collect();
            let total: i64 = raw.iter().sum();
            if total > 0 {
                return MixedStrategy::new(game, player, raw.iter().enumerate().map(|(s, &w)| (s, rat(w, total)))).unwrap();
            }
        }
    }

    #[test]
    fn pure_examples() {
        let pd = prisoners_dilemma();
        let g = Pairing::full(&pd);
        assert!(dominates_pure(&pd, &g, 0, 1, 0).unwrap());
        assert!(!dominates_pure(&pd, &g, 0, 0, 1).unwrap());
        assert!(!dominates_pure(&pd, &g, 0, 1, 1).unwrap());
        let empty = Pairing::from_indices(&pd, &[&[0, 1], &[]]).unwrap();
        for (y, x) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!(!dominates_pure(&pd, &empty, 0, y, x).unwrap());
        }
        assert!(dominates_pure(&pd, &g, 0, 2, 0).is_err());
    }

    #[test]
    fn mixed_examples() {
        let g = three_by_two();
        let h = Pairing::full(&g);
        let half = MixedStrategy::parse(&g, 0, "T:1/2,M:1/2").unwrap();
        assert!(dominates_mixed_over_pure(&g, &h, &half, 2).unwrap());
        let t = MixedStrategy::dirac(&g, 0, 0).unwrap();
        assert!(!dominates_mixed_over_pure(&g, &h, &t, 2).unwrap());
        let b = MixedStrategy::dirac(&g, 0, 2).unwrap();
        assert!(dominates_mixed_over_mixed(&g, &h, &half, &b).unwrap());
        assert!(dominates_delta(&g, &h, &half, &b).unwrap());
        assert!(!dominates_mixed_over_mixed(&g, &h, &half, &half).unwrap());
        assert!(!dominates_delta(&g, &h, &half, &half).unwrap());

        // u1: T=(2,0), M=(0,2)
        let g2 = Game::bimatrix(
            &["T", "M"],
            &["L", "R"],
            &[vec![int(2), int(0)], vec![int(0), int(2)]],
            &[vec![int(0), int(0)], vec![int(0), int(0)]],
        )
        .unwrap();
        let a = MixedStrategy::parse(&g2, 0, "T:3/4,M:1/4").unwrap();
        let c = MixedStrategy::parse(&g2, 0, "T:1/4,M:3/4").unwrap();
        assert!(!dominates_mixed_over_mixed(&g2, &Pairing::full(&g2), &a, &c).unwrap());
    }

    #[test]
    fn lp_examples() {
        let g = three_by_two();
        let h = Pairing::full(&g);
        let cert = find_mixed_dominator(&g, &h, 0, 2, Support::Ambient).unwrap().unwrap();
        assert_eq!(cert.margin, rat(1, 2));
        assert_eq!(cert.weights, MixedStrategy::parse(&g, 0, "T:1/2,M:1/2").unwrap());
        assert!(find_mixed_dominator(&g, &h, 0, 0, Support::Ambient).unwrap().is_none());

        let pd = prisoners_dilemma();
        let cert = find_mixed_dominator(&pd, &Pairing::full(&pd), 0, 0, Support::Ambient).unwrap().unwrap();
        assert_eq!(cert.weights, MixedStrategy::dirac(&pd, 0, 1).unwrap());
        assert_eq!(cert.margin, int(1));

        let empty = Pairing::from_indices(&pd, &[&[0, 1], &[]]).unwrap();
        assert_eq!(
            find_mixed_dominator(&pd, &empty, 0, 0, Support::Ambient),
            Err(DominanceError::EmptyOpponents { player: 0 })
        );
        assert!(find_mixed_dominator(&matching_pennies(), &Pairing::full(&matching_pennies()), 0, 0, Support::Ambient)
            .unwrap()
            .is_none());
    }

    #[test]
    fn pairing_support_excludes_eliminated_strategies() {
        let g = three_by_two();
        let h = Pairing::from_indices(&g, &[&[0, 2], &[0, 1]]).unwrap();
        // without M no mixture beats B
        assert!(find_mixed_dominator(&g, &h, 0, 2, Support::Pairing).unwrap().is_none());
        assert!(find_mixed_dominator(&g, &h, 0, 2, Support::Ambient).unwrap().is_some());
    }

    #[test]
    fn oracle_examples() {
        let g = three_by_two();
        let h = Pairing::full(&g);
        assert!(fm_oracle_dominated(&g, &h, 0, 2, Support::Ambient).unwrap());
        let single = Game::from_fn(&[1, 2], |_, p| int(p[1] as i64)).unwrap();
        assert!(!fm_oracle_dominated(&single, &Pairing::full(&single), 0, 0, Support::Ambient).unwrap());
        let pd = prisoners_dilemma();
        assert!(fm_oracle_dominated(&pd, &Pairing::full(&pd), 0, 0, Support::Ambient).unwrap());
        let big = Game::from_fn(&[5, 2], |_, _| int(0)).unwrap();
        assert!(matches!(
            fm_oracle_dominated(&big, &Pairing::full(&big), 0, 0, Support::Ambient),
            Err(DominanceError::OracleUnavailable { .. })
        ));
    }

    #[test]
    fn hierarchy_and_certificates_on_random_games() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=3);
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            let game = random_game(&mut rng, &sizes);
            let h = random_pairing(&mut rng, &game);
            let i = rng.gen_range(0..n);
            let mu = random_measure(&mut rng, &game, i);
            let m = random_measure(&mut rng, &game, i);
            let delta = dominates_delta(&game, &h, &mu, &m).unwrap();
            let mm = dominates_mixed_over_mixed(&game, &h, &mu, &m).unwrap();
            assert!(!delta || mm);
            if let Some(x) = m.as_pure() {
                assert_eq!(mm, dominates_mixed_over_pure(&game, &h, &mu, x).unwrap());
            }

            let x = rng.gen_range(0..sizes[i]);
            for support in [Support::Ambient, Support::Pairing] {
                if support == Support::Pairing && h.set(i).is_empty() {
                    continue;
                }
                if let Some(cert) = find_mixed_dominator(&game, &h, i, x, support).unwrap() {
                    assert!(dominates_mixed_over_pure(&game, &h, &cert.weights, x).unwrap());
                    let dx = MixedStrategy::dirac(&game, i, x).unwrap();
                    assert_eq!(min_gap(&game, &h, &cert.weights, &dx).unwrap().unwrap().0, cert.margin);
                    assert!(cert.weights.is_supported_in(support.strategies(&game, &h, i)));
                }
            }
        }
    }

    #[test]
    fn pure_dominance_is_transitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let game = random_game(&mut rng, &[4, 3]);
            let h = random_pairing(&mut rng, &game);
            for i in 0..2 {
                let k = game.num_strategies(i);
                for a in 0..k {
                    for b in 0..k {
                        for c in 0..k {
                            if dominates_pure(&game, &h, i, a, b).unwrap() && dominates_pure(&game, &h, i, b, c).unwrap() {
                                assert!(dominates_pure(&game, &h, i, a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nash_strategies_are_never_mixed_dominated() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let game = random_game(&mut rng, &[3, 3]);
            let h = random_pairing(&mut rng, &game);
            for profile in pure_nash_in(&game, &h) {
                for (i, &s) in profile.0.iter().enumerate() {
                    assert!(find_mixed_dominator(&game, &h, i, s, Support::Pairing).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn vertex_reduction_agrees_with_sampled_product_measures() {
        // V(μ, σ) − V(m, σ) for a product measure σ is a convex combination of
        // the pure-profile gaps, so sampled σ never falls below the vertex minimum.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let game = random_game(&mut rng, &[3, 2, 2]);
            let h = Pairing::full(&game);
            let mu = random_measure(&mut rng, &game, 0);
            let m = random_measure(&mut rng, &game, 0);
            let (vertex_min, _) = min_gap(&game, &h, &mu, &m).unwrap().unwrap();
            for _ in 0..100 {
                let s1 = random_measure(&mut rng, &game, 1);
                let s2 = random_measure(&mut rng, &game, 2);
                let mut gap = Rational::zero();
                for (&a, wa) in s1.weights() {
                    for (&b, wb) in s2.weights() {
                        let here = crate::measures::expected_payoff(&game, &mu, &[a, b]).unwrap()
                            - crate::measures::expected_payoff(&game, &m, &[a, b]).unwrap();
                        gap += &(wa * wb * here);
                    }
                }
                assert!(gap >= vertex_min);
            }
        }
    }
}
