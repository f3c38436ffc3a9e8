//! The intersection property on finite games.
//!
//! For `x ∈ G_i`, `F_i(x, s) = {t ∈ G_i : u_i(x,s) ≤ u_i(t,s)}` and
//! `Z(x) = {(t, s) : t ∈ F_i(x, s)}`. Player i's payoff has the property
//! when the opponent projection `Z_{-i}(x)` is the same set `S_{-i}` for
//! every `x` and the own projection `Z_i(x)` equals `∩_{s ∈ S_{-i}} F_i(x,s)`.
//!
//! In a finite game `(x, s) ∈ Z(x)` for every `s`, so `Z_{-i}(x)` is always
//! all of `G_{-i}`, and `Z_i(x)` is the union of the `F_i(x, s)`. The
//! property then says `F_i(x, ·)` does not depend on the opponents.

use crate::game::{opponents_profiles, Game, Pairing, Player, Strategy, StrategySet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyIntersection {
    pub strategy: Strategy,
    /// `Z_i(x)`.
    pub own_projection: StrategySet,
    /// `Z_{-i}(x)`, lexicographic.
    pub opponent_projection: Vec<Vec<Strategy>>,
    /// `∩_s F_i(x, s)` over the common opponent projection.
    pub intersection: StrategySet,
    /// A profile `s` where `F_i(x, s)` differs from the intersection.
    pub witness: Option<Vec<Strategy>>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerIntersection {
    pub player: Player,
    /// `Z_{-i}(x)` is the same for every `x`.
    pub constant_opponent_projection: bool,
    pub strategies: Vec<StrategyIntersection>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionReport {
    pub players: Vec<PlayerIntersection>,
    pub holds: bool,
}

fn better_replies(game: &Game, player: Player, x: Strategy, offset: usize) -> StrategySet {
    let ux = game.payoff_at(player, x, offset);
    (0..game.num_strategies(player)).filter(|&t| game.payoff_at(player, t, offset) >= ux).collect()
}

pub fn check_intersection_property(game: &Game) -> IntersectionReport {
    let full = Pairing::full(game);
    let players: Vec<PlayerIntersection> = (0..game.num_players())
        .map(|i| {
            let profiles: Vec<_> = opponents_profiles(game, &full, i).collect();
            let per_x: Vec<(Strategy, Vec<StrategySet>)> = (0..game.num_strategies(i))
                .map(|x| (x, profiles.iter().map(|o| better_replies(game, i, x, o.offset)).collect()))
                .collect();
            let opponent_projection = |fs: &[StrategySet]| -> Vec<Vec<Strategy>> {
                profiles.iter().zip(fs).filter(|(_, f)| !f.is_empty()).map(|(o, _)| o.choices.clone()).collect()
            };
            let first = opponent_projection(&per_x[0].1);
            let constant = per_x.iter().all(|(_, fs)| opponent_projection(fs) == first);
            let strategies: Vec<StrategyIntersection> = per_x
                .iter()
                .map(|(x, fs)| {
                    let proj = opponent_projection(fs);
                    let own = fs.iter().fold(StrategySet::empty(), |acc, f| acc.union(*f));
                    let inter = profiles
                        .iter()
                        .zip(fs)
                        .filter(|(o, _)| first.contains(&o.choices))
                        .fold(StrategySet::full(game.num_strategies(i)), |acc, (_, f)| acc.intersection(*f));
                    let witness = profiles.iter().zip(fs).find(|(_, f)| **f != inter).map(|(o, _)| o.choices.clone());
                    StrategyIntersection {
                        strategy: *x,
                        own_projection: own,
                        opponent_projection: proj,
                        intersection: inter,
                        witness,
                        holds: own == inter,
                    }
                })
                .collect();
            let holds = constant && strategies.iter().all(|s| s.holds);
            PlayerIntersection { player: i, constant_opponent_projection: constant, strategies, holds }
        })
        .collect();
    let holds = players.iter().all(|p| p.holds);
    IntersectionReport { players, holds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures::{matching_pennies, prisoners_dilemma};
    use crate::rational::int;
    use rand::{Rng, SeedableRng};

    /// Direct transcription over explicit profile sets.
    fn brute_force(game: &Game, i: Player) -> bool {
        let n = game.num_strategies(i);
        let profiles: Vec<crate::game::Profile> = game.profiles().collect();
        let z = |x: Strategy| -> Vec<&crate::game::Profile> {
            profiles
                .iter()
                .filter(|p| {
                    let opp = p.without(i);
                    game.payoff_against(i, x, &opp).unwrap() <= game.payoff(i, p).unwrap()
                })
                .collect()
        };
        let proj_opp = |zs: &[&crate::game::Profile]| {
            let mut v: Vec<Vec<Strategy>> = zs.iter().map(|p| p.without(i)).collect();
            v.sort();
            v.dedup();
            v
        };
        let s_minus = proj_opp(&z(0));
        (0..n).all(|x| {
            let zx = z(x);
            if proj_opp(&zx) != s_minus {
                return false;
            }
            let own: std::collections::BTreeSet<Strategy> = zx.iter().map(|p| p.0[i]).collect();
            let inter: std::collections::BTreeSet<Strategy> = (0..n)
                .filter(|&t| {
                    s_minus
                        .iter()
                        .all(|s| game.payoff_against(i, x, s).unwrap() <= game.payoff_against(i, t, s).unwrap())
                })
                .collect();
            own == inter
        })
    }

    #[test]
    fn examples() {
        let one = Game::from_fn(&[1, 1], |_, _| int(0)).unwrap();
        assert!(check_intersection_property(&one).holds);

        let pd = prisoners_dilemma();
        let r = check_intersection_property(&pd);
        assert!(r.holds);
        assert!(r.players.iter().all(|p| p.constant_opponent_projection));

        // u1 = u2 = diag(1,1): F_1(A, A) = {A} but F_1(A, B) = {A, B}
        let coord = Game::from_fn_labeled(
            vec![vec!["A".into(), "B".into()], vec!["A".into(), "B".into()]],
            |_, p| int((p[0] == p[1]) as i64),
        )
        .unwrap();
        let r = check_intersection_property(&coord);
        assert!(!r.holds);
        let a = &r.players[0].strategies[0];
        assert_eq!(a.own_projection.len(), 2);
        assert_eq!(a.intersection.len(), 1);
        assert_eq!(a.opponent_projection.len(), 2);

        assert!(!check_intersection_property(&matching_pennies()).holds);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(1..=3);
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            // few payoff values so the property holds reasonably often
            let g = Game::from_fn(&sizes, |_, _| int(rng.gen_range(0..=1))).unwrap();
            let r = check_intersection_property(&g);
            for i in 0..n {
                assert_eq!(r.players[i].holds, brute_force(&g, i), "{g:?}");
            }
        }
    }
}
