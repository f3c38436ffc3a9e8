//! Finite-game routines against brute-force recomputations that share no
//! code with the library beyond payoff lookup.

use iesds::game::pure_nash;
use iesds::reduction::{is_dominated, maximal_reduction, Mode, Policy};
use iesds::suite::generate::corpus_game;
use iesds::suite::{run_campaign, CampaignName};
use iesds::{Game, Pairing, Player, Profile, Rational, Strategy, StrategySet};

const CORPUS: usize = 400;

/// Opponent sub-profiles drawn from `sets`, in lexicographic order.
fn opponent_profiles(sets: &[Vec<Strategy>], player: Player) -> Vec<Vec<Strategy>> {
    let mut out = vec![Vec::new()];
    for (p, set) in sets.iter().enumerate() {
        if p == player {
            continue;
        }
        out = out.iter().flat_map(|pre| set.iter().map(move |&s| [pre.clone(), vec![s]].concat())).collect();
    }
    out
}

fn u(game: &Game, player: Player, own: Strategy, opp: &[Strategy]) -> Rational {
    game.payoff_against(player, own, opp).unwrap().clone()
}

fn full_sets(game: &Game) -> Vec<Vec<Strategy>> {
    game.sizes().iter().map(|&n| (0..n).collect()).collect()
}

fn brute_pure_dominated(game: &Game, sets: &[Vec<Strategy>], player: Player, x: Strategy) -> bool {
    let opps = opponent_profiles(sets, player);
    sets[player]
        .iter()
        .any(|&y| y != x && opps.iter().all(|o| u(game, player, y, o) > u(game, player, x, o)))
}

fn brute_nash(game: &Game) -> Vec<Profile> {
    let sets = full_sets(game);
    let mut all = vec![Vec::new()];
    for set in &sets {
        all = all.iter().flat_map(|pre: &Vec<Strategy>| set.iter().map(move |&s| [pre.clone(), vec![s]].concat())).collect();
    }
    all.into_iter()
        .filter(|prof| {
            (0..game.num_players()).all(|p| {
                let opp: Vec<Strategy> = prof.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &s)| s).collect();
                (0..game.num_strategies(p)).all(|d| u(game, p, d, &opp) <= u(game, p, prof[p], &opp))
            })
        })
        .map(Profile)
        .collect()
}

/// Is `x` strictly beaten everywhere by some `a·y + (1-a)·z`, `a ∈ [0,1]`?
/// Each opponent profile cuts the unit interval with one open half-line.
fn two_point_mixture_dominates(game: &Game, player: Player, x: Strategy, y: Strategy, z: Strategy) -> bool {
    let zero = Rational::zero();
    let (mut lo, mut lo_closed) = (zero.clone(), true);
    let (mut hi, mut hi_closed) = (Rational::one(), true);
    for o in opponent_profiles(&full_sets(game), player) {
        let slope = u(game, player, y, &o) - u(game, player, z, &o);
        let need = u(game, player, x, &o) - u(game, player, z, &o);
        if slope == zero {
            if need >= zero {
                return false;
            }
            continue;
        }
        let t = &need / &slope;
        if slope > zero {
            if t >= lo {
                lo = t;
                lo_closed = false;
            }
        } else if t <= hi {
            hi = t;
            hi_closed = false;
        }
    }
    lo < hi || (lo == hi && lo_closed && hi_closed)
}

#[test]
fn pure_nash_matches_brute_force() {
    for k in 0..CORPUS {
        let g = corpus_game(11, k);
        let ours: Vec<Profile> = pure_nash(&g).into_iter().collect();
        assert_eq!(ours, brute_nash(&g), "corpus game {k}");
    }
}

#[test]
fn pure_dominance_matches_brute_force_on_random_pairings() {
    for k in 0..CORPUS {
        let g = corpus_game(12, k);
        let full = full_sets(&g);
        // drop the last strategy of each player in turn, keeping sets nonempty
        for cut in 0..g.num_players() {
            let mut sets = full.clone();
            if sets[cut].len() > 1 {
                sets[cut].pop();
            }
            let pairing = Pairing::from_sets(&g, sets.iter().map(|s| s.iter().copied().collect()).collect()).unwrap();
            for p in 0..g.num_players() {
                for &x in &sets[p] {
                    assert_eq!(
                        is_dominated(&g, &pairing, Mode::Pure, p, x),
                        brute_pure_dominated(&g, &sets, p, x),
                        "game {k}, pairing {}, player {p}, x {x}",
                        pairing.render(&g)
                    );
                }
            }
        }
    }
}

/// With three strategies a mixed dominator of `x` can drop its weight on `x`
/// and renormalise, so it is a mixture of the other two.
#[test]
fn mixed_dominance_on_three_strategies_matches_interval_oracle() {
    let mut checked = 0;
    let mut mixed_only = 0;
    for k in 0..CORPUS * 2 {
        let g = corpus_game(13, k);
        let full = Pairing::full(&g);
        for p in (0..g.num_players()).filter(|&p| g.num_strategies(p) == 3) {
            for x in 0..3 {
                let others: Vec<Strategy> = (0..3).filter(|&s| s != x).collect();
                let oracle = two_point_mixture_dominates(&g, p, x, others[0], others[1]);
                assert_eq!(is_dominated(&g, &full, Mode::MixedG, p, x), oracle, "game {k}, player {p}, x {x}");
                checked += 1;
                if oracle && !is_dominated(&g, &full, Mode::Pure, p, x) {
                    mixed_only += 1;
                }
            }
        }
    }
    assert!(checked > 500, "{checked}");
    assert!(mixed_only > 0, "corpus never exercised a strictly mixed dominator");
}

/// Pure fast reduction replayed with the brute-force test.
#[test]
fn pure_fast_reduction_matches_brute_force_replay() {
    for k in 0..CORPUS {
        let g = corpus_game(14, k);
        let mut sets = full_sets(&g);
        loop {
            let dominated: Vec<Vec<Strategy>> = (0..g.num_players())
                .map(|p| sets[p].iter().copied().filter(|&x| brute_pure_dominated(&g, &sets, p, x)).collect())
                .collect();
            if dominated.iter().all(Vec::is_empty) {
                break;
            }
            for (set, gone) in sets.iter_mut().zip(&dominated) {
                set.retain(|s| !gone.contains(s));
            }
        }
        let trace = maximal_reduction(&g, Mode::Pure, &Policy::Fast).unwrap();
        let expected: Vec<StrategySet> = sets.iter().map(|s| s.iter().copied().collect()).collect();
        assert_eq!(trace.terminal.sets(), expected.as_slice(), "corpus game {k}");
    }
}

#[test]
fn measure_campaigns_hold_at_moderate_budget() {
    for name in [CampaignName::Theorem7, CampaignName::Theorem10] {
        let r = run_campaign(name, 5, 200);
        assert!(r.applicable > 0, "{}", r.summary_line());
        assert!(r.is_green(), "{}", r.render());
    }
}
