//! Campaigns over finite games.

use std::collections::BTreeMap;

use rand::Rng;

use super::generate::{
    corpus_game, instance_rng, random_game, random_measure, random_order, random_pairing, theorem10_fixture,
};
use super::Tally;
use crate::dominance::{
    best_mixture, dominates_delta, dominates_mixed_over_mixed, dominates_pure, find_mixed_dominator,
    fm_oracle_dominated, Support,
};
use crate::game::{pure_nash, pure_nash_in, write_game, Game, Pairing, Player, StrategySet};
use crate::measures::{expected_payoff, theorem9_dominator, MixedStrategy};
use crate::rational::{int, Rational};
use crate::reduction::{
    enumerate_orders, fast_step, lemma6_witness, lemma8_witness, maximal_reduction, nash_restricted, witness_valid, Mode, Policy,
    ReductionTrace,
};

/// Node budget per order enumeration; the largest corpus games have 4096
/// pairings.
const ORDER_NODES: usize = 1 << 16;
const THEOREM7_PRODUCT_SAMPLES: usize = 20;
const MEASURES_PER_STEP: usize = 100;

pub(super) const LEMMA6_NOTES: [&str; 2] = [
    "conclusion checked as z* dominates x (the statement's 'dominates z' is read as a typo for x)",
    "z* must also be undominated by every mixture over the game's strategies, checked by a second LP",
];

fn name(game: &Game, player: Player, s: usize) -> String {
    format!("{}/{}", player + 1, game.label(player, s))
}

/// Compares the simplex search with Fourier–Motzkin on every query of one
/// pairing.
fn lp_oracle_queries(tally: &mut Tally, k: usize, game: &Game, pairing: &Pairing) {
    for p in 0..game.num_players() {
        if !pairing.opponents_nonempty(p) {
            continue;
        }
        for x in 0..game.num_strategies(p) {
            for support in [Support::Ambient, Support::Pairing] {
                if support.strategies(game, pairing, p).is_empty() {
                    continue;
                }
                let lp = find_mixed_dominator(game, pairing, p, x, support).map(|c| c.is_some());
                let fm = fm_oracle_dominated(game, pairing, p, x, support);
                tally.check(
                    lp.is_ok() && lp == fm,
                    k,
                    || format!("{} on {} support {support:?}: simplex {lp:?}, fourier-motzkin {fm:?}", name(game, p, x), pairing.render(game)),
                    || write_game(game),
                );
            }
        }
    }
}

pub(super) fn lp_oracle(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        let mut rng = instance_rng(seed, 3, k);
        let sizes = [rng.gen_range(1..=3), rng.gen_range(1..=3)];
        let game = Game::from_fn(&sizes, |_, _| int(rng.gen_range(-2..=2))).expect("sizes are positive");
        lp_oracle_queries(&mut tally, k, &game, &Pairing::full(&game));
        let sub = random_pairing(&mut rng, &game);
        lp_oracle_queries(&mut tally, k, &game, &sub);
    }
    tally
}

pub(super) fn lp_oracle_2x2() -> Tally {
    let mut tally = Tally::default();
    let nonempty = [StrategySet::singleton(0), StrategySet::singleton(1), StrategySet::full(2)];
    for code in 0..3usize.pow(8) {
        let digits: Vec<i64> = (0..8).map(|d| ((code / 3usize.pow(d)) % 3) as i64).collect();
        let mut next = digits.iter();
        let game = Game::from_fn(&[2, 2], |_, _| int(*next.next().unwrap())).expect("2x2 shape");
        for a in nonempty {
            for b in nonempty {
                let pairing = Pairing::from_sets(&game, vec![a, b]).expect("subsets of the game");
                lp_oracle_queries(&mut tally, code, &game, &pairing);
            }
        }
    }
    tally
}

pub(super) fn order_independence_on(tally: &mut Tally, k: usize, game: &Game, seed: u64) {
    for mode in Mode::ALL {
        let v = enumerate_orders(game, mode, ORDER_NODES, seed);
        let ok = v.exhaustive && !v.budget_exhausted && v.unique_nonempty_terminal().is_some();
        tally.check(
            ok,
            k,
            || {
                let terminals: Vec<String> = v.terminals.iter().map(|t| t.render(game)).collect();
                format!(
                    "mode {mode}: independent={} exhaustive={} budget_exhausted={} terminals [{}]",
                    v.independent,
                    v.exhaustive,
                    v.budget_exhausted,
                    terminals.join("; ")
                )
            },
            || write_game(game),
        );
    }
}

pub(super) fn order_independence(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        order_independence_on(&mut tally, k, &corpus_game(seed, k), seed);
    }
    tally
}

/// `Σ_s Π_j σ_j(s_j) (V(μ,s) − V(m,s))` over the opponent profiles of `h`.
fn product_gap(game: &Game, h: &Pairing, sigmas: &[MixedStrategy], mu: &MixedStrategy, m: &MixedStrategy) -> Rational {
    let i = mu.player();
    let mut total = Rational::zero();
    for prof in h.profiles().into_iter().filter(|p| p.0[i] == h.set(i).first().unwrap()) {
        let opp = prof.without(i);
        let weight = sigmas.iter().zip(&opp).fold(Rational::one(), |acc, (sig, &s)| acc * sig.weight(s));
        if weight.is_zero() {
            continue;
        }
        let gap = expected_payoff(game, mu, &opp).unwrap() - expected_payoff(game, m, &opp).unwrap();
        total += &(weight * gap);
    }
    total
}

pub(super) fn theorem7(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        let game = corpus_game(seed, k);
        let mut rng = instance_rng(seed, 7, k);
        let h = random_pairing(&mut rng, &game);
        let i = rng.gen_range(0..game.num_players());
        let full_i = StrategySet::full(game.num_strategies(i));
        for _ in 0..3 {
            let m = random_measure(&mut rng, &game, i, full_i, None);
            let cert = best_mixture(&game, full_i, &h, &m).expect("opponents are nonempty");
            if !cert.margin.is_positive() {
                continue;
            }
            let mu = cert.weights;
            let sigmas: Vec<Vec<MixedStrategy>> = (0..THEOREM7_PRODUCT_SAMPLES)
                .map(|_| {
                    (0..game.num_players())
                        .filter(|&j| j != i)
                        .map(|j| random_measure(&mut rng, &game, j, h.set(j), None))
                        .collect()
                })
                .collect();
            let delta = dominates_delta(&game, &h, &mu, &m).unwrap();
            let pointwise = dominates_mixed_over_mixed(&game, &h, &mu, &m).unwrap();
            let bad_sample = sigmas.iter().position(|s| !product_gap(&game, &h, s, &mu, &m).is_positive());
            tally.check(
                delta && pointwise && bad_sample.is_none(),
                k,
                || {
                    format!(
                        "player {} mu {} m {} on {}: delta={delta} pointwise={pointwise} failing product sample {bad_sample:?}",
                        i + 1,
                        mu.render(&game),
                        m.render(&game),
                        h.render(&game)
                    )
                },
                || write_game(&game),
            );
        }
    }
    tally
}

fn weaker(mode: Mode) -> Option<Mode> {
    match mode {
        Mode::Gkz => Some(Mode::Pure),
        Mode::MixedH | Mode::Pure => Some(Mode::MixedG),
        Mode::MixedG => None,
    }
}

/// The fast trace and one random one-at-a-time trace.
fn traces(game: &Game, mode: Mode, rng: &mut impl Rng) -> Vec<(&'static str, ReductionTrace)> {
    let fast = maximal_reduction(game, mode, &Policy::Fast).expect("engine steps are valid");
    let order = random_order(rng, game);
    let single = maximal_reduction(game, mode, &Policy::OneAtATime(order)).expect("engine steps are valid");
    vec![("fast", fast), ("one-at-a-time", single)]
}

pub(super) fn theorem8_on(tally: &mut Tally, k: usize, game: &Game, seed: u64) {
    let mut rng = instance_rng(seed, 8, k);
    for mode in [Mode::Gkz, Mode::MixedH, Mode::Pure] {
        let target = weaker(mode).unwrap();
        for (label, trace) in traces(game, mode, &mut rng) {
            for (t, st) in trace.steps.iter().enumerate() {
                for e in &st.eliminated {
                    let ok = witness_valid(game, &st.before, &st.after, target, e.player, e.strategy, &e.witness);
                    tally.check(
                        ok,
                        k,
                        || {
                            format!(
                                "{mode} {label} trace step {}: {} witness {} is not a valid {target} step from {}",
                                t + 1,
                                name(game, e.player, e.strategy),
                                e.witness.render(game, e.player),
                                st.before.render(game)
                            )
                        },
                        || write_game(game),
                    );
                }
            }
        }
    }
}

pub(super) fn theorem8(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        theorem8_on(&mut tally, k, &corpus_game(seed, k), seed);
    }
    tally
}

/// Checks `μ ≻ m` at every surviving profile by direct expectation.
fn beats_everywhere(game: &Game, h: &Pairing, mu: &MixedStrategy, m: &MixedStrategy) -> bool {
    let i = mu.player();
    let own = h.set(i).first().unwrap();
    h.profiles()
        .into_iter()
        .filter(|p| p.0[i] == own)
        .all(|p| expected_payoff(game, mu, &p.without(i)).unwrap() > expected_payoff(game, m, &p.without(i)).unwrap())
}

pub(super) fn theorem9(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        let mut rng = instance_rng(seed, 9, k);
        // redraw until the first mixed-h step removes something
        let (game, st) = loop {
            let sizes = super::generate::corpus_sizes(&mut rng);
            let game = random_game(&mut rng, &sizes);
            if let Some(st) = fast_step(&game, &Pairing::full(&game), Mode::MixedH) {
                break (game, st);
            }
        };
        let players: Vec<Player> = (0..game.num_players()).filter(|&p| st.eliminated.iter().any(|e| e.player == p)).collect();
        let i = players[rng.gen_range(0..players.len())];
        let dominators: BTreeMap<_, _> = st
            .eliminated
            .iter()
            .filter(|e| e.player == i)
            .map(|e| (e.strategy, e.witness.to_measure(&game, i)))
            .collect();
        let removed: Vec<usize> = dominators.keys().copied().collect();
        let full_i = StrategySet::full(game.num_strategies(i));
        let h = &st.after;
        let mut failure = None;
        for _ in 0..MEASURES_PER_STEP {
            let force = removed[rng.gen_range(0..removed.len())];
            let m = random_measure(&mut rng, &game, i, full_i, Some(force));
            let ok = match theorem9_dominator(&game, h, &dominators, &m) {
                Ok(mu) => mu.is_supported_in(h.set(i)) && beats_everywhere(&game, h, &mu, &m),
                Err(_) => false,
            };
            if !ok && failure.is_none() {
                failure = Some(m);
            }
        }
        tally.check(
            failure.is_none(),
            k,
            || {
                let m = failure.as_ref().unwrap();
                let got = theorem9_dominator(&game, h, &dominators, m).map(|mu| mu.render(&game));
                format!("player {} step to {}: m {} got {got:?}", i + 1, h.render(&game), m.render(&game))
            },
            || write_game(&game),
        );
    }
    tally
}

pub(super) fn theorem10(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    let mut fixtures = 0;
    for k in 0..budget {
        let mut rng = instance_rng(seed, 10, k);
        let game = if k % 2 == 1 {
            fixtures += 1;
            theorem10_fixture(&mut rng)
        } else {
            let sizes = super::generate::corpus_sizes(&mut rng);
            random_game(&mut rng, &sizes)
        };
        let Some(st) = fast_step(&game, &Pairing::full(&game), Mode::MixedH) else { continue };
        let h = &st.after;
        for i in 0..game.num_players() {
            let removed: StrategySet = st.eliminated.iter().filter(|e| e.player == i).map(|e| e.strategy).collect();
            if removed.is_empty() {
                continue;
            }
            let own = h.set(i).first().unwrap();
            let opps: Vec<Vec<usize>> =
                h.profiles().into_iter().filter(|p| p.0[i] == own).map(|p| p.without(i)).collect();
            let u = |x: usize, s: &[usize]| game.payoff_against(i, x, s).unwrap().clone();
            let Some(x_star) = removed.iter().find(|&c| removed.iter().all(|x| opps.iter().all(|s| u(c, s) >= u(x, s)))) else {
                continue;
            };
            let mu = st.eliminated.iter().find(|e| e.player == i && e.strategy == x_star).unwrap().witness.to_measure(&game, i);
            let mut failure = None;
            for _ in 0..MEASURES_PER_STEP {
                let m = random_measure(&mut rng, &game, i, removed, None);
                let below = opps.iter().all(|s| expected_payoff(&game, &m, s).unwrap() <= u(x_star, s));
                let above = opps.iter().all(|s| expected_payoff(&game, &mu, s).unwrap() > u(x_star, s));
                let ok = below && above && mu.is_supported_in(h.set(i)) && beats_everywhere(&game, h, &mu, &m);
                if !ok && failure.is_none() {
                    failure = Some((m, below, above));
                }
            }
            tally.check(
                failure.is_none(),
                k,
                || {
                    let (m, below, above) = failure.as_ref().unwrap();
                    format!(
                        "player {} x* {} mu {} m {}: m below x* {below}, mu above x* {above}",
                        i + 1,
                        game.label(i, x_star),
                        mu.render(&game),
                        m.render(&game)
                    )
                },
                || write_game(&game),
            );
        }
    }
    tally.note(format!("{fixtures} of the instances are constructed fixtures with a pointwise-maximal eliminated row"));
    tally
}

/// Runs the pure-lemma witness search on every `y ≻_H x` of the trace's
/// terminal pairing.
pub(super) fn lemma6_queries(tally: &mut Tally, k: usize, game: &Game, trace: &ReductionTrace) {
    let h = &trace.terminal;
    if !h.is_nonempty() {
        return;
    }
    for i in 0..game.num_players() {
        for x in 0..game.num_strategies(i) {
            for y in 0..game.num_strategies(i) {
                if y == x || !dominates_pure(game, h, i, y, x).unwrap() {
                    continue;
                }
                let result = lemma6_witness(game, trace, i, x, y);
                // revalidate independently of the search
                let ok = match &result {
                    Ok(z) => {
                        h.contains(i, *z)
                            && dominates_pure(game, h, i, *z, x).unwrap()
                            && fm_or_lp_undominated(game, h, i, *z)
                    }
                    Err(_) => false,
                };
                tally.check(
                    ok,
                    k,
                    || {
                        format!(
                            "terminal {} player {} x={} y={}: {}",
                            h.render(game),
                            i + 1,
                            game.label(i, x),
                            game.label(i, y),
                            match &result {
                                Ok(z) => format!("witness {} fails revalidation", game.label(i, *z)),
                                Err(e) => e.to_string(),
                            }
                        )
                    },
                    || write_game(game),
                );
            }
        }
    }
}

/// No mixture over `G_i` dominates `z` on `h`. Fourier–Motzkin decides it
/// when the instance is small enough, the simplex otherwise.
fn fm_or_lp_undominated(game: &Game, h: &Pairing, i: Player, z: usize) -> bool {
    match fm_oracle_dominated(game, h, i, z, Support::Ambient) {
        Ok(dominated) => !dominated,
        Err(_) => find_mixed_dominator(game, h, i, z, Support::Ambient).unwrap().is_none(),
    }
}

pub(super) fn lemma6_on(tally: &mut Tally, k: usize, game: &Game, _seed: u64) {
    let trace = maximal_reduction(game, Mode::Pure, &Policy::Fast).expect("engine steps are valid");
    lemma6_queries(tally, k, game, &trace);
}

pub(super) fn lemma6(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        lemma6_on(&mut tally, k, &corpus_game(seed, k), seed);
    }
    for n in LEMMA6_NOTES {
        tally.note(n);
    }
    tally
}

pub(super) fn lemma8_on(tally: &mut Tally, k: usize, game: &Game, _seed: u64) {
    let trace = maximal_reduction(game, Mode::MixedG, &Policy::Fast).expect("engine steps are valid");
    let h = &trace.terminal;
    for i in 0..game.num_players() {
        for x in 0..game.num_strategies(i) {
            let Some(cert) = find_mixed_dominator(game, h, i, x, Support::Ambient).unwrap() else { continue };
            let result = lemma8_witness(game, h, i, &cert.weights, x);
            let ok = match &result {
                Ok(mu) => {
                    let dx = MixedStrategy::dirac(game, i, x).unwrap();
                    let full_i = StrategySet::full(game.num_strategies(i));
                    mu.is_supported_in(h.set(i))
                        && beats_everywhere(game, h, mu, &dx)
                        && !best_mixture(game, full_i, h, mu).unwrap().margin.is_positive()
                }
                Err(_) => false,
            };
            tally.check(
                ok,
                k,
                || {
                    format!(
                        "terminal {} player {} x={} mu'={}: {}",
                        h.render(game),
                        i + 1,
                        game.label(i, x),
                        cert.weights.render(game),
                        match &result {
                            Ok(mu) => format!("witness {} fails revalidation", mu.render(game)),
                            Err(e) => e.to_string(),
                        }
                    )
                },
                || write_game(game),
            );
        }
    }
}

pub(super) fn lemma8(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        lemma8_on(&mut tally, k, &corpus_game(seed, k), seed);
    }
    tally
}

pub(super) fn nash_preservation_on(tally: &mut Tally, k: usize, game: &Game, seed: u64) {
    let nash = pure_nash(game);
    let mut rng = instance_rng(seed, 11, k);
    for mode in Mode::ALL {
        for (label, trace) in traces(game, mode, &mut rng) {
            let removed_in_nash = trace
                .eliminations()
                .find(|(_, e)| nash.iter().any(|p| p.0[e.player] == e.strategy))
                .map(|(_, e)| name(game, e.player, e.strategy));
            let restricted = nash_restricted(game, &trace.terminal);
            let local = pure_nash_in(game, &trace.terminal);
            tally.check(
                removed_in_nash.is_none() && restricted == local,
                k,
                || {
                    let show = |s: &std::collections::BTreeSet<crate::game::Profile>| {
                        s.iter().map(|p| p.render(game)).collect::<Vec<_>>().join(" ")
                    };
                    format!(
                        "{mode} {label} trace to {}: eliminated equilibrium strategy {removed_in_nash:?}, restricted [{}] vs terminal [{}]",
                        trace.terminal.render(game),
                        show(&restricted),
                        show(&local)
                    )
                },
                || write_game(game),
            );
        }
    }
}

pub(super) fn nash_preservation(seed: u64, budget: usize) -> Tally {
    let mut tally = Tally::default();
    for k in 0..budget {
        nash_preservation_on(&mut tally, k, &corpus_game(seed, k), seed);
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::fixtures::four_by_two;

    #[test]
    fn lemma6_queries_flag_the_four_by_two_counterexample() {
        let g = four_by_two();
        let trace = maximal_reduction(&g, Mode::Pure, &Policy::Fast).unwrap();
        let mut t = Tally::default();
        lemma6_queries(&mut t, 0, &g, &trace);
        assert!(t.fail > 0);
        assert!(t.counterexamples[0].query.contains("counterexample"));
    }

    #[test]
    fn product_gap_matches_dirac_profiles() {
        let g = corpus_game(1, 3);
        let h = Pairing::full(&g);
        let mu = MixedStrategy::dirac(&g, 0, 0).unwrap();
        let m = MixedStrategy::dirac(&g, 0, 1).unwrap();
        let opps = |j| MixedStrategy::dirac(&g, j, 0).unwrap();
        let sigmas: Vec<_> = (1..g.num_players()).map(opps).collect();
        let zeros = vec![0; g.num_players() - 1];
        let direct = expected_payoff(&g, &mu, &zeros).unwrap() - expected_payoff(&g, &m, &zeros).unwrap();
        assert_eq!(product_gap(&g, &h, &sigmas, &mu, &m), direct);
    }
}
