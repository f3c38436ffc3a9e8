//! Seeded corpora for the campaigns.
//!
//! Every instance draws from its own ChaCha stream, so instance `k` of a
//! campaign does not depend on how many random numbers earlier instances
//! consumed. The finite-game corpus lives on stream group 0 and is shared by
//! every campaign that walks it; campaign-specific randomness (orders,
//! sampled measures) uses a group of its own.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Game, Pairing, Player, Strategy, StrategySet};
use crate::measures::MixedStrategy;
use crate::rational::{rat, Rational};

/// Payoff numerators are drawn from `[-B, B]`.
pub const PAYOFF_BOUND: i64 = 3;
/// Payoff denominators.
pub const DENOMINATORS: [i64; 3] = [1, 2, 4];
/// Total strategy count cap for the finite corpus.
pub const MAX_TOTAL_STRATEGIES: usize = 12;

pub fn instance_rng(seed: u64, group: u32, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(group) << 40) | k as u64);
    rng
}

pub fn random_payoff(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-PAYOFF_BOUND..=PAYOFF_BOUND), *DENOMINATORS.choose(rng).unwrap())
}

pub fn random_game(rng: &mut impl Rng, sizes: &[usize]) -> Game {
    Game::from_fn(sizes, |_, _| random_payoff(rng)).expect("sizes are positive")
}

/// Two players with probability 2/3, otherwise three; 2 to 4 strategies
/// each. Three players of four strategies stay within the total cap.
pub fn corpus_sizes(rng: &mut impl Rng) -> Vec<usize> {
    let players = if rng.gen_range(0..3) < 2 { 2 } else { 3 };
    let sizes: Vec<usize> = (0..players).map(|_| rng.gen_range(2..=4)).collect();
    debug_assert!(sizes.iter().sum::<usize>() <= MAX_TOTAL_STRATEGIES);
    sizes
}

/// Game `k` of the shared finite corpus.
pub fn corpus_game(seed: u64, k: usize) -> Game {
    let mut rng = instance_rng(seed, 0, k);
    let sizes = corpus_sizes(&mut rng);
    random_game(&mut rng, &sizes)
}

/// A random nonempty subset of `set`, each element kept with probability
/// `keep`.
pub fn random_subset(rng: &mut impl Rng, set: StrategySet, keep: f64) -> StrategySet {
    let items: Vec<Strategy> = set.iter().collect();
    loop {
        let sub: StrategySet = items.iter().copied().filter(|_| rng.gen_bool(keep)).collect();
        if !sub.is_empty() {
            return sub;
        }
    }
}

pub fn random_pairing(rng: &mut impl Rng, game: &Game) -> Pairing {
    let sets = (0..game.num_players())
        .map(|p| random_subset(rng, StrategySet::full(game.num_strategies(p)), 0.7))
        .collect();
    Pairing::from_sets(game, sets).expect("sets fit the game")
}

/// A measure on `set` with integer weights in `0..=4`, normalised. When
/// `force` is given that strategy gets positive weight.
pub fn random_measure(
    rng: &mut impl Rng,
    game: &Game,
    player: Player,
    set: StrategySet,
    force: Option<Strategy>,
) -> MixedStrategy {
    let items: Vec<Strategy> = set.iter().collect();
    let mut raw: Vec<i64> = items.iter().map(|_| rng.gen_range(0..=4)).collect();
    if let Some(f) = force {
        let pos = items.iter().position(|&s| s == f).expect("forced strategy lies in the set");
        raw[pos] += 1;
    }
    let mut total: i64 = raw.iter().sum();
    if total == 0 {
        let pick = rng.gen_range(0..raw.len());
        raw[pick] = 1;
        total = 1;
    }
    MixedStrategy::new(game, player, items.iter().zip(&raw).map(|(&s, &w)| (s, rat(w, total))))
        .expect("weights are normalised")
}

/// A random priority list over all strategies, for one-at-a-time traces.
pub fn random_order(rng: &mut impl Rng, game: &Game) -> Vec<(Player, Strategy)> {
    let mut order: Vec<(Player, Strategy)> =
        (0..game.num_players()).flat_map(|p| (0..game.num_strategies(p)).map(move |s| (p, s))).collect();
    order.shuffle(rng);
    order
}

/// A two-player game where player 1's eliminated strategies are all
/// pointwise below one of them, `X0`, and `X0` sits strictly below the
/// midpoint of two other rows. A mixed step then typically removes every
/// `X` row at once and leaves a pointwise-maximal one among them.
pub fn theorem10_fixture(rng: &mut impl Rng) -> Game {
    let cols = rng.gen_range(2..=3);
    let extra = rng.gen_range(1..=2);
    let rows = 3 + extra;
    let mut table = vec![vec![Rational::zero(); cols]; rows];
    for c in 0..cols {
        table[0][c] = random_payoff(rng);
        table[1][c] = random_payoff(rng);
        let mid = (&table[0][c] + &table[1][c]) * rat(1, 2);
        table[2][c] = mid - rat(1, 2) - rat(rng.gen_range(0..=2), 2);
        for r in 3..rows {
            table[r][c] = &table[2][c] - rat(rng.gen_range(0..=3), 2);
        }
    }
    let mut labels1 = vec!["A".to_string(), "B".to_string()];
    labels1.extend((0..=extra).map(|k| format!("X{k}")));
    let labels2: Vec<String> = (0..cols).map(|c| format!("c{}", c + 1)).collect();
    Game::from_fn_labeled(vec![labels1, labels2], |p, prof| match p {
        0 => table[prof[0]][prof[1]].clone(),
        _ => random_payoff(rng),
    })
    .expect("fixture shape is valid")
}
