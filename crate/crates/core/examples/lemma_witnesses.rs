//! Undominated dominators on reduced games.
//!
//! `fourbytwo.game` shows where the pure statement breaks: `X` is beaten
//! only by `B`, and `B` survives pure reduction yet is beaten by a mixture
//! of `T` and `M`. The mixed statement has no such gap.

use iesds::dominance::{find_mixed_dominator, Support};
use iesds::game::parse_game;
use iesds::measures::MixedStrategy;
use iesds::reduction::{lemma6_witness, lemma8_witness, maximal_reduction, Mode, Policy};

fn main() {
    let game = parse_game(include_str!("../fixtures/fourbytwo.game")).expect("fixture parses");
    let label = |s: &str| game.strategy_index(0, s).unwrap();
    let (x, b) = (label("X"), label("B"));

    let pure = maximal_reduction(&game, Mode::Pure, &Policy::Fast).unwrap();
    println!("pure terminal {}", pure.terminal.render(&game));
    match lemma6_witness(&game, &pure, 0, x, b) {
        Ok(z) => println!("pure: undominated dominator of X is {}", game.label(0, z)),
        Err(e) => println!("pure: {e}"),
    }

    // after mixed reduction B is gone and the witness is a mixture
    let mixed = maximal_reduction(&game, Mode::MixedG, &Policy::Fast).unwrap();
    let h = &mixed.terminal;
    println!("mixed terminal {}", h.render(&game));
    let mu_prime = MixedStrategy::dirac(&game, 0, b).unwrap();
    let mu = lemma8_witness(&game, h, 0, &mu_prime, x).expect("a mixed witness exists");
    println!("mixed: undominated dominator of X is {}", mu.render(&game));
    assert!(mu.is_supported_in(h.set(0)));
    for s in h.set(0).iter() {
        assert!(find_mixed_dominator(&game, h, 0, s, Support::Ambient).unwrap().is_none());
    }
}
