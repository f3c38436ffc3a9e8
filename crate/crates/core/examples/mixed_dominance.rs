//! A strategy that no pure strategy beats but a mixture does, and what that
//! changes for each reduction mode.
//!
//! In `threebytwo.game` player 1's `B` pays 1 against both columns while the
//! even mixture of `T` and `M` pays 3/2.

use iesds::dominance::{find_mixed_dominator, Support};
use iesds::game::parse_game;
use iesds::measures::{expected_payoff, MixedStrategy};
use iesds::reduction::{maximal_reduction, render_trace, Mode, Policy};
use iesds::Pairing;

fn main() {
    let game = parse_game(include_str!("../fixtures/threebytwo.game")).expect("fixture parses");
    let full = Pairing::full(&game);
    let b = game.strategy_index(0, "B").unwrap();

    let cert = find_mixed_dominator(&game, &full, 0, b, Support::Ambient)
        .expect("valid query")
        .expect("B is mixed-dominated");
    println!("best mixture {} beats B by {}", cert.weights.render(&game), cert.margin);

    // any mixture with weight in (1/3, 2/3) on T works; check one by hand
    let mu = MixedStrategy::parse(&game, 0, "T:1/2,M:1/2").unwrap();
    for col in 0..game.num_strategies(1) {
        let v = expected_payoff(&game, &mu, &[col]).unwrap();
        println!("  vs {}: mixture {} against B {}", game.label(1, col), v, game.payoff_against(0, b, &[col]).unwrap());
    }

    for mode in Mode::ALL {
        let trace = maximal_reduction(&game, mode, &Policy::Fast).unwrap();
        println!();
        print!("{}", render_trace(&trace));
    }
}
