//! Explores every elimination order of a game and reports whether they all
//! reach the same terminal pairing.
//!
//! ```text
//! cargo run --example order_independence -- [path/to/game]
//! ```

use iesds::game::parse_game;
use iesds::reduction::{enumerate_orders, render_verdict, Mode, EXHAUSTIVE_LIMIT};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => include_str!("../fixtures/fourbytwo.game").to_string(),
    };
    let game = parse_game(&text).unwrap_or_else(|e| panic!("{e}"));

    for mode in Mode::ALL {
        let verdict = enumerate_orders(&game, mode, EXHAUSTIVE_LIMIT, 0);
        print!("{}", render_verdict(&game, &verdict));
        match verdict.unique_nonempty_terminal() {
            Some(t) => println!("  => every order ends at {}", t.render(&game)),
            None => println!("  => orders disagree or empty a player"),
        }
        println!();
    }
}
