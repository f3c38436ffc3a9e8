//! Pure reduction of the prisoner's dilemma down to mutual defection, which
//! is also its only pure Nash equilibrium.

use iesds::game::{parse_game, pure_nash};
use iesds::reduction::{maximal_reduction, nash_restricted, render_trace, Mode, Policy};

fn main() {
    let game = parse_game(include_str!("../fixtures/pd.game")).expect("fixture parses");
    let trace = maximal_reduction(&game, Mode::Pure, &Policy::Fast).expect("fast policy never fails");
    print!("{}", render_trace(&trace));

    for prof in pure_nash(&game) {
        println!("nash {}", prof.render(&game));
    }
    // every equilibrium of the game survives into the terminal pairing
    assert_eq!(nash_restricted(&game, &trace.terminal), pure_nash(&game));
}
