//! Classifies the two bundled piecewise functions and runs the interval
//! game checks on the first one.

use iesds::continuity::{
    check_transfer_closed_duality, classify, lemma3_witness, parse_function, property_k_check, IntervalGame1D,
};
use iesds::rational::rat;

fn main() {
    for (name, text) in [
        ("example1", include_str!("../fixtures/example1.fn")),
        ("example2", include_str!("../fixtures/example2.fn")),
    ] {
        let f = parse_function(text).expect("fixture parses");
        println!("{name}: {f}");
        println!("  {}", classify(&f));
        let d = check_transfer_closed_duality(&f);
        println!("  duality holds: {} (transfer closed-valued: {})", d.holds, d.transfer_closed_valued);
    }

    // both players of the symmetric game use example1 as their payoff
    let f = parse_function(include_str!("../fixtures/example1.fn")).unwrap();
    let game = IntervalGame1D::symmetric(f);
    let h = [game.strategies(0), game.strategies(1)];
    let k = property_k_check(&game, &h).expect("h lies in the domain");
    print!("{k}");

    // f(1/2) = 2 < f(3/2) = 5/2, so some undominated z* beats 1/2
    let w = lemma3_witness(&game, &h, 0, &rat(1, 2), &rat(3, 2)).expect("precondition holds");
    println!("z0 = {}, z* = {} with value {}, in H: {}", w.z0, w.z_star, w.value, w.in_h);
}
