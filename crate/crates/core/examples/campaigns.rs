//! Runs verification campaigns and prints their reports.
//!
//! ```text
//! cargo run --release --example campaigns -- [name|all] [seed] [budget]
//! ```

use std::time::Instant;

use iesds::suite::{run_campaign, CampaignName};

fn main() {
    let mut args = std::env::args().skip(1);
    let which = args.next().unwrap_or_else(|| "all".into());
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed is an integer"));
    let budget: usize = args.next().map_or(100, |s| s.parse().expect("budget is an integer"));

    let names: Vec<CampaignName> = if which == "all" {
        CampaignName::ALL.to_vec()
    } else {
        vec![which.parse().unwrap_or_else(|e| panic!("{e}"))]
    };
    for name in names {
        let start = Instant::now();
        let result = run_campaign(name, seed, budget);
        print!("{}", result.render_human());
        println!("# {:.2?}\n", start.elapsed());
    }
}
