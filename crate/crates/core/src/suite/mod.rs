//! Verification campaigns: each one generates a seeded corpus, runs the
//! library on every instance and checks the claimed property with an
//! independent computation.
//!
//! A campaign is a function of `(name, seed, budget)` only. The report opens
//! with `name seed applicable pass fail`, followed by `note:` lines and one
//! block per counterexample (a query line, then the game or function file).
//! Instances whose hypothesis does not hold are not counted as applicable.

mod finite;
pub mod generate;
mod interval;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::Game;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CampaignName {
    /// Weak transfer upper continuity against attainment of the maximum.
    Theorem1,
    /// Transfer upper continuity against transfer closed-valuedness.
    Remark2,
    /// Simplex against Fourier–Motzkin on random small games.
    LpOracle,
    /// Simplex against Fourier–Motzkin on every 2x2 game over {0,1,2}.
    LpOracle2x2,
    OrderIndependence,
    /// Product-measure dominance implies pointwise mixed dominance.
    Theorem7,
    /// Witnesses of the stronger modes revalidate under the weaker ones.
    Theorem8,
    /// Dominating mixtures built from per-strategy dominators.
    Theorem9,
    /// A pointwise-maximal eliminated strategy transfers its dominator.
    Theorem10,
    Lemma6,
    Lemma8,
    NashPreservation,
}

impl CampaignName {
    pub const ALL: [CampaignName; 12] = [
        CampaignName::Theorem1,
        CampaignName::Remark2,
        CampaignName::LpOracle,
        CampaignName::LpOracle2x2,
        CampaignName::OrderIndependence,
        CampaignName::Theorem7,
        CampaignName::Theorem8,
        CampaignName::Theorem9,
        CampaignName::Theorem10,
        CampaignName::Lemma6,
        CampaignName::Lemma8,
        CampaignName::NashPreservation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CampaignName::Theorem1 => "theorem-1",
            CampaignName::Remark2 => "remark-2",
            CampaignName::LpOracle => "lp-oracle",
            CampaignName::LpOracle2x2 => "lp-oracle-2x2",
            CampaignName::OrderIndependence => "order-independence",
            CampaignName::Theorem7 => "theorem-7",
            CampaignName::Theorem8 => "theorem-8",
            CampaignName::Theorem9 => "theorem-9",
            CampaignName::Theorem10 => "theorem-10",
            CampaignName::Lemma6 => "lemma-6",
            CampaignName::Lemma8 => "lemma-8",
            CampaignName::NashPreservation => "nash-preservation",
        }
    }

    /// One line on what is checked and against what.
    pub fn description(self) -> &'static str {
        match self {
            CampaignName::Theorem1 => {
                "random piecewise-affine functions: transfer weak upper continuity holds exactly when the maximum is attained (checked against a nonempty top contour and grid sampling of the supremum)"
            }
            CampaignName::Remark2 => {
                "same corpus: transfer upper continuity agrees with transfer closed-valuedness of the contour correspondence, and the intersection of closures equals the intersection"
            }
            CampaignName::LpOracle => {
                "random 2-player games, at most 3 strategies each, integer payoffs in -2..2: the simplex dominator search agrees with Fourier-Motzkin on the full pairing and a random sub-pairing, for both supports"
            }
            CampaignName::LpOracle2x2 => {
                "every 2x2 game with payoffs in {0,1,2} and every sub-pairing: simplex against Fourier-Motzkin (budget and seed are ignored)"
            }
            CampaignName::OrderIndependence => {
                "finite corpus under all four modes: every elimination order reaches the same nonempty terminal pairing"
            }
            CampaignName::Theorem7 => {
                "finite corpus, random pairings: an LP-optimal mixture that dominates m against product measures also dominates it profile by profile (product measures sampled independently)"
            }
            CampaignName::Theorem8 => {
                "finite corpus, fast and random one-at-a-time traces: gkz witnesses are valid pure steps, mixed-h witnesses valid mixed-g steps, pure witnesses valid mixed-g steps"
            }
            CampaignName::Theorem9 => {
                "first mixed-h step of random games, 100 measures with mass on eliminated strategies: the assembled mixture lies on the survivors and beats each measure at every surviving opponent profile"
            }
            CampaignName::Theorem10 => {
                "mixed-h steps with a pointwise-maximal eliminated strategy x* (random games and constructed fixtures): for sampled m on the eliminated set, m is below x* and x*'s dominator beats m"
            }
            CampaignName::Lemma6 => {
                "pure terminal pairings of the finite corpus, every y dominating x there: some survivor z* dominates x and no mixture over the game dominates z*"
            }
            CampaignName::Lemma8 => {
                "mixed-g terminal pairings of the finite corpus, every x with a mixed dominator: a maximiser over the dominators lies on the survivors, dominates x and is undominated"
            }
            CampaignName::NashPreservation => {
                "finite corpus, all modes, fast and random traces: no eliminated strategy is in a pure equilibrium and the terminal's equilibria are the game's equilibria restricted"
            }
        }
    }
}

impl fmt::Display for CampaignName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown campaign `{0}` (known: {known})", known = CampaignName::ALL.map(|c| c.name()).join(", "))]
pub struct UnknownCampaign(pub String);

impl FromStr for CampaignName {
    type Err = UnknownCampaign;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CampaignName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCampaign(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Index of the generated instance.
    pub instance: usize,
    pub query: String,
    /// The game or function file the query runs on.
    pub artifact: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignResult {
    pub name: CampaignName,
    pub seed: u64,
    pub budget: usize,
    pub applicable: usize,
    pub pass: usize,
    pub fail: usize,
    /// Sorted by instance.
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl CampaignResult {
    pub fn summary_line(&self) -> String {
        format!("{} {} {} {} {}", self.name, self.seed, self.applicable, self.pass, self.fail)
    }

    pub fn is_green(&self) -> bool {
        self.fail == 0
    }

    /// The machine-readable report.
    pub fn render(&self) -> String {
        let mut out = self.summary_line();
        out.push('\n');
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for c in &self.counterexamples {
            out.push_str(&format!("\ncounterexample {}: {}\n", c.instance, c.query));
            out.push_str(&c.artifact);
            if !c.artifact.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }

    /// The report with a prose header.
    pub fn render_human(&self) -> String {
        let verdict = match (self.applicable, self.fail) {
            (0, _) => "vacuous: 0 applicable instances".to_string(),
            (_, 0) => format!("all {} applicable instances pass", self.applicable),
            (a, f) => format!("{f} of {a} applicable instances FAIL"),
        };
        format!(
            "# campaign {} (seed {}, budget {})\n# {}\n# {}\n{}",
            self.name,
            self.seed,
            self.budget,
            self.name.description(),
            verdict,
            self.render()
        )
    }
}

/// Accumulates instance outcomes in instance order.
#[derive(Default)]
pub(crate) struct Tally {
    applicable: usize,
    pass: usize,
    fail: usize,
    counterexamples: Vec<Counterexample>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn pass(&mut self) {
        self.applicable += 1;
        self.pass += 1;
    }

    pub(crate) fn fail(&mut self, instance: usize, query: String, artifact: String) {
        self.applicable += 1;
        self.fail += 1;
        self.counterexamples.push(Counterexample { instance, query, artifact });
    }

    pub(crate) fn check(&mut self, ok: bool, instance: usize, query: impl FnOnce() -> String, artifact: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(instance, query(), artifact());
        }
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn finish(mut self, name: CampaignName, seed: u64, budget: usize) -> CampaignResult {
        self.counterexamples.sort_by_key(|c| c.instance);
        CampaignResult {
            name,
            seed,
            budget,
            applicable: self.applicable,
            pass: self.pass,
            fail: self.fail,
            counterexamples: self.counterexamples,
            notes: self.notes,
        }
    }
}

/// Runs a campaign over `budget` generated instances.
pub fn run_campaign(name: CampaignName, seed: u64, budget: usize) -> CampaignResult {
    let tally = match name {
        CampaignName::Theorem1 => interval::theorem1(seed, budget),
        CampaignName::Remark2 => interval::remark2(seed, budget),
        CampaignName::LpOracle => finite::lp_oracle(seed, budget),
        CampaignName::LpOracle2x2 => finite::lp_oracle_2x2(),
        CampaignName::OrderIndependence => finite::order_independence(seed, budget),
        CampaignName::Theorem7 => finite::theorem7(seed, budget),
        CampaignName::Theorem8 => finite::theorem8(seed, budget),
        CampaignName::Theorem9 => finite::theorem9(seed, budget),
        CampaignName::Theorem10 => finite::theorem10(seed, budget),
        CampaignName::Lemma6 => finite::lemma6(seed, budget),
        CampaignName::Lemma8 => finite::lemma8(seed, budget),
        CampaignName::NashPreservation => finite::nash_preservation(seed, budget),
    };
    tally.finish(name, seed, budget)
}

/// Runs a corpus campaign on one given game, as instance 0. `None` for the
/// campaigns that generate their own instances.
pub fn run_on_game(name: CampaignName, game: &Game, seed: u64) -> Option<CampaignResult> {
    let mut tally = Tally::default();
    match name {
        CampaignName::OrderIndependence => finite::order_independence_on(&mut tally, 0, game, seed),
        CampaignName::Theorem8 => finite::theorem8_on(&mut tally, 0, game, seed),
        CampaignName::Lemma6 => {
            finite::lemma6_on(&mut tally, 0, game, seed);
            for n in finite::LEMMA6_NOTES {
                tally.note(n);
            }
        }
        CampaignName::Lemma8 => finite::lemma8_on(&mut tally, 0, game, seed),
        CampaignName::NashPreservation => finite::nash_preservation_on(&mut tally, 0, game, seed),
        _ => return None,
    }
    Some(tally.finish(name, seed, 1))
}

/// Runs a campaign given by name.
pub fn run_named(name: &str, seed: u64, budget: usize) -> Result<CampaignResult, UnknownCampaign> {
    Ok(run_campaign(name.parse()?, seed, budget))
}
