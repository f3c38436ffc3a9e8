//! Reduction operators: single steps, fast steps and iterated (maximal)
//! reductions under pure, GKZ and mixed dominance.
//!
//! A step from pairing `A` to `H` removes strategies that are strictly
//! dominated. Which dominator counts depends on the mode:
//!
//! | mode      | dominator            | evaluated on |
//! |-----------|----------------------|--------------|
//! | `Pure`    | `y ∈ A_i`            | `A`          |
//! | `Gkz`     | `y ∈ H_i`            | `H`          |
//! | `MixedG`  | `μ ∈ Δ(A_i)`         | `A`          |
//! | `MixedH`  | `μ ∈ Δ(H_i)`         | `H`          |
//!
//! The engine itself only ever removes strategies dominated with respect to
//! `A` and, for `Gkz`/`MixedH`, picks witnesses inside `H_i` that dominate on
//! `A` as well, so its traces satisfy every rule in the table that applies.

mod intersection;
mod orders;
mod report;
mod witnesses;

pub use intersection::{check_intersection_property, IntersectionReport, PlayerIntersection, StrategyIntersection};
pub use orders::{enumerate_orders, OrderVerdict, EXHAUSTIVE_LIMIT};
pub use report::{render_trace, render_verdict};
pub use witnesses::{lemma6_witness, lemma8_witness, LemmaError};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dominance::{best_mixture, pure_gap, DominanceError};
use crate::game::{Game, GameError, Pairing, Player, Profile, Strategy, StrategySet};
use crate::measures::{min_gap, MixedStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Pure,
    Gkz,
    MixedG,
    MixedH,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Pure, Mode::Gkz, Mode::MixedG, Mode::MixedH];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Pure => "pure",
            Mode::Gkz => "gkz",
            Mode::MixedG => "mixed-g",
            Mode::MixedH => "mixed-h",
        }
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, Mode::MixedG | Mode::MixedH)
    }

    /// Whether witnesses live in, and are evaluated on, the post-step pairing.
    pub fn uses_post_step(self) -> bool {
        matches!(self, Mode::Gkz | Mode::MixedH)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (expected pure, gkz, mixed-g or mixed-h)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Pure(Strategy),
    Mixed(MixedStrategy),
}

impl Witness {
    fn from_measure(mu: MixedStrategy) -> Witness {
        match mu.as_pure() {
            Some(y) => Witness::Pure(y),
            None => Witness::Mixed(mu),
        }
    }

    pub fn to_measure(&self, game: &Game, player: Player) -> MixedStrategy {
        match self {
            Witness::Pure(y) => MixedStrategy::dirac(game, player, *y).expect("witness index is valid"),
            Witness::Mixed(mu) => mu.clone(),
        }
    }

    pub fn render(&self, game: &Game, player: Player) -> String {
        match self {
            Witness::Pure(y) => game.label(player, *y).to_string(),
            Witness::Mixed(mu) => mu.render(game),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elimination {
    pub player: Player,
    pub strategy: Strategy,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub before: Pairing,
    /// Sorted by player, then strategy.
    pub eliminated: Vec<Elimination>,
    pub after: Pairing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub game: Game,
    pub mode: Mode,
    pub initial: Pairing,
    pub steps: Vec<Step>,
    pub terminal: Pairing,
    /// Continuity is preserved along every step; trivially so for finite
    /// games, whose strategy sets carry the discrete topology.
    pub continuity_consistent: bool,
}

impl ReductionTrace {
    /// The zero-step trace `G →* G`.
    pub fn unreduced(game: &Game, mode: Mode) -> Self {
        Self::start(game, mode, Pairing::full(game))
    }

    fn start(game: &Game, mode: Mode, initial: Pairing) -> Self {
        ReductionTrace {
            game: game.clone(),
            mode,
            terminal: initial.clone(),
            initial,
            steps: Vec::new(),
            continuity_consistent: true,
        }
    }

    fn push(&mut self, step: Step) {
        self.terminal = step.after.clone();
        self.steps.push(step);
    }

    /// Some player lost every strategy.
    pub fn is_empty_terminal(&self) -> bool {
        !self.terminal.is_nonempty()
    }

    pub fn eliminations(&self) -> impl Iterator<Item = (&Step, &Elimination)> {
        self.steps.iter().flat_map(|s| s.eliminated.iter().map(move |e| (s, e)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Dominance(#[from] DominanceError),
    #[error("a step must eliminate at least one strategy")]
    EmptyStep,
    #[error("strategy {strategy} is not in the current pairing")]
    NotInPairing { strategy: String },
    #[error("strategy {strategy} is not strictly dominated under mode {mode}: {reason}")]
    NotDominated { mode: Mode, strategy: String, reason: String },
    #[error("invalid elimination order: {0}")]
    Order(String),
}

/// How [`maximal_reduction`] chooses what to remove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// Remove everything dominated, simultaneously, every round.
    Fast,
    /// Remove one strategy per step: the first dominated entry of the
    /// priority list. Strategies missing from the list rank after it in
    /// index order.
    OneAtATime(Vec<(Player, Strategy)>),
    /// Apply the given steps (validated), then continue with fast steps.
    GivenSequence(Vec<Vec<StrategySet>>),
}

fn strategy_name(game: &Game, player: Player, s: Strategy) -> String {
    format!("{}/{}", player + 1, game.label(player, s))
}

fn profile_name(game: &Game, player: Player, opponents: &[Strategy]) -> String {
    let labels: Vec<&str> = (0..game.num_players())
        .filter(|&p| p != player)
        .zip(opponents)
        .map(|(p, &s)| game.label(p, s))
        .collect();
    format!("({})", labels.join(","))
}

/// Is `x` dominated with respect to `a` under the mode's base relation
/// (pure for `Pure`/`Gkz`, mixed over `Δ(A_i)` otherwise)?
pub fn is_dominated(game: &Game, a: &Pairing, mode: Mode, player: Player, x: Strategy) -> bool {
    if !a.opponents_nonempty(player) {
        return false;
    }
    let pure = a
        .set(player)
        .iter()
        .any(|y| y != x && pure_gap(game, a, player, y, x).ok().flatten().is_some_and(|(g, _)| g.is_positive()));
    if pure || !mode.is_mixed() {
        return pure;
    }
    let dx = MixedStrategy::dirac(game, player, x).expect("valid strategy");
    best_mixture(game, a.set(player), a, &dx).is_ok_and(|c| c.margin.is_positive())
}

/// All strategies of the pairing eligible for elimination.
pub fn dominated_sets(game: &Game, a: &Pairing, mode: Mode) -> Vec<StrategySet> {
    (0..game.num_players())
        .map(|p| a.set(p).iter().filter(|&x| is_dominated(game, a, mode, p, x)).collect())
        .collect()
}

/// Finds a witness for removing `x` on the step `before → after`, or
/// explains why none exists.
fn find_witness(
    game: &Game,
    before: &Pairing,
    after: &Pairing,
    mode: Mode,
    player: Player,
    x: Strategy,
) -> Result<Witness, String> {
    let (support, evals): (StrategySet, Vec<&Pairing>) = match mode {
        Mode::Pure | Mode::MixedG => (before.set(player), vec![before]),
        // prefer witnesses that also dominate before the step
        Mode::Gkz | Mode::MixedH => (after.set(player), vec![before, after]),
    };
    let target = evals.last().copied().expect("nonempty");
    if !target.opponents_nonempty(player) {
        return Err("the opponents have no surviving profile".to_string());
    }
    if support.is_empty() {
        return Err("no candidate dominator survives".to_string());
    }
    if !mode.is_mixed() {
        for eval in &evals {
            if !eval.opponents_nonempty(player) {
                continue;
            }
            for y in support.iter() {
                if pure_gap(game, eval, player, y, x).ok().flatten().is_some_and(|(g, _)| g.is_positive())
                    && (eval == &target || dominates_on(game, target, player, y, x))
                {
                    return Ok(Witness::Pure(y));
                }
            }
        }
        // report the candidate that comes closest
        let (y, gap, profile) = support
            .iter()
            .filter_map(|y| pure_gap(game, target, player, y, x).ok().flatten().map(|(g, p)| (y, g, p)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("support and opponents are nonempty");
        return Err(format!(
            "best candidate {} has gap {} at opponent profile {}",
            game.label(player, y),
            gap,
            profile_name(game, player, &profile)
        ));
    }
    let dx = MixedStrategy::dirac(game, player, x).expect("valid strategy");
    let mut last = None;
    for eval in &evals {
        if !eval.opponents_nonempty(player) {
            continue;
        }
        let cert = best_mixture(game, support, eval, &dx).map_err(|e| e.to_string())?;
        if cert.margin.is_positive() {
            let valid_on_target = min_gap(game, target, &cert.weights, &dx)
                .ok()
                .flatten()
                .is_some_and(|(g, _)| g.is_positive());
            if valid_on_target {
                return Ok(Witness::from_measure(cert.weights));
            }
        }
        last = Some(cert);
    }
    let cert = last.expect("target pairing was evaluated");
    Err(format!(
        "best mixture {} has margin {} at opponent profile {}",
        cert.weights.render(game),
        cert.margin,
        profile_name(game, player, &cert.binding)
    ))
}

fn dominates_on(game: &Game, pairing: &Pairing, player: Player, y: Strategy, x: Strategy) -> bool {
    pure_gap(game, pairing, player, y, x).ok().flatten().is_some_and(|(g, _)| g.is_positive())
}

/// Checks a recorded witness against a mode's rule for the step
/// `before → after`.
pub fn witness_valid(
    game: &Game,
    before: &Pairing,
    after: &Pairing,
    mode: Mode,
    player: Player,
    x: Strategy,
    witness: &Witness,
) -> bool {
    let (support, eval) = if mode.uses_post_step() { (after.set(player), after) } else { (before.set(player), before) };
    if !mode.is_mixed() && !matches!(witness, Witness::Pure(_)) {
        return false;
    }
    let mu = witness.to_measure(game, player);
    if !mu.is_supported_in(support) {
        return false;
    }
    let dx = MixedStrategy::dirac(game, player, x).expect("valid strategy");
    min_gap(game, eval, &mu, &dx).ok().flatten().is_some_and(|(g, _)| g.is_positive())
}

/// One validated reduction step removing `eliminate[i]` from each `A_i`.
pub fn step(game: &Game, pairing: &Pairing, mode: Mode, eliminate: &[StrategySet]) -> Result<Step, ReductionError> {
    if eliminate.len() != game.num_players() {
        return Err(GameError::PairingShape { expected: game.num_players(), found: eliminate.len() }.into());
    }
    if eliminate.iter().all(|s| s.is_empty()) {
        return Err(ReductionError::EmptyStep);
    }
    for (p, set) in eliminate.iter().enumerate() {
        for x in set.iter() {
            game.check_strategy(p, x)?;
            if !pairing.contains(p, x) {
                return Err(ReductionError::NotInPairing { strategy: strategy_name(game, p, x) });
            }
        }
    }
    let after = Pairing::from_sets(
        game,
        pairing.sets().iter().zip(eliminate).map(|(a, e)| a.difference(*e)).collect(),
    )?;
    let mut eliminated = Vec::new();
    for (p, set) in eliminate.iter().enumerate() {
        for x in set.iter() {
            let witness = find_witness(game, pairing, &after, mode, p, x).map_err(|reason| ReductionError::NotDominated {
                mode,
                strategy: strategy_name(game, p, x),
                reason,
            })?;
            eliminated.push(Elimination { player: p, strategy: x, witness });
        }
    }
    Ok(Step { before: pairing.clone(), eliminated, after })
}

/// Removes everything dominated with respect to `pairing`; `None` when
/// nothing is.
pub fn fast_step(game: &Game, pairing: &Pairing, mode: Mode) -> Option<Step> {
    let dominated = dominated_sets(game, pairing, mode);
    if dominated.iter().all(|s| s.is_empty()) {
        return None;
    }
    Some(step(game, pairing, mode, &dominated).expect("engine eliminations always carry a witness"))
}

pub fn is_maximal(game: &Game, pairing: &Pairing, mode: Mode) -> bool {
    (0..game.num_players()).all(|p| pairing.set(p).iter().all(|x| !is_dominated(game, pairing, mode, p, x)))
}

/// Iterates steps from the full game until nothing is dominated.
pub fn maximal_reduction(game: &Game, mode: Mode, policy: &Policy) -> Result<ReductionTrace, ReductionError> {
    maximal_reduction_from(game, &Pairing::full(game), mode, policy)
}

pub fn maximal_reduction_from(
    game: &Game,
    initial: &Pairing,
    mode: Mode,
    policy: &Policy,
) -> Result<ReductionTrace, ReductionError> {
    let mut trace = ReductionTrace::start(game, mode, initial.clone());
    match policy {
        Policy::Fast => {}
        Policy::OneAtATime(order) => {
            let order = complete_order(game, order)?;
            loop {
                let current = trace.terminal.clone();
                let next = order.iter().find(|&&(p, x)| current.contains(p, x) && is_dominated(game, &current, mode, p, x));
                let Some(&(p, x)) = next else { break };
                let mut sets = vec![StrategySet::empty(); game.num_players()];
                sets[p].insert(x);
                trace.push(step(game, &current, mode, &sets)?);
            }
        }
        Policy::GivenSequence(steps) => {
            for sets in steps {
                let current = trace.terminal.clone();
                trace.push(step(game, &current, mode, sets)?);
            }
        }
    }
    while let Some(s) = fast_step(game, &trace.terminal, mode) {
        trace.push(s);
    }
    Ok(trace)
}

fn complete_order(game: &Game, order: &[(Player, Strategy)]) -> Result<Vec<(Player, Strategy)>, ReductionError> {
    let mut seen = std::collections::BTreeSet::new();
    for &(p, x) in order {
        game.check_strategy(p, x)?;
        if !seen.insert((p, x)) {
            return Err(ReductionError::Order(format!("{} listed twice", strategy_name(game, p, x))));
        }
    }
    let mut full = order.to_vec();
    for p in 0..game.num_players() {
        for x in 0..game.num_strategies(p) {
            if !seen.contains(&(p, x)) {
                full.push((p, x));
            }
        }
    }
    Ok(full)
}

/// Parses `1/C,2/D` (one-based players, labels or zero-based indices).
pub fn parse_order(game: &Game, text: &str) -> Result<Vec<(Player, Strategy)>, ReductionError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|item| {
            let (p, s) = item
                .trim()
                .split_once('/')
                .ok_or_else(|| ReductionError::Order(format!("expected player/strategy, found `{item}`")))?;
            let p: usize = p
                .trim()
                .parse()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| ReductionError::Order(format!("bad player number in `{item}`")))?;
            let player = p - 1;
            game.check_player(player)?;
            let s = s.trim();
            let strategy = game
                .strategy_index(player, s)
                .or_else(|e| s.parse::<Strategy>().map_err(|_| e))?;
            game.check_strategy(player, strategy)?;
            Ok((player, strategy))
        })
        .collect()
}

/// Pure Nash equilibria of the game that survive into `pairing`.
pub fn nash_restricted(game: &Game, pairing: &Pairing) -> std::collections::BTreeSet<Profile> {
    crate::game::pure_nash(game)
        .into_iter()
        .filter(|prof| prof.0.iter().enumerate().all(|(p, &s)| pairing.contains(p, s)))
        .collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::game::Game;
    use crate::rational::int;

    /// u1: A=(2,1), B=(1,2), C=(0,0); u2 prefers L except against C.
    /// Only C goes first; then R, then B.
    pub fn staged() -> Game {
        Game::bimatrix(
            &["A", "B", "C"],
            &["L", "R"],
            &[vec![int(2), int(1)], vec![int(1), int(2)], vec![int(0), int(0)]],
            &[vec![int(1), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]],
        )
        .unwrap()
    }

    /// Player 1's X is beaten only by B, and B only by the mixture of T and M.
    pub fn four_by_two() -> Game {
        Game::bimatrix(
            &["T", "M", "B", "X"],
            &["L", "R"],
            &[vec![int(3), int(0)], vec![int(0), int(3)], vec![int(1), int(1)], vec![int(0), int(0)]],
            &vec![vec![int(0), int(0)]; 4],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::game::fixtures::{matching_pennies, prisoners_dilemma, three_by_two};
    use crate::game::pure_nash_in;

    fn set(xs: &[Strategy]) -> StrategySet {
        xs.iter().copied().collect()
    }

    #[test]
    fn prisoners_dilemma_step() {
        let pd = prisoners_dilemma();
        let s = step(&pd, &Pairing::full(&pd), Mode::Pure, &[set(&[0]), set(&[0])]).unwrap();
        assert_eq!(s.after, Pairing::from_indices(&pd, &[&[1], &[1]]).unwrap());
        assert_eq!(s.eliminated[0].witness, Witness::Pure(1));
        assert_eq!(
            step(&pd, &Pairing::full(&pd), Mode::Pure, &[set(&[]), set(&[])]),
            Err(ReductionError::EmptyStep)
        );
    }

    #[test]
    fn invalid_step_names_strategy_and_profile() {
        let pd = prisoners_dilemma();
        let err = step(&pd, &Pairing::full(&pd), Mode::Pure, &[set(&[1]), set(&[])]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("1/D"), "{msg}");
        assert!(msg.contains("(C)") || msg.contains("(D)"), "{msg}");
    }

    #[test]
    fn mixed_step_on_three_by_two() {
        let g = three_by_two();
        let s = step(&g, &Pairing::full(&g), Mode::MixedG, &[set(&[2]), set(&[])]).unwrap();
        assert_eq!(s.after, Pairing::from_indices(&g, &[&[0, 1], &[0, 1]]).unwrap());
        assert_eq!(s.eliminated[0].witness, Witness::Mixed(MixedStrategy::parse(&g, 0, "T:1/2,M:1/2").unwrap()));
        assert!(step(&g, &Pairing::full(&g), Mode::Pure, &[set(&[2]), set(&[])]).is_err());
    }

    #[test]
    fn fast_steps() {
        let pd = prisoners_dilemma();
        let s = fast_step(&pd, &Pairing::full(&pd), Mode::Pure).unwrap();
        assert_eq!(s.after.render(&pd), "1:{D} 2:{D}");
        let mp = matching_pennies();
        for mode in Mode::ALL {
            assert!(fast_step(&mp, &Pairing::full(&mp), mode).is_none());
        }
        let g = staged();
        let first = fast_step(&g, &Pairing::full(&g), Mode::Pure).unwrap();
        assert_eq!(first.eliminated.len(), 1);
        assert_eq!((first.eliminated[0].player, first.eliminated[0].strategy), (0, 2));
    }

    #[test]
    fn maximal_reductions() {
        let pd = prisoners_dilemma();
        for policy in [Policy::Fast, Policy::OneAtATime(vec![(1, 0), (0, 0)]), Policy::GivenSequence(vec![vec![set(&[0]), set(&[])]])] {
            let t = maximal_reduction(&pd, Mode::Pure, &policy).unwrap();
            assert_eq!(t.terminal.render(&pd), "1:{D} 2:{D}");
            assert!(is_maximal(&pd, &t.terminal, Mode::Pure));
        }
        assert!(!is_maximal(&pd, &Pairing::full(&pd), Mode::Pure));

        let mp = matching_pennies();
        let t = maximal_reduction(&mp, Mode::MixedG, &Policy::Fast).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, Pairing::full(&mp));

        let g = three_by_two();
        let t = maximal_reduction(&g, Mode::MixedG, &Policy::Fast).unwrap();
        assert_eq!(t.terminal.render(&g), "1:{T,M} 2:{L,R}");

        let empty = Pairing::from_indices(&pd, &[&[], &[]]).unwrap();
        assert!(is_maximal(&pd, &empty, Mode::Pure));
    }

    #[test]
    fn one_at_a_time_removes_single_strategies() {
        let g = staged();
        let t = maximal_reduction(&g, Mode::Pure, &Policy::OneAtATime(vec![])).unwrap();
        assert!(t.steps.iter().all(|s| s.eliminated.len() == 1));
        let fast = maximal_reduction(&g, Mode::Pure, &Policy::Fast).unwrap();
        assert_eq!(t.terminal, fast.terminal);
        assert_eq!(fast.terminal.render(&g), "1:{A} 2:{L}");
    }

    #[test]
    fn order_parsing() {
        let pd = prisoners_dilemma();
        assert_eq!(parse_order(&pd, "1/C, 2/1").unwrap(), vec![(0, 0), (1, 1)]);
        assert!(parse_order(&pd, "3/C").is_err());
        assert!(parse_order(&pd, "1/Z").is_err());
        assert!(matches!(
            maximal_reduction(&pd, Mode::Pure, &Policy::OneAtATime(vec![(0, 0), (0, 0)])),
            Err(ReductionError::Order(_))
        ));
    }

    #[test]
    fn engine_traces_satisfy_the_hierarchy() {
        for g in [prisoners_dilemma(), three_by_two(), staged(), four_by_two()] {
            for mode in Mode::ALL {
                let t = maximal_reduction(&g, mode, &Policy::Fast).unwrap();
                for (s, e) in t.eliminations() {
                    assert!(witness_valid(&g, &s.before, &s.after, mode, e.player, e.strategy, &e.witness));
                    let weaker = match mode {
                        Mode::Gkz => Mode::Pure,
                        Mode::MixedH | Mode::Pure => Mode::MixedG,
                        Mode::MixedG => continue,
                    };
                    assert!(witness_valid(&g, &s.before, &s.after, weaker, e.player, e.strategy, &e.witness));
                }
            }
        }
    }

    /// A simultaneous GKZ step can remove a strategy that is dominated only
    /// once an opponent's strategy disappears in the same step. Such a step
    /// is valid under the post-step rule but not under the pure rule.
    #[test]
    fn simultaneous_gkz_step_need_not_be_a_pure_step() {
        let g = staged();
        let a = Pairing::full(&g);
        // remove 1/C and 2/R together: R is beaten by L only once C is gone
        let sets = [set(&[2]), set(&[1])];
        let s = step(&g, &a, Mode::Gkz, &sets).unwrap();
        assert!(step(&g, &a, Mode::Pure, &sets).is_err());
        let r = s.eliminated.iter().find(|e| e.player == 1).unwrap();
        assert!(!witness_valid(&g, &s.before, &s.after, Mode::Pure, 1, 1, &r.witness));
    }

    #[test]
    fn mixed_terminals_refine_pure_terminals_and_keep_nash() {
        for g in [prisoners_dilemma(), three_by_two(), staged(), four_by_two(), matching_pennies()] {
            let pure = maximal_reduction(&g, Mode::Pure, &Policy::Fast).unwrap();
            let mixed = maximal_reduction(&g, Mode::MixedG, &Policy::Fast).unwrap();
            assert!(mixed.terminal.is_subset_of(&pure.terminal));
            for t in [&pure, &mixed] {
                assert_eq!(pure_nash_in(&g, &t.terminal), nash_restricted(&g, &t.terminal));
                assert!(fast_step(&g, &t.terminal, t.mode).is_none());
            }
        }
    }

    #[test]
    fn four_by_two_terminals() {
        let g = four_by_two();
        let pure = maximal_reduction(&g, Mode::Pure, &Policy::Fast).unwrap();
        assert_eq!(pure.terminal.render(&g), "1:{T,M,B} 2:{L,R}");
        let mixed = maximal_reduction(&g, Mode::MixedH, &Policy::Fast).unwrap();
        assert_eq!(mixed.terminal.render(&g), "1:{T,M} 2:{L,R}");
        assert_eq!(mixed.steps.len(), 1);
    }
}
