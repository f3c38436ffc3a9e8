//! Exploration of every elimination order.
//!
//! Nodes are pairings reachable from the full game by removing one eligible
//! strategy at a time; a node with nothing eligible is terminal. Removing a
//! set of eligible strategies at once reaches the same pairing as removing
//! them one by one, so single eliminations cover simultaneous steps too.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dominated_sets, maximal_reduction_from, Mode, Policy, ReductionTrace};
use crate::game::{Game, Pairing, Player, Strategy, StrategySet};

/// Above this many strategies in total the DAG is sampled, not exhausted.
pub const EXHAUSTIVE_LIMIT: usize = 12;

const SAMPLED_WALKS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderVerdict {
    pub mode: Mode,
    pub terminals: BTreeSet<Pairing>,
    pub independent: bool,
    /// One trace per distinct terminal (at most two), only when orders
    /// disagree.
    pub diverging_traces: Vec<ReductionTrace>,
    /// Every reachable pairing was visited.
    pub exhaustive: bool,
    /// Exploration stopped at the node budget.
    pub budget_exhausted: bool,
    pub nodes: usize,
    /// Seed of the random walks when the DAG was sampled.
    pub seed: Option<u64>,
}

impl OrderVerdict {
    /// Some terminal leaves a player without strategies.
    pub fn has_empty_terminal(&self) -> bool {
        self.terminals.iter().any(|t| !t.is_nonempty())
    }

    /// The unique terminal when orders agree and it is nonempty.
    pub fn unique_nonempty_terminal(&self) -> Option<&Pairing> {
        match (self.independent, self.terminals.first()) {
            (true, Some(t)) if t.is_nonempty() => Some(t),
            _ => None,
        }
    }
}

struct Explorer<'a> {
    game: &'a Game,
    mode: Mode,
    eligible: HashMap<Pairing, Vec<StrategySet>>,
    parent: HashMap<Pairing, (Pairing, Player, Strategy)>,
    terminals: BTreeSet<Pairing>,
}

impl Explorer<'_> {
    fn eligible(&mut self, node: &Pairing) -> &Vec<StrategySet> {
        if !self.eligible.contains_key(node) {
            let d = dominated_sets(self.game, node, self.mode);
            self.eligible.insert(node.clone(), d);
        }
        &self.eligible[node]
    }

    fn children(&mut self, node: &Pairing) -> Vec<(Pairing, Player, Strategy)> {
        let sets = self.eligible(node).clone();
        sets.iter()
            .enumerate()
            .flat_map(|(p, set)| set.iter().map(move |x| (p, x)))
            .map(|(p, x)| (node.without(p, x), p, x))
            .collect()
    }

    fn path_to(&self, node: &Pairing) -> Vec<(Player, Strategy)> {
        let mut path = Vec::new();
        let mut cur = node.clone();
        while let Some((prev, p, x)) = self.parent.get(&cur) {
            path.push((*p, *x));
            cur = prev.clone();
        }
        path.reverse();
        path
    }
}

/// Replays single eliminations from the full game as a trace.
fn trace_along(game: &Game, mode: Mode, path: &[(Player, Strategy)]) -> ReductionTrace {
    let sequence = path
        .iter()
        .map(|&(p, x)| {
            let mut sets = vec![StrategySet::empty(); game.num_players()];
            sets[p].insert(x);
            sets
        })
        .collect();
    maximal_reduction_from(game, &Pairing::full(game), mode, &Policy::GivenSequence(sequence))
        .expect("explored eliminations are valid steps")
}

/// Collects the terminal pairings of all single-elimination orders.
///
/// Games with at most [`EXHAUSTIVE_LIMIT`] strategies are explored
/// exhaustively up to `budget` expanded nodes; larger games are sampled by
/// random walks seeded with `seed`.
pub fn enumerate_orders(game: &Game, mode: Mode, budget: usize, seed: u64) -> OrderVerdict {
    let root = Pairing::full(game);
    let mut ex = Explorer {
        game,
        mode,
        eligible: HashMap::new(),
        parent: HashMap::new(),
        terminals: BTreeSet::new(),
    };
    let total = root.total_size();
    let sampled = total > EXHAUSTIVE_LIMIT;
    let mut nodes = 0;
    let mut budget_exhausted = false;

    if !sampled {
        let mut visited: HashSet<Pairing> = HashSet::from([root.clone()]);
        let mut stack = vec![root.clone()];
        while let Some(node) = stack.pop() {
            if nodes >= budget {
                budget_exhausted = true;
                break;
            }
            nodes += 1;
            let children = ex.children(&node);
            if children.is_empty() {
                ex.terminals.insert(node);
                continue;
            }
            // push in reverse so the lowest (player, strategy) is explored first
            for (child, p, x) in children.into_iter().rev() {
                if visited.insert(child.clone()) {
                    ex.parent.insert(child.clone(), (node.clone(), p, x));
                    stack.push(child);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        'walks: for _ in 0..SAMPLED_WALKS {
            let mut node = root.clone();
            loop {
                if nodes >= budget {
                    budget_exhausted = true;
                    break 'walks;
                }
                nodes += 1;
                let children = ex.children(&node);
                if children.is_empty() {
                    ex.terminals.insert(node);
                    break;
                }
                let (child, p, x) = children[rng.gen_range(0..children.len())].clone();
                ex.parent.entry(child.clone()).or_insert((node.clone(), p, x));
                node = child;
            }
        }
    }

    let independent = ex.terminals.len() == 1;
    let diverging_traces = if independent {
        Vec::new()
    } else {
        ex.terminals
            .iter()
            .take(2)
            .map(|t| trace_along(game, mode, &ex.path_to(t)))
            .collect()
    };
    OrderVerdict {
        mode,
        independent,
        terminals: ex.terminals,
        diverging_traces,
        exhaustive: !sampled && !budget_exhausted,
        budget_exhausted,
        nodes,
        seed: sampled.then_some(seed),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{four_by_two, staged};
    use super::*;
    use crate::game::fixtures::{prisoners_dilemma, three_by_two};
    use crate::rational::int;

    #[test]
    fn small_games_are_order_independent() {
        let pd = prisoners_dilemma();
        let v = enumerate_orders(&pd, Mode::Pure, 10_000, 0);
        assert!(v.independent && v.exhaustive);
        assert_eq!(v.terminals.first().unwrap().render(&pd), "1:{D} 2:{D}");
        assert_eq!(v.nodes, 4);

        let g = three_by_two();
        let v = enumerate_orders(&g, Mode::MixedG, 10_000, 0);
        assert!(v.independent);
        assert_eq!(v.unique_nonempty_terminal().unwrap().render(&g), "1:{T,M} 2:{L,R}");

        for g in [staged(), four_by_two()] {
            for mode in Mode::ALL {
                assert!(enumerate_orders(&g, mode, 10_000, 0).independent);
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let v = enumerate_orders(&staged(), Mode::Pure, 1, 0);
        assert!(v.budget_exhausted && !v.exhaustive);
    }

    #[test]
    fn large_games_are_sampled() {
        let g = Game::from_fn(&[7, 6], |p, prof| int(prof[p] as i64)).unwrap();
        let v = enumerate_orders(&g, Mode::Pure, 100_000, 42);
        assert_eq!(v.seed, Some(42));
        assert!(!v.exhaustive);
        assert!(v.independent);
        assert_eq!(v.terminals.first().unwrap().render(&g), "1:{s6} 2:{s5}");
    }

    #[test]
    fn replayed_paths_reach_their_terminal() {
        let g = staged();
        let t = trace_along(&g, Mode::Pure, &[(0, 2), (1, 1), (0, 1)]);
        assert_eq!(t.steps.len(), 3);
        assert_eq!(t.terminal.render(&g), "1:{A} 2:{L}");
        let v = enumerate_orders(&g, Mode::Pure, 10_000, 0);
        assert!(v.diverging_traces.is_empty());
    }
}
