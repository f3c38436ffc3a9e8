//! Finite normal-form games, pairings (restrictions to strategy subsets),
//! payoff evaluation and pure Nash equilibria.
//!
//! Players and strategies are addressed by zero-based indices. Labels are
//! presentation only; every set operation works on indices.

mod format;
mod strategy_set;

pub use format::{parse_game, write_game, ParseGameError};
pub use strategy_set::StrategySet;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

pub type Player = usize;
pub type Strategy = usize;

/// Upper bound on strategies per player (pairings are bitsets).
pub const MAX_STRATEGIES: usize = StrategySet::CAPACITY;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("player {player} has no strategies")]
    EmptyStrategySet { player: Player },
    #[error("player {player} has {count} strategies; at most {MAX_STRATEGIES} are supported")]
    TooManyStrategies { player: Player, count: usize },
    #[error("player {player} has duplicate strategy label `{label}`")]
    DuplicateLabel { player: Player, label: String },
    #[error("payoff table of player {player} has {found} entries, expected {expected}")]
    PayoffDimension { player: Player, expected: usize, found: usize },
    #[error("expected {expected} payoff tables, found {found}")]
    PayoffTableCount { expected: usize, found: usize },
    #[error("invalid player index {player} (game has {players} players)")]
    InvalidPlayer { player: Player, players: usize },
    #[error("invalid strategy {strategy} for player {player} (has {count})")]
    InvalidStrategy { player: Player, strategy: Strategy, count: usize },
    #[error("profile has {found} coordinates, expected {expected}")]
    ProfileLength { expected: usize, found: usize },
    #[error("pairing covers {found} players, expected {expected}")]
    PairingShape { expected: usize, found: usize },
    #[error("unknown strategy label `{label}` for player {player}")]
    UnknownLabel { player: Player, label: String },
    #[error("malformed pairing `{0}` (expected e.g. `1:{{C,D}} 2:{{L}}`)")]
    PairingSyntax(String),
}

/// A finite n-person game in normal form with exact rational payoffs.
///
/// Payoff tables are dense, indexed by the flattened profile with player 0
/// as the most significant coordinate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Game {
    labels: Vec<Vec<String>>,
    payoffs: Vec<Vec<Rational>>,
    strides: Vec<usize>,
}

impl Game {
    /// Builds a game from per-player strategy labels and per-player payoff
    /// tables in flattened profile order.
    pub fn new(labels: Vec<Vec<String>>, payoffs: Vec<Vec<Rational>>) -> Result<Self, GameError> {
        if labels.is_empty() {
            return Err(GameError::NoPlayers);
        }
        for (player, ls) in labels.iter().enumerate() {
            if ls.is_empty() {
                return Err(GameError::EmptyStrategySet { player });
            }
            if ls.len() > MAX_STRATEGIES {
                return Err(GameError::TooManyStrategies { player, count: ls.len() });
            }
            let mut seen = BTreeSet::new();
            for l in ls {
                if !seen.insert(l.as_str()) {
                    return Err(GameError::DuplicateLabel { player, label: l.clone() });
                }
            }
        }
        if payoffs.len() != labels.len() {
            return Err(GameError::PayoffTableCount { expected: labels.len(), found: payoffs.len() });
        }
        let n = labels.len();
        let mut strides = vec![1usize; n];
        for p in (0..n.saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * labels[p + 1].len();
        }
        let total = strides[0] * labels[0].len();
        for (player, table) in payoffs.iter().enumerate() {
            if table.len() != total {
                return Err(GameError::PayoffDimension { player, expected: total, found: table.len() });
            }
        }
        Ok(Game { labels, payoffs, strides })
    }

    /// Builds a game with numeric labels `s0, s1, ...` from a payoff function.
    pub fn from_fn(sizes: &[usize], mut u: impl FnMut(Player, &[Strategy]) -> Rational) -> Result<Self, GameError> {
        let labels: Vec<Vec<String>> = sizes
            .iter()
            .map(|&k| (0..k).map(|s| format!("s{s}")).collect())
            .collect();
        Self::from_fn_labeled(labels, |p, prof| u(p, prof))
    }

    pub fn from_fn_labeled(
        labels: Vec<Vec<String>>,
        mut u: impl FnMut(Player, &[Strategy]) -> Rational,
    ) -> Result<Self, GameError> {
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        if sizes.is_empty() {
            return Err(GameError::NoPlayers);
        }
        let profiles = all_profiles(&sizes);
        let payoffs = (0..sizes.len())
            .map(|p| profiles.iter().map(|prof| u(p, prof)).collect())
            .collect();
        Self::new(labels, payoffs)
    }

    /// Two-player game from row-major payoff matrices (`rows x cols`).
    pub fn bimatrix(
        rows: &[&str],
        cols: &[&str],
        u1: &[Vec<Rational>],
        u2: &[Vec<Rational>],
    ) -> Result<Self, GameError> {
        let labels = vec![
            rows.iter().map(|s| s.to_string()).collect(),
            cols.iter().map(|s| s.to_string()).collect(),
        ];
        let flat = |m: &[Vec<Rational>]| m.iter().flat_map(|r| r.iter().cloned()).collect::<Vec<_>>();
        Self::new(labels, vec![flat(u1), flat(u2)])
    }

    pub fn num_players(&self) -> usize {
        self.labels.len()
    }

    pub fn num_strategies(&self, player: Player) -> usize {
        self.labels[player].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, player: Player) -> &[String] {
        &self.labels[player]
    }

    pub fn label(&self, player: Player, strategy: Strategy) -> &str {
        &self.labels[player][strategy]
    }

    pub fn strategy_index(&self, player: Player, label: &str) -> Result<Strategy, GameError> {
        self.check_player(player)?;
        self.labels[player]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GameError::UnknownLabel { player, label: label.to_string() })
    }

    pub fn check_player(&self, player: Player) -> Result<(), GameError> {
        if player >= self.num_players() {
            return Err(GameError::InvalidPlayer { player, players: self.num_players() });
        }
        Ok(())
    }

    pub fn check_strategy(&self, player: Player, strategy: Strategy) -> Result<(), GameError> {
        self.check_player(player)?;
        let count = self.num_strategies(player);
        if strategy >= count {
            return Err(GameError::InvalidStrategy { player, strategy, count });
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<(), GameError> {
        if profile.0.len() != self.num_players() {
            return Err(GameError::ProfileLength { expected: self.num_players(), found: profile.0.len() });
        }
        for (p, &s) in profile.0.iter().enumerate() {
            self.check_strategy(p, s)?;
        }
        Ok(())
    }

    /// `u_player(profile)`.
    pub fn payoff(&self, player: Player, profile: &Profile) -> Result<&Rational, GameError> {
        self.check_player(player)?;
        self.check_profile(profile)?;
        Ok(&self.payoffs[player][self.flat_index(&profile.0)])
    }

    pub(crate) fn flat_index(&self, choices: &[Strategy]) -> usize {
        choices.iter().zip(&self.strides).map(|(s, k)| s * k).sum()
    }

    pub(crate) fn stride(&self, player: Player) -> usize {
        self.strides[player]
    }

    /// Payoff of `player` playing `own` against the opponents encoded by
    /// `offset` (see [`OpponentProfiles`]).
    pub(crate) fn payoff_at(&self, player: Player, own: Strategy, offset: usize) -> &Rational {
        &self.payoffs[player][offset + own * self.strides[player]]
    }

    /// Payoff of `player` playing `own` against an opponent sub-profile
    /// (strategies of all other players, in player order).
    pub fn payoff_against(&self, player: Player, own: Strategy, opponents: &[Strategy]) -> Result<&Rational, GameError> {
        let full = Profile::join(player, own, opponents);
        self.payoff(player, &full)
    }

    pub fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        all_profiles(&self.sizes()).into_iter().map(Profile)
    }

    pub(crate) fn table(&self, player: Player) -> &[Rational] {
        &self.payoffs[player]
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", write_game(self))
    }
}

fn all_profiles(sizes: &[usize]) -> Vec<Vec<Strategy>> {
    let mut out = vec![Vec::new()];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// One strategy per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(pub Vec<Strategy>);

impl Profile {
    pub fn new(choices: Vec<Strategy>) -> Self {
        Profile(choices)
    }

    /// Inserts `own` at position `player` into an opponent sub-profile.
    pub fn join(player: Player, own: Strategy, opponents: &[Strategy]) -> Profile {
        let mut v = Vec::with_capacity(opponents.len() + 1);
        v.extend_from_slice(&opponents[..player.min(opponents.len())]);
        v.push(own);
        if player < opponents.len() {
            v.extend_from_slice(&opponents[player..]);
        }
        Profile(v)
    }

    /// The opponent sub-profile of `player`.
    pub fn without(&self, player: Player) -> Vec<Strategy> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != player)
            .map(|(_, &s)| s)
            .collect()
    }

    pub fn render(&self, game: &Game) -> String {
        let parts: Vec<&str> = self.0.iter().enumerate().map(|(p, &s)| game.label(p, s)).collect();
        format!("({})", parts.join(","))
    }
}

/// A restriction of a game to per-player strategy subsets `H_i ⊆ G_i`.
///
/// The ambient game is passed alongside; payoffs on the restriction are the
/// ambient payoffs, so restricting never changes a surviving profile's value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    sets: Vec<StrategySet>,
}

impl Pairing {
    /// The trivial pairing `H = G`.
    pub fn full(game: &Game) -> Self {
        Pairing { sets: game.labels.iter().map(|l| StrategySet::full(l.len())).collect() }
    }

    pub fn from_sets(game: &Game, sets: Vec<StrategySet>) -> Result<Self, GameError> {
        if sets.len() != game.num_players() {
            return Err(GameError::PairingShape { expected: game.num_players(), found: sets.len() });
        }
        for (p, set) in sets.iter().enumerate() {
            if let Some(s) = set.iter().find(|&s| s >= game.num_strategies(p)) {
                return Err(GameError::InvalidStrategy { player: p, strategy: s, count: game.num_strategies(p) });
            }
        }
        Ok(Pairing { sets })
    }

    /// Inverts [`Pairing::render`]. Players that are not mentioned keep all
    /// their strategies.
    pub fn parse(game: &Game, text: &str) -> Result<Self, GameError> {
        let bad = || GameError::PairingSyntax(text.to_string());
        let mut sets: Vec<StrategySet> = (0..game.num_players()).map(|p| StrategySet::full(game.num_strategies(p))).collect();
        for part in text.split_whitespace() {
            let (p, rest) = part.split_once(':').ok_or_else(bad)?;
            let p: usize = p.parse().ok().filter(|&p| p >= 1).ok_or_else(bad)?;
            game.check_player(p - 1)?;
            let inner = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
            let mut set = StrategySet::empty();
            for label in inner.split(',').map(str::trim).filter(|l| !l.is_empty()) {
                set.insert(game.strategy_index(p - 1, label)?);
            }
            sets[p - 1] = set;
        }
        Self::from_sets(game, sets)
    }

    pub fn from_indices(game: &Game, sets: &[&[Strategy]]) -> Result<Self, GameError> {
        Self::from_sets(game, sets.iter().map(|s| s.iter().copied().collect()).collect())
    }

    pub fn num_players(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, player: Player) -> StrategySet {
        self.sets[player]
    }

    pub fn sets(&self) -> &[StrategySet] {
        &self.sets
    }

    pub fn contains(&self, player: Player, strategy: Strategy) -> bool {
        self.sets[player].contains(strategy)
    }

    /// Every `H_i` nonempty.
    pub fn is_nonempty(&self) -> bool {
        self.sets.iter().all(|s| !s.is_empty())
    }

    /// `H_{-i}` nonempty, i.e. every opponent keeps at least one strategy.
    pub fn opponents_nonempty(&self, player: Player) -> bool {
        self.sets.iter().enumerate().all(|(p, s)| p == player || !s.is_empty())
    }

    pub fn is_subset_of(&self, other: &Pairing) -> bool {
        self.sets.iter().zip(&other.sets).all(|(a, b)| a.is_subset(*b))
    }

    pub fn without(&self, player: Player, strategy: Strategy) -> Pairing {
        let mut out = self.clone();
        out.sets[player].remove(strategy);
        out
    }

    pub fn with_set(&self, player: Player, set: StrategySet) -> Pairing {
        let mut out = self.clone();
        out.sets[player] = set;
        out
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).sum()
    }

    /// `1:{C,D} 2:{L}` style rendering with one-based player numbers.
    pub fn render(&self, game: &Game) -> String {
        self.sets
            .iter()
            .enumerate()
            .map(|(p, set)| {
                let labels: Vec<&str> = set.iter().map(|s| game.label(p, s)).collect();
                format!("{}:{{{}}}", p + 1, labels.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Profiles of the restriction, in lexicographic order.
    pub fn profiles(&self) -> Vec<Profile> {
        let mut out = vec![Vec::new()];
        for set in &self.sets {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Strategy>| {
                    set.iter().map(move |s| {
                        let mut v = prefix.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Profile).collect()
    }
}

/// An opponent sub-profile together with its payoff-table offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpponentProfile {
    /// Strategies of all players except the focal one, in player order.
    pub choices: Vec<Strategy>,
    pub(crate) offset: usize,
}

/// Enumerates `H_{-i}` in lexicographic order (first opponent most
/// significant). Empty iff some opponent set is empty.
#[derive(Debug, Clone)]
pub struct OpponentProfiles {
    sets: Vec<Vec<Strategy>>,
    strides: Vec<usize>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for OpponentProfiles {
    type Item = OpponentProfile;

    fn next(&mut self) -> Option<OpponentProfile> {
        let cursor = self.cursor.as_mut()?;
        let choices: Vec<Strategy> = cursor.iter().zip(&self.sets).map(|(&c, set)| set[c]).collect();
        let offset = choices.iter().zip(&self.strides).map(|(s, k)| s * k).sum();
        // advance, last coordinate fastest
        let mut k = cursor.len();
        loop {
            if k == 0 {
                self.cursor = None;
                break;
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < self.sets[k].len() {
                break;
            }
            cursor[k] = 0;
        }
        Some(OpponentProfile { choices, offset })
    }
}

/// `H_{-i}` of a pairing, each sub-profile exactly once, lexicographically.
pub fn opponents_profiles(game: &Game, pairing: &Pairing, player: Player) -> OpponentProfiles {
    let mut sets = Vec::new();
    let mut strides = Vec::new();
    for p in 0..game.num_players() {
        if p != player {
            sets.push(pairing.set(p).iter().collect::<Vec<_>>());
            strides.push(game.stride(p));
        }
    }
    let cursor = if sets.iter().any(Vec::is_empty) { None } else { Some(vec![0; sets.len()]) };
    OpponentProfiles { sets, strides, cursor }
}

/// Pure Nash equilibria of the whole game.
pub fn pure_nash(game: &Game) -> BTreeSet<Profile> {
    pure_nash_in(game, &Pairing::full(game))
}

/// Pure Nash equilibria of the restricted game: profiles of the pairing at
/// which no player has a strictly improving deviation inside its `H_i`.
pub fn pure_nash_in(game: &Game, pairing: &Pairing) -> BTreeSet<Profile> {
    pairing
        .profiles()
        .into_iter()
        .filter(|profile| {
            (0..game.num_players()).all(|p| {
                let here = &game.table(p)[game.flat_index(&profile.0)];
                let base = game.flat_index(&profile.0) - profile.0[p] * game.stride(p);
                pairing.set(p).iter().all(|dev| game.payoff_at(p, dev, base) <= here)
            })
        })
        .collect()
}
