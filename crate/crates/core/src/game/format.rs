//! The text game format.
//!
//! ```text
//! players: 2
//! strategies 1: C,D
//! strategies 2: C,D
//! payoffs 1:
//! 3,4
//! 0,1
//! payoffs 2:
//! 3,4
//! 0,1
//! ```
//!
//! Each `payoffs i:` block has one line per opponent sub-profile in
//! lexicographic order; a line lists player i's payoff for each of its own
//! strategies. Blank lines and `#` comments are ignored.

use thiserror::Error;

use super::{opponents_profiles, Game, GameError, Pairing};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseGameError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseGameError {
    ParseGameError { line, message: message.into() }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines { inner: it.peekable(), last: text.lines().count().max(1) }
    }

    fn next(&mut self, expecting: &str) -> Result<(usize, &'a str), ParseGameError> {
        self.inner
            .next()
            .ok_or_else(|| err(self.last, format!("unexpected end of input, expected {expecting}")))
    }
}

fn header<'a>(line: usize, text: &'a str, keyword: &str, index: Option<usize>) -> Result<&'a str, ParseGameError> {
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| err(line, format!("expected `{keyword}` header, found `{text}`")))?;
    let mut words = head.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(err(line, format!("expected `{keyword}` header, found `{text}`")));
    }
    match (index, words.next()) {
        (None, None) => {}
        (Some(i), Some(w)) if w.parse::<usize>().ok() == Some(i) => {}
        (Some(i), _) => return Err(err(line, format!("expected `{keyword} {i}:`, found `{text}`"))),
        (None, Some(_)) => return Err(err(line, format!("unexpected index in `{text}`"))),
    }
    if words.next().is_some() {
        return Err(err(line, format!("malformed header `{text}`")));
    }
    Ok(rest.trim())
}

/// Parses the text game format.
pub fn parse_game(text: &str) -> Result<Game, ParseGameError> {
    let mut lines = Lines::new(text);

    let (line, l) = lines.next("`players: n`")?;
    let n: usize = header(line, l, "players", None)?
        .parse()
        .map_err(|_| err(line, "player count must be a positive integer"))?;
    if n == 0 {
        return Err(err(line, "a game needs at least one player"));
    }

    let mut labels = Vec::with_capacity(n);
    for p in 1..=n {
        let (line, l) = lines.next(&format!("`strategies {p}:`"))?;
        let body = header(line, l, "strategies", Some(p))?;
        let ls: Vec<String> = body.split(',').map(|s| s.trim().to_string()).collect();
        if ls.iter().any(String::is_empty) {
            return Err(err(line, format!("empty strategy label for player {p}")));
        }
        labels.push(ls);
    }
    let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
    let stub = Game::from_fn_labeled(labels.clone(), |_, _| Rational::zero()).map_err(|e| {
        let line = match &e {
            GameError::EmptyStrategySet { player }
            | GameError::TooManyStrategies { player, .. }
            | GameError::DuplicateLabel { player, .. } => player + 2,
            _ => 1,
        };
        err(line, e.to_string())
    })?;

    let total: usize = sizes.iter().product();
    let mut tables = vec![vec![Rational::zero(); total]; n];
    for p in 0..n {
        let (line, l) = lines.next(&format!("`payoffs {}:`", p + 1))?;
        let rest = header(line, l, "payoffs", Some(p + 1))?;
        if !rest.is_empty() {
            return Err(err(line, "payoff values start on the line after the header"));
        }
        let expected_rows = total / sizes[p];
        for opp in opponents_profiles(&stub, &Pairing::full(&stub), p) {
            let (line, l) = lines.next(&format!("{expected_rows} payoff rows for player {}", p + 1))?;
            if l.contains(':') {
                return Err(err(
                    line,
                    format!("payoff block of player {} has too few rows: expected {expected_rows}", p + 1),
                ));
            }
            let values: Vec<&str> = l.split(',').map(str::trim).collect();
            if values.len() != sizes[p] {
                return Err(err(
                    line,
                    format!(
                        "dimension mismatch: player {} has {} strategies but the row has {} values",
                        p + 1,
                        sizes[p],
                        values.len()
                    ),
                ));
            }
            for (own, v) in values.into_iter().enumerate() {
                let r: Rational = v.parse().map_err(|e| err(line, format!("{e}")))?;
                tables[p][opp.offset + own * stub.stride(p)] = r;
            }
        }
    }
    if let Some((line, l)) = lines.inner.next() {
        return Err(err(line, format!("unexpected trailing content `{l}` (dimension mismatch?)")));
    }
    Game::new(labels, tables).map_err(|e| err(1, e.to_string()))
}

/// Serialises a game in the text format; `parse_game` inverts it exactly.
pub fn write_game(game: &Game) -> String {
    let mut out = format!("players: {}\n", game.num_players());
    for p in 0..game.num_players() {
        out.push_str(&format!("strategies {}: {}\n", p + 1, game.labels(p).join(",")));
    }
    for p in 0..game.num_players() {
        out.push_str(&format!("payoffs {}:\n", p + 1));
        for opp in opponents_profiles(game, &Pairing::full(game), p) {
            let row: Vec<String> = (0..game.num_strategies(p))
                .map(|own| game.payoff_at(p, own, opp.offset).to_string())
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}
