//! Line-oriented trace and verdict reports.
//!
//! Eliminations are listed as `player/strategy <= witness` in player, then
//! strategy order, so reports diff cleanly.

use std::fmt::Write;

use super::{OrderVerdict, ReductionTrace};
use crate::game::Game;

pub fn render_trace(trace: &ReductionTrace) -> String {
    let game = &trace.game;
    let mut out = String::new();
    writeln!(out, "mode {}", trace.mode).unwrap();
    writeln!(out, "initial {}", trace.initial.render(game)).unwrap();
    for (k, step) in trace.steps.iter().enumerate() {
        writeln!(out, "step {}", k + 1).unwrap();
        for e in &step.eliminated {
            writeln!(
                out,
                "  {}/{} <= {}",
                e.player + 1,
                game.label(e.player, e.strategy),
                e.witness.render(game, e.player)
            )
            .unwrap();
        }
    }
    writeln!(out, "terminal {}", trace.terminal.render(game)).unwrap();
    writeln!(out, "steps {}", trace.steps.len()).unwrap();
    writeln!(out, "empty {}", trace.is_empty_terminal()).unwrap();
    writeln!(out, "continuity_consistent {}", trace.continuity_consistent).unwrap();
    out
}

pub fn render_verdict(game: &Game, verdict: &OrderVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "verdict").unwrap();
    writeln!(out, "  mode {}", verdict.mode).unwrap();
    writeln!(out, "  exhaustive {}", verdict.exhaustive).unwrap();
    if let Some(seed) = verdict.seed {
        writeln!(out, "  sampled seed {seed}").unwrap();
    }
    writeln!(out, "  budget_exhausted {}", verdict.budget_exhausted).unwrap();
    writeln!(out, "  nodes {}", verdict.nodes).unwrap();
    writeln!(out, "  terminals {}", verdict.terminals.len()).unwrap();
    for t in &verdict.terminals {
        let tag = if t.is_nonempty() { "" } else { " (empty)" };
        writeln!(out, "  terminal {}{tag}", t.render(game)).unwrap();
    }
    writeln!(out, "  independent {}", verdict.independent).unwrap();
    for (k, trace) in verdict.diverging_traces.iter().enumerate() {
        writeln!(out, "diverging {}", k + 1).unwrap();
        out.push_str(&render_trace(trace));
    }
    out
}
