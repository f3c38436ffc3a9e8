//! The `iesds` command line.
//!
//! Output is machine-readable and byte-stable by default; `--human` prefixes
//! a timestamped prose header. Exit codes: 0 success, 2 input error, 3
//! budget exhausted (partial verdict printed), 4 a checked claim failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::continuity::{
    check_transfer_closed_duality, classify, parse_function, property_k_check, IntervalGame1D, SymbolicFn1D,
};
use crate::dominance::{find_mixed_dominator, fm_oracle_dominated, pure_gap, Support};
use crate::game::{parse_game, pure_nash, pure_nash_in, Game, Pairing, Player, Strategy};
use crate::measures::MixedStrategy;
use crate::reduction::{
    check_intersection_property, enumerate_orders, lemma6_witness, lemma8_witness, maximal_reduction,
    nash_restricted, parse_order, render_trace, render_verdict, LemmaError, Mode, Policy,
};
use crate::suite::{run_campaign, run_on_game, CampaignName};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;
pub const EXIT_FALSIFIED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "iesds", version, about = "Iterated elimination of strictly dominated strategies, exactly")]
pub struct Cli {
    /// Prefix reports with a timestamped prose header.
    #[arg(long, global = true)]
    pub human: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SupportArg {
    /// Mixtures over all of the player's strategies.
    Ambient,
    /// Mixtures over the pairing's strategies only.
    Pairing,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a maximal reduction and print its trace.
    Reduce {
        game: PathBuf,
        #[arg(long, default_value = "pure")]
        mode: Mode,
        /// `fast`, `order=1/C,2/D,...` (one at a time by priority) or `all`.
        #[arg(long, default_value = "fast")]
        policy: String,
        /// Node budget for `--policy all`.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Seed for sampled order exploration.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Explore every elimination order (same as `reduce --policy all`).
    Orders {
        game: PathBuf,
        #[arg(long, default_value = "pure")]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a strategy is dominated on a pairing.
    Dominance {
        game: PathBuf,
        /// One-based player number.
        #[arg(long)]
        player: usize,
        /// Strategy label or zero-based index.
        #[arg(long)]
        strategy: String,
        #[arg(long, value_enum, default_value = "ambient")]
        support: SupportArg,
        /// Pairing such as `1:{T,M} 2:{L}`; defaults to the whole game.
        #[arg(long)]
        pairing: Option<String>,
    },
    /// Classify a one-dimensional function's continuity properties.
    Classify {
        function: PathBuf,
        /// Also check transfer closed-valuedness and the intersection identity.
        #[arg(long)]
        duality: bool,
        /// Also check property K for the symmetric two-player game with this
        /// payoff, on the full domain.
        #[arg(long)]
        property_k: bool,
    },
    /// Pure Nash equilibria, optionally compared with a reduction's terminal.
    Nash {
        game: PathBuf,
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Check the intersection property of every player's payoff.
    Intersect { game: PathBuf },
    /// Build an undominated dominator on a reduction's terminal pairing.
    Witness {
        game: PathBuf,
        /// 6: pure version on the pure terminal; 8: mixed version on the
        /// mixed-g terminal.
        #[arg(long, value_parser = ["6", "8"])]
        lemma: String,
        #[arg(long)]
        player: usize,
        /// The dominated strategy.
        #[arg(long)]
        x: String,
        /// Pure dominator of x, for `--lemma 6`.
        #[arg(long)]
        y: Option<String>,
        /// Mixed dominator such as `T:1/2,M:1/2` for `--lemma 8`; found by LP when
        /// omitted.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Run a verification campaign (`all` runs every one).
    Campaign {
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Run a corpus campaign on this game only.
        #[arg(long)]
        game: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Input(String),
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

/// A rendered report and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub code: i32,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { report, code: EXIT_OK }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

fn load_game(path: &Path) -> Result<Game, CliError> {
    parse_game(&read(path)?).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn load_function(path: &Path) -> Result<SymbolicFn1D, CliError> {
    parse_function(&read(path)?).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn player_arg(game: &Game, player: usize) -> Result<Player, CliError> {
    if player == 0 {
        return Err(input("players are numbered from 1"));
    }
    game.check_player(player - 1).map_err(input)?;
    Ok(player - 1)
}

fn strategy_arg(game: &Game, player: Player, s: &str) -> Result<Strategy, CliError> {
    let idx = game.strategy_index(player, s).or_else(|e| s.parse::<Strategy>().map_err(|_| input(e)))?;
    game.check_strategy(player, idx).map_err(input)?;
    Ok(idx)
}

fn orders_report(game: &Game, mode: Mode, budget: usize, seed: u64) -> Outcome {
    let v = enumerate_orders(game, mode, budget, seed);
    let code = if v.budget_exhausted { EXIT_PARTIAL } else { EXIT_OK };
    Outcome { report: render_verdict(game, &v), code }
}

fn reduce(game: &Game, mode: Mode, policy: &str, budget: usize, seed: u64) -> Result<Outcome, CliError> {
    let policy = match policy {
        "all" => return Ok(orders_report(game, mode, budget, seed)),
        "fast" => Policy::Fast,
        p => match p.strip_prefix("order=") {
            Some(order) => Policy::OneAtATime(parse_order(game, order).map_err(input)?),
            None => return Err(input(format!("unknown policy `{p}` (expected fast, order=<perm> or all)"))),
        },
    };
    let trace = maximal_reduction(game, mode, &policy).map_err(input)?;
    Ok(Outcome::ok(render_trace(&trace)))
}

fn dominance(game: &Game, player: usize, strategy: &str, support: SupportArg, pairing: Option<&str>) -> Result<Outcome, CliError> {
    let i = player_arg(game, player)?;
    let x = strategy_arg(game, i, strategy)?;
    let h = match pairing {
        Some(text) => Pairing::parse(game, text).map_err(input)?,
        None => Pairing::full(game),
    };
    let support = match support {
        SupportArg::Ambient => Support::Ambient,
        SupportArg::Pairing => Support::Pairing,
    };
    let mut out = String::new();
    writeln!(out, "pairing {}", h.render(game)).unwrap();
    writeln!(out, "strategy {}/{}", i + 1, game.label(i, x)).unwrap();
    let pure: Vec<&str> = support
        .strategies(game, &h, i)
        .iter()
        .filter(|&y| pure_gap(game, &h, i, y, x).ok().flatten().is_some_and(|(g, _)| g.is_positive()))
        .map(|y| game.label(i, y))
        .collect();
    writeln!(out, "pure_dominators {{{}}}", pure.join(",")).unwrap();
    let cert = find_mixed_dominator(game, &h, i, x, support).map_err(input)?;
    match &cert {
        Some(c) => writeln!(out, "mixed_dominated true by {} margin {}", c.weights.render(game), c.margin).unwrap(),
        None => writeln!(out, "mixed_dominated false").unwrap(),
    }
    match fm_oracle_dominated(game, &h, i, x, support) {
        Ok(v) => writeln!(out, "fourier_motzkin {v}").unwrap(),
        Err(e) => writeln!(out, "fourier_motzkin unavailable: {e}").unwrap(),
    }
    Ok(Outcome::ok(out))
}

fn classify_report(f: &SymbolicFn1D, duality: bool, property_k: bool, human: bool) -> Result<Outcome, CliError> {
    let r = classify(f);
    let mut out = format!("{r}\n");
    if human {
        writeln!(out, "usc violations: {}", r.usc_violations).unwrap();
        writeln!(out, "transfer_uc violations: {}", r.transfer_uc_violations).unwrap();
        writeln!(out, "transfer_wuc violations: {}", r.transfer_wuc_violations).unwrap();
    }
    if duality {
        let d = check_transfer_closed_duality(f);
        writeln!(
            out,
            "duality: transfer_closed_valued: {} transfer_uc: {} closure_intersection={} intersection={} identity: {} holds: {}",
            d.transfer_closed_valued,
            d.transfer_uc,
            d.closure_intersection,
            d.intersection,
            d.intersection_identity,
            d.holds
        )
        .unwrap();
    }
    if property_k {
        let g = IntervalGame1D::symmetric(f.clone());
        let h = [g.strategies(0), g.strategies(1)];
        let k = property_k_check(&g, &h).map_err(input)?;
        write!(out, "{k}").unwrap();
    }
    Ok(Outcome::ok(out))
}

fn render_profiles(game: &Game, set: &std::collections::BTreeSet<crate::game::Profile>) -> String {
    let parts: Vec<String> = set.iter().map(|p| p.render(game)).collect();
    format!("{{{}}}", parts.join(" "))
}

fn nash(game: &Game, mode: Option<Mode>) -> Result<Outcome, CliError> {
    let all = pure_nash(game);
    let mut out = format!("pure_nash {}\n", render_profiles(game, &all));
    let mut code = EXIT_OK;
    if let Some(mode) = mode {
        let trace = maximal_reduction(game, mode, &Policy::Fast).map_err(input)?;
        let restricted = nash_restricted(game, &trace.terminal);
        let local = pure_nash_in(game, &trace.terminal);
        writeln!(out, "terminal {}", trace.terminal.render(game)).unwrap();
        writeln!(out, "terminal_nash {}", render_profiles(game, &local)).unwrap();
        writeln!(out, "preserved {}", restricted == local && restricted == all).unwrap();
        if restricted != local || restricted != all {
            code = EXIT_FALSIFIED;
        }
    }
    Ok(Outcome { report: out, code })
}

fn intersect(game: &Game) -> Outcome {
    let r = check_intersection_property(game);
    let mut out = String::new();
    for p in &r.players {
        writeln!(out, "player {} intersection_property: {}", p.player + 1, p.holds).unwrap();
        for s in p.strategies.iter().filter(|s| !s.holds) {
            let labels: Vec<&str> = s.intersection.iter().map(|t| game.label(p.player, t)).collect();
            let own: Vec<&str> = s.own_projection.iter().map(|t| game.label(p.player, t)).collect();
            write!(out, "  {}: Z_i={{{}}} intersection={{{}}}", game.label(p.player, s.strategy), own.join(","), labels.join(",")).unwrap();
            if let Some(w) = &s.witness {
                let opp: Vec<&str> = (0..game.num_players())
                    .filter(|&q| q != p.player)
                    .zip(w)
                    .map(|(q, &t)| game.label(q, t))
                    .collect();
                write!(out, " differs at ({})", opp.join(",")).unwrap();
            }
            out.push('\n');
        }
    }
    writeln!(out, "holds {}", r.holds).unwrap();
    Outcome::ok(out)
}

fn witness(
    game: &Game,
    lemma: &str,
    player: usize,
    x: &str,
    y: Option<&str>,
    mu: Option<&str>,
) -> Result<Outcome, CliError> {
    let i = player_arg(game, player)?;
    let x = strategy_arg(game, i, x)?;
    let verdict = if lemma == "6" {
        let y = strategy_arg(game, i, y.ok_or_else(|| input("--lemma 6 needs --y"))?)?;
        let trace = maximal_reduction(game, Mode::Pure, &Policy::Fast).map_err(input)?;
        let head = format!("terminal {}\n", trace.terminal.render(game));
        lemma6_witness(game, &trace, i, x, y).map(|z| format!("{head}witness {}\n", game.label(i, z))).map_err(|e| (head, e))
    } else {
        let trace = maximal_reduction(game, Mode::MixedG, &Policy::Fast).map_err(input)?;
        let h = trace.terminal;
        let head = format!("terminal {}\n", h.render(game));
        let mu_prime = match mu {
            Some(text) => MixedStrategy::parse(game, i, text).map_err(input)?,
            None => match find_mixed_dominator(game, &h, i, x, Support::Ambient).map_err(input)? {
                Some(c) => c.weights,
                None => {
                    let e = LemmaError::Precondition(format!("no mixture dominates {} on the terminal", game.label(i, x)));
                    return Ok(Outcome { report: format!("{head}{e}\n"), code: EXIT_INPUT });
                }
            },
        };
        let head = format!("{head}dominator {}\n", mu_prime.render(game));
        lemma8_witness(game, &h, i, &mu_prime, x).map(|m| format!("{head}witness {}\n", m.render(game))).map_err(|e| (head, e))
    };
    Ok(match verdict {
        Ok(report) => Outcome::ok(report),
        Err((head, e)) => {
            let code = if matches!(e, LemmaError::Counterexample(_)) { EXIT_FALSIFIED } else { EXIT_INPUT };
            Outcome { report: format!("{head}{e}\n"), code }
        }
    })
}

fn campaign(name: &str, seed: u64, budget: usize, game: Option<&Game>, human: bool) -> Result<Outcome, CliError> {
    let names: Vec<CampaignName> =
        if name == "all" { CampaignName::ALL.to_vec() } else { vec![name.parse().map_err(input)?] };
    let mut report = String::new();
    let mut code = EXIT_OK;
    for n in names {
        let r = match game {
            Some(g) => match run_on_game(n, g, seed) {
                Some(r) => r,
                None if name == "all" => continue,
                None => return Err(input(format!("campaign {n} generates its own instances and takes no --game"))),
            },
            None => run_campaign(n, seed, budget),
        };
        report.push_str(&if human { r.render_human() } else { r.render() });
        if !r.is_green() {
            code = EXIT_FALSIFIED;
        }
    }
    Ok(Outcome { report, code })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let human = cli.human;
    let outcome = match &cli.command {
        Command::Reduce { game, mode, policy, budget, seed } => reduce(&load_game(game)?, *mode, policy, *budget, *seed)?,
        Command::Orders { game, mode, budget, seed } => orders_report(&load_game(game)?, *mode, *budget, *seed),
        Command::Dominance { game, player, strategy, support, pairing } => {
            dominance(&load_game(game)?, *player, strategy, *support, pairing.as_deref())?
        }
        Command::Classify { function, duality, property_k } => {
            classify_report(&load_function(function)?, *duality, *property_k, human)?
        }
        Command::Nash { game, mode } => nash(&load_game(game)?, *mode)?,
        Command::Intersect { game } => intersect(&load_game(game)?),
        Command::Witness { game, lemma, player, x, y, mu } => {
            witness(&load_game(game)?, lemma, *player, x, y.as_deref(), mu.as_deref())?
        }
        Command::Campaign { name, seed, budget, game } => {
            let game = game.as_deref().map(load_game).transpose()?;
            campaign(name, *seed, *budget, game.as_ref(), human)?
        }
    };
    Ok(outcome)
}

fn human_header(cli: &Cli, code: i32) -> String {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let what = match &cli.command {
        Command::Reduce { .. } => "reduction trace",
        Command::Orders { .. } => "order exploration",
        Command::Dominance { .. } => "dominance query",
        Command::Classify { .. } => "continuity classification",
        Command::Nash { .. } => "pure Nash equilibria",
        Command::Intersect { .. } => "intersection property",
        Command::Witness { .. } => "undominated dominator",
        Command::Campaign { .. } => "verification campaign",
    };
    let status = match code {
        EXIT_OK => "ok",
        EXIT_PARTIAL => "partial: budget exhausted",
        EXIT_FALSIFIED => "a checked claim failed",
        _ => "input rejected",
    };
    format!("# iesds {what}, unix time {now}\n# status: {status}\n")
}

/// Parses arguments, runs the command and writes the report; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut report = outcome.report;
    if cli.human {
        report = human_header(&cli, outcome.code) + &report;
    }
    match &cli.output {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &report) {
                eprintln!("error: {}", CliError::Write { path: path.display().to_string(), source });
                return EXIT_INPUT;
            }
        }
        None => print!("{report}"),
    }
    outcome.code
}
