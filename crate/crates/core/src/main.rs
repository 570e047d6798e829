use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ipd::cli::{run, Command};
use ipd::config::{parse_config, Overrides};
use ipd::game::PayoffMatrix;

/// Iterated prisoner's dilemma tournaments, matches and analyses.
#[derive(Parser, Debug)]
#[command(name = "ipd", version)]
struct Args {
    /// TOML configuration, or any CSV previously written by this tool.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    turns: Option<u32>,
    #[arg(long, global = true)]
    iters: Option<u32>,
    #[arg(long = "p-exp", global = true)]
    p_exp: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated player names.
    #[arg(long, global = true, value_delimiter = ',')]
    roster: Option<Vec<String>>,
    /// Memory-one opponents of the predictor open with a fair coin.
    #[arg(long = "randomize-initial", global = true)]
    randomize_initial: bool,
    /// R,S,T,P
    #[arg(long, global = true)]
    payoffs: Option<PayoffMatrix>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write traces of at most this many tournament matches.
    #[arg(long, global = true)]
    trace: Option<usize>,
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Comma-separated exploration fractions for `sweep`.
    #[arg(long, global = true, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Player whose learning curve `timeseries` reports.
    #[arg(long, global = true)]
    subject: Option<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Round robin: summary and pairwise payoff matrix.
    Tournament,
    /// A single match: per-turn trace and block means.
    Match { a: String, b: String },
    /// Round robin for every exploration fraction in the grid.
    Sweep,
    /// Verify linear payoff relations from exact long-run payoffs.
    ZdCheck,
    /// Learning curve of one player and its 1/sqrt(n) fit.
    Timeseries,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let overrides = Overrides {
        n_turns: args.turns,
        n_iter: args.iters,
        p_exp: args.p_exp,
        seed: args.seed,
        roster: args.roster,
        randomize_initial: args.randomize_initial.then_some(true),
        payoffs: args.payoffs,
        out: args.out,
        trace: args.trace,
        window: args.window,
        grid: args.grid,
        subject: args.subject,
    };
    let command = match args.command {
        Cmd::Tournament => Command::Tournament,
        Cmd::Match { a, b } => Command::Match { a, b },
        Cmd::Sweep => Command::Sweep,
        Cmd::ZdCheck => Command::ZdCheck,
        Cmd::Timeseries => Command::Timeseries,
    };
    let result = parse_config(args.config.as_deref(), &overrides)
        .map_err(anyhow::Error::from)
        .and_then(|cfg| run(&command, &cfg).map_err(anyhow::Error::from));
    match result {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
