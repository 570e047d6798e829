//! Subcommands behind the `ipd` binary.
//!
//! Output layout inside the output directory:
//!
//! | command      | files                                                    |
//! |--------------|----------------------------------------------------------|
//! | `tournament` | `summary.csv`, `payoff_matrix.csv`, `trace_*.csv` (with `--trace N`) |
//! | `match A B`  | `match_A_B_trace.csv`, `match_A_B_series.csv`            |
//! | `sweep`      | `sweep.csv`                                              |
//! | `zd-check`   | `zd_report.csv`                                          |
//! | `timeseries` | `timeseries.csv`, `timeseries_fit.csv`                   |

use std::path::PathBuf;

use thiserror::Error;

use crate::analysis::{exploration_sweep, fit_inverse_sqrt, zd_residual};
use crate::config::{ConfigError, RunConfig};
use crate::engine::{play_match, run_round_robin, time_series, EngineError};
use crate::report::{self, OutputSet, ZdRow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Tournament,
    Match { a: String, b: String },
    Sweep,
    ZdCheck,
    Timeseries,
}

impl Command {
    pub fn words(&self) -> Vec<String> {
        match self {
            Command::Tournament => vec!["tournament".into()],
            Command::Match { a, b } => vec!["match".into(), a.clone(), b.clone()],
            Command::Sweep => vec!["sweep".into()],
            Command::ZdCheck => vec!["zd-check".into()],
            Command::Timeseries => vec!["timeseries".into()],
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{0}")]
    Analysis(String),
    #[error("writing outputs: {0}")]
    Io(#[from] std::io::Error),
}

/// Computes every output file of `command` without touching the disk.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<OutputSet, CliError> {
    cfg.validate()?;
    let header = cfg.header(&command.words());
    let mcfg = cfg.match_config();
    let mut out = OutputSet::new();
    match command {
        Command::Tournament => {
            let result = run_round_robin(&cfg.players()?, &mcfg, cfg.n_iter, cfg.seed)?;
            out.add("summary.csv", report::summary_csv(&header, &result));
            out.add("payoff_matrix.csv", report::matrix_csv(&header, &result));
            for m in result.matches.iter().take(cfg.trace) {
                let name = format!(
                    "trace_{}_{}_{}_{}_{}.csv",
                    m.a, m.b, m.iteration, m.record.players[0], m.record.players[1]
                );
                out.add(name, report::trace_csv(&header, &m.record));
            }
        }
        Command::Match { a, b } => {
            let pa = cfg
                .player(a)
                .map_err(|e| ConfigError::Invalid { key: "match.a".into(), message: e.to_string() })?;
            let pb = cfg
                .player(b)
                .map_err(|e| ConfigError::Invalid { key: "match.b".into(), message: e.to_string() })?;
            let record = play_match(&pa, &pb, &mcfg);
            out.add(format!("match_{a}_{b}_trace.csv"), report::trace_csv(&header, &record));
            out.add(
                format!("match_{a}_{b}_series.csv"),
                report::window_csv(&header, &record, cfg.window as usize),
            );
        }
        Command::Sweep => {
            let rows = exploration_sweep(&cfg.players()?, &mcfg, cfg.n_iter, &cfg.grid, cfg.seed)?;
            out.add("sweep.csv", report::sweep_csv(&header, &rows));
        }
        Command::ZdCheck => {
            let mut rows = Vec::new();
            for check in &cfg.zd {
                let subject = cfg.strategy(&check.strategy).map_err(|e| ConfigError::Invalid {
                    key: "zd.strategy".into(),
                    message: e.to_string(),
                })?;
                for p in cfg.players()? {
                    let Some(opp) = p.memory_one() else { continue };
                    rows.push(ZdRow {
                        subject: subject.name().to_string(),
                        opponent: opp.name().to_string(),
                        slope: check.slope,
                        intercept: check.intercept,
                        result: zd_residual(&subject, opp, check.slope, check.intercept, &cfg.payoffs),
                    });
                }
            }
            out.add("zd_report.csv", report::zd_csv(&header, &rows));
        }
        Command::Timeseries => {
            let result = run_round_robin(&cfg.players()?, &mcfg, cfg.n_iter, cfg.seed)?;
            let series = time_series(&result, &cfg.subject, cfg.window)?;
            let points: Vec<(f64, f64)> = series.iter().map(|&(t, v)| (f64::from(t), v)).collect();
            let fit = fit_inverse_sqrt(&points)
                .ok_or_else(|| CliError::Analysis("time series is empty".into()))?;
            out.add("timeseries.csv", report::series_csv(&header, &series));
            out.add("timeseries_fit.csv", report::fit_csv(&header, &fit));
        }
    }
    Ok(out)
}

/// Runs `command` and writes its files into `cfg.out`.
pub fn run(command: &Command, cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let out = execute(command, cfg)?;
    Ok(out.commit(&cfg.out)?)
}
