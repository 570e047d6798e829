//! CSV rendering and atomic output emission.
//!
//! Numbers are written with six significant digits and a '.' separator.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::analysis::{InverseSqrtFit, SweepRow, ZdResidual};
use crate::engine::{MatchRecord, TournamentResult};
use crate::game::JointOutcome;

/// Six significant digits, trailing zeros kept. Magnitudes outside
/// `[1e-4, 1e6)` switch to exponent notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if !(-4..6).contains(&exp) {
        return sci;
    }
    let decimals = (5 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn summary_csv(header: &str, r: &TournamentResult) -> String {
    let mut s = format!("{header}\nrank,name,average,stderr,wins\n");
    for (place, &i) in r.ranking.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            place + 1,
            r.roster[i],
            sig6(r.average[i]),
            sig6(r.std_error[i]),
            r.wins[i]
        );
    }
    s
}

/// Pairwise matrix: row player's mean payoff against the column player.
pub fn matrix_csv(header: &str, r: &TournamentResult) -> String {
    let mut s = format!("{header}\nplayer");
    for n in &r.roster {
        s.push(',');
        s.push_str(n);
    }
    s.push('\n');
    for (i, row) in r.matrix.iter().enumerate() {
        s.push_str(&r.roster[i]);
        for v in row {
            s.push(',');
            s.push_str(&sig6(*v));
        }
        s.push('\n');
    }
    s
}

/// Per-turn trace; predictor model counters are appended as comment lines.
pub fn trace_csv(header: &str, m: &MatchRecord) -> String {
    let mut s = format!("{header}\nturn,action_a,action_b,payoff_a,payoff_b\n");
    for (t, turn) in m.turns.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            t + 1,
            turn.a,
            turn.b,
            sig6(turn.payoff_a),
            sig6(turn.payoff_b)
        );
    }
    for (side, model) in m.models.iter().enumerate() {
        if let Some(model) = model {
            let _ = write!(s, "# model {} ({})", ["a", "b"][side], m.players[side]);
            for st in JointOutcome::ALL {
                let _ = write!(
                    s,
                    " {st}:{}/{}",
                    model.cooperations(st),
                    model.observations(st)
                );
            }
            s.push('\n');
        }
    }
    s
}

/// Block means of a match: `turn` is the last turn of each block.
pub fn window_csv(header: &str, m: &MatchRecord, window: usize) -> String {
    let mut s = format!("{header}\nturn,mean_a,mean_b\n");
    let a = m.window_means(0, window);
    let b = m.window_means(1, window);
    for (k, (x, y)) in a.iter().zip(&b).enumerate() {
        let end = ((k + 1) * window).min(m.n_turns());
        let _ = writeln!(s, "{end},{},{}", sig6(*x), sig6(*y));
    }
    s
}

pub fn series_csv(header: &str, points: &[(u32, f64)]) -> String {
    let mut s = format!("{header}\nturn,mean\n");
    for (t, v) in points {
        let _ = writeln!(s, "{t},{}", sig6(*v));
    }
    s
}

pub fn fit_csv(header: &str, fit: &InverseSqrtFit) -> String {
    format!(
        "{header}\na,b,rms\n{},{},{}\n",
        sig6(fit.a),
        sig6(fit.b),
        sig6(fit.rms)
    )
}

pub fn sweep_csv(header: &str, rows: &[SweepRow]) -> String {
    let mut s = format!("{header}\np_exp,average,delta_zdgtft2,place,wins\n");
    for r in rows {
        let delta = r.delta_vs_reference.map(sig6).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            sig6(r.p_exp),
            sig6(r.average),
            delta,
            r.place,
            r.wins
        );
    }
    s
}

/// One verified relation.
#[derive(Clone, Debug, PartialEq)]
pub struct ZdRow {
    pub subject: String,
    pub opponent: String,
    pub slope: f64,
    pub intercept: f64,
    pub result: ZdResidual,
}

pub fn zd_csv(header: &str, rows: &[ZdRow]) -> String {
    let mut s = format!("{header}\npair,slope,intercept,residual,ergodic\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{} vs {},{},{},{},{}",
            r.subject,
            r.opponent,
            sig6(r.slope),
            sig6(r.intercept),
            sig6(r.result.residual),
            r.result.payoffs.stationary.ergodic
        );
    }
    s
}

/// Files collected for one command and written all-or-nothing.
#[derive(Debug, Default)]
pub struct OutputSet {
    files: Vec<(String, String)>,
}

impl OutputSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Writes every file into a staging directory inside `dir`, then moves
    /// them into place. On error the staging directory is removed.
    pub fn commit(self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let staging = tempfile::Builder::new()
            .prefix(".ipd-staging-")
            .tempdir_in(dir)?;
        for (name, contents) in &self.files {
            fs::write(staging.path().join(name), contents)?;
        }
        let mut written = Vec::with_capacity(self.files.len());
        for (name, _) in &self.files {
            let target = dir.join(name);
            fs::rename(staging.path().join(name), &target)?;
            written.push(target);
        }
        Ok(written)
    }
}
