//! Match play and round-robin tournaments.

use std::fmt;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{to_f64, Action, JointOutcome, PayoffMatrix};
use crate::predictor::{OpponentModel, PredictorState};
use crate::rng::{derive_seed, RngStream};
use crate::strategy::MemoryOneStrategy;

pub const PREDICTOR_NAME: &str = "PREDICTOR";

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EngineError {
    #[error("player {0:?} did not take part in the tournament")]
    UnknownSubject(String),
    #[error("roster is empty")]
    EmptyRoster,
    #[error("duplicate player name {0:?} in roster")]
    DuplicateName(String),
    #[error("n_turns must be at least 1")]
    NoTurns,
    #[error("n_iter must be at least 1")]
    NoIterations,
    #[error("window must be between 1 and n_turns ({n_turns}), got {window}")]
    BadWindow { window: u32, n_turns: u32 },
    #[error("exploration fraction {0} is outside [0, 1]")]
    BadExploration(f64),
}

/// A tournament participant.
#[derive(Clone, Debug, PartialEq)]
pub enum Player {
    MemoryOne(MemoryOneStrategy),
    Predictor { p_exp: f64 },
}

impl Player {
    pub fn predictor(p_exp: f64) -> Self {
        Player::Predictor { p_exp }
    }

    pub fn name(&self) -> &str {
        match self {
            Player::MemoryOne(s) => s.name(),
            Player::Predictor { .. } => PREDICTOR_NAME,
        }
    }

    pub fn is_predictor(&self) -> bool {
        matches!(self, Player::Predictor { .. })
    }

    pub fn memory_one(&self) -> Option<&MemoryOneStrategy> {
        match self {
            Player::MemoryOne(s) => Some(s),
            Player::Predictor { .. } => None,
        }
    }
}

impl From<MemoryOneStrategy> for Player {
    fn from(s: MemoryOneStrategy) -> Self {
        Player::MemoryOne(s)
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchConfig {
    pub n_turns: u32,
    pub payoff: PayoffMatrix,
    /// Memory-one opponents of a predictor open with a fair coin.
    pub randomize_opponent_initial: bool,
    pub seed: u64,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            n_turns: 200,
            payoff: PayoffMatrix::default(),
            randomize_opponent_initial: false,
            seed: 0,
        }
    }
}

impl MatchConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_turns(mut self, n_turns: u32) -> Self {
        self.n_turns = n_turns;
        self
    }
}

/// One played round, in player A's orientation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Turn {
    pub a: Action,
    pub b: Action,
    pub payoff_a: f64,
    pub payoff_b: f64,
}

impl Turn {
    pub fn outcome(&self) -> JointOutcome {
        JointOutcome::new(self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchRecord {
    pub players: [String; 2],
    pub turns: Vec<Turn>,
    pub means: [f64; 2],
    /// Final opponent models of predictor sides, for trace dumps.
    pub models: [Option<OpponentModel>; 2],
    pub seed: u64,
}

impl MatchRecord {
    pub fn n_turns(&self) -> usize {
        self.turns.len()
    }

    pub fn payoffs(&self, side: usize) -> impl Iterator<Item = f64> + '_ {
        self.turns
            .iter()
            .map(move |t| if side == 0 { t.payoff_a } else { t.payoff_b })
    }

    /// Mean payoff per consecutive block of `window` turns; a trailing
    /// partial block is averaged over its own length.
    pub fn window_means(&self, side: usize, window: usize) -> Vec<f64> {
        let p: Vec<f64> = self.payoffs(side).collect();
        p.chunks(window.max(1))
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect()
    }

    /// Cumulative mean payoff through turn `k * window` for every full window.
    pub fn cumulative_means(&self, side: usize, window: usize) -> Vec<f64> {
        let window = window.max(1);
        let mut out = Vec::new();
        let mut total = 0.0;
        for (i, p) in self.payoffs(side).enumerate() {
            total += p;
            if (i + 1) % window == 0 {
                out.push(total / (i + 1) as f64);
            }
        }
        out
    }
}

enum Agent<'a> {
    Fixed(&'a MemoryOneStrategy),
    Learner(PredictorState),
}

impl Agent<'_> {
    fn act(
        &self,
        prev: Option<JointOutcome>,
        rng: &mut RngStream,
        pm: &PayoffMatrix,
        randomize_initial: bool,
    ) -> Action {
        match (self, prev) {
            (Agent::Fixed(s), None) => s.initial_action(rng, randomize_initial),
            (Agent::Fixed(s), Some(prev)) => s.next_action(prev, rng),
            (Agent::Learner(ps), _) => ps.act(rng, pm),
        }
    }

    fn observe(&mut self, own: Action, opp: Action) {
        if let Agent::Learner(ps) = self {
            ps.observe(own, opp);
        }
    }

    fn model(&self) -> Option<OpponentModel> {
        match self {
            Agent::Learner(ps) => Some(*ps.model()),
            Agent::Fixed(_) => None,
        }
    }
}

fn agent(p: &Player, n_turns: u32) -> Agent<'_> {
    match p {
        Player::MemoryOne(s) => Agent::Fixed(s),
        Player::Predictor { p_exp } => Agent::Learner(PredictorState::new(n_turns, *p_exp)),
    }
}

/// Plays one match. Each side owns an independent random stream derived
/// from `cfg.seed`; predictor agents start from a fresh model.
pub fn play_match(a: &Player, b: &Player, cfg: &MatchConfig) -> MatchRecord {
    let n = cfg.n_turns;
    let mut agents = [agent(a, n), agent(b, n)];
    let mut rngs = [
        RngStream::new(derive_seed(cfg.seed, &[0])),
        RngStream::new(derive_seed(cfg.seed, &[1])),
    ];
    let randomize = [
        cfg.randomize_opponent_initial && b.is_predictor() && !a.is_predictor(),
        cfg.randomize_opponent_initial && a.is_predictor() && !b.is_predictor(),
    ];
    let mut prev: Option<JointOutcome> = None;
    let mut turns = Vec::with_capacity(n as usize);
    let (mut sum_a, mut sum_b) = (0.0, 0.0);
    for _ in 0..n {
        // Both moves are chosen before either is revealed.
        let [ra, rb] = &mut rngs;
        let act_a = agents[0].act(prev, ra, &cfg.payoff, randomize[0]);
        let act_b = agents[1].act(prev.map(JointOutcome::mirror), rb, &cfg.payoff, randomize[1]);
        agents[0].observe(act_a, act_b);
        agents[1].observe(act_b, act_a);
        let outcome = JointOutcome::new(act_a, act_b);
        let (pa, pb) = cfg.payoff.payoff(outcome);
        let (pa, pb) = (to_f64(pa), to_f64(pb));
        sum_a += pa;
        sum_b += pb;
        turns.push(Turn {
            a: act_a,
            b: act_b,
            payoff_a: pa,
            payoff_b: pb,
        });
        prev = Some(outcome);
    }
    MatchRecord {
        players: [a.name().to_string(), b.name().to_string()],
        turns,
        means: [sum_a / f64::from(n), sum_b / f64::from(n)],
        models: [agents[0].model(), agents[1].model()],
        seed: cfg.seed,
    }
}

/// One match of the round robin, with the roster indices of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct PlayedMatch {
    pub a: usize,
    pub b: usize,
    pub iteration: u32,
    pub record: MatchRecord,
}

impl PlayedMatch {
    pub fn is_self_play(&self) -> bool {
        self.a == self.b
    }

    /// Mean payoff credited to roster entry `i` (self-play: both sides averaged).
    pub fn mean_for(&self, i: usize) -> Option<f64> {
        match (self.a == i, self.b == i) {
            (true, true) => Some((self.record.means[0] + self.record.means[1]) / 2.0),
            (true, false) => Some(self.record.means[0]),
            (false, true) => Some(self.record.means[1]),
            (false, false) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TournamentResult {
    /// Player names in (shuffled) roster order.
    pub roster: Vec<String>,
    /// `matrix[i][j]`: mean payoff of `i` against `j` over all iterations.
    pub matrix: Vec<Vec<f64>>,
    pub average: Vec<f64>,
    pub std_error: Vec<f64>,
    pub wins: Vec<u32>,
    pub ties: Vec<u32>,
    /// Roster indices by descending average payoff.
    pub ranking: Vec<usize>,
    pub n_iter: u32,
    pub n_turns: u32,
    pub matches: Vec<PlayedMatch>,
}

impl TournamentResult {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.roster.iter().position(|n| n == name)
    }

    /// 1-based place of `name`.
    pub fn place(&self, name: &str) -> Option<usize> {
        let i = self.index_of(name)?;
        self.ranking.iter().position(|&r| r == i).map(|p| p + 1)
    }

    pub fn average_of(&self, name: &str) -> Option<f64> {
        self.index_of(name).map(|i| self.average[i])
    }

    pub fn wins_of(&self, name: &str) -> Option<u32> {
        self.index_of(name).map(|i| self.wins[i])
    }

    pub fn ties_of(&self, name: &str) -> Option<u32> {
        self.index_of(name).map(|i| self.ties[i])
    }

    /// Pairing mean of `a` against `b`.
    pub fn pairing(&self, a: &str, b: &str) -> Option<f64> {
        Some(self.matrix[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn matches_of(&self, i: usize) -> impl Iterator<Item = &PlayedMatch> {
        self.matches.iter().filter(move |m| m.a == i || m.b == i)
    }
}

/// Order in which the roster is seated, derived from the master seed.
pub fn seating(n: usize, master_seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = RngStream::new(derive_seed(master_seed, &[0x5EA7]));
    order.shuffle(rng.inner());
    order
}

/// Seed of the match between seats `i <= j` in iteration `iteration`.
pub fn match_seed(master_seed: u64, i: usize, j: usize, iteration: u32) -> u64 {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    derive_seed(master_seed, &[lo as u64, hi as u64, u64::from(iteration), 0])
}

pub fn validate_roster(roster: &[Player]) -> Result<(), EngineError> {
    if roster.is_empty() {
        return Err(EngineError::EmptyRoster);
    }
    for (i, p) in roster.iter().enumerate() {
        if roster[..i].iter().any(|q| q.name() == p.name()) {
            return Err(EngineError::DuplicateName(p.name().to_string()));
        }
        if let Player::Predictor { p_exp } = p {
            if !(0.0..=1.0).contains(p_exp) {
                return Err(EngineError::BadExploration(*p_exp));
            }
        }
    }
    Ok(())
}

/// Round robin: every pair of seats, including each seat with itself, plays
/// `n_iter` matches. The roster is shuffled once from `master_seed`.
///
/// Matches run in parallel; aggregation walks them in seat order, so the
/// result does not depend on scheduling.
pub fn run_round_robin(
    roster: &[Player],
    cfg: &MatchConfig,
    n_iter: u32,
    master_seed: u64,
) -> Result<TournamentResult, EngineError> {
    validate_roster(roster)?;
    if cfg.n_turns == 0 {
        return Err(EngineError::NoTurns);
    }
    if n_iter == 0 {
        return Err(EngineError::NoIterations);
    }
    let seats: Vec<&Player> = seating(roster.len(), master_seed)
        .into_iter()
        .map(|i| &roster[i])
        .collect();
    let n = seats.len();

    let mut schedule = Vec::new();
    for i in 0..n {
        for j in i..n {
            for it in 0..n_iter {
                schedule.push((i, j, it));
            }
        }
    }
    let matches: Vec<PlayedMatch> = schedule
        .par_iter()
        .map(|&(i, j, it)| {
            let cfg = cfg.with_seed(match_seed(master_seed, i, j, it));
            PlayedMatch {
                a: i,
                b: j,
                iteration: it,
                record: play_match(seats[i], seats[j], &cfg),
            }
        })
        .collect();

    let iters = f64::from(n_iter);
    let mut matrix = vec![vec![0.0; n]; n];
    let mut per_iter = vec![vec![0.0; n_iter as usize]; n];
    let mut totals = vec![0.0; n];
    for m in &matches {
        let [ma, mb] = m.record.means;
        if m.is_self_play() {
            let v = (ma + mb) / 2.0;
            matrix[m.a][m.a] += v / iters;
            per_iter[m.a][m.iteration as usize] += v;
            totals[m.a] += v;
        } else {
            matrix[m.a][m.b] += ma / iters;
            matrix[m.b][m.a] += mb / iters;
            per_iter[m.a][m.iteration as usize] += ma;
            per_iter[m.b][m.iteration as usize] += mb;
            totals[m.a] += ma;
            totals[m.b] += mb;
        }
    }
    let count = (n as f64) * iters;
    let average: Vec<f64> = totals.iter().map(|t| t / count).collect();
    let std_error = per_iter
        .iter()
        .map(|its| {
            let means: Vec<f64> = its.iter().map(|s| s / n as f64).collect();
            std_error_of(&means)
        })
        .collect();

    let mut wins = vec![0; n];
    let mut ties = vec![0; n];
    for (i, row) in matrix.iter().enumerate() {
        for (j, &own) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if own > matrix[j][i] {
                wins[i] += 1;
            } else if own == matrix[j][i] {
                ties[i] += 1;
            }
        }
    }
    let mut ranking: Vec<usize> = (0..n).collect();
    ranking.sort_by(|&x, &y| average[y].total_cmp(&average[x]).then(x.cmp(&y)));

    Ok(TournamentResult {
        roster: seats.iter().map(|p| p.name().to_string()).collect(),
        matrix,
        average,
        std_error,
        wins,
        ties,
        ranking,
        n_iter,
        n_turns: cfg.n_turns,
        matches,
    })
}

/// Sample standard deviation divided by `sqrt(len)`; zero for fewer than two
/// values.
pub fn std_error_of(values: &[f64]) -> f64 {
    let k = values.len();
    if k < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    (var / k as f64).sqrt()
}

/// Cumulative mean payoff of `subject` after every `window` turns, averaged
/// over all of its matches. Returns `(turn, mean)` pairs.
pub fn time_series(
    result: &TournamentResult,
    subject: &str,
    window: u32,
) -> Result<Vec<(u32, f64)>, EngineError> {
    let i = result
        .index_of(subject)
        .ok_or_else(|| EngineError::UnknownSubject(subject.to_string()))?;
    if window == 0 || window > result.n_turns {
        return Err(EngineError::BadWindow {
            window,
            n_turns: result.n_turns,
        });
    }
    let points = (result.n_turns / window) as usize;
    let mut sums = vec![0.0; points];
    let mut count = 0usize;
    for m in result.matches_of(i) {
        let series = if m.is_self_play() {
            let a = m.record.cumulative_means(0, window as usize);
            let b = m.record.cumulative_means(1, window as usize);
            a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect()
        } else {
            m.record
                .cumulative_means(if m.a == i { 0 } else { 1 }, window as usize)
        };
        for (s, v) in sums.iter_mut().zip(series) {
            *s += v;
        }
        count += 1;
    }
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| ((k as u32 + 1) * window, s / count as f64))
        .collect())
}
