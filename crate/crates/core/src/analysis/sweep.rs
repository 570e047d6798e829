use crate::engine::{run_round_robin, EngineError, MatchConfig, Player, TournamentResult, PREDICTOR_NAME};

/// Reference strategy for the payoff difference column.
pub const SWEEP_REFERENCE: &str = "ZDGTFT-2";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p_exp: f64,
    pub average: f64,
    /// Predictor average minus the reference strategy's average, if present.
    pub delta_vs_reference: Option<f64>,
    pub place: usize,
    pub wins: u32,
}

/// Replaces the exploration fraction of every predictor in `roster`.
pub fn with_exploration(roster: &[Player], p_exp: f64) -> Vec<Player> {
    roster
        .iter()
        .map(|p| match p {
            Player::Predictor { .. } => Player::predictor(p_exp),
            other => other.clone(),
        })
        .collect()
}

/// One full round robin per grid point. Every point uses the same master
/// seed, so only the predictor's exploration window differs.
pub fn exploration_sweep(
    roster: &[Player],
    cfg: &MatchConfig,
    n_iter: u32,
    grid: &[f64],
    master_seed: u64,
) -> Result<Vec<SweepRow>, EngineError> {
    if !roster.iter().any(Player::is_predictor) {
        return Err(EngineError::UnknownSubject(PREDICTOR_NAME.to_string()));
    }
    grid.iter()
        .map(|&p| {
            if !(0.0..=1.0).contains(&p) {
                return Err(EngineError::BadExploration(p));
            }
            let result = run_round_robin(&with_exploration(roster, p), cfg, n_iter, master_seed)?;
            Ok(sweep_row(&result, p))
        })
        .collect()
}

pub fn sweep_row(result: &TournamentResult, p_exp: f64) -> SweepRow {
    let average = result.average_of(PREDICTOR_NAME).unwrap_or(f64::NAN);
    SweepRow {
        p_exp,
        average,
        delta_vs_reference: result.average_of(SWEEP_REFERENCE).map(|r| average - r),
        place: result.place(PREDICTOR_NAME).unwrap_or(0),
        wins: result.wins_of(PREDICTOR_NAME).unwrap_or(0),
    }
}

/// The exploration grid 0, 0.05, ..., 1.
pub fn default_grid() -> Vec<f64> {
    (0..=20).map(|k| f64::from(k) / 20.0).collect()
}
