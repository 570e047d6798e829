//! Iterated prisoner's dilemma engine.
//!
//! * [`game`]: actions, joint outcomes and the stage-game payoff matrix.
//! * [`strategy`]: memory-one strategies and the built-in registry.
//! * [`predictor`]: the opponent-modeling agent with a two-round lookahead.
//! * [`engine`]: matches, round-robin tournaments and learning curves.
//! * [`analysis`]: exact long-run payoffs of memory-one pairs, linear payoff
//!   relations, exploration sweeps and curve fitting.
//! * [`config`], [`report`], [`cli`]: run configuration, CSV output and the
//!   subcommands of the `ipd` binary.
//!
//! ```
//! use ipd::engine::{play_match, MatchConfig, Player};
//! use ipd::strategy::builtin;
//!
//! let tft = Player::MemoryOne(builtin("TFT").unwrap());
//! let record = play_match(&tft, &tft, &MatchConfig::default());
//! assert_eq!(record.means, [3.0, 3.0]);
//! ```

pub mod analysis;
pub mod cli;
pub mod config;
pub mod engine;
pub mod game;
pub mod predictor;
pub mod report;
pub mod rng;
pub mod strategy;

pub use engine::{play_match, run_round_robin, time_series, MatchConfig, Player, TournamentResult};
pub use game::{Action, JointOutcome, PayoffMatrix};
pub use predictor::{OpponentModel, PredictorState};
pub use strategy::{builtin, InitialPolicy, MemoryOneStrategy};
