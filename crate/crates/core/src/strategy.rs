//! Memory-one strategies and the built-in strategy registry.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Action, JointOutcome};
use crate::rng::RngStream;

/// Names of the built-in strategies, in registry order.
pub const BUILTIN_NAMES: [&str; 9] = [
    "TFT",
    "GTFT",
    "WSLS",
    "ALLD",
    "ALLC",
    "JOSS",
    "ZDGTFT-2",
    "ZDEXTORT-2",
    "RANDOM",
];

#[derive(Clone, Debug, PartialEq, Error)]
pub enum StrategyError {
    #[error("unknown strategy {name:?}; valid names: {}", BUILTIN_NAMES.join(", "))]
    UnknownName { name: String },
    #[error("strategy {name:?}: probability p(C|{state}) = {value} is outside [0, 1]")]
    ProbabilityOutOfRange {
        name: String,
        state: JointOutcome,
        value: f64,
    },
    #[error("strategy name must be non-empty and may not contain ',' or whitespace: {0:?}")]
    BadName(String),
}

/// How a strategy picks its first move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialPolicy {
    #[serde(rename = "C", alias = "AlwaysC")]
    AlwaysC,
    #[serde(rename = "D", alias = "AlwaysD")]
    AlwaysD,
    #[serde(rename = "random", alias = "UniformRandom")]
    UniformRandom,
}

/// Cooperation probabilities indexed by a joint outcome.
///
/// The orientation depends on the holder: a strategy's own vector is keyed
/// by (own previous, opponent previous); a model of an opponent is keyed by
/// (focal previous, opponent previous). [`MemoryOneStrategy::as_model_view`]
/// converts between the two.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoopVector(pub [f64; 4]);

impl CoopVector {
    /// Swaps the CD and DC entries.
    pub fn swapped(self) -> Self {
        let [cc, cd, dc, dd] = self.0;
        CoopVector([cc, dc, cd, dd])
    }
}

impl Index<JointOutcome> for CoopVector {
    type Output = f64;

    fn index(&self, o: JointOutcome) -> &f64 {
        &self.0[o.index()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoryOneStrategy {
    name: String,
    coop: CoopVector,
    initial: InitialPolicy,
}

impl MemoryOneStrategy {
    /// `coop` is `(p(C|CC), p(C|CD), p(C|DC), p(C|DD))` in the strategy's own
    /// orientation.
    pub fn new(
        name: impl Into<String>,
        coop: [f64; 4],
        initial: InitialPolicy,
    ) -> Result<Self, StrategyError> {
        let name = name.into();
        if name.is_empty() || name.contains(',') || name.contains(char::is_whitespace) {
            return Err(StrategyError::BadName(name));
        }
        for (state, &value) in JointOutcome::ALL.iter().zip(coop.iter()) {
            if !(0.0..=1.0).contains(&value) {
                return Err(StrategyError::ProbabilityOutOfRange {
                    name,
                    state: *state,
                    value,
                });
            }
        }
        Ok(MemoryOneStrategy {
            name,
            coop: CoopVector(coop),
            initial,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coop(&self) -> CoopVector {
        self.coop
    }

    pub fn initial_policy(&self) -> InitialPolicy {
        self.initial
    }

    pub fn with_initial_policy(mut self, initial: InitialPolicy) -> Self {
        self.initial = initial;
        self
    }

    /// Cooperation probability after `prev`, given in this strategy's own
    /// orientation.
    pub fn coop_prob(&self, prev: JointOutcome) -> f64 {
        self.coop[prev]
    }

    /// Next move after `prev` (own action first). One draw per call.
    pub fn next_action(&self, prev: JointOutcome, rng: &mut RngStream) -> Action {
        if rng.bernoulli(self.coop[prev]) {
            Action::C
        } else {
            Action::D
        }
    }

    /// First move. `randomize` replaces the policy with a fair coin.
    ///
    /// Deterministic policies draw nothing.
    pub fn initial_action(&self, rng: &mut RngStream, randomize: bool) -> Action {
        let policy = if randomize {
            InitialPolicy::UniformRandom
        } else {
            self.initial
        };
        match policy {
            InitialPolicy::AlwaysC => Action::C,
            InitialPolicy::AlwaysD => Action::D,
            InitialPolicy::UniformRandom => {
                if rng.coin() {
                    Action::C
                } else {
                    Action::D
                }
            }
        }
    }

    /// This strategy's vector as the opposing player would index it.
    pub fn as_model_view(&self) -> CoopVector {
        self.coop.swapped()
    }

    /// Whether all four probabilities lie strictly inside (0, 1).
    pub fn is_interior(&self) -> bool {
        self.coop.0.iter().all(|&p| p > 0.0 && p < 1.0)
    }
}

impl fmt::Display for MemoryOneStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coop.0;
        write!(f, "{}({a}, {b}, {c}, {d})", self.name)
    }
}

/// Looks up one of the nine built-in strategies.
///
/// JOSS and ZDEXTORT-2 open with D; the other non-random strategies open
/// with C. Override with [`MemoryOneStrategy::with_initial_policy`].
pub fn builtin(name: &str) -> Result<MemoryOneStrategy, StrategyError> {
    use InitialPolicy::*;
    let (coop, initial) = match name {
        "TFT" => ([1.0, 0.0, 1.0, 0.0], AlwaysC),
        "GTFT" => ([1.0, 1.0 / 3.0, 1.0, 1.0 / 3.0], AlwaysC),
        "WSLS" => ([1.0, 0.0, 0.0, 1.0], AlwaysC),
        "ALLD" => ([0.0; 4], AlwaysD),
        "ALLC" => ([1.0; 4], AlwaysC),
        "JOSS" => ([0.9, 0.0, 0.9, 0.0], AlwaysD),
        "ZDGTFT-2" => ([1.0, 1.0 / 8.0, 1.0, 1.0 / 4.0], AlwaysC),
        "ZDEXTORT-2" => ([8.0 / 9.0, 0.5, 1.0 / 3.0, 0.0], AlwaysD),
        "RANDOM" => ([0.5; 4], UniformRandom),
        _ => {
            return Err(StrategyError::UnknownName {
                name: name.to_string(),
            })
        }
    };
    MemoryOneStrategy::new(name, coop, initial)
}

/// All built-in strategies in registry order.
pub fn builtins() -> Vec<MemoryOneStrategy> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("registry name"))
        .collect()
}
