//! The predictive agent: a counting model of the opponent's memory-one
//! behaviour, a two-round expected-payoff lookahead and an initial
//! exploration window.
//!
//! Per round the agent
//! 1. looks up the previous joint outcome `X0`,
//! 2. evaluates the expected payoff of the courses `C -> D` and `D -> D`
//!    over the next two rounds under its model,
//! 3. cooperates iff the `C -> D` course is strictly better,
//! 4. records the opponent's reply against `X0` once it is revealed.
//!
//! All comparisons are done in exact rational arithmetic so that the
//! decision never depends on summation order.

use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::game::{Action, JointOutcome, Payoff, PayoffMatrix};
use crate::rng::RngStream;

/// Exact value used by the lookahead.
pub type Exact = Ratio<i128>;

/// Per-state observation and cooperation counters, indexed by the joint
/// outcome in the agent's own orientation (agent's action first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpponentModel {
    observed: [u32; 4],
    cooperated: [u32; 4],
}

impl OpponentModel {
    /// A maximally ignorant model: every state predicts cooperation with 1/2.
    pub fn fresh() -> Self {
        Self::default()
    }

    /// Builds a model from raw counters. Returns `None` if any `c > n`.
    pub fn from_counts(observed: [u32; 4], cooperated: [u32; 4]) -> Option<Self> {
        observed
            .iter()
            .zip(cooperated.iter())
            .all(|(n, c)| c <= n)
            .then_some(OpponentModel {
                observed,
                cooperated,
            })
    }

    pub fn observations(&self, state: JointOutcome) -> u32 {
        self.observed[state.index()]
    }

    pub fn cooperations(&self, state: JointOutcome) -> u32 {
        self.cooperated[state.index()]
    }

    /// Laplace-smoothed `p(C | state) = (1 + c) / (2 + n)`.
    pub fn probability(&self, state: JointOutcome) -> Exact {
        let i = state.index();
        Exact::new(
            1 + i128::from(self.cooperated[i]),
            2 + i128::from(self.observed[i]),
        )
    }

    pub fn probability_f64(&self, state: JointOutcome) -> f64 {
        self.probability(state).to_f64().unwrap_or(f64::NAN)
    }

    /// Records that the opponent played `observed` after `prev_state`.
    pub fn update(&mut self, prev_state: JointOutcome, observed: Action) {
        let i = prev_state.index();
        self.observed[i] += 1;
        if observed.is_cooperate() {
            self.cooperated[i] += 1;
        }
    }

    pub fn updated(mut self, prev_state: JointOutcome, observed: Action) -> Self {
        self.update(prev_state, observed);
        self
    }
}

/// Anything that predicts the opponent's cooperation probability from the
/// previous joint outcome, in the focal player's orientation.
pub trait CoopModel {
    fn p_coop(&self, state: JointOutcome) -> Exact;
}

impl CoopModel for OpponentModel {
    fn p_coop(&self, state: JointOutcome) -> Exact {
        self.probability(state)
    }
}

/// A model given directly by four exact probabilities (CC, CD, DC, DD).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedModel(pub [Exact; 4]);

impl FixedModel {
    pub fn uniform(p: Exact) -> Self {
        FixedModel([p; 4])
    }
}

impl CoopModel for FixedModel {
    fn p_coop(&self, state: JointOutcome) -> Exact {
        self.0[state.index()]
    }
}

fn exact(p: Payoff) -> Exact {
    Exact::new(i128::from(*p.numer()), i128::from(*p.denom()))
}

/// Expected payoff of the second round when the agent plays `first` now and
/// `second` next, summing over the opponent's replies.
fn second_round<M: CoopModel>(
    model: &M,
    x0: JointOutcome,
    first: Action,
    second: Action,
    pm: &PayoffMatrix,
) -> Exact {
    let q = model.p_coop(x0);
    let after_c = model.p_coop(JointOutcome::new(first, Action::C));
    let after_d = model.p_coop(JointOutcome::new(first, Action::D));
    let one = Exact::one();
    let opp_c = after_c * q + after_d * (one - q);
    let opp_d = (one - after_c) * q + (one - after_d) * (one - q);
    exact(pm.own(JointOutcome::new(second, Action::C))) * opp_c
        + exact(pm.own(JointOutcome::new(second, Action::D))) * opp_d
}

fn first_round<M: CoopModel>(model: &M, x0: JointOutcome, first: Action, pm: &PayoffMatrix) -> Exact {
    let q = model.p_coop(x0);
    exact(pm.own(JointOutcome::new(first, Action::C))) * q
        + exact(pm.own(JointOutcome::new(first, Action::D))) * (Exact::one() - q)
}

/// Expected two-round payoff of the course `C -> D` from `x0`.
pub fn expected_payoff_coop<M: CoopModel>(model: &M, x0: JointOutcome, pm: &PayoffMatrix) -> Exact {
    first_round(model, x0, Action::C, pm) + second_round(model, x0, Action::C, Action::D, pm)
}

/// Expected two-round payoff of the course `D -> D` from `x0`.
pub fn expected_payoff_defect<M: CoopModel>(
    model: &M,
    x0: JointOutcome,
    pm: &PayoffMatrix,
) -> Exact {
    first_round(model, x0, Action::D, pm) + second_round(model, x0, Action::D, Action::D, pm)
}

/// Cooperate iff the `C -> D` course is strictly better; ties defect.
pub fn decide<M: CoopModel>(model: &M, x0: JointOutcome, pm: &PayoffMatrix) -> Action {
    if expected_payoff_coop(model, x0, pm) > expected_payoff_defect(model, x0, pm) {
        Action::C
    } else {
        Action::D
    }
}

/// Mutable per-match state of one predictive agent.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictorState {
    model: OpponentModel,
    prev: Option<JointOutcome>,
    turn: u32,
    explore_until: u32,
}

impl PredictorState {
    /// Fresh agent for a match of `n_turns` rounds exploring for the first
    /// `round(p_exp * n_turns)` of them.
    pub fn new(n_turns: u32, p_exp: f64) -> Self {
        PredictorState {
            model: OpponentModel::fresh(),
            prev: None,
            turn: 0,
            explore_until: exploration_window(n_turns, p_exp),
        }
    }

    pub fn reset(&mut self, n_turns: u32, p_exp: f64) {
        *self = PredictorState::new(n_turns, p_exp);
    }

    pub fn model(&self) -> &OpponentModel {
        &self.model
    }

    pub fn prev_outcome(&self) -> Option<JointOutcome> {
        self.prev
    }

    pub fn turn_index(&self) -> u32 {
        self.turn
    }

    pub fn explore_until(&self) -> u32 {
        self.explore_until
    }

    pub fn is_exploring(&self) -> bool {
        self.prev.is_none() || self.turn < self.explore_until
    }

    /// Chooses this round's action. Random rounds (the first round and the
    /// exploration window) draw once; exploiting rounds draw nothing.
    pub fn act(&self, rng: &mut RngStream, pm: &PayoffMatrix) -> Action {
        match self.prev {
            Some(x0) if self.turn >= self.explore_until => decide(&self.model, x0, pm),
            _ => {
                if rng.coin() {
                    Action::C
                } else {
                    Action::D
                }
            }
        }
    }

    /// Records the round just played.
    pub fn observe(&mut self, own: Action, opp: Action) {
        if let Some(prev) = self.prev {
            self.model.update(prev, opp);
        }
        self.prev = Some(JointOutcome::new(own, opp));
        self.turn += 1;
    }
}

/// Length of the initial exploration window, rounded to the nearest turn.
pub fn exploration_window(n_turns: u32, p_exp: f64) -> u32 {
    let w = (p_exp * f64::from(n_turns)).round();
    w.clamp(0.0, f64::from(n_turns)) as u32
}
