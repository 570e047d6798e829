//! Stage-game primitives: actions, joint outcomes and the payoff matrix.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact payoff value. Integer payoffs are the common case, but decimal
/// overrides such as `3.5` are stored without rounding.
pub type Payoff = Ratio<i64>;

/// One player's move in a single round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    C,
    D,
}

impl Action {
    pub const BOTH: [Action; 2] = [Action::C, Action::D];

    pub fn is_cooperate(self) -> bool {
        self == Action::C
    }

    pub fn as_char(self) -> char {
        match self {
            Action::C => 'C',
            Action::D => 'D',
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Both moves of one round, seen from a focal player: `own` is always the
/// focal player's action, `opp` the other player's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointOutcome {
    pub own: Action,
    pub opp: Action,
}

impl JointOutcome {
    pub const CC: JointOutcome = JointOutcome::new(Action::C, Action::C);
    pub const CD: JointOutcome = JointOutcome::new(Action::C, Action::D);
    pub const DC: JointOutcome = JointOutcome::new(Action::D, Action::C);
    pub const DD: JointOutcome = JointOutcome::new(Action::D, Action::D);

    /// The four outcomes in canonical order CC, CD, DC, DD.
    pub const ALL: [JointOutcome; 4] = [Self::CC, Self::CD, Self::DC, Self::DD];

    pub const fn new(own: Action, opp: Action) -> Self {
        JointOutcome { own, opp }
    }

    /// Position in [`JointOutcome::ALL`].
    pub fn index(self) -> usize {
        match (self.own, self.opp) {
            (Action::C, Action::C) => 0,
            (Action::C, Action::D) => 1,
            (Action::D, Action::C) => 2,
            (Action::D, Action::D) => 3,
        }
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// The same round seen from the other player.
    pub fn mirror(self) -> Self {
        JointOutcome::new(self.opp, self.own)
    }
}

impl fmt::Display for JointOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.own, self.opp)
    }
}

/// A violated ordering constraint of the prisoner's dilemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    SuckerBelowPunishment,
    PunishmentBelowReward,
    RewardBelowTemptation,
    CooperationBeatsAlternation,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Inequality::SuckerBelowPunishment => "S < P",
            Inequality::PunishmentBelowReward => "P < R",
            Inequality::RewardBelowTemptation => "R < T",
            Inequality::CooperationBeatsAlternation => "2R > T + S",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("payoff matrix violates {}", list(.violated))]
pub struct PayoffViolation {
    pub violated: Vec<Inequality>,
}

fn list(v: &[Inequality]) -> String {
    v.iter()
        .map(|i| format!("{i} (fails)"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot parse payoff value {0:?}")]
pub struct ParsePayoffError(pub String);

/// Stage-game payoffs for the focal player. The opponent's payoffs are the
/// mirror image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PayoffMatrix {
    pub reward: Payoff,
    pub sucker: Payoff,
    pub temptation: Payoff,
    pub punishment: Payoff,
}

impl Default for PayoffMatrix {
    fn default() -> Self {
        PayoffMatrix::from_integers(3, 0, 5, 1)
    }
}

impl PayoffMatrix {
    /// Builds a matrix without checking the ordering constraints; call
    /// [`PayoffMatrix::validate`] before use in a game.
    pub fn from_integers(reward: i64, sucker: i64, temptation: i64, punishment: i64) -> Self {
        PayoffMatrix {
            reward: Payoff::from_integer(reward),
            sucker: Payoff::from_integer(sucker),
            temptation: Payoff::from_integer(temptation),
            punishment: Payoff::from_integer(punishment),
        }
    }

    /// Builds and validates a matrix.
    pub fn try_new(
        reward: Payoff,
        sucker: Payoff,
        temptation: Payoff,
        punishment: Payoff,
    ) -> Result<Self, PayoffViolation> {
        let m = PayoffMatrix {
            reward,
            sucker,
            temptation,
            punishment,
        };
        m.validate().map(|_| m)
    }

    /// Checks `S < P < R < T` and `2R > T + S`.
    pub fn validate(&self) -> Result<(), PayoffViolation> {
        let mut violated = Vec::new();
        if self.sucker >= self.punishment {
            violated.push(Inequality::SuckerBelowPunishment);
        }
        if self.punishment >= self.reward {
            violated.push(Inequality::PunishmentBelowReward);
        }
        if self.reward >= self.temptation {
            violated.push(Inequality::RewardBelowTemptation);
        }
        if self.reward * 2 <= self.temptation + self.sucker {
            violated.push(Inequality::CooperationBeatsAlternation);
        }
        if violated.is_empty() {
            Ok(())
        } else {
            Err(PayoffViolation { violated })
        }
    }

    /// Exact payoff of the focal player for `outcome`.
    pub fn own(&self, outcome: JointOutcome) -> Payoff {
        match (outcome.own, outcome.opp) {
            (Action::C, Action::C) => self.reward,
            (Action::C, Action::D) => self.sucker,
            (Action::D, Action::C) => self.temptation,
            (Action::D, Action::D) => self.punishment,
        }
    }

    /// `(focal, opponent)` payoffs for one round.
    pub fn payoff(&self, outcome: JointOutcome) -> (Payoff, Payoff) {
        (self.own(outcome), self.own(outcome.mirror()))
    }

    /// Floating-point version of [`PayoffMatrix::payoff`] for reporting.
    pub fn payoff_f64(&self, outcome: JointOutcome) -> (f64, f64) {
        let (a, b) = self.payoff(outcome);
        (to_f64(a), to_f64(b))
    }

    /// Focal payoffs in canonical outcome order (R, S, T, P).
    pub fn own_vector(&self) -> [f64; 4] {
        JointOutcome::ALL.map(|o| to_f64(self.own(o)))
    }

    /// Opponent payoffs in canonical outcome order (R, T, S, P).
    pub fn opponent_vector(&self) -> [f64; 4] {
        JointOutcome::ALL.map(|o| to_f64(self.own(o.mirror())))
    }

    /// Parses `"R,S,T,P"`; each entry may be an integer, a decimal or a fraction.
    pub fn parse_list(s: &str) -> Result<Self, ParsePayoffError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(ParsePayoffError(s.to_string()));
        }
        let v = parts
            .iter()
            .map(|p| parse_payoff(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PayoffMatrix {
            reward: v[0],
            sucker: v[1],
            temptation: v[2],
            punishment: v[3],
        })
    }
}

impl fmt::Display for PayoffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.reward, self.sucker, self.temptation, self.punishment
        )
    }
}

impl FromStr for PayoffMatrix {
    type Err = ParsePayoffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PayoffMatrix::parse_list(s)
    }
}

impl Serialize for PayoffMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PayoffMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Numbers([f64; 4]),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Numbers(v) => {
                let joined = v.map(|x| x.to_string()).join(",");
                joined.parse().map_err(serde::de::Error::custom)
            }
        }
    }
}

pub fn to_f64(p: Payoff) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3"`, `"-1.25"` or `"7/2"` into an exact payoff.
pub fn parse_payoff(s: &str) -> Result<Payoff, ParsePayoffError> {
    let err = || ParsePayoffError(s.to_string());
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Payoff::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 12 {
        return Err(err());
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| err())?
    };
    let denom = 10i64.pow(frac.len() as u32);
    let v = Payoff::new(numer, denom);
    Ok(if neg { -v } else { v })
}
