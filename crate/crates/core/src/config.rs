//! Run configuration: TOML file (or the header line of a previous output),
//! overridden by command-line flags, then validated.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{MatchConfig, Player, PREDICTOR_NAME};
use crate::game::PayoffMatrix;
use crate::strategy::{builtin, InitialPolicy, MemoryOneStrategy, StrategyError, BUILTIN_NAMES};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: impl Into<String>, message: impl ToString) -> Self {
        ConfigError::Invalid {
            key: key.into(),
            message: message.to_string(),
        }
    }

    /// Offending key for validation errors.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Invalid { key, .. } => Some(key),
            _ => None,
        }
    }
}

/// A user-defined memory-one strategy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategySpec {
    pub name: String,
    /// `(p(C|CC), p(C|CD), p(C|DC), p(C|DD))` in the strategy's own orientation.
    pub coop: [f64; 4],
    #[serde(default = "default_initial")]
    pub initial: InitialPolicy,
}

fn default_initial() -> InitialPolicy {
    InitialPolicy::AlwaysC
}

/// A linear payoff relation `Px = slope * Py + intercept` to verify for one
/// strategy against the roster.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZdCheck {
    pub strategy: String,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub roster: Vec<String>,
    #[serde(rename = "strategy")]
    pub strategies: Vec<StrategySpec>,
    pub n_turns: u32,
    pub n_iter: u32,
    pub p_exp: f64,
    pub payoffs: PayoffMatrix,
    pub randomize_initial: bool,
    pub seed: u64,
    pub window: u32,
    pub grid: Vec<f64>,
    pub zd: Vec<ZdCheck>,
    pub subject: String,
    /// Output directory; not part of the recorded header.
    #[serde(skip)]
    pub out: PathBuf,
    /// Maximum number of match traces a tournament writes.
    #[serde(skip)]
    pub trace: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            roster: std::iter::once(PREDICTOR_NAME)
                .chain(BUILTIN_NAMES)
                .map(String::from)
                .collect(),
            strategies: Vec::new(),
            n_turns: 200,
            n_iter: 5,
            p_exp: 0.1,
            payoffs: PayoffMatrix::default(),
            randomize_initial: false,
            seed: 1,
            window: 5,
            grid: crate::analysis::default_grid(),
            zd: vec![
                ZdCheck {
                    strategy: "ZDGTFT-2".into(),
                    slope: 2.0,
                    intercept: -3.0,
                },
                ZdCheck {
                    strategy: "ZDEXTORT-2".into(),
                    slope: 2.0,
                    intercept: -1.0,
                },
            ],
            subject: PREDICTOR_NAME.into(),
            out: PathBuf::from("out"),
            trace: 0,
        }
    }
}

/// Command-line overrides; `None` keeps the file or default value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub n_turns: Option<u32>,
    pub n_iter: Option<u32>,
    pub p_exp: Option<f64>,
    pub seed: Option<u64>,
    pub roster: Option<Vec<String>>,
    pub randomize_initial: Option<bool>,
    pub payoffs: Option<PayoffMatrix>,
    pub out: Option<PathBuf>,
    pub trace: Option<usize>,
    pub window: Option<u32>,
    pub grid: Option<Vec<f64>>,
    pub subject: Option<String>,
}

/// Header line prefix of every emitted file.
pub const HEADER_PREFIX: &str = "# ";

#[derive(Serialize, Deserialize)]
struct Header {
    command: Vec<String>,
    config: RunConfig,
}

impl RunConfig {
    /// Parses a TOML document.
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    /// Parses either TOML or a file whose first line is an output header.
    pub fn from_text(text: &str) -> Result<Self, String> {
        match text.lines().next() {
            Some(first) if first.starts_with('#') => {
                let json = first.trim_start_matches('#').trim();
                serde_json::from_str::<Header>(json)
                    .map(|h| h.config)
                    .map_err(|e| e.to_string())
            }
            _ => RunConfig::from_toml(text),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        RunConfig::from_text(&text).map_err(|message| ConfigError::Parse {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = &o.$field { self.$field = v.clone(); })*
            };
        }
        set!(n_turns, n_iter, p_exp, seed, roster, randomize_initial, payoffs, out, trace, window, grid, subject);
    }

    /// One comment line recording the command and the resolved configuration.
    pub fn header(&self, command: &[String]) -> String {
        let h = Header {
            command: command.to_vec(),
            config: self.clone(),
        };
        format!(
            "{HEADER_PREFIX}{}",
            serde_json::to_string(&h).expect("config serializes")
        )
    }

    pub fn match_config(&self) -> MatchConfig {
        MatchConfig {
            n_turns: self.n_turns,
            payoff: self.payoffs,
            randomize_opponent_initial: self.randomize_initial,
            seed: self.seed,
        }
    }

    /// Looks up a player by name: custom strategies shadow built-ins.
    pub fn player(&self, name: &str) -> Result<Player, StrategyError> {
        if name == PREDICTOR_NAME {
            return Ok(Player::predictor(self.p_exp));
        }
        self.strategy(name).map(Player::MemoryOne)
    }

    pub fn strategy(&self, name: &str) -> Result<MemoryOneStrategy, StrategyError> {
        match self.strategies.iter().find(|s| s.name == name) {
            Some(s) => MemoryOneStrategy::new(&s.name, s.coop, s.initial),
            None => builtin(name),
        }
    }

    pub fn players(&self) -> Result<Vec<Player>, ConfigError> {
        self.roster
            .iter()
            .enumerate()
            .map(|(i, n)| self.player(n).map_err(|e| ConfigError::invalid(format!("roster[{i}]"), e)))
            .collect()
    }

    /// Checks every field; errors name the offending key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_turns == 0 {
            return Err(ConfigError::invalid("n_turns", "must be at least 1"));
        }
        if self.n_iter == 0 {
            return Err(ConfigError::invalid("n_iter", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p_exp) {
            return Err(ConfigError::invalid("p_exp", format!("{} is outside [0, 1]", self.p_exp)));
        }
        self.payoffs
            .validate()
            .map_err(|e| ConfigError::invalid("payoffs", e))?;
        for (k, s) in self.strategies.iter().enumerate() {
            for (j, p) in s.coop.iter().enumerate() {
                if !(0.0..=1.0).contains(p) {
                    return Err(ConfigError::invalid(
                        format!("strategy[{k}].coop[{j}]"),
                        format!("{p} is outside [0, 1] (strategy {:?})", s.name),
                    ));
                }
            }
            MemoryOneStrategy::new(&s.name, s.coop, s.initial)
                .map_err(|e| ConfigError::invalid(format!("strategy[{k}].name"), e))?;
        }
        if self.roster.is_empty() {
            return Err(ConfigError::invalid("roster", "must name at least one player"));
        }
        for (i, name) in self.roster.iter().enumerate() {
            if self.roster[..i].contains(name) {
                return Err(ConfigError::invalid(format!("roster[{i}]"), format!("duplicate {name:?}")));
            }
        }
        self.players()?;
        if self.window == 0 || self.window > self.n_turns {
            return Err(ConfigError::invalid(
                "window",
                format!("{} is outside 1..={}", self.window, self.n_turns),
            ));
        }
        for (i, g) in self.grid.iter().enumerate() {
            if !(0.0..=1.0).contains(g) {
                return Err(ConfigError::invalid(format!("grid[{i}]"), format!("{g} is outside [0, 1]")));
            }
        }
        for (i, z) in self.zd.iter().enumerate() {
            self.strategy(&z.strategy)
                .map_err(|e| ConfigError::invalid(format!("zd[{i}].strategy"), e))?;
        }
        Ok(())
    }
}

/// Loads an optional file, applies overrides and validates.
pub fn parse_config(file: Option<&Path>, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let mut cfg = match file {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    cfg.apply(overrides);
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_gives_defaults() {
        let cfg = parse_config(None, &Overrides::default()).unwrap();
        assert_eq!(cfg.n_turns, 200);
        assert_eq!(cfg.n_iter, 5);
        assert_eq!(cfg.p_exp, 0.1);
        assert_eq!(cfg.payoffs, PayoffMatrix::default());
        assert_eq!(cfg.roster.len(), 10);
        assert_eq!(cfg.roster[0], "PREDICTOR");
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn flags_override_file() {
        let mut cfg = RunConfig::from_toml("p_exp = 0.5\nn_turns = 100").unwrap();
        cfg.apply(&Overrides {
            p_exp: Some(0.25),
            ..Default::default()
        });
        assert_eq!(cfg.p_exp, 0.25);
        assert_eq!(cfg.n_turns, 100);
    }

    #[test]
    fn custom_strategy_out_of_range() {
        let cfg = RunConfig::from_toml(
            r#"
            roster = ["PREDICTOR", "ODD"]
            [[strategy]]
            name = "ODD"
            coop = [0.5, 1.2, 0.0, 0.0]
            "#,
        )
        .unwrap();
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.key(), Some("strategy[0].coop[1]"));
        assert!(err.to_string().contains("1.2"));
    }

    #[test]
    fn unknown_roster_name() {
        let cfg = RunConfig::from_toml(r#"roster = ["TFT", "NOPE"]"#).unwrap();
        assert_eq!(cfg.validate().unwrap_err().key(), Some("roster[1]"));
    }

    #[test]
    fn payoff_override_is_validated() {
        let cfg = RunConfig::from_toml(r#"payoffs = "3,2,5,1""#).unwrap();
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.key(), Some("payoffs"));
        assert!(err.to_string().contains("S < P"));
        let cfg = RunConfig::from_toml("payoffs = [3.5, 0, 5, 1]").unwrap();
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn custom_strategy_shadows_builtin() {
        let cfg = RunConfig::from_toml(
            r#"
            [[strategy]]
            name = "JOSS"
            coop = [0.9, 0.0, 0.9, 0.0]
            initial = "C"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.strategy("JOSS").unwrap().initial_policy(), InitialPolicy::AlwaysC);
    }

    #[test]
    fn header_round_trip() {
        let cfg = RunConfig {
            p_exp: 0.35,
            seed: 77,
            ..RunConfig::default()
        };
        let header = cfg.header(&["tournament".into()]);
        let back = RunConfig::from_text(&format!("{header}\nrank,name\n")).unwrap();
        assert_eq!(back.p_exp, 0.35);
        assert_eq!(back.seed, 77);
        assert_eq!(back.header(&["tournament".into()]), header);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml("n_turn = 3").is_err());
    }
}
