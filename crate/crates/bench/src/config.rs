//! Benchmark configuration files.
//!
//! Validation happens during deserialization so every error carries the
//! line and column of the offending value.

use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ises_core::agents::AgentSpec;
use ises_core::games::{AnyGame, GameSpec};
use serde::{Deserialize, Serialize};

use crate::BenchError;

/// Environment variable that overrides `output_dir`.
pub const OUTPUT_DIR_ENV: &str = "ISES_OUTPUT_DIR";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkConfig {
    pub games: Vec<GameEntry>,
    pub agents: Vec<AgentEntry>,
    #[serde(default = "default_trials")]
    pub trials: NonZeroUsize,
    #[serde(default)]
    pub master_seed: u64,
    /// Step cap is `ceil(multiplier * log2 |universe|)`.
    #[serde(default = "default_multiplier")]
    pub step_cap_multiplier: Multiplier,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// Worker threads; 0 uses every available core.
    #[serde(default)]
    pub workers: usize,
    /// Write traces.jsonl with the entropy trace of every episode.
    #[serde(default)]
    pub traces: bool,
    /// Write decisions.jsonl with one record per decision.
    #[serde(default)]
    pub decision_log: bool,
}

fn default_trials() -> NonZeroUsize {
    NonZeroUsize::new(500).unwrap()
}

fn default_multiplier() -> Multiplier {
    Multiplier(10.0)
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

/// A game entry checked by building the game.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GameSpec", into = "GameSpec")]
pub struct GameEntry {
    pub spec: GameSpec,
    pub game: Arc<AnyGame>,
}

impl TryFrom<GameSpec> for GameEntry {
    type Error = String;

    fn try_from(spec: GameSpec) -> Result<Self, String> {
        let game = spec.build().map_err(|e| e.to_string())?;
        Ok(GameEntry {
            spec,
            game: Arc::new(game),
        })
    }
}

impl From<GameEntry> for GameSpec {
    fn from(e: GameEntry) -> GameSpec {
        e.spec
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AgentSpec", into = "AgentSpec")]
pub struct AgentEntry(pub AgentSpec);

impl TryFrom<AgentSpec> for AgentEntry {
    type Error = String;

    fn try_from(spec: AgentSpec) -> Result<Self, String> {
        spec.validate().map_err(|e| e.to_string())?;
        Ok(AgentEntry(spec))
    }
}

impl From<AgentEntry> for AgentSpec {
    fn from(e: AgentEntry) -> AgentSpec {
        e.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Multiplier(pub f64);

impl TryFrom<f64> for Multiplier {
    type Error = String;

    fn try_from(v: f64) -> Result<Self, String> {
        if v.is_finite() && v > 0.0 {
            Ok(Multiplier(v))
        } else {
            Err(format!(
                "step_cap_multiplier must be a positive number, got {v}"
            ))
        }
    }
}

impl From<Multiplier> for f64 {
    fn from(m: Multiplier) -> f64 {
        m.0
    }
}

impl BenchmarkConfig {
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: BenchmarkConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let message = if path == "." {
                inner.to_string()
            } else {
                format!("{path}: {inner}")
            };
            BenchError::Config {
                line: inner.line(),
                column: inner.column(),
                message,
            }
        })?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Self::from_json(&text)
    }

    /// Cross-entry checks that a single value cannot express.
    fn check(&self) -> Result<(), BenchError> {
        let invalid = |message: String| BenchError::Config {
            line: 0,
            column: 0,
            message,
        };
        if self.games.is_empty() {
            return Err(invalid("`games` is empty".into()));
        }
        if self.agents.is_empty() {
            return Err(invalid("`agents` is empty".into()));
        }
        for (i, g) in self.games.iter().enumerate() {
            let key = (g.game.name(), g.game.scale());
            if self.games[..i]
                .iter()
                .any(|h| (h.game.name(), h.game.scale()) == key)
            {
                return Err(invalid(format!(
                    "games[{i}]: duplicate entry {} {}",
                    key.0, key.1
                )));
            }
        }
        for (i, a) in self.agents.iter().enumerate() {
            if self.agents[..i].contains(a) {
                return Err(invalid(format!(
                    "agents[{i}]: duplicate entry {}",
                    a.0.name()
                )));
            }
        }
        Ok(())
    }

    /// `output_dir`, unless the environment overrides it.
    pub fn resolved_output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output_dir.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = BenchmarkConfig::from_json(
            r#"{"games": [{"name": "treasure_hunt", "scale": "cells=8"}], "agents": [{"name": "random"}]}"#,
        )
        .unwrap();
        assert_eq!(cfg.trials.get(), 500);
        assert_eq!(cfg.step_cap_multiplier.0, 10.0);
        assert_eq!(cfg.games[0].game.universe_size(), 8);
    }

    fn error_at(text: &str) -> (usize, String) {
        match BenchmarkConfig::from_json(text) {
            Err(BenchError::Config { line, message, .. }) => (line, message),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn errors_point_at_the_line() {
        let (line, msg) = error_at("{\n  \"games\": [{\"name\": \"treasure_hunt\"}],\n  \"agents\": [{\"name\": \"random\"}],\n  \"trails\": 5\n}");
        assert_eq!(line, 4);
        assert!(msg.contains("trails"), "{msg}");

        // values checked after parsing are reported where the parser stopped,
        // just past the entry; the path names the entry exactly
        let (line, msg) = error_at("{\n  \"games\": [\n    {\"name\": \"treasure_hunt\",\n     \"scale\": \"cells=0\"},\n    {\"name\": \"wordle\"}\n  ],\n  \"agents\": [{\"name\": \"random\"}]\n}");
        assert_eq!(line, 5);
        assert!(msg.starts_with("games[0]"), "{msg}");
        assert!(msg.contains("cells"), "{msg}");

        let (line, _) = error_at("{\"games\": [{\"name\": \"chess\"}],\n\"agents\": []}");
        assert_eq!(line, 1);

        let (line, msg) = error_at("{\"games\": [{\"name\": \"treasure_hunt\"}],\n\"agents\": [{\"name\": \"random\"},\n{\"name\": \"ismcts\", \"budget_ms\": 0},\n{\"name\": \"random\"}]}");
        assert_eq!(line, 4);
        assert!(msg.starts_with("agents[1]"), "{msg}");
        assert!(msg.contains("budget_ms"), "{msg}");

        let (line, _) = error_at("{\"games\": [{\"name\": \"treasure_hunt\"}],\n\"agents\": [{\"name\": \"random\"}],\n\"trials\": 0}");
        assert_eq!(line, 3);
    }

    #[test]
    fn duplicate_entries_rejected() {
        let (_, msg) = error_at(
            r#"{"games": [{"name": "treasure_hunt"}, {"name": "treasure_hunt", "scale": "cells=8"}], "agents": [{"name": "random"}]}"#,
        );
        assert!(msg.contains("duplicate"), "{msg}");
    }
}
