//! Concrete deduction games and runtime selection by name and scale.
//!
//! Scales are written as comma-separated `key=value` pairs, e.g.
//! `pegs=4,colors=6`. Missing keys take the smallest desk-scale value.

pub mod black_box;
pub mod bulls_cows;
pub mod fake_coin;
pub mod low_middle_high;
pub mod mastermind;
pub mod treasure_hunt;
pub mod wordle;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use black_box::BlackBox;
pub use bulls_cows::BullsAndCows;
pub use fake_coin::FakeCoinGame;
pub use low_middle_high::LowMiddleHigh;
pub use mastermind::Mastermind;
pub use treasure_hunt::TreasureHunt;
pub use wordle::Wordle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameName {
    Mastermind,
    SimpleMastermind,
    FakeCoin,
    TreasureHunt,
    LowMiddleHigh,
    BlackBox,
    Wordle,
    BullsCows,
}

impl GameName {
    pub const ALL: [GameName; 8] = [
        GameName::Mastermind,
        GameName::SimpleMastermind,
        GameName::FakeCoin,
        GameName::TreasureHunt,
        GameName::LowMiddleHigh,
        GameName::BlackBox,
        GameName::Wordle,
        GameName::BullsCows,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GameName::Mastermind => "mastermind",
            GameName::SimpleMastermind => "simple_mastermind",
            GameName::FakeCoin => "fake_coin",
            GameName::TreasureHunt => "treasure_hunt",
            GameName::LowMiddleHigh => "low_middle_high",
            GameName::BlackBox => "black_box",
            GameName::Wordle => "wordle",
            GameName::BullsCows => "bulls_cows",
        }
    }

    /// Benchmark scales, smallest first.
    pub fn desk_scales(self) -> &'static [&'static str] {
        match self {
            GameName::Mastermind => &["pegs=3,colors=3", "pegs=4,colors=6"],
            GameName::SimpleMastermind => &["pegs=3,colors=3"],
            GameName::FakeCoin => &[
                "coins=4", "coins=5", "coins=6", "coins=7", "coins=8", "coins=9",
            ],
            GameName::TreasureHunt => &["cells=8", "cells=16", "cells=32"],
            GameName::LowMiddleHigh => &["max=15", "max=127"],
            GameName::BlackBox => &["grid=4,atoms=2"],
            GameName::Wordle => &["length=3"],
            GameName::BullsCows => &["digits=3,alphabet=6"],
        }
    }
}

impl fmt::Display for GameName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GameName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GameName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::UnknownGame(s.to_string()))
    }
}

/// Parsed `key=value` scale parameters. Every key must be consumed.
#[derive(Debug, Clone)]
pub struct ScaleParams {
    game: &'static str,
    values: BTreeMap<String, String>,
}

impl ScaleParams {
    pub fn parse(game: GameName, text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::invalid_scale(game.as_str(), format!("`{part}` is not key=value"))
            })?;
            if values
                .insert(k.trim().to_string(), v.trim().to_string())
                .is_some()
            {
                return Err(Error::invalid_scale(
                    game.as_str(),
                    format!("`{k}` given twice"),
                ));
            }
        }
        Ok(ScaleParams {
            game: game.as_str(),
            values,
        })
    }

    pub(crate) fn take_usize(&mut self, key: &str, default: usize) -> Result<usize> {
        match self.values.remove(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                Error::invalid_scale(
                    self.game,
                    format!("`{key}` must be a non-negative integer, got `{v}`"),
                )
            }),
        }
    }

    pub(crate) fn take_bool(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.values.remove(key).as_deref() {
            None => Ok(default),
            Some("true" | "1" | "yes") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(Error::invalid_scale(
                self.game,
                format!("`{key}` must be a boolean, got `{v}`"),
            )),
        }
    }

    fn finish(self) -> Result<()> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(Error::invalid_scale(
                self.game,
                format!("unknown scale key `{k}`"),
            )),
        }
    }
}

/// A game name with its scale; the serializable handle used by
/// configuration files and the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    pub name: GameName,
    #[serde(default)]
    pub scale: String,
    /// Word list for wordle; the bundled list otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dictionary: Option<PathBuf>,
}

impl GameSpec {
    pub fn new(name: GameName, scale: impl Into<String>) -> Self {
        GameSpec {
            name,
            scale: scale.into(),
            dictionary: None,
        }
    }

    pub fn build(&self) -> Result<AnyGame> {
        build_game(self.name, &self.scale, self.dictionary.as_deref())
    }
}

pub fn build_game(name: GameName, scale: &str, dictionary: Option<&Path>) -> Result<AnyGame> {
    let mut p = ScaleParams::parse(name, scale)?;
    if dictionary.is_some() && name != GameName::Wordle {
        return Err(Error::invalid_scale(
            name.as_str(),
            "only wordle takes a dictionary",
        ));
    }
    let game = match name {
        GameName::Mastermind => AnyGame::Mastermind(Mastermind::from_params(&mut p, false)?),
        GameName::SimpleMastermind => AnyGame::Mastermind(Mastermind::from_params(&mut p, true)?),
        GameName::FakeCoin => AnyGame::FakeCoin(FakeCoinGame::from_params(&mut p)?),
        GameName::TreasureHunt => AnyGame::TreasureHunt(TreasureHunt::from_params(&mut p)?),
        GameName::LowMiddleHigh => AnyGame::LowMiddleHigh(LowMiddleHigh::from_params(&mut p)?),
        GameName::BlackBox => AnyGame::BlackBox(BlackBox::from_params(&mut p)?),
        GameName::Wordle => AnyGame::Wordle(Wordle::from_params(&mut p, dictionary)?),
        GameName::BullsCows => AnyGame::BullsCows(BullsAndCows::from_params(&mut p)?),
    };
    p.finish()?;
    Ok(game)
}

/// Any of the bundled games. Use [`with_game!`](crate::with_game) to run
/// generic code against the concrete type.
#[derive(Debug, Clone)]
pub enum AnyGame {
    Mastermind(Mastermind),
    FakeCoin(FakeCoinGame),
    TreasureHunt(TreasureHunt),
    LowMiddleHigh(LowMiddleHigh),
    BlackBox(BlackBox),
    Wordle(Wordle),
    BullsCows(BullsAndCows),
}

/// Binds the concrete game inside an [`AnyGame`] and evaluates `$body`.
#[macro_export]
macro_rules! with_game {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::games::AnyGame::Mastermind($g) => $body,
            $crate::games::AnyGame::FakeCoin($g) => $body,
            $crate::games::AnyGame::TreasureHunt($g) => $body,
            $crate::games::AnyGame::LowMiddleHigh($g) => $body,
            $crate::games::AnyGame::BlackBox($g) => $body,
            $crate::games::AnyGame::Wordle($g) => $body,
            $crate::games::AnyGame::BullsCows($g) => $body,
        }
    };
}

impl AnyGame {
    pub fn name(&self) -> &'static str {
        use crate::game::DeductionGame;
        with_game!(self, g => g.name())
    }

    pub fn scale(&self) -> String {
        use crate::game::DeductionGame;
        with_game!(self, g => g.scale())
    }

    pub fn universe_size(&self) -> usize {
        use crate::game::DeductionGame;
        with_game!(self, g => g.initial_candidates().len())
    }
}
