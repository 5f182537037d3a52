//! Treasure hunt on a line of cells: a probe reports whether the treasure
//! lies at or before the probed cell, or after it.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

use super::ScaleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    AtOrBefore,
    After,
}

#[derive(Debug, Clone)]
pub struct TreasureHunt {
    cells: Vec<u32>,
}

impl TreasureHunt {
    pub fn new(cells: usize) -> Result<Self> {
        if !(1..=1 << 16).contains(&cells) {
            return Err(Error::invalid_scale(
                "treasure_hunt",
                "cells must be in 1..=65536",
            ));
        }
        Ok(TreasureHunt {
            cells: (0..cells as u32).collect(),
        })
    }

    pub(crate) fn from_params(p: &mut ScaleParams) -> Result<Self> {
        Self::new(p.take_usize("cells", 8)?)
    }

    pub fn cells(&self) -> usize {
        self.cells.len()
    }
}

impl DeductionGame for TreasureHunt {
    type Secret = u32;
    type Action = u32;
    type Obs = Side;

    fn name(&self) -> &'static str {
        "treasure_hunt"
    }

    fn scale(&self) -> String {
        format!("cells={}", self.cells.len())
    }

    fn initial_candidates(&self) -> &[u32] {
        &self.cells
    }

    fn legal_actions<'a>(&'a self, _set: &EnumeratedInfoSet<u32>, _step: usize) -> Cow<'a, [u32]> {
        Cow::Borrowed(&self.cells)
    }

    fn oracle(&self, secret: &u32, probe: &u32) -> Result<Side> {
        if *probe as usize >= self.cells.len() {
            return Err(Error::invalid_action(
                "treasure_hunt",
                format!("probe {probe} outside 0..{}", self.cells.len()),
            ));
        }
        Ok(if secret <= probe {
            Side::AtOrBefore
        } else {
            Side::After
        })
    }

    fn termination(&self) -> Termination {
        Termination::Knowledge
    }

    fn format_secret(&self, s: &u32) -> String {
        s.to_string()
    }

    fn format_action(&self, a: &u32) -> String {
        a.to_string()
    }

    fn format_obs(&self, o: &Side) -> String {
        match o {
            Side::AtOrBefore => "AT_OR_BEFORE",
            Side::After => "AFTER",
        }
        .into()
    }
}
