//! Guess-the-number in `1..=N` with low / correct / high feedback.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

use super::ScaleParams;

/// `Low` means the guess is below the secret.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hint {
    Low,
    Correct,
    High,
}

#[derive(Debug, Clone)]
pub struct LowMiddleHigh {
    numbers: Vec<u32>,
}

impl LowMiddleHigh {
    pub fn new(max: usize) -> Result<Self> {
        if !(1..=1 << 16).contains(&max) {
            return Err(Error::invalid_scale(
                "low_middle_high",
                "max must be in 1..=65536",
            ));
        }
        Ok(LowMiddleHigh {
            numbers: (1..=max as u32).collect(),
        })
    }

    pub(crate) fn from_params(p: &mut ScaleParams) -> Result<Self> {
        Self::new(p.take_usize("max", 15)?)
    }
}

impl DeductionGame for LowMiddleHigh {
    type Secret = u32;
    type Action = u32;
    type Obs = Hint;

    fn name(&self) -> &'static str {
        "low_middle_high"
    }

    fn scale(&self) -> String {
        format!("max={}", self.numbers.len())
    }

    fn initial_candidates(&self) -> &[u32] {
        &self.numbers
    }

    fn legal_actions<'a>(&'a self, _set: &EnumeratedInfoSet<u32>, _step: usize) -> Cow<'a, [u32]> {
        Cow::Borrowed(&self.numbers)
    }

    fn oracle(&self, secret: &u32, guess: &u32) -> Result<Hint> {
        if *guess == 0 || *guess as usize > self.numbers.len() {
            return Err(Error::invalid_action(
                "low_middle_high",
                format!("guess {guess} outside 1..={}", self.numbers.len()),
            ));
        }
        Ok(match guess.cmp(secret) {
            std::cmp::Ordering::Less => Hint::Low,
            std::cmp::Ordering::Equal => Hint::Correct,
            std::cmp::Ordering::Greater => Hint::High,
        })
    }

    fn termination(&self) -> Termination {
        Termination::Declaration
    }

    fn is_match(&self, _action: &u32, obs: &Hint) -> bool {
        *obs == Hint::Correct
    }

    fn declares(&self, action: &u32, secret: &u32) -> bool {
        action == secret
    }

    fn format_secret(&self, s: &u32) -> String {
        s.to_string()
    }

    fn format_action(&self, a: &u32) -> String {
        a.to_string()
    }

    fn format_obs(&self, o: &Hint) -> String {
        match o {
            Hint::Low => "LOW",
            Hint::Correct => "CORRECT",
            Hint::High => "HIGH",
        }
        .into()
    }
}
