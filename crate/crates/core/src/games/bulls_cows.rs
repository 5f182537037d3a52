//! Bulls and Cows: codes of distinct digits, feedback counts exact and
//! displaced digit matches.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

use super::mastermind::{all_codes, Code};
use super::ScaleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BullsCows {
    pub bulls: u8,
    pub cows: u8,
}

pub fn score(secret: &[u8], guess: &[u8]) -> BullsCows {
    let bulls = secret.iter().zip(guess).filter(|(s, g)| s == g).count() as u8;
    let mask = |code: &[u8]| code.iter().fold(0u16, |m, &d| m | 1 << d);
    let shared = (mask(secret) & mask(guess)).count_ones() as u8;
    BullsCows {
        bulls,
        cows: shared - bulls,
    }
}

#[derive(Debug, Clone)]
pub struct BullsAndCows {
    digits: usize,
    alphabet: usize,
    codes: Vec<Code>,
}

impl BullsAndCows {
    pub fn new(digits: usize, alphabet: usize) -> Result<Self> {
        if !(1..=10).contains(&alphabet) {
            return Err(Error::invalid_scale(
                "bulls_cows",
                "alphabet must be in 1..=10",
            ));
        }
        if digits == 0 || digits > alphabet || digits > 8 {
            return Err(Error::invalid_scale(
                "bulls_cows",
                format!(
                    "digits must be in 1..={} (at most the alphabet size)",
                    alphabet.min(8)
                ),
            ));
        }
        let codes = all_codes(digits, alphabet)
            .into_iter()
            .filter(|c| c.distinct() == digits)
            .collect();
        Ok(BullsAndCows {
            digits,
            alphabet,
            codes,
        })
    }

    pub(crate) fn from_params(p: &mut ScaleParams) -> Result<Self> {
        let digits = p.take_usize("digits", 3)?;
        let alphabet = p.take_usize("alphabet", 6)?;
        Self::new(digits, alphabet)
    }

    fn check(&self, code: &Code) -> Result<()> {
        if code.len() != self.digits {
            return Err(Error::invalid_action(
                "bulls_cows",
                format!(
                    "code {code} has {} digits, expected {}",
                    code.len(),
                    self.digits
                ),
            ));
        }
        if code.pegs().iter().any(|&d| d as usize >= self.alphabet) {
            return Err(Error::invalid_action(
                "bulls_cows",
                format!("code {code} uses a digit outside 0..{}", self.alphabet),
            ));
        }
        if code.distinct() != self.digits {
            return Err(Error::invalid_action(
                "bulls_cows",
                format!("code {code} repeats a digit"),
            ));
        }
        Ok(())
    }
}

impl DeductionGame for BullsAndCows {
    type Secret = Code;
    type Action = Code;
    type Obs = BullsCows;

    fn name(&self) -> &'static str {
        "bulls_cows"
    }

    fn scale(&self) -> String {
        format!("digits={},alphabet={}", self.digits, self.alphabet)
    }

    fn initial_candidates(&self) -> &[Code] {
        &self.codes
    }

    fn legal_actions<'a>(
        &'a self,
        _set: &EnumeratedInfoSet<Code>,
        _step: usize,
    ) -> Cow<'a, [Code]> {
        Cow::Borrowed(&self.codes)
    }

    fn oracle(&self, secret: &Code, guess: &Code) -> Result<BullsCows> {
        self.check(guess)?;
        self.check(secret)?;
        Ok(score(secret.pegs(), guess.pegs()))
    }

    fn termination(&self) -> Termination {
        Termination::Declaration
    }

    fn is_match(&self, _action: &Code, obs: &BullsCows) -> bool {
        obs.bulls as usize == self.digits
    }

    fn declares(&self, action: &Code, secret: &Code) -> bool {
        action == secret
    }

    fn format_secret(&self, s: &Code) -> String {
        s.to_string()
    }

    fn format_action(&self, a: &Code) -> String {
        a.to_string()
    }

    fn format_obs(&self, o: &BullsCows) -> String {
        format!("{}A{}B", o.bulls, o.cows)
    }
}
