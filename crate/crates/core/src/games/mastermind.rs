//! Mastermind and its black-peg-only variant.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

use super::ScaleParams;

pub const MAX_PEGS: usize = 8;
pub const MAX_COLORS: usize = 10;
const MAX_UNIVERSE: usize = 1 << 20;

/// Fixed-capacity code of colour (or digit) indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code {
    pegs: [u8; MAX_PEGS],
    len: u8,
}

impl Code {
    pub fn new(pegs: &[u8]) -> Self {
        assert!(pegs.len() <= MAX_PEGS, "code longer than {MAX_PEGS}");
        let mut buf = [0u8; MAX_PEGS];
        buf[..pegs.len()].copy_from_slice(pegs);
        Code {
            pegs: buf,
            len: pegs.len() as u8,
        }
    }

    pub fn pegs(&self) -> &[u8] {
        &self.pegs[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of distinct symbols in the code.
    pub fn distinct(&self) -> usize {
        let mut seen = 0u32;
        for &p in self.pegs() {
            seen |= 1 << p;
        }
        seen.count_ones() as usize
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code({self})")
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.pegs() {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// All codes of `len` symbols from `0..symbols` in lexicographic order.
pub(crate) fn all_codes(len: usize, symbols: usize) -> Vec<Code> {
    let total = symbols.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0u8; len];
    for _ in 0..total {
        out.push(Code::new(&digits));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if (*d as usize) < symbols {
                break;
            }
            *d = 0;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Feedback {
    pub black: u8,
    pub white: u8,
}

/// Black pegs count positional matches; white pegs count the remaining size
/// of the colour multiset intersection.
pub fn score(secret: &[u8], guess: &[u8]) -> Feedback {
    let mut black = 0u8;
    let mut s_counts = [0u8; MAX_COLORS];
    let mut g_counts = [0u8; MAX_COLORS];
    for (&s, &g) in secret.iter().zip(guess) {
        if s == g {
            black += 1;
        }
        s_counts[s as usize] += 1;
        g_counts[g as usize] += 1;
    }
    let common: u8 = s_counts.iter().zip(&g_counts).map(|(a, b)| *a.min(b)).sum();
    Feedback {
        black,
        white: common - black,
    }
}

#[derive(Debug, Clone)]
pub struct Mastermind {
    pegs: usize,
    colors: usize,
    black_only: bool,
    consistent_only: bool,
    codes: Vec<Code>,
}

impl Mastermind {
    pub fn new(pegs: usize, colors: usize) -> Result<Self> {
        Self::build(pegs, colors, false, false)
    }

    /// Feedback carries black pegs only.
    pub fn simple(pegs: usize, colors: usize) -> Result<Self> {
        Self::build(pegs, colors, true, false)
    }

    /// Restrict legal guesses to codes still consistent with the feedback.
    pub fn consistent_only(mut self, on: bool) -> Self {
        self.consistent_only = on;
        self
    }

    fn build(pegs: usize, colors: usize, black_only: bool, consistent_only: bool) -> Result<Self> {
        let name = if black_only {
            "simple_mastermind"
        } else {
            "mastermind"
        };
        if !(1..=MAX_PEGS).contains(&pegs) {
            return Err(Error::invalid_scale(
                name,
                format!("pegs must be in 1..={MAX_PEGS}"),
            ));
        }
        if !(1..=MAX_COLORS).contains(&colors) {
            return Err(Error::invalid_scale(
                name,
                format!("colors must be in 1..={MAX_COLORS}"),
            ));
        }
        if colors
            .checked_pow(pegs as u32)
            .is_none_or(|n| n > MAX_UNIVERSE)
        {
            return Err(Error::invalid_scale(
                name,
                format!("more than {MAX_UNIVERSE} codes"),
            ));
        }
        Ok(Mastermind {
            pegs,
            colors,
            black_only,
            consistent_only,
            codes: all_codes(pegs, colors),
        })
    }

    pub(crate) fn from_params(p: &mut ScaleParams, black_only: bool) -> Result<Self> {
        let pegs = p.take_usize("pegs", 3)?;
        let colors = p.take_usize("colors", 3)?;
        let consistent = p.take_bool("consistent", false)?;
        Ok(Self::build(pegs, colors, black_only, false)?.consistent_only(consistent))
    }

    pub fn pegs(&self) -> usize {
        self.pegs
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    fn check(&self, code: &Code) -> Result<()> {
        if code.len() != self.pegs {
            return Err(Error::invalid_action(
                self.name(),
                format!(
                    "code {code} has {} pegs, expected {}",
                    code.len(),
                    self.pegs
                ),
            ));
        }
        if code.pegs().iter().any(|&c| c as usize >= self.colors) {
            return Err(Error::invalid_action(
                self.name(),
                format!("code {code} uses a colour outside 0..{}", self.colors),
            ));
        }
        Ok(())
    }
}

impl DeductionGame for Mastermind {
    type Secret = Code;
    type Action = Code;
    type Obs = Feedback;

    fn name(&self) -> &'static str {
        if self.black_only {
            "simple_mastermind"
        } else {
            "mastermind"
        }
    }

    fn scale(&self) -> String {
        let mut s = format!("pegs={},colors={}", self.pegs, self.colors);
        if self.consistent_only {
            s.push_str(",consistent=true");
        }
        s
    }

    fn initial_candidates(&self) -> &[Code] {
        &self.codes
    }

    fn legal_actions<'a>(&'a self, set: &EnumeratedInfoSet<Code>, _step: usize) -> Cow<'a, [Code]> {
        if self.consistent_only {
            Cow::Owned(set.candidates().to_vec())
        } else {
            Cow::Borrowed(&self.codes)
        }
    }

    fn oracle(&self, secret: &Code, guess: &Code) -> Result<Feedback> {
        self.check(guess)?;
        self.check(secret)?;
        let mut fb = score(secret.pegs(), guess.pegs());
        if self.black_only {
            fb.white = 0;
        }
        Ok(fb)
    }

    fn termination(&self) -> Termination {
        Termination::Declaration
    }

    fn is_match(&self, _action: &Code, obs: &Feedback) -> bool {
        obs.black as usize == self.pegs
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

    fn format_obs(&self, o: &Feedback) -> String {
        if self.black_only {
            format!("{}B", o.black)
        } else {
            format!("{}B{}W", o.black, o.white)
        }
    }
}
