//! Wordle over a fixed dictionary.

use std::borrow::Cow;
use std::path::Path;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

use super::ScaleParams;

pub const MAX_WORD_LEN: usize = 8;

/// Three-letter dictionary shipped with the crate.
pub const BUNDLED_WORDS: &str = include_str!("../../data/words3.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Gray,
    Yellow,
    Green,
}

/// Index into the game's dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordId(pub u16);

/// Per-letter marks packed base 3, first letter least significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marks(pub u16);

impl Marks {
    pub fn pack(marks: &[Mark]) -> Self {
        Marks(marks.iter().rev().fold(0u16, |acc, &m| acc * 3 + m as u16))
    }

    pub fn unpack(self, len: usize) -> Vec<Mark> {
        let mut v = self.0;
        (0..len)
            .map(|_| {
                let m = match v % 3 {
                    0 => Mark::Gray,
                    1 => Mark::Yellow,
                    _ => Mark::Green,
                };
                v /= 3;
                m
            })
            .collect()
    }
}

/// Two-pass marking: greens first, then yellows left to right against the
/// secret's letters not already consumed.
pub fn mark(secret: &[u8], guess: &[u8]) -> Vec<Mark> {
    let mut marks = vec![Mark::Gray; guess.len()];
    let mut unused = [0u8; 26];
    for (i, (&s, &g)) in secret.iter().zip(guess).enumerate() {
        if s == g {
            marks[i] = Mark::Green;
        } else {
            unused[(s - b'a') as usize] += 1;
        }
    }
    for (i, &g) in guess.iter().enumerate() {
        if marks[i] == Mark::Green {
            continue;
        }
        let slot = &mut unused[(g - b'a') as usize];
        if *slot > 0 {
            *slot -= 1;
            marks[i] = Mark::Yellow;
        }
    }
    marks
}

#[derive(Debug, Clone)]
pub struct Wordle {
    length: usize,
    words: Vec<[u8; MAX_WORD_LEN]>,
    ids: Vec<WordId>,
    source: String,
    consistent_only: bool,
}

impl Wordle {
    /// Builds from a word list: non-empty, lowercase ASCII, one length,
    /// no duplicates. Order is kept as given.
    pub fn from_words<I, S>(words: I, source: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut list: Vec<[u8; MAX_WORD_LEN]> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut length = None;
        for (line, w) in words.into_iter().enumerate() {
            let w = w.as_ref().trim();
            if w.is_empty() {
                continue;
            }
            let line = line + 1;
            if !w.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(Error::Dictionary(format!(
                    "line {line}: `{w}` is not lowercase a-z"
                )));
            }
            if w.len() > MAX_WORD_LEN {
                return Err(Error::Dictionary(format!(
                    "line {line}: `{w}` is longer than {MAX_WORD_LEN}"
                )));
            }
            match length {
                None => length = Some(w.len()),
                Some(l) if l != w.len() => {
                    return Err(Error::Dictionary(format!(
                        "line {line}: `{w}` has length {}, expected {l}",
                        w.len()
                    )))
                }
                _ => {}
            }
            if !seen.insert(w.to_string()) {
                return Err(Error::Dictionary(format!(
                    "line {line}: duplicate word `{w}`"
                )));
            }
            let mut buf = [0u8; MAX_WORD_LEN];
            buf[..w.len()].copy_from_slice(w.as_bytes());
            list.push(buf);
        }
        if list.len() > u16::MAX as usize {
            return Err(Error::Dictionary("more than 65535 words".into()));
        }
        let length = length.ok_or_else(|| Error::Dictionary("dictionary is empty".into()))?;
        Ok(Wordle {
            length,
            ids: (0..list.len() as u16).map(WordId).collect(),
            words: list,
            source: source.into(),
            consistent_only: false,
        })
    }

    pub fn bundled() -> Self {
        Self::from_words(BUNDLED_WORDS.lines(), "bundled").expect("bundled dictionary is valid")
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Dictionary(format!("{}: {e}", path.display())))?;
        Self::from_words(text.lines(), path.display().to_string())
    }

    pub fn consistent_only(mut self, on: bool) -> Self {
        self.consistent_only = on;
        self
    }

    pub(crate) fn from_params(p: &mut ScaleParams, dictionary: Option<&Path>) -> Result<Self> {
        let length = p.take_usize("length", 3)?;
        let consistent = p.take_bool("consistent", false)?;
        let game = match dictionary {
            Some(path) => Self::from_file(path)?,
            None => Self::bundled(),
        };
        if game.length != length {
            return Err(Error::invalid_scale(
                "wordle",
                format!(
                    "dictionary `{}` has words of length {}, scale asks for {length}",
                    game.source, game.length
                ),
            ));
        }
        Ok(game.consistent_only(consistent))
    }

    pub fn word(&self, id: WordId) -> &str {
        std::str::from_utf8(&self.words[id.0 as usize][..self.length]).expect("ascii")
    }

    pub fn id_of(&self, word: &str) -> Option<WordId> {
        self.ids.iter().copied().find(|&id| self.word(id) == word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn letters(&self, id: WordId) -> Result<&[u8]> {
        self.words
            .get(id.0 as usize)
            .map(|w| &w[..self.length])
            .ok_or_else(|| {
                Error::invalid_action("wordle", format!("word id {} not in dictionary", id.0))
            })
    }
}

impl DeductionGame for Wordle {
    type Secret = WordId;
    type Action = WordId;
    type Obs = Marks;

    fn name(&self) -> &'static str {
        "wordle"
    }

    fn scale(&self) -> String {
        let mut s = format!("length={}", self.length);
        if self.consistent_only {
            s.push_str(",consistent=true");
        }
        s
    }

    fn initial_candidates(&self) -> &[WordId] {
        &self.ids
    }

    fn legal_actions<'a>(
        &'a self,
        set: &EnumeratedInfoSet<WordId>,
        _step: usize,
    ) -> Cow<'a, [WordId]> {
        if self.consistent_only {
            Cow::Owned(set.candidates().to_vec())
        } else {
            Cow::Borrowed(&self.ids)
        }
    }

    fn oracle(&self, secret: &WordId, guess: &WordId) -> Result<Marks> {
        let g = self.letters(*guess)?;
        let s = self.letters(*secret)?;
        Ok(Marks::pack(&mark(s, g)))
    }

    fn termination(&self) -> Termination {
        Termination::Declaration
    }

    fn is_match(&self, _action: &WordId, obs: &Marks) -> bool {
        obs.unpack(self.length).iter().all(|&m| m == Mark::Green)
    }

    fn declares(&self, action: &WordId, secret: &WordId) -> bool {
        action == secret
    }

    fn format_secret(&self, s: &WordId) -> String {
        self.word(*s).to_string()
    }

    fn format_action(&self, a: &WordId) -> String {
        self.word(*a).to_string()
    }

    fn format_obs(&self, o: &Marks) -> String {
        o.unpack(self.length)
            .iter()
            .map(|m| match m {
                Mark::Green => 'G',
                Mark::Yellow => 'Y',
                Mark::Gray => '-',
            })
            .collect()
    }
}
