//! The deduction-game abstraction.

use std::borrow::Cow;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyBits;
use crate::error::Result;
use crate::infoset::{EnumeratedInfoSet, InformationSet};

/// How an episode ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The information set reaches the game's entropy target (a singleton
    /// when the target is zero).
    Knowledge,
    /// The player plays an action whose observation signals an exact match
    /// with the secret.
    Declaration,
}

/// A single-player deduction game: a finite secret universe, a legal action
/// space and a deterministic, truthful oracle.
///
/// Token types are opaque to the framework. Every collection the framework
/// produces preserves the order of [`DeductionGame::initial_candidates`] and
/// [`DeductionGame::legal_actions`], which is what makes sampling and
/// tie-breaking reproducible.
pub trait DeductionGame: Send + Sync {
    type Secret: Clone + Eq + Hash + Debug + Send + Sync;
    type Action: Clone + Eq + Debug + Send + Sync;
    /// Observations are ordered so that grouping by observation is
    /// deterministic.
    type Obs: Clone + Ord + Debug + Send + Sync;

    fn name(&self) -> &'static str;

    /// Canonical scale label, e.g. `pegs=3,colors=3`.
    fn scale(&self) -> String;

    /// Non-empty, duplicate-free universe in canonical order.
    fn initial_candidates(&self) -> &[Self::Secret];

    fn legal_actions<'a>(
        &'a self,
        set: &EnumeratedInfoSet<Self::Secret>,
        step: usize,
    ) -> Cow<'a, [Self::Action]>;

    fn oracle(&self, secret: &Self::Secret, action: &Self::Action) -> Result<Self::Obs>;

    fn termination(&self) -> Termination;

    fn entropy_target(&self) -> EntropyBits {
        EntropyBits::ZERO
    }

    /// Declaration games: does `obs` (returned for `action`) signal an exact
    /// match?
    fn is_match(&self, _action: &Self::Action, _obs: &Self::Obs) -> bool {
        false
    }

    /// Declaration games: would `action` be an exact match if `secret` were
    /// the hidden configuration?
    fn declares(&self, _action: &Self::Action, _secret: &Self::Secret) -> bool {
        false
    }

    fn format_secret(&self, secret: &Self::Secret) -> String;
    fn format_action(&self, action: &Self::Action) -> String;
    fn format_obs(&self, obs: &Self::Obs) -> String;

    /// Default step cap: `ceil(multiplier * log2 |universe|)`, at least one.
    fn step_cap(&self, multiplier: f64) -> usize {
        let n = self.initial_candidates().len().max(1) as f64;
        ((multiplier * n.log2()).ceil() as usize).max(1)
    }
}

/// Termination test. Knowledge games compare the set's entropy with the
/// target; declaration games look at the most recent action and observation.
pub fn is_terminal<G, I>(game: &G, set: &I, last: Option<(&G::Action, &G::Obs)>) -> Result<bool>
where
    G: DeductionGame + ?Sized,
    I: InformationSet + ?Sized,
{
    match game.termination() {
        Termination::Knowledge => Ok(set.entropy()?.at_most(game.entropy_target())),
        Termination::Declaration => Ok(last.is_some_and(|(a, o)| game.is_match(a, o))),
    }
}
