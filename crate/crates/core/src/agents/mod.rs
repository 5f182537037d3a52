//! Decision policies over enumerated information sets.

mod ises;
mod ismcts;
mod random;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::DeductionGame;
use crate::infoset::EnumeratedInfoSet;

pub use ises::{
    ises_full_select, ises_sampled_select, score_actions, IsesFull, IsesSampled, SampleSize,
    SamplerConfig, ScoredActions,
};
pub use ismcts::{ismcts_select, ucb1_select, EdgeStats, Ismcts, MctsConfig};
pub use random::{random_select, RandomAgent};

/// What an agent decided and how it got there.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    /// Index into the legal-action slice the agent was given.
    pub action: usize,
    /// States the agent actually evaluated against (0 when not applicable).
    pub states_used: usize,
    /// Actions whose score was fully computed.
    pub actions_evaluated: usize,
    /// `(action index, average posterior entropy)` for every evaluated
    /// action, in evaluation order. Empty for agents that do not score.
    pub scores: Vec<(usize, f64)>,
    /// Search iterations completed (tree search only).
    pub iterations: u64,
    /// The budget ran out before anything was evaluated and a random action
    /// was returned instead.
    pub fallback: bool,
}

impl Decision {
    pub(crate) fn simple(action: usize) -> Self {
        Decision {
            action,
            states_used: 0,
            actions_evaluated: 0,
            scores: Vec::new(),
            iterations: 0,
            fallback: false,
        }
    }
}

/// A decision procedure. Implementations must be pure functions of their
/// inputs, their configuration and the random stream, except where a
/// wall-clock deadline cuts evaluation short.
pub trait Agent<G: DeductionGame + ?Sized> {
    /// Name plus parameters, e.g. `ises_sampled(m=256,n=128,budget=100ms)`.
    fn id(&self) -> String;

    fn select(
        &mut self,
        game: &G,
        set: &EnumeratedInfoSet<G::Secret>,
        actions: &[G::Action],
        step: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Decision>;
}

/// Serializable description of an agent and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum AgentSpec {
    Random {},
    IsesFull {},
    IsesSampled(SamplerConfig),
    Ismcts(MctsConfig),
}

impl AgentSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AgentSpec::Random {} => "random",
            AgentSpec::IsesFull {} => "ises_full",
            AgentSpec::IsesSampled(_) => "ises_sampled",
            AgentSpec::Ismcts(_) => "ismcts",
        }
    }

    /// Default parameters for an agent name.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "random" => Ok(AgentSpec::Random {}),
            "ises_full" | "ises" => Ok(AgentSpec::IsesFull {}),
            "ises_sampled" => Ok(AgentSpec::IsesSampled(SamplerConfig::default())),
            "ismcts" => Ok(AgentSpec::Ismcts(MctsConfig::default())),
            other => Err(crate::Error::UnknownAgent(other.to_string())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AgentSpec::IsesSampled(cfg) => cfg.validate(),
            AgentSpec::Ismcts(cfg) => cfg.validate(),
            _ => Ok(()),
        }
    }

    pub fn build<G: DeductionGame + ?Sized>(&self, game: &G) -> Box<dyn Agent<G> + Send> {
        match self {
            AgentSpec::Random {} => Box::new(RandomAgent),
            AgentSpec::IsesFull {} => Box::new(IsesFull),
            AgentSpec::IsesSampled(cfg) => Box::new(IsesSampled::new(cfg.clone())),
            AgentSpec::Ismcts(cfg) => Box::new(Ismcts::new(cfg.clone(), game)),
        }
    }
}

/// First index among the minimal scores (within the entropy tolerance) in
/// canonical action order. When `prefer` accepts any tied action, the first
/// such action wins instead.
pub(crate) fn argmin_canonical(
    scores: &[(usize, f64)],
    mut prefer: impl FnMut(usize) -> bool,
) -> Option<usize> {
    let best = scores.iter().map(|&(_, s)| s).fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return None;
    }
    let mut tied: Vec<usize> = scores
        .iter()
        .filter(|&&(_, s)| s <= best + crate::ENTROPY_TOLERANCE)
        .map(|&(i, _)| i)
        .collect();
    tied.sort_unstable();
    tied.iter()
        .copied()
        .find(|&i| prefer(i))
        .or(tied.first().copied())
}
