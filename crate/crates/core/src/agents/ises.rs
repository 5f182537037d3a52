//! Information Set Entropy Search: pick the action whose posterior
//! information set is smallest on average.

use rand::seq::{index, SliceRandom};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use web_time::{Duration, Instant};

use super::{argmin_canonical, random_select, Agent, Decision};
use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

/// `(action index, average posterior entropy in bits)`.
pub type ScoredActions = Vec<(usize, f64)>;

/// Expected posterior entropy of every action, exhaustively.
pub fn score_actions<G: DeductionGame + ?Sized>(
    game: &G,
    set: &EnumeratedInfoSet<G::Secret>,
    actions: &[G::Action],
) -> Result<ScoredActions> {
    actions
        .iter()
        .enumerate()
        .map(|(i, a)| Ok((i, set.expected_posterior_entropy(game, a)?.bits())))
        .collect()
}

/// Tie-break among equally scored actions. In declaration games an action
/// that could itself be the secret is preferred, since it may end the game
/// on the spot; otherwise the first action in canonical order wins.
fn choose<G: DeductionGame + ?Sized>(
    game: &G,
    set: &EnumeratedInfoSet<G::Secret>,
    actions: &[G::Action],
    scores: &[(usize, f64)],
) -> Option<usize> {
    let declaration = game.termination() == Termination::Declaration;
    argmin_canonical(scores, |i| {
        declaration
            && set
                .candidates()
                .iter()
                .any(|s| game.declares(&actions[i], s))
    })
}

/// Exhaustive entropy search over every legal action and every candidate.
pub fn ises_full_select<G: DeductionGame + ?Sized>(
    game: &G,
    set: &EnumeratedInfoSet<G::Secret>,
    actions: &[G::Action],
) -> Result<Decision> {
    if set.is_empty() {
        return Err(Error::InconsistentInfoSet("empty candidate set".into()));
    }
    if actions.is_empty() {
        return Err(Error::NoActions);
    }
    let scores = score_actions(game, set, actions)?;
    let action = choose(game, set, actions, &scores).ok_or(Error::NoActions)?;
    Ok(Decision {
        action,
        states_used: set.len(),
        actions_evaluated: actions.len(),
        scores,
        iterations: 0,
        fallback: false,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IsesFull;

impl<G: DeductionGame + ?Sized> Agent<G> for IsesFull {
    fn id(&self) -> String {
        "ises_full".into()
    }

    fn select(
        &mut self,
        game: &G,
        set: &EnumeratedInfoSet<G::Secret>,
        actions: &[G::Action],
        _step: usize,
        _rng: &mut ChaCha8Rng,
    ) -> Result<Decision> {
        ises_full_select(game, set, actions)
    }
}

/// Sample size: a positive count or the whole collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleSize {
    All,
    Count(usize),
}

impl SampleSize {
    pub fn resolve(self, len: usize) -> usize {
        match self {
            SampleSize::All => len,
            SampleSize::Count(k) => k.min(len),
        }
    }
}

impl std::fmt::Display for SampleSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SampleSize::All => f.write_str("all"),
            SampleSize::Count(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for SampleSize {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SampleSize::All => s.serialize_str("all"),
            SampleSize::Count(k) => s.serialize_u64(*k as u64),
        }
    }
}

impl<'de> Deserialize<'de> for SampleSize {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Count(u64),
            Word(String),
        }
        match Repr::deserialize(d)? {
            Repr::Count(0) => Err(serde::de::Error::custom("sample size must be at least 1")),
            Repr::Count(k) => Ok(SampleSize::Count(k as usize)),
            Repr::Word(w) if w.eq_ignore_ascii_case("all") => Ok(SampleSize::All),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "sample size must be a positive integer or \"all\", got {w:?}"
            ))),
        }
    }
}

/// Parameters of the sampled, anytime entropy search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerConfig {
    /// State sample size `m`.
    pub states: SampleSize,
    /// Action sample size `n`.
    pub actions: SampleSize,
    /// Wall-clock budget per decision. Checked between actions.
    pub budget_ms: Option<u64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            states: SampleSize::Count(256),
            actions: SampleSize::Count(128),
            budget_ms: Some(100),
        }
    }
}

impl SamplerConfig {
    pub fn exhaustive() -> Self {
        SamplerConfig {
            states: SampleSize::All,
            actions: SampleSize::All,
            budget_ms: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for s in [self.states, self.actions] {
            if s == SampleSize::Count(0) {
                return Err(Error::invalid_scale(
                    "ises_sampled",
                    "sample sizes must be at least 1",
                ));
            }
        }
        Ok(())
    }

    fn id(&self) -> String {
        match self.budget_ms {
            Some(ms) => format!(
                "ises_sampled(m={},n={},budget={ms}ms)",
                self.states, self.actions
            ),
            None => format!("ises_sampled(m={},n={})", self.states, self.actions),
        }
    }
}

/// `k` distinct indices out of `0..len`, uniformly, in random order. The
/// full range comes back in canonical order.
fn sample_indices(rng: &mut ChaCha8Rng, len: usize, k: usize) -> Vec<usize> {
    if k >= len {
        (0..len).collect()
    } else {
        index::sample(rng, len, k).into_vec()
    }
}

/// Sampled entropy search. States and actions are sampled once, without
/// replacement; every sampled action is scored against the same state
/// sample; the deadline is checked before each action so only fully scored
/// actions compete.
pub fn ises_sampled_select<G: DeductionGame + ?Sized>(
    game: &G,
    set: &EnumeratedInfoSet<G::Secret>,
    actions: &[G::Action],
    cfg: &SamplerConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Decision> {
    let start = Instant::now();
    if set.is_empty() {
        return Err(Error::InconsistentInfoSet("empty candidate set".into()));
    }
    if actions.is_empty() {
        return Err(Error::NoActions);
    }
    let deadline = cfg.budget_ms.map(Duration::from_millis);

    let m = cfg.states.resolve(set.len());
    let all_states = m == set.len();
    let mut states = sample_indices(rng, set.len(), m);
    states.sort_unstable();
    let mut sampled_actions =
        sample_indices(rng, actions.len(), cfg.actions.resolve(actions.len()));
    if deadline.is_some() {
        // evaluation order matters once the clock can cut it short
        sampled_actions.shuffle(rng);
    }

    let mut scores = Vec::with_capacity(sampled_actions.len());
    let mut obs = Vec::with_capacity(set.len());
    for &ai in &sampled_actions {
        if deadline.is_some_and(|d| start.elapsed() >= d) {
            break;
        }
        let action = &actions[ai];
        let score = if all_states {
            set.expected_posterior_entropy(game, action)?.bits()
        } else {
            obs.clear();
            for c in set.candidates() {
                obs.push(game.oracle(c, action)?);
            }
            let mut sorted = obs.clone();
            sorted.sort_unstable();
            let mut acc = 0.0;
            for &si in &states {
                let o = &obs[si];
                let lo = sorted.partition_point(|x| x < o);
                let hi = sorted.partition_point(|x| x <= o);
                acc += ((hi - lo) as f64).log2();
            }
            acc / m as f64
        };
        scores.push((ai, score));
    }

    match choose(game, set, actions, &scores) {
        Some(action) => Ok(Decision {
            action,
            states_used: m,
            actions_evaluated: scores.len(),
            scores,
            iterations: 0,
            fallback: false,
        }),
        None => {
            log::warn!(
                "ises_sampled: budget exhausted before any action was scored, choosing at random"
            );
            let mut d = Decision::simple(random_select(actions.len(), rng)?);
            d.states_used = m;
            d.fallback = true;
            Ok(d)
        }
    }
}

#[derive(Debug, Clone)]
pub struct IsesSampled {
    cfg: SamplerConfig,
}

impl IsesSampled {
    pub fn new(cfg: SamplerConfig) -> Self {
        IsesSampled { cfg }
    }
}

impl<G: DeductionGame + ?Sized> Agent<G> for IsesSampled {
    fn id(&self) -> String {
        self.cfg.id()
    }

    fn select(
        &mut self,
        game: &G,
        set: &EnumeratedInfoSet<G::Secret>,
        actions: &[G::Action],
        _step: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Decision> {
        ises_sampled_select(game, set, actions, &self.cfg, rng)
    }
}
