//! The decide / answer / update loop.

use serde::{Deserialize, Serialize};
use web_time::Instant;

use crate::agents::Agent;
use crate::error::{Error, Result};
use crate::game::{is_terminal, DeductionGame};
use crate::infoset::{EnumeratedInfoSet, InformationSet};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeOptions {
    pub step_cap: usize,
    /// Keep a per-decision log (scored-action tables included).
    pub log_decisions: bool,
}

impl EpisodeOptions {
    /// Step cap `ceil(10 log2 |universe|)`.
    pub fn for_game<G: DeductionGame + ?Sized>(game: &G) -> Self {
        EpisodeOptions {
            step_cap: game.step_cap(10.0),
            log_decisions: false,
        }
    }
}

/// One query of an episode and the entropy after the update.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    /// 1-based.
    pub step: usize,
    pub action: String,
    pub observation: String,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionLog {
    pub step: usize,
    pub agent: String,
    pub wall_ms: f64,
    pub states_used: usize,
    pub actions_available: usize,
    pub actions_evaluated: usize,
    pub iterations: u64,
    pub fallback: bool,
    pub scores: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub game: String,
    pub scale: String,
    pub agent: String,
    pub seed: u64,
    pub secret: String,
    pub solved: bool,
    pub steps: usize,
    pub initial_entropy: f64,
    pub trace: Vec<TraceStep>,
    pub wall_times_ms: Vec<f64>,
    /// `1 / steps` when solved (1 for an already-terminal start), else 0.
    pub reward: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decisions: Vec<DecisionLog>,
}

impl EpisodeRecord {
    pub fn final_entropy(&self) -> f64 {
        self.trace
            .last()
            .map_or(self.initial_entropy, |t| t.entropy)
    }

    pub fn mean_decision_ms(&self) -> f64 {
        if self.wall_times_ms.is_empty() {
            0.0
        } else {
            self.wall_times_ms.iter().sum::<f64>() / self.wall_times_ms.len() as f64
        }
    }

    pub fn max_decision_ms(&self) -> f64 {
        self.wall_times_ms.iter().copied().fold(0.0, f64::max)
    }
}

/// Plays one episode against `secret`. Deterministic in `(game, agent
/// parameters, secret, seed, options)` for agents without a wall-clock
/// budget. Hitting the step cap is not an error: the record is marked
/// unsolved with reward 0.
pub fn play_episode<G, A>(
    game: &G,
    agent: &mut A,
    secret: &G::Secret,
    seed: u64,
    opts: EpisodeOptions,
) -> Result<EpisodeRecord>
where
    G: DeductionGame + ?Sized,
    A: Agent<G> + ?Sized,
{
    if !game.initial_candidates().contains(secret) {
        return Err(Error::UnknownSecret);
    }
    let mut rng = seed::rng(seed);
    let mut set = EnumeratedInfoSet::initial(game);
    let agent_id = agent.id();
    let initial_entropy = set.entropy()?.bits();
    let mut trace = Vec::new();
    let mut wall_times_ms = Vec::new();
    let mut decisions = Vec::new();
    let mut solved = is_terminal(game, &set, None)?;

    let mut step = 0;
    while !solved && step < opts.step_cap {
        let actions = game.legal_actions(&set, step);
        let t0 = Instant::now();
        let decision = agent.select(game, &set, &actions, step, &mut rng)?;
        let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
        let action = actions.get(decision.action).ok_or(Error::NoActions)?;
        wall_times_ms.push(wall_ms);
        if opts.log_decisions {
            decisions.push(DecisionLog {
                step: step + 1,
                agent: agent_id.clone(),
                wall_ms,
                states_used: decision.states_used,
                actions_available: actions.len(),
                actions_evaluated: decision.actions_evaluated,
                iterations: decision.iterations,
                fallback: decision.fallback,
                scores: decision
                    .scores
                    .iter()
                    .map(|&(i, s)| (game.format_action(&actions[i]), s))
                    .collect(),
            });
        }

        let obs = game.oracle(secret, action)?;
        set = set.update(game, action, &obs)?;
        step += 1;
        trace.push(TraceStep {
            step,
            action: game.format_action(action),
            observation: game.format_obs(&obs),
            entropy: set.entropy()?.bits(),
        });
        solved = is_terminal(game, &set, Some((action, &obs)))?;
    }

    let reward = match (solved, step) {
        (false, _) => 0.0,
        (true, 0) => 1.0,
        (true, k) => 1.0 / k as f64,
    };
    Ok(EpisodeRecord {
        game: game.name().to_string(),
        scale: game.scale(),
        agent: agent_id,
        seed,
        secret: game.format_secret(secret),
        solved,
        steps: step,
        initial_entropy,
        trace,
        wall_times_ms,
        reward,
        decisions,
    })
}
