//! Episode scheduling, seeding and execution.

use std::collections::HashSet;

use ises_core::agents::AgentSpec;
use ises_core::games::AnyGame;
use ises_core::{play_episode, seed, with_game, DeductionGame, EpisodeOptions, EpisodeRecord};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::BenchmarkConfig;
use crate::BenchError;

const SECRET_STREAM: u64 = 0;
const AGENT_STREAM: u64 = 1;

/// One `(game, agent, trial)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Job {
    pub game: usize,
    pub agent: usize,
    pub trial: usize,
    /// Seeds the agent's random stream.
    pub seed: u64,
    /// Seeds the secret draw. Shared by every agent on the same game and
    /// trial, so agents are compared on identical secrets.
    pub secret_seed: u64,
}

pub fn episode_seed(master: u64, game: usize, agent: usize, trial: usize) -> u64 {
    seed::derive(
        master,
        &[AGENT_STREAM, game as u64, agent as u64, trial as u64],
    )
}

pub fn secret_seed(master: u64, game: usize, trial: usize) -> u64 {
    seed::derive(master, &[SECRET_STREAM, game as u64, trial as u64])
}

/// Index of the secret drawn uniformly from a universe of `size`.
pub fn secret_index(secret_seed: u64, size: usize) -> usize {
    seed::rng(secret_seed).random_range(0..size)
}

/// Every cell in canonical (game, agent, trial) order. Fails if two cells
/// would share an episode seed.
pub fn plan(cfg: &BenchmarkConfig) -> Result<Vec<Job>, BenchError> {
    let mut jobs = Vec::with_capacity(cfg.games.len() * cfg.agents.len() * cfg.trials.get());
    let mut seen = HashSet::new();
    for game in 0..cfg.games.len() {
        for agent in 0..cfg.agents.len() {
            for trial in 0..cfg.trials.get() {
                let seed = episode_seed(cfg.master_seed, game, agent, trial);
                if !seen.insert(seed) {
                    return Err(BenchError::SeedCollision {
                        game,
                        agent,
                        trial,
                        seed,
                    });
                }
                jobs.push(Job {
                    game,
                    agent,
                    trial,
                    seed,
                    secret_seed: secret_seed(cfg.master_seed, game, trial),
                });
            }
        }
    }
    Ok(jobs)
}

/// Plays one episode of `game` with a fresh agent built from `spec`.
pub fn play(
    game: &AnyGame,
    spec: &AgentSpec,
    job: &Job,
    step_cap_multiplier: f64,
    log_decisions: bool,
) -> ises_core::Result<EpisodeRecord> {
    with_game!(game, g => {
        let universe = g.initial_candidates();
        let secret = &universe[secret_index(job.secret_seed, universe.len())];
        let mut agent = spec.build(g);
        let opts = EpisodeOptions { step_cap: g.step_cap(step_cap_multiplier), log_decisions };
        play_episode(g, agent.as_mut(), secret, job.seed, opts)
    })
}

/// Result of one cell: the record, or the error message of a failed episode.
pub type Outcome = Result<EpisodeRecord, String>;

/// Runs `jobs` on `workers` threads (0 = all cores). Results come back in
/// job order whatever the scheduling.
pub fn execute<F>(jobs: &[Job], workers: usize, run: F) -> Result<Vec<Outcome>, BenchError>
where
    F: Fn(&Job) -> Outcome + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| BenchError::Pool(e.to_string()))?;
    Ok(pool.install(|| jobs.par_iter().map(&run).collect()))
}

/// Plans and runs every cell of `cfg`.
pub fn run_config(cfg: &BenchmarkConfig) -> Result<(Vec<Job>, Vec<Outcome>), BenchError> {
    let jobs = plan(cfg)?;
    log::info!(
        "{} episodes ({} games x {} agents x {} trials)",
        jobs.len(),
        cfg.games.len(),
        cfg.agents.len(),
        cfg.trials
    );
    let outcomes = execute(&jobs, cfg.workers, |job| {
        let game = &cfg.games[job.game].game;
        let spec = &cfg.agents[job.agent].0;
        play(game, spec, job, cfg.step_cap_multiplier.0, cfg.decision_log).map_err(|e| {
            log::error!(
                "episode game={} agent={} trial={} failed: {e}",
                job.game,
                job.agent,
                job.trial
            );
            e.to_string()
        })
    })?;
    Ok((jobs, outcomes))
}
