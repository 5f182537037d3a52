//! Files written by a benchmark run.
//!
//! `episodes.csv` and `summary.csv` hold only quantities that are pure
//! functions of the configuration; wall-clock measurements go to
//! `timing.csv` so the first two are byte-reproducible.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use ises_core::EpisodeRecord;
use serde::{Deserialize, Serialize};

use crate::config::BenchmarkConfig;
use crate::runner::{Job, Outcome};
use crate::BenchError;

pub const EPISODES: &str = "episodes.csv";
pub const SUMMARY: &str = "summary.csv";
pub const TIMING: &str = "timing.csv";
pub const TRACES: &str = "traces.jsonl";
pub const DECISIONS: &str = "decisions.jsonl";
pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRow {
    pub game: String,
    pub scale: String,
    pub agent: String,
    pub trial: usize,
    pub seed: u64,
    pub secret: String,
    /// Empty when the episode failed.
    pub steps: Option<usize>,
    pub reward: Option<f64>,
    pub solved: Option<bool>,
    pub final_entropy: Option<f64>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub game: String,
    pub scale: String,
    pub agent: String,
    pub episodes: usize,
    pub failed: usize,
    pub unsolved: usize,
    /// Over completed episodes; unsolved ones count at the step cap.
    pub mean_steps: f64,
    /// Population standard deviation.
    pub sd_steps: f64,
    pub min_steps: usize,
    pub max_steps: usize,
    pub mean_reward: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRow {
    pub game: String,
    pub scale: String,
    pub agent: String,
    pub trial: usize,
    pub decisions: usize,
    pub mean_decision_ms: f64,
    pub max_decision_ms: f64,
}

/// Game, scale and agent labels of a job.
pub fn labels(cfg: &BenchmarkConfig, job: &Job) -> (String, String, String) {
    let g = &cfg.games[job.game].game;
    let agent = ises_core::with_game!(g.as_ref(), game => cfg.agents[job.agent].0.build(game).id());
    (g.name().to_string(), g.scale(), agent)
}

pub fn episode_rows(cfg: &BenchmarkConfig, jobs: &[Job], outcomes: &[Outcome]) -> Vec<EpisodeRow> {
    jobs.iter()
        .zip(outcomes)
        .map(|(job, outcome)| {
            let (game, scale, agent) = labels(cfg, job);
            match outcome {
                Ok(r) => EpisodeRow {
                    game,
                    scale,
                    agent,
                    trial: job.trial,
                    seed: job.seed,
                    secret: r.secret.clone(),
                    steps: Some(r.steps),
                    reward: Some(r.reward),
                    solved: Some(r.solved),
                    final_entropy: Some(r.final_entropy()),
                    error: String::new(),
                },
                Err(e) => EpisodeRow {
                    game,
                    scale,
                    agent,
                    trial: job.trial,
                    seed: job.seed,
                    secret: String::new(),
                    steps: None,
                    reward: None,
                    solved: None,
                    final_entropy: None,
                    error: e.clone(),
                },
            }
        })
        .collect()
}

/// One row per `(game, scale, agent)` in order of first appearance,
/// computed from episode rows alone.
pub fn summarize(rows: &[EpisodeRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(&str, &str, &str)> = Vec::new();
    for r in rows {
        let k = (r.game.as_str(), r.scale.as_str(), r.agent.as_str());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(game, scale, agent)| {
            let group: Vec<&EpisodeRow> = rows
                .iter()
                .filter(|r| {
                    (r.game.as_str(), r.scale.as_str(), r.agent.as_str()) == (game, scale, agent)
                })
                .collect();
            let done: Vec<&EpisodeRow> = group
                .iter()
                .copied()
                .filter(|r| r.steps.is_some())
                .collect();
            let steps: Vec<usize> = done.iter().map(|r| r.steps.unwrap_or(0)).collect();
            let n = done.len() as f64;
            let mean = steps.iter().map(|&s| s as f64).sum::<f64>() / n;
            let var = steps
                .iter()
                .map(|&s| (s as f64 - mean).powi(2))
                .sum::<f64>()
                / n;
            SummaryRow {
                game: game.into(),
                scale: scale.into(),
                agent: agent.into(),
                episodes: group.len(),
                failed: group.len() - done.len(),
                unsolved: done.iter().filter(|r| r.solved == Some(false)).count(),
                mean_steps: mean,
                sd_steps: var.sqrt(),
                min_steps: steps.iter().copied().min().unwrap_or(0),
                max_steps: steps.iter().copied().max().unwrap_or(0),
                mean_reward: done.iter().map(|r| r.reward.unwrap_or(0.0)).sum::<f64>() / n,
            }
        })
        .collect()
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), BenchError> {
    let io = |e: csv::Error| BenchError::Csv {
        path: path.to_path_buf(),
        source: e,
    };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| io(e.into()))
}

fn write_jsonl<T: Serialize>(
    path: &Path,
    items: impl Iterator<Item = T>,
) -> Result<(), BenchError> {
    let io = |e: std::io::Error| BenchError::Io {
        path: path.to_path_buf(),
        source: e,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    for item in items {
        serde_json::to_writer(&mut w, &item).map_err(|e| io(e.into()))?;
        w.write_all(b"\n").map_err(io)?;
    }
    w.flush().map_err(io)
}

#[derive(Serialize)]
struct TraceLine<'a> {
    game: &'a str,
    scale: &'a str,
    agent: &'a str,
    trial: usize,
    seed: u64,
    secret: &'a str,
    initial_entropy: f64,
    trace: &'a [ises_core::TraceStep],
}

#[derive(Serialize)]
struct DecisionLine<'a> {
    game: &'a str,
    scale: &'a str,
    trial: usize,
    #[serde(flatten)]
    decision: &'a ises_core::episode::DecisionLog,
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'a str,
    config: &'a BenchmarkConfig,
    output_dir: &'a Path,
    files: Vec<&'a str>,
    episodes: usize,
    failed: usize,
    failures: Vec<Failure<'a>>,
    /// Every cell with its resolved seeds, in canonical order.
    seeds: &'a [Job],
}

#[derive(Serialize)]
struct Failure<'a> {
    game: usize,
    agent: usize,
    trial: usize,
    error: &'a str,
}

/// What a run produced.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub output_dir: PathBuf,
    pub rows: Vec<EpisodeRow>,
    pub summary: Vec<SummaryRow>,
    pub failed: usize,
}

/// Writes every output file of a finished run into `dir`.
pub fn write_run(
    cfg: &BenchmarkConfig,
    dir: &Path,
    jobs: &[Job],
    outcomes: &[Outcome],
) -> Result<RunReport, BenchError> {
    std::fs::create_dir_all(dir).map_err(|e| BenchError::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let rows = episode_rows(cfg, jobs, outcomes);
    let summary = summarize(&rows);
    write_csv(&dir.join(EPISODES), &rows)?;
    write_csv(&dir.join(SUMMARY), &summary)?;

    let timing: Vec<TimingRow> = rows
        .iter()
        .zip(outcomes)
        .filter_map(|(row, o)| o.as_ref().ok().map(|r| (row, r)))
        .map(|(row, r): (&EpisodeRow, &EpisodeRecord)| TimingRow {
            game: row.game.clone(),
            scale: row.scale.clone(),
            agent: row.agent.clone(),
            trial: row.trial,
            decisions: r.wall_times_ms.len(),
            mean_decision_ms: r.mean_decision_ms(),
            max_decision_ms: r.max_decision_ms(),
        })
        .collect();
    write_csv(&dir.join(TIMING), &timing)?;

    let mut files = vec![EPISODES, SUMMARY, TIMING];
    let completed = || {
        rows.iter()
            .zip(outcomes)
            .filter_map(|(row, o)| o.as_ref().ok().map(|r| (row, r)))
    };
    if cfg.traces {
        write_jsonl(
            &dir.join(TRACES),
            completed().map(|(row, r)| TraceLine {
                game: &row.game,
                scale: &row.scale,
                agent: &row.agent,
                trial: row.trial,
                seed: row.seed,
                secret: &r.secret,
                initial_entropy: r.initial_entropy,
                trace: &r.trace,
            }),
        )?;
        files.push(TRACES);
    }
    if cfg.decision_log {
        write_jsonl(
            &dir.join(DECISIONS),
            completed().flat_map(|(row, r)| {
                r.decisions.iter().map(move |d| DecisionLine {
                    game: &row.game,
                    scale: &row.scale,
                    trial: row.trial,
                    decision: d,
                })
            }),
        )?;
        files.push(DECISIONS);
    }
    files.push(MANIFEST);

    let failures: Vec<Failure> = jobs
        .iter()
        .zip(outcomes)
        .filter_map(|(j, o)| {
            o.as_ref().err().map(|e| Failure {
                game: j.game,
                agent: j.agent,
                trial: j.trial,
                error: e,
            })
        })
        .collect();
    let failed = failures.len();
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        output_dir: dir,
        files,
        episodes: jobs.len(),
        failed,
        failures,
        seeds: jobs,
    };
    let path = dir.join(MANIFEST);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&path, text + "\n").map_err(|e| BenchError::Io { path, source: e })?;

    Ok(RunReport {
        output_dir: dir.to_path_buf(),
        rows,
        summary,
        failed,
    })
}
