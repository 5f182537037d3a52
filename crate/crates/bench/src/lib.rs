//! Benchmark harness: configuration, seeded episode scheduling and the
//! files a run leaves behind.

pub mod cli;
pub mod config;
pub mod output;
pub mod runner;

use std::path::PathBuf;

pub use config::BenchmarkConfig;
pub use output::{RunReport, SummaryRow};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    /// `line` and `column` are 1-based; 0 when the error is not tied to one
    /// place in the file.
    #[error("config error: {message}")]
    Config {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] ises_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("episode seed {seed:#018x} repeats at game {game}, agent {agent}, trial {trial}")]
    SeedCollision {
        game: usize,
        agent: usize,
        trial: usize,
        seed: u64,
    },
    #[error("worker pool: {0}")]
    Pool(String),
}

impl BenchError {
    /// Process exit status: 2 for anything the user must fix in the
    /// configuration or arguments, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config { .. } | BenchError::Core(_) | BenchError::SeedCollision { .. } => 2,
            _ => 1,
        }
    }
}

/// Runs a configuration end to end and writes its files.
pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<RunReport, BenchError> {
    let dir = cfg.resolved_output_dir();
    let (jobs, outcomes) = runner::run_config(cfg)?;
    output::write_run(cfg, &dir, &jobs, &outcomes)
}
