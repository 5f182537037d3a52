//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ises_core::agents::AgentSpec;
use ises_core::analysis::{self, FirstMoveProfile, TrajectoryBand, ENUMERATION_CAP};
use ises_core::games::{build_game, AnyGame, GameName};
use ises_core::{with_game, EpisodeRecord};

use crate::config::BenchmarkConfig;
use crate::runner::{self, Job};
use crate::BenchError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ises-bench",
    version,
    about = "Entropy-search agents on deduction games"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every (game, agent, trial) cell of a configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Expected posterior entropy of every first move.
    Profile {
        #[arg(long)]
        game: GameName,
        /// Scale parameters, e.g. `pegs=3,colors=3`; smallest desk scale if omitted.
        #[arg(long, default_value = "")]
        scale: String,
        /// Word list file (wordle only).
        #[arg(long)]
        dictionary: Option<PathBuf>,
        /// Refuse games whose actions x candidates exceed this.
        #[arg(long, default_value_t = ENUMERATION_CAP)]
        cap: usize,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Min/mean/max entropy per step over a batch of episodes.
    Trajectory {
        #[arg(long)]
        game: GameName,
        #[arg(long, default_value = "")]
        scale: String,
        #[arg(long)]
        dictionary: Option<PathBuf>,
        /// Agent name (`random`, `ises_full`, `ises_sampled`, `ismcts`) or a
        /// JSON agent record such as `{"name":"ismcts","budget_ms":50}`.
        #[arg(long, default_value = "ises_full")]
        agent: String,
        #[arg(long, default_value_t = 20)]
        episodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        step_cap_multiplier: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn parse_agent(text: &str) -> Result<AgentSpec, BenchError> {
    let spec = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| BenchError::Config {
            line: e.line(),
            column: e.column(),
            message: format!("--agent: {e}"),
        })?
    } else {
        AgentSpec::from_name(text)?
    };
    spec.validate()?;
    Ok(spec)
}

pub fn profile(game: &AnyGame, cap: usize) -> Result<FirstMoveProfile, BenchError> {
    Ok(with_game!(game, g => analysis::first_move_profile(g, cap))?)
}

/// Plays `episodes` episodes with secrets and seeds derived exactly as a
/// one-game, one-agent run with master seed `seed`.
pub fn trajectory(
    game: &AnyGame,
    spec: &AgentSpec,
    episodes: usize,
    seed: u64,
    step_cap_multiplier: f64,
) -> Result<(TrajectoryBand, Vec<EpisodeRecord>), BenchError> {
    if episodes == 0 {
        return Err(BenchError::Config {
            line: 0,
            column: 0,
            message: "--episodes must be >= 1".into(),
        });
    }
    if !(step_cap_multiplier.is_finite() && step_cap_multiplier > 0.0) {
        return Err(BenchError::Config {
            line: 0,
            column: 0,
            message: "--step-cap-multiplier must be > 0".into(),
        });
    }
    let records = (0..episodes)
        .map(|trial| {
            let job = Job {
                game: 0,
                agent: 0,
                trial,
                seed: runner::episode_seed(seed, 0, 0, trial),
                secret_seed: runner::secret_seed(seed, 0, trial),
            };
            runner::play(game, spec, &job, step_cap_multiplier, false)
        })
        .collect::<ises_core::Result<Vec<_>>>()?;
    Ok((analysis::trajectory_band(&records)?, records))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, BenchError> {
    match out {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| BenchError::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn csv_error(out: Option<&Path>, e: csv::Error) -> BenchError {
    BenchError::Csv {
        path: out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf),
        source: e,
    }
}

/// Executes a parsed command and returns the process exit status.
pub fn dispatch(cli: Cli) -> Result<i32, BenchError> {
    match cli.command {
        Command::Run { config } => {
            let cfg = BenchmarkConfig::load(&config)?;
            let report = crate::run_benchmark(&cfg)?;
            for s in &report.summary {
                eprintln!(
                    "{:<18} {:<22} {:<44} mean steps {:>7.3}  sd {:>6.3}  unsolved {}",
                    s.game, s.scale, s.agent, s.mean_steps, s.sd_steps, s.unsolved
                );
            }
            eprintln!("wrote {}", report.output_dir.display());
            if report.failed > 0 {
                eprintln!(
                    "{} of {} episodes failed; see manifest.json",
                    report.failed,
                    report.rows.len()
                );
                return Ok(EXIT_PARTIAL);
            }
            Ok(EXIT_OK)
        }
        Command::Profile {
            game,
            scale,
            dictionary,
            cap,
            out,
        } => {
            let g = build_game(game, &scale, dictionary.as_deref())?;
            let p = profile(&g, cap)?;
            p.write_csv(sink(out.as_deref())?)
                .map_err(|e| csv_error(out.as_deref(), e))?;
            Ok(EXIT_OK)
        }
        Command::Trajectory {
            game,
            scale,
            dictionary,
            agent,
            episodes,
            seed,
            step_cap_multiplier,
            out,
        } => {
            let g = build_game(game, &scale, dictionary.as_deref())?;
            let spec = parse_agent(&agent)?;
            let (band, _) = trajectory(&g, &spec, episodes, seed, step_cap_multiplier)?;
            band.write_csv(sink(out.as_deref())?)
                .map_err(|e| csv_error(out.as_deref(), e))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args`, runs the command and maps errors to exit statuses.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let BenchError::Config { line, column, .. } = &e {
                if *line > 0 {
                    eprintln!("  at line {line}, column {column}");
                }
            }
            e.exit_code()
        }
    }
}
