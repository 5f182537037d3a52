//! Deduction-game framework built around the Shannon entropy of information
//! sets.
//!
//! A deduction game hides a secret, answers queries through a truthful and
//! deterministic oracle, and ends either when the player's information set
//! collapses to the target entropy or when the player declares the secret.
//! The crate provides:
//!
//! - [`game`]: the [`DeductionGame`] abstraction and termination modes.
//! - [`infoset`]: enumerated (uniform) and tabular information sets with their
//!   entropy and belief updates.
//! - [`episode`]: the agent/oracle loop producing [`EpisodeRecord`]s.
//! - [`games`]: eight concrete deduction games with configurable scale.
//! - [`agents`]: random, exhaustive entropy search, sampled anytime entropy
//!   search and single-observer ISMCTS.
//! - [`analysis`]: first-move profiles, entropy trajectory bands and benchmark
//!   summaries.

pub mod agents;
pub mod analysis;
pub mod entropy;
pub mod episode;
pub mod error;
pub mod game;
pub mod games;
pub mod infoset;
pub mod seed;

pub use games::{AnyGame, GameName, GameSpec};

pub use entropy::{EntropyBits, ENTROPY_TOLERANCE};
pub use episode::{play_episode, EpisodeOptions, EpisodeRecord, TraceStep};
pub use error::{Error, Result};
pub use game::{is_terminal, DeductionGame, Termination};
pub use infoset::{EnumeratedInfoSet, InformationSet, TabularInfoSet};
