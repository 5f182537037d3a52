use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An update left no candidate consistent with the observation. A truthful
    /// oracle never produces this, so it always indicates a bug upstream.
    #[error("inconsistent information set: {0}")]
    InconsistentInfoSet(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid action for {game}: {reason}")]
    InvalidAction { game: &'static str, reason: String },

    #[error("invalid scale for {game}: {reason}")]
    InvalidScale { game: String, reason: String },

    #[error("unknown game `{0}`")]
    UnknownGame(String),

    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    #[error("no legal actions available")]
    NoActions,

    #[error("secret is not a member of the game's candidate universe")]
    UnknownSecret,

    #[error("enumeration of {actions} actions x {candidates} candidates exceeds the cap of {cap}")]
    EnumerationCap {
        actions: usize,
        candidates: usize,
        cap: usize,
    },

    #[error("invalid batch: {0}")]
    InvalidBatch(String),

    #[error("dictionary: {0}")]
    Dictionary(String),
}

impl Error {
    pub(crate) fn invalid_action(game: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidAction {
            game,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid_scale(game: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidScale {
            game: game.into(),
            reason: reason.into(),
        }
    }
}
