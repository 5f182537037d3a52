use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Agent, Decision};
use crate::error::{Error, Result};
use crate::game::DeductionGame;
use crate::infoset::EnumeratedInfoSet;

/// Uniform index into `0..len`.
pub fn random_select(len: usize, rng: &mut ChaCha8Rng) -> Result<usize> {
    if len == 0 {
        return Err(Error::NoActions);
    }
    Ok(rng.random_range(0..len))
}

/// Uniformly random legal action; ignores the information set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RandomAgent;

impl<G: DeductionGame + ?Sized> Agent<G> for RandomAgent {
    fn id(&self) -> String {
        "random".into()
    }

    fn select(
        &mut self,
        _game: &G,
        _set: &EnumeratedInfoSet<G::Secret>,
        actions: &[G::Action],
        _step: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Decision> {
        random_select(actions.len(), rng).map(Decision::simple)
    }
}
