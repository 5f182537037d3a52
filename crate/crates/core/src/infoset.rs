//! Information sets and belief updates.

use serde::{Deserialize, Serialize};

use crate::entropy::{self, EntropyBits, ENTROPY_TOLERANCE};
use crate::error::{Error, Result};
use crate::game::DeductionGame;

/// Anything whose uncertainty can be measured in bits.
pub trait InformationSet {
    fn entropy(&self) -> Result<EntropyBits>;
}

/// Explicit candidate list with uniform belief. Candidates stay in the order
/// of the game's initial universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedInfoSet<S> {
    candidates: Vec<S>,
}

impl<S: Clone + Eq> EnumeratedInfoSet<S> {
    /// Caller guarantees canonical order and no duplicates.
    pub fn new(candidates: Vec<S>) -> Self {
        EnumeratedInfoSet { candidates }
    }

    pub fn initial<G>(game: &G) -> Self
    where
        G: DeductionGame<Secret = S> + ?Sized,
    {
        EnumeratedInfoSet::new(game.initial_candidates().to_vec())
    }

    pub fn candidates(&self) -> &[S] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, secret: &S) -> bool {
        self.candidates.contains(secret)
    }

    /// Keeps exactly the candidates that would have produced `obs` for
    /// `action`.
    pub fn update<G>(&self, game: &G, action: &G::Action, obs: &G::Obs) -> Result<Self>
    where
        G: DeductionGame<Secret = S> + ?Sized,
    {
        let mut kept = Vec::new();
        for c in &self.candidates {
            if game.oracle(c, action)? == *obs {
                kept.push(c.clone());
            }
        }
        if kept.is_empty() {
            return Err(Error::InconsistentInfoSet(format!(
                "no candidate answers {} with {}",
                game.format_action(action),
                game.format_obs(obs)
            )));
        }
        Ok(EnumeratedInfoSet { candidates: kept })
    }

    /// Oracle answer for every candidate, in candidate order.
    pub fn observations<G>(&self, game: &G, action: &G::Action) -> Result<Vec<G::Obs>>
    where
        G: DeductionGame<Secret = S> + ?Sized,
    {
        self.candidates
            .iter()
            .map(|c| game.oracle(c, action))
            .collect()
    }

    /// Partition of the candidates by observation, ordered by observation.
    pub fn observation_classes<G>(
        &self,
        game: &G,
        action: &G::Action,
    ) -> Result<Vec<(G::Obs, Vec<S>)>>
    where
        G: DeductionGame<Secret = S> + ?Sized,
    {
        let obs = self.observations(game, action)?;
        let mut classes: std::collections::BTreeMap<G::Obs, Vec<S>> = Default::default();
        for (o, c) in obs.into_iter().zip(&self.candidates) {
            classes.entry(o).or_default().push(c.clone());
        }
        Ok(classes.into_iter().collect())
    }

    /// Average entropy of the posterior set over every candidate taken as the
    /// secret. Computed by grouping candidates into observation classes:
    /// `sum_o (n_o / n) log2 n_o`.
    pub fn expected_posterior_entropy<G>(&self, game: &G, action: &G::Action) -> Result<EntropyBits>
    where
        G: DeductionGame<Secret = S> + ?Sized,
    {
        if self.candidates.is_empty() {
            return Err(Error::InconsistentInfoSet("empty candidate set".into()));
        }
        let mut obs = self.observations(game, action)?;
        obs.sort_unstable();
        Ok(EntropyBits::new(entropy::weighted_class_entropy(
            class_sizes(&obs),
        )))
    }
}

impl<S> InformationSet for EnumeratedInfoSet<S> {
    fn entropy(&self) -> Result<EntropyBits> {
        entropy::uniform(self.candidates.len())
    }
}

/// Run lengths of a sorted slice.
pub(crate) fn class_sizes<T: PartialEq>(sorted: &[T]) -> impl Iterator<Item = usize> + '_ {
    let mut i = 0;
    std::iter::from_fn(move || {
        if i >= sorted.len() {
            return None;
        }
        let start = i;
        while i < sorted.len() && sorted[i] == sorted[start] {
            i += 1;
        }
        Some(i - start)
    })
}

/// One named, finite variable of a factored secret.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub labels: Vec<String>,
}

impl Axis {
    pub fn new(
        name: impl Into<String>,
        labels: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Axis {
            name: name.into(),
            labels: labels.into_iter().map(Into::into).collect(),
        }
    }
}

/// Games whose secret is a cell of a product of finite axes. Cells are
/// numbered row-major over [`TabularGame::table_axes`].
pub trait TabularGame: DeductionGame {
    fn table_axes(&self) -> Vec<Axis>;
    fn cell_secret(&self, cell: usize) -> Self::Secret;
}

/// Factored probability table over the axes of a [`TabularGame`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabularInfoSet {
    axes: Vec<Axis>,
    mass: Vec<f64>,
}

impl TabularInfoSet {
    pub fn new(axes: Vec<Axis>, mass: Vec<f64>) -> Result<Self> {
        let cells: usize = axes.iter().map(|a| a.labels.len()).product();
        if cells != mass.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} masses for {cells} cells",
                mass.len()
            )));
        }
        entropy::shannon(&mass)?;
        Ok(TabularInfoSet { axes, mass })
    }

    pub fn uniform(axes: Vec<Axis>) -> Result<Self> {
        let cells: usize = axes.iter().map(|a| a.labels.len()).product();
        if cells == 0 {
            return Err(Error::InvalidDistribution("table has no cells".into()));
        }
        TabularInfoSet::new(axes, vec![1.0 / cells as f64; cells])
    }

    pub fn for_game<G: TabularGame + ?Sized>(game: &G) -> Result<Self> {
        TabularInfoSet::uniform(game.table_axes())
    }

    /// Uniform table supported on the members of an enumerated set.
    pub fn from_enumerated<G: TabularGame + ?Sized>(
        game: &G,
        set: &EnumeratedInfoSet<G::Secret>,
    ) -> Result<Self> {
        let axes = game.table_axes();
        let cells: usize = axes.iter().map(|a| a.labels.len()).product();
        let mut mass = vec![0.0; cells];
        let p = 1.0 / set.len().max(1) as f64;
        for (cell, m) in mass.iter_mut().enumerate() {
            if set.contains(&game.cell_secret(cell)) {
                *m = p;
            }
        }
        TabularInfoSet::new(axes, mass)
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Secrets of cells with positive mass, in cell order.
    pub fn support<G: TabularGame + ?Sized>(&self, game: &G) -> Vec<G::Secret> {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(cell, _)| game.cell_secret(cell))
            .collect()
    }

    /// Zeroes every cell inconsistent with `(action, obs)` and renormalises.
    pub fn update<G: TabularGame + ?Sized>(
        &self,
        game: &G,
        action: &G::Action,
        obs: &G::Obs,
    ) -> Result<Self> {
        let mut mass = self.mass.clone();
        for (cell, m) in mass.iter_mut().enumerate() {
            if *m > 0.0 && game.oracle(&game.cell_secret(cell), action)? != *obs {
                *m = 0.0;
            }
        }
        let total: f64 = mass.iter().sum();
        if total <= ENTROPY_TOLERANCE {
            return Err(Error::InconsistentInfoSet(format!(
                "all mass eliminated by {} -> {}",
                game.format_action(action),
                game.format_obs(obs)
            )));
        }
        for m in &mut mass {
            *m /= total;
        }
        Ok(TabularInfoSet {
            axes: self.axes.clone(),
            mass,
        })
    }
}

impl InformationSet for TabularInfoSet {
    fn entropy(&self) -> Result<EntropyBits> {
        entropy::shannon(&self.mass)
    }
}
