//! Single-observer information set Monte Carlo tree search.
//!
//! Each iteration determinizes by drawing one secret from the root
//! information set, descends the observer's tree (nodes are action /
//! observation histories) with UCB1, expands one untried action, rolls out
//! uniformly at random and backs up `1 / steps`, or zero when the depth cap
//! is hit first.

use std::borrow::Cow;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use web_time::{Duration, Instant};

use super::{random_select, Agent, Decision};
use crate::error::{Error, Result};
use crate::game::{is_terminal, DeductionGame};
use crate::infoset::EnumeratedInfoSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MctsConfig {
    /// UCB1 exploration constant.
    pub exploration: f64,
    /// Maximum simulated steps per iteration. `None` resolves to
    /// `ceil(4 log2 |universe|)`.
    pub rollout_cap: Option<usize>,
    pub budget_ms: u64,
    /// Optional iteration limit; the search stops at whichever of budget and
    /// limit comes first. With a limit well inside the budget the agent is
    /// deterministic.
    pub iterations: Option<u64>,
}

impl Default for MctsConfig {
    fn default() -> Self {
        MctsConfig {
            exploration: std::f64::consts::SQRT_2,
            rollout_cap: None,
            budget_ms: 100,
            iterations: None,
        }
    }
}

impl MctsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.exploration.is_finite() && self.exploration > 0.0) {
            return Err(Error::invalid_scale(
                "ismcts",
                "exploration constant must be > 0",
            ));
        }
        if self.budget_ms == 0 {
            return Err(Error::invalid_scale("ismcts", "budget_ms must be > 0"));
        }
        if self.rollout_cap == Some(0) || self.iterations == Some(0) {
            return Err(Error::invalid_scale(
                "ismcts",
                "rollout_cap and iterations must be > 0",
            ));
        }
        Ok(())
    }

    pub fn resolved_rollout_cap(&self, universe: usize) -> usize {
        self.rollout_cap
            .unwrap_or_else(|| ((4.0 * (universe.max(1) as f64).log2()).ceil() as usize).max(1))
    }
}

/// Visit statistics of one tree edge.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EdgeStats {
    pub visits: u64,
    pub total_reward: f64,
}

impl EdgeStats {
    pub fn mean(&self) -> f64 {
        if self.visits == 0 {
            0.0
        } else {
            self.total_reward / self.visits as f64
        }
    }
}

/// Index of the edge maximising `mean + c sqrt(ln N / n)`. Unvisited edges
/// win outright; ties go to the earliest edge.
pub fn ucb1_select(edges: &[EdgeStats], parent_visits: u64, c: f64) -> Option<usize> {
    let ln_n = (parent_visits.max(1) as f64).ln();
    let mut best: Option<(usize, f64)> = None;
    for (i, e) in edges.iter().enumerate() {
        let score = if e.visits == 0 {
            f64::INFINITY
        } else {
            e.mean() + c * (ln_n / e.visits as f64).sqrt()
        };
        if best.is_none_or(|(_, b)| score > b) {
            best = Some((i, score));
        }
    }
    best.map(|(i, _)| i)
}

struct Edge<O> {
    action: usize,
    stats: EdgeStats,
    children: Vec<(O, usize)>,
}

struct Node<'a, A: Clone, O> {
    actions: Cow<'a, [A]>,
    untried: Vec<usize>,
    edges: Vec<Edge<O>>,
    visits: u64,
}

impl<'a, A: Clone, O> Node<'a, A, O> {
    fn new(actions: Cow<'a, [A]>) -> Self {
        let untried = (0..actions.len()).collect();
        Node {
            actions,
            untried,
            edges: Vec::new(),
            visits: 0,
        }
    }
}

struct Search<'a, G: DeductionGame + ?Sized> {
    game: &'a G,
    root_step: usize,
    cap: usize,
    c: f64,
    nodes: Vec<Node<'a, G::Action, G::Obs>>,
}

impl<'a, G: DeductionGame + ?Sized> Search<'a, G> {
    fn terminal(
        &self,
        set: &EnumeratedInfoSet<G::Secret>,
        action: &G::Action,
        obs: &G::Obs,
    ) -> Result<bool> {
        is_terminal(self.game, set, Some((action, obs)))
    }

    fn rollout(
        &self,
        mut set: EnumeratedInfoSet<G::Secret>,
        secret: &G::Secret,
        mut depth: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<f64> {
        while depth < self.cap {
            let actions = self.game.legal_actions(&set, self.root_step + depth);
            if actions.is_empty() {
                return Ok(0.0);
            }
            let action = &actions[rng.random_range(0..actions.len())];
            let obs = self.game.oracle(secret, action)?;
            set = set.update(self.game, action, &obs)?;
            depth += 1;
            if self.terminal(&set, action, &obs)? {
                return Ok(1.0 / depth as f64);
            }
        }
        Ok(0.0)
    }

    fn iterate(&mut self, root: &EnumeratedInfoSet<G::Secret>, rng: &mut ChaCha8Rng) -> Result<()> {
        let secret = root.candidates()[rng.random_range(0..root.len())].clone();
        let mut set = root.clone();
        let mut node = 0usize;
        let mut depth = 0usize;
        let mut path: Vec<(usize, usize)> = Vec::new();

        let reward = loop {
            if depth >= self.cap {
                break 0.0;
            }
            let (edge_idx, expanded) = if self.nodes[node].untried.is_empty() {
                let n = &self.nodes[node];
                let stats: Vec<EdgeStats> = n.edges.iter().map(|e| e.stats).collect();
                match ucb1_select(&stats, n.visits, self.c) {
                    Some(e) => (e, false),
                    None => break 0.0,
                }
            } else {
                let n = &mut self.nodes[node];
                let pick = rng.random_range(0..n.untried.len());
                let action = n.untried.swap_remove(pick);
                n.edges.push(Edge {
                    action,
                    stats: EdgeStats::default(),
                    children: Vec::new(),
                });
                (n.edges.len() - 1, true)
            };
            path.push((node, edge_idx));

            let n = &self.nodes[node];
            let action = n.actions[n.edges[edge_idx].action].clone();
            let obs = self.game.oracle(&secret, &action)?;
            set = set.update(self.game, &action, &obs)?;
            depth += 1;
            if self.terminal(&set, &action, &obs)? {
                break 1.0 / depth as f64;
            }

            let existing = self.nodes[node].edges[edge_idx]
                .children
                .iter()
                .find(|(o, _)| *o == obs)
                .map(|&(_, c)| c);
            match existing {
                Some(child) if !expanded => node = child,
                _ => {
                    let actions = self.game.legal_actions(&set, self.root_step + depth);
                    self.nodes.push(Node::new(actions));
                    let child = self.nodes.len() - 1;
                    self.nodes[node].edges[edge_idx].children.push((obs, child));
                    break self.rollout(set, &secret, depth, rng)?;
                }
            }
        };

        for (n, e) in path {
            let node = &mut self.nodes[n];
            node.visits += 1;
            node.edges[e].stats.visits += 1;
            node.edges[e].stats.total_reward += reward;
        }
        Ok(())
    }
}

/// Runs the search from `set` until the budget (or iteration limit) is
/// spent and returns the most visited root action.
pub fn ismcts_select<G: DeductionGame + ?Sized>(
    game: &G,
    set: &EnumeratedInfoSet<G::Secret>,
    actions: &[G::Action],
    cfg: &MctsConfig,
    step: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Decision> {
    let start = Instant::now();
    if set.is_empty() {
        return Err(Error::InconsistentInfoSet("empty candidate set".into()));
    }
    if actions.is_empty() {
        return Err(Error::NoActions);
    }
    if actions.len() == 1 {
        return Ok(Decision::simple(0));
    }
    let budget = Duration::from_millis(cfg.budget_ms);
    let mut search = Search {
        game,
        root_step: step,
        cap: cfg.resolved_rollout_cap(game.initial_candidates().len()),
        c: cfg.exploration,
        nodes: vec![Node::new(Cow::Borrowed(actions))],
    };

    let mut iterations = 0u64;
    while cfg.iterations.is_none_or(|limit| iterations < limit) && start.elapsed() < budget {
        search.iterate(set, rng)?;
        iterations += 1;
    }

    let root = &search.nodes[0];
    let best = root
        .edges
        .iter()
        .filter(|e| e.stats.visits > 0)
        .max_by(|a, b| {
            a.stats
                .visits
                .cmp(&b.stats.visits)
                .then_with(|| b.action.cmp(&a.action))
        })
        .map(|e| e.action);

    match best {
        Some(action) => Ok(Decision {
            action,
            states_used: set.len(),
            actions_evaluated: root.edges.len(),
            scores: Vec::new(),
            iterations,
            fallback: false,
        }),
        None => {
            log::warn!(
                "ismcts: no iteration completed within {}ms, choosing at random",
                cfg.budget_ms
            );
            let mut d = Decision::simple(random_select(actions.len(), rng)?);
            d.fallback = true;
            Ok(d)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ismcts {
    cfg: MctsConfig,
}

impl Ismcts {
    /// Resolves the rollout cap against the game's universe size.
    pub fn new<G: DeductionGame + ?Sized>(mut cfg: MctsConfig, game: &G) -> Self {
        cfg.rollout_cap = Some(cfg.resolved_rollout_cap(game.initial_candidates().len()));
        Ismcts { cfg }
    }
}

impl<G: DeductionGame + ?Sized> Agent<G> for Ismcts {
    fn id(&self) -> String {
        let mut id = format!(
            "ismcts(c={:.3},cap={},budget={}ms",
            self.cfg.exploration,
            self.cfg.rollout_cap.unwrap_or(0),
            self.cfg.budget_ms
        );
        if let Some(it) = self.cfg.iterations {
            id.push_str(&format!(",iterations={it}"));
        }
        id.push(')');
        id
    }

    fn select(
        &mut self,
        game: &G,
        set: &EnumeratedInfoSet<G::Secret>,
        actions: &[G::Action],
        step: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Decision> {
        ismcts_select(game, set, actions, &self.cfg, step, rng)
    }
}
