//! Browser bindings: first-move entropy profiles, entropy trajectories and
//! an interactive session where the page plays against a hidden secret with
//! hints from the entropy-search agent.
//!
//! Every export has a plain Rust counterpart returning `Result<_, String>`
//! so the logic is testable off the browser.

use ises_core::agents::{ises_full_select, AgentSpec};
use ises_core::analysis::{self, ENUMERATION_CAP};
use ises_core::games::{build_game, AnyGame, GameName};
use ises_core::{
    is_terminal, play_episode, seed, with_game, DeductionGame, EnumeratedInfoSet, EpisodeOptions,
};
use rand::Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Games beyond this many actions x candidates are not scored for hints;
/// a hint would block the page for too long.
const HINT_CAP: usize = 2_000_000;

fn game(name: &str, scale: &str) -> Result<AnyGame, String> {
    let name: GameName = name.parse().map_err(|e: ises_core::Error| e.to_string())?;
    build_game(name, scale, None).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct GameInfo {
    name: &'static str,
    scales: &'static [&'static str],
}

pub fn games_json() -> String {
    let list: Vec<GameInfo> = GameName::ALL
        .iter()
        .map(|n| GameInfo {
            name: n.as_str(),
            scales: n.desk_scales(),
        })
        .collect();
    serde_json::to_string(&list).unwrap()
}

/// Ranked first-move profile as JSON.
pub fn profile_json(name: &str, scale: &str) -> Result<String, String> {
    let g = game(name, scale)?;
    let p = with_game!(&g, g => analysis::first_move_profile(g, ENUMERATION_CAP))
        .map_err(|e| e.to_string())?;
    #[derive(Serialize)]
    struct Out<'a> {
        game: &'a str,
        scale: &'a str,
        initial_bits: f64,
        spread: f64,
        rows: Vec<&'a analysis::ProfileRow>,
    }
    let out = Out {
        game: &p.game,
        scale: &p.scale,
        initial_bits: p.initial_bits,
        spread: p.spread(),
        rows: p.ranked(),
    };
    Ok(serde_json::to_string(&out).unwrap())
}

/// Min/mean/max entropy band over `episodes` episodes as JSON. Episode
/// `i` uses seed `derive(seed, [i])` and a secret drawn from it.
pub fn trajectory_json(
    name: &str,
    scale: &str,
    agent: &str,
    episodes: usize,
    seed: u64,
) -> Result<String, String> {
    if episodes == 0 {
        return Err("episodes must be >= 1".into());
    }
    let g = game(name, scale)?;
    let spec = AgentSpec::from_name(agent).map_err(|e| e.to_string())?;
    let records = with_game!(&g, g => {
        let universe = g.initial_candidates();
        (0..episodes as u64)
            .map(|i| {
                let s = seed::derive(seed, &[i]);
                let secret = &universe[seed::rng(s).random_range(0..universe.len())];
                let mut a = spec.build(g);
                play_episode(g, a.as_mut(), secret, s.wrapping_add(1), EpisodeOptions::for_game(g))
            })
            .collect::<ises_core::Result<Vec<_>>>()
    })
    .map_err(|e| e.to_string())?;
    let band = analysis::trajectory_band(&records).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&band).unwrap())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Move {
    pub action: String,
    pub observation: String,
    pub entropy: f64,
    pub candidates: usize,
    pub finished: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hint {
    pub index: usize,
    pub action: String,
    pub expected_bits: f64,
}

trait Play {
    fn actions(&self) -> Vec<String>;
    fn play(&mut self, index: usize) -> Result<Move, String>;
    fn hint(&self) -> Result<Hint, String>;
    fn entropy(&self) -> f64;
    fn candidates(&self, limit: usize) -> Vec<String>;
    fn secret(&self) -> String;
    fn finished(&self) -> bool;
}

struct Game<G: DeductionGame> {
    game: G,
    secret: G::Secret,
    set: EnumeratedInfoSet<G::Secret>,
    step: usize,
    finished: bool,
}

impl<G: DeductionGame> Game<G> {
    fn legal(&self) -> Vec<G::Action> {
        self.game.legal_actions(&self.set, self.step).into_owned()
    }
}

impl<G: DeductionGame> Play for Game<G> {
    fn actions(&self) -> Vec<String> {
        self.legal()
            .iter()
            .map(|a| self.game.format_action(a))
            .collect()
    }

    fn play(&mut self, index: usize) -> Result<Move, String> {
        if self.finished {
            return Err("the game is over".into());
        }
        let actions = self.legal();
        let action = actions
            .get(index)
            .ok_or_else(|| format!("no action {index}"))?;
        let obs = self
            .game
            .oracle(&self.secret, action)
            .map_err(|e| e.to_string())?;
        self.set = self
            .set
            .update(&self.game, action, &obs)
            .map_err(|e| e.to_string())?;
        self.step += 1;
        self.finished =
            is_terminal(&self.game, &self.set, Some((action, &obs))).map_err(|e| e.to_string())?;
        Ok(Move {
            action: self.game.format_action(action),
            observation: self.game.format_obs(&obs),
            entropy: self.entropy(),
            candidates: self.set.len(),
            finished: self.finished,
        })
    }

    fn hint(&self) -> Result<Hint, String> {
        let actions = self.legal();
        if actions.len().saturating_mul(self.set.len()) > HINT_CAP {
            return Err(format!(
                "too large to score here ({} actions x {} candidates)",
                actions.len(),
                self.set.len()
            ));
        }
        let d = ises_full_select(&self.game, &self.set, &actions).map_err(|e| e.to_string())?;
        let expected_bits = d
            .scores
            .iter()
            .find(|s| s.0 == d.action)
            .map_or(0.0, |s| s.1);
        Ok(Hint {
            index: d.action,
            action: self.game.format_action(&actions[d.action]),
            expected_bits,
        })
    }

    fn entropy(&self) -> f64 {
        (self.set.len() as f64).log2()
    }

    fn candidates(&self, limit: usize) -> Vec<String> {
        self.set
            .candidates()
            .iter()
            .take(limit)
            .map(|s| self.game.format_secret(s))
            .collect()
    }

    fn secret(&self) -> String {
        self.game.format_secret(&self.secret)
    }

    fn finished(&self) -> bool {
        self.finished
    }
}

/// One game against a hidden secret.
#[wasm_bindgen]
pub struct Session {
    inner: Box<dyn Play>,
}

impl Session {
    // the macro expands per game; for some games the secret is Copy
    #[allow(clippy::clone_on_copy)]
    pub fn create(name: &str, scale: &str, seed: u64) -> Result<Session, String> {
        let g = game(name, scale)?;
        let inner: Box<dyn Play> = with_game!(g, g => {
            let universe = g.initial_candidates();
            let secret = universe[seed::rng(seed).random_range(0..universe.len())].clone();
            let set = EnumeratedInfoSet::initial(&g);
            let finished = is_terminal(&g, &set, None).map_err(|e| e.to_string())?;
            Box::new(Game { game: g, secret, set, step: 0, finished })
        });
        Ok(Session { inner })
    }

    pub fn play_index(&mut self, index: usize) -> Result<Move, String> {
        self.inner.play(index)
    }

    pub fn suggest(&self) -> Result<Hint, String> {
        self.inner.hint()
    }

    pub fn action_list(&self) -> Vec<String> {
        self.inner.actions()
    }
}

fn js_err(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen]
impl Session {
    #[wasm_bindgen(constructor)]
    pub fn new(game: &str, scale: &str, seed: u64) -> Result<Session, JsError> {
        Session::create(game, scale, seed).map_err(js_err)
    }

    /// Legal actions as a JSON array of strings; moves refer to them by index.
    pub fn actions(&self) -> String {
        serde_json::to_string(&self.inner.actions()).unwrap()
    }

    /// Plays action `index`; returns the move as JSON.
    pub fn play(&mut self, index: usize) -> Result<String, JsError> {
        let m = self.inner.play(index).map_err(js_err)?;
        Ok(serde_json::to_string(&m).unwrap())
    }

    /// The entropy-search choice for the current position, as JSON.
    pub fn hint(&self) -> Result<String, JsError> {
        let h = self.inner.hint().map_err(js_err)?;
        Ok(serde_json::to_string(&h).unwrap())
    }

    pub fn entropy(&self) -> f64 {
        self.inner.entropy()
    }

    /// Up to `limit` remaining candidates as a JSON array.
    pub fn candidates(&self, limit: usize) -> String {
        serde_json::to_string(&self.inner.candidates(limit)).unwrap()
    }

    pub fn reveal(&self) -> String {
        self.inner.secret()
    }

    pub fn finished(&self) -> bool {
        self.inner.finished()
    }
}

#[wasm_bindgen]
pub fn games() -> String {
    games_json()
}

#[wasm_bindgen]
pub fn profile(game: &str, scale: &str) -> Result<String, JsError> {
    profile_json(game, scale).map_err(js_err)
}

#[wasm_bindgen]
pub fn trajectory(
    game: &str,
    scale: &str,
    agent: &str,
    episodes: usize,
    seed: u64,
) -> Result<String, JsError> {
    trajectory_json(game, scale, agent, episodes, seed).map_err(js_err)
}
