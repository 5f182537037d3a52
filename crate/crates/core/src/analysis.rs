//! First-move entropy profiles, entropy trajectory bands and benchmark
//! summaries. Every table here serialises to CSV and to JSON with the same
//! rows.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::entropy::ENTROPY_TOLERANCE;
use crate::episode::EpisodeRecord;
use crate::error::{Error, Result};
use crate::game::DeductionGame;
use crate::infoset::{EnumeratedInfoSet, InformationSet};

/// Largest `actions x candidates` product profiled exactly.
pub const ENUMERATION_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub action: String,
    /// Position in the game's canonical action order.
    pub index: usize,
    pub posterior_bits: f64,
    pub change_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstMoveProfile {
    pub game: String,
    pub scale: String,
    pub initial_bits: f64,
    /// Canonical action order.
    pub rows: Vec<ProfileRow>,
}

/// Actions whose entropy change agrees within the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileClass {
    pub change_bits: f64,
    pub actions: Vec<String>,
}

/// Exact entropy change of every first action over the whole initial
/// universe.
pub fn first_move_profile<G: DeductionGame + ?Sized>(
    game: &G,
    cap: usize,
) -> Result<FirstMoveProfile> {
    let set = EnumeratedInfoSet::initial(game);
    let actions = game.legal_actions(&set, 0);
    let work = actions.len().saturating_mul(set.len());
    if work > cap {
        return Err(Error::EnumerationCap {
            actions: actions.len(),
            candidates: set.len(),
            cap,
        });
    }
    let initial = set.entropy()?.bits();
    let rows = actions
        .iter()
        .enumerate()
        .map(|(index, a)| {
            let posterior = set.expected_posterior_entropy(game, a)?.bits();
            Ok(ProfileRow {
                action: game.format_action(a),
                index,
                posterior_bits: posterior,
                change_bits: initial - posterior,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FirstMoveProfile {
        game: game.name().into(),
        scale: game.scale(),
        initial_bits: initial,
        rows,
    })
}

impl FirstMoveProfile {
    /// Rows by entropy change, largest first; values within the tolerance
    /// count as equal and keep canonical order.
    pub fn ranked(&self) -> Vec<&ProfileRow> {
        let mut rows: Vec<&ProfileRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| {
            b.change_bits
                .total_cmp(&a.change_bits)
                .then(a.index.cmp(&b.index))
        });
        let mut out = Vec::with_capacity(rows.len());
        let mut i = 0;
        while i < rows.len() {
            let head = rows[i].change_bits;
            let mut j = i;
            while j < rows.len() && head - rows[j].change_bits <= ENTROPY_TOLERANCE {
                j += 1;
            }
            let mut group = rows[i..j].to_vec();
            group.sort_by_key(|r| r.index);
            out.extend(group);
            i = j;
        }
        out
    }

    pub fn classes(&self) -> Vec<ProfileClass> {
        let mut classes: Vec<ProfileClass> = Vec::new();
        for row in self.ranked() {
            match classes.last_mut() {
                Some(c) if c.change_bits - row.change_bits <= ENTROPY_TOLERANCE => {
                    c.actions.push(row.action.clone())
                }
                _ => classes.push(ProfileClass {
                    change_bits: row.change_bits,
                    actions: vec![row.action.clone()],
                }),
            }
        }
        classes
    }

    /// Largest minus smallest entropy change.
    pub fn spread(&self) -> f64 {
        let (lo, hi) = self
            .rows
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r.change_bits), hi.max(r.change_bits))
            });
        if self.rows.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }

    /// Columns `action,posterior_bits,change_bits`, ranked.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["action", "posterior_bits", "change_bits"])?;
        for r in self.ranked() {
            out.write_record([
                r.action.as_str(),
                &r.posterior_bits.to_string(),
                &r.change_bits.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    /// 0 is the initial information set.
    pub step: usize,
    pub min_bits: f64,
    pub mean_bits: f64,
    pub max_bits: f64,
    /// Episodes still running at this step.
    pub episodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryBand {
    pub game: String,
    pub scale: String,
    pub agent: String,
    pub rows: Vec<BandRow>,
}

/// Per-step min / mean / max entropy. Traces are aligned on step index and
/// shorter traces simply stop contributing.
pub fn trajectory_band(records: &[EpisodeRecord]) -> Result<TrajectoryBand> {
    let first = records
        .first()
        .ok_or_else(|| Error::InvalidBatch("no episodes".into()))?;
    if let Some(r) = records
        .iter()
        .find(|r| (&r.game, &r.scale, &r.agent) != (&first.game, &first.scale, &first.agent))
    {
        return Err(Error::InvalidBatch(format!(
            "mixed batch: {}/{}/{} and {}/{}/{}",
            first.game, first.scale, first.agent, r.game, r.scale, r.agent
        )));
    }
    let longest = records.iter().map(|r| r.trace.len()).max().unwrap_or(0);
    let rows = (0..=longest)
        .map(|step| {
            let values: Vec<f64> = records
                .iter()
                .filter_map(|r| match step {
                    0 => Some(r.initial_entropy),
                    s => r.trace.get(s - 1).map(|t| t.entropy),
                })
                .collect();
            BandRow {
                step,
                min_bits: values.iter().copied().fold(f64::INFINITY, f64::min),
                mean_bits: values.iter().sum::<f64>() / values.len() as f64,
                max_bits: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                episodes: values.len(),
            }
        })
        .collect();
    Ok(TrajectoryBand {
        game: first.game.clone(),
        scale: first.scale.clone(),
        agent: first.agent.clone(),
        rows,
    })
}

impl TrajectoryBand {
    /// Columns `step,min_bits,mean_bits,max_bits,episodes`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        for row in &self.rows {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub game: String,
    pub scale: String,
    pub agent: String,
    pub episodes: usize,
    pub mean_steps: f64,
    /// Population standard deviation.
    pub sd_steps: f64,
    pub mean_reward: f64,
    pub unsolved: usize,
    pub mean_decision_ms: f64,
}

/// One summary per `(game, scale, agent)`, in order of first appearance.
/// Sums run in record order, so identical inputs give identical bits.
pub fn summarize_benchmark(records: &[EpisodeRecord]) -> Vec<GroupSummary> {
    let mut keys: Vec<(&str, &str, &str)> = Vec::new();
    for r in records {
        let k = (r.game.as_str(), r.scale.as_str(), r.agent.as_str());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(game, scale, agent)| {
            let group: Vec<&EpisodeRecord> = records
                .iter()
                .filter(|r| {
                    (r.game.as_str(), r.scale.as_str(), r.agent.as_str()) == (game, scale, agent)
                })
                .collect();
            let n = group.len() as f64;
            let mean_steps = group.iter().map(|r| r.steps as f64).sum::<f64>() / n;
            let var = group
                .iter()
                .map(|r| (r.steps as f64 - mean_steps).powi(2))
                .sum::<f64>()
                / n;
            let decisions: usize = group.iter().map(|r| r.wall_times_ms.len()).sum();
            let wall: f64 = group.iter().flat_map(|r| &r.wall_times_ms).sum();
            GroupSummary {
                game: game.into(),
                scale: scale.into(),
                agent: agent.into(),
                episodes: group.len(),
                mean_steps,
                sd_steps: var.sqrt(),
                mean_reward: group.iter().map(|r| r.reward).sum::<f64>() / n,
                unsolved: group.iter().filter(|r| !r.solved).count(),
                mean_decision_ms: if decisions == 0 {
                    0.0
                } else {
                    wall / decisions as f64
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::episode::TraceStep;

    fn record(steps: usize, entropies: &[f64]) -> EpisodeRecord {
        EpisodeRecord {
            game: "g".into(),
            scale: "s".into(),
            agent: "a".into(),
            seed: 0,
            secret: "x".into(),
            solved: true,
            steps,
            initial_entropy: 3.0,
            trace: entropies
                .iter()
                .enumerate()
                .map(|(i, &e)| TraceStep {
                    step: i + 1,
                    action: String::new(),
                    observation: String::new(),
                    entropy: e,
                })
                .collect(),
            wall_times_ms: vec![1.0; steps],
            reward: 1.0 / steps as f64,
            decisions: Vec::new(),
        }
    }

    #[test]
    fn identical_episodes_summary() {
        let recs: Vec<_> = (0..500).map(|_| record(3, &[2.0, 1.0, 0.0])).collect();
        let s = summarize_benchmark(&recs);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].episodes, 500);
        assert_eq!(s[0].mean_steps, 3.0);
        assert_eq!(s[0].sd_steps, 0.0);
        assert!((s[0].mean_reward - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(s[0].unsolved, 0);
    }

    #[test]
    fn single_episode_band() {
        let r = record(3, &[2.0, 1.5, 0.0]);
        let band = trajectory_band(std::slice::from_ref(&r)).unwrap();
        let means: Vec<f64> = band.rows.iter().map(|b| b.mean_bits).collect();
        assert_eq!(means, vec![3.0, 2.0, 1.5, 0.0]);
        assert!(band.rows.iter().all(|b| b.min_bits == b.max_bits));
    }

    #[test]
    fn ragged_band_does_not_pad() {
        let band = trajectory_band(&[record(1, &[0.0]), record(2, &[1.0, 0.0])]).unwrap();
        assert_eq!(band.rows.len(), 3);
        assert_eq!(band.rows[1].mean_bits, 0.5);
        assert_eq!(band.rows[2].episodes, 1);
        assert_eq!(band.rows[2].mean_bits, 0.0);
    }

    #[test]
    fn mixed_batch_rejected() {
        let mut other = record(1, &[0.0]);
        other.agent = "b".into();
        assert!(matches!(
            trajectory_band(&[record(1, &[0.0]), other]),
            Err(Error::InvalidBatch(_))
        ));
        assert!(trajectory_band(&[]).is_err());
    }
}
