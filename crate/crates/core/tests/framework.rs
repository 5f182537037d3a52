use ises_core::agents::{IsesFull, RandomAgent};
use ises_core::entropy;
use ises_core::games::fake_coin::{FakeCoin, Tilt, Weighing, Weight};
use ises_core::games::mastermind::{Code, Feedback};
use ises_core::games::treasure_hunt::Side;
use ises_core::games::*;
use ises_core::infoset::TabularGame;
use ises_core::*;
use proptest::prelude::*;

/// Literal per-state averaging: copy the set, update it with each
/// candidate's observation and average the resulting entropies.
fn per_state_average<G: DeductionGame>(
    game: &G,
    set: &EnumeratedInfoSet<G::Secret>,
    action: &G::Action,
) -> f64 {
    let mut total = 0.0;
    for s in set.candidates() {
        let obs = game.oracle(s, action).unwrap();
        let copy = set.clone();
        let post = copy.update(game, action, &obs).unwrap();
        total += post.entropy().unwrap().bits();
    }
    total / set.len() as f64
}

#[test]
fn enumerated_entropy_examples() {
    let th = TreasureHunt::new(8).unwrap();
    assert_eq!(
        EnumeratedInfoSet::initial(&th).entropy().unwrap().bits(),
        3.0
    );
    let mm = Mastermind::new(3, 3).unwrap();
    let h = EnumeratedInfoSet::initial(&mm).entropy().unwrap().bits();
    assert!((h - 4.754_887_5).abs() < 1e-7);
    let empty: EnumeratedInfoSet<u32> = EnumeratedInfoSet::new(vec![]);
    assert!(matches!(
        empty.entropy(),
        Err(Error::InconsistentInfoSet(_))
    ));
}

#[test]
fn update_treasure_hunt_after_probe_three() {
    let g = TreasureHunt::new(8).unwrap();
    let set = EnumeratedInfoSet::initial(&g);
    let post = set.update(&g, &3, &Side::After).unwrap();
    // oracle over all 8 secrets: exactly 4..=7 answer AFTER to probe 3
    let expected: Vec<u32> = (0..8)
        .filter(|s| g.oracle(s, &3).unwrap() == Side::After)
        .collect();
    assert_eq!(expected, vec![4, 5, 6, 7]);
    assert_eq!(post.candidates(), expected.as_slice());
}

#[test]
fn update_singleton_is_idempotent() {
    let g = TreasureHunt::new(8).unwrap();
    let set = EnumeratedInfoSet::new(vec![5u32]);
    for probe in 0..8 {
        let obs = g.oracle(&5, &probe).unwrap();
        assert_eq!(set.update(&g, &probe, &obs).unwrap(), set);
    }
}

#[test]
fn update_mastermind_all_black() {
    let g = Mastermind::new(3, 3).unwrap();
    let set = EnumeratedInfoSet::initial(&g);
    let guess = Code::new(&[0, 0, 0]);
    let post = set
        .update(&g, &guess, &Feedback { black: 3, white: 0 })
        .unwrap();
    assert_eq!(post.candidates(), &[guess]);
}

#[test]
fn update_inconsistent_is_an_error() {
    let g = TreasureHunt::new(8).unwrap();
    let set = EnumeratedInfoSet::new(vec![0u32, 1]);
    assert!(matches!(
        set.update(&g, &3, &Side::After),
        Err(Error::InconsistentInfoSet(_))
    ));
}

#[test]
fn tabular_fake_coin_balanced() {
    let g = FakeCoinGame::new(4).unwrap();
    let table = TabularInfoSet::for_game(&g).unwrap();
    assert!((table.entropy().unwrap().bits() - 3.0).abs() < 1e-12);
    let w = Weighing::new(&[0], &[1]);
    let post = table.update(&g, &w, &Tilt::Balanced).unwrap();
    // simulate all eight (coin, direction) secrets through the scale
    let survivors: Vec<FakeCoin> = g
        .initial_candidates()
        .iter()
        .copied()
        .filter(|s| g.oracle(s, &w).unwrap() == Tilt::Balanced)
        .collect();
    assert_eq!(survivors.len(), 4);
    assert!(survivors.iter().all(|s| s.coin == 2 || s.coin == 3));
    assert_eq!(post.support(&g), survivors);
    for (cell, &m) in post.mass().iter().enumerate() {
        let expect = if survivors.contains(&g.cell_secret(cell)) {
            0.25
        } else {
            0.0
        };
        assert!((m - expect).abs() < 1e-12);
    }
    assert!((post.entropy().unwrap().bits() - 2.0).abs() < 1e-12);
}

#[test]
fn tabular_update_edge_cases() {
    let g = FakeCoinGame::new(4).unwrap();
    let point = TabularInfoSet::from_enumerated(
        &g,
        &EnumeratedInfoSet::new(vec![FakeCoin {
            coin: 2,
            weight: Weight::Lighter,
        }]),
    )
    .unwrap();
    let w = Weighing::new(&[0], &[2]);
    let post = point.update(&g, &w, &Tilt::LeftHeavy).unwrap();
    assert_eq!(post, point);
    assert_eq!(post.entropy().unwrap().bits(), 0.0);
    assert!(matches!(
        point.update(&g, &w, &Tilt::Balanced),
        Err(Error::InconsistentInfoSet(_))
    ));
    // an observation every cell agrees with leaves the table unchanged
    let balanced_only = TabularInfoSet::from_enumerated(
        &g,
        &EnumeratedInfoSet::new(vec![
            FakeCoin {
                coin: 3,
                weight: Weight::Lighter,
            },
            FakeCoin {
                coin: 3,
                weight: Weight::Heavier,
            },
        ]),
    )
    .unwrap();
    assert_eq!(
        balanced_only
            .update(&g, &Weighing::new(&[0], &[1]), &Tilt::Balanced)
            .unwrap(),
        balanced_only
    );
}

#[test]
fn expected_posterior_examples() {
    let g = TreasureHunt::new(8).unwrap();
    let set = EnumeratedInfoSet::initial(&g);
    let at3 = set.expected_posterior_entropy(&g, &3).unwrap().bits();
    let at0 = set.expected_posterior_entropy(&g, &0).unwrap().bits();
    assert!((at3 - 2.0).abs() < 1e-12);
    assert!((at0 - 7.0 / 8.0 * 7f64.log2()).abs() < 1e-12);
    assert!((at0 - 2.456).abs() < 1e-3);
    assert!((per_state_average(&g, &set, &3) - at3).abs() < 1e-12);
    assert!((per_state_average(&g, &set, &0) - at0).abs() < 1e-12);
    let single = EnumeratedInfoSet::new(vec![6u32]);
    assert_eq!(
        single.expected_posterior_entropy(&g, &2).unwrap().bits(),
        0.0
    );
}

#[test]
fn expected_posterior_matches_literal_average_on_every_game() {
    for name in GameName::ALL {
        let game = build_game(name, name.desk_scales()[0], None).unwrap();
        with_game!(&game, g => {
            let set = EnumeratedInfoSet::initial(g);
            let actions = g.legal_actions(&set, 0);
            for a in actions.iter().take(40) {
                let fast = set.expected_posterior_entropy(g, a).unwrap().bits();
                let slow = per_state_average(g, &set, a);
                assert!((fast - slow).abs() < 1e-9, "{name}: {fast} vs {slow}");
            }
        });
    }
}

#[test]
fn is_terminal_examples() {
    let th = TreasureHunt::new(8).unwrap();
    let one = EnumeratedInfoSet::new(vec![3u32]);
    let two = EnumeratedInfoSet::new(vec![3u32, 4]);
    assert!(is_terminal(&th, &one, None).unwrap());
    assert!(!is_terminal(&th, &two, None).unwrap());

    let mm = Mastermind::new(3, 3).unwrap();
    let set = EnumeratedInfoSet::initial(&mm);
    let code = Code::new(&[1, 2, 0]);
    let win = Feedback { black: 3, white: 0 };
    assert!(is_terminal(&mm, &set, Some((&code, &win))).unwrap());
    assert!(!is_terminal(&mm, &set, Some((&code, &Feedback { black: 1, white: 2 }))).unwrap());
    assert!(!is_terminal(&mm, &set, None).unwrap());
}

#[test]
fn treasure_hunt_full_ises_takes_three_steps() {
    let g = TreasureHunt::new(8).unwrap();
    for secret in 0..8 {
        let rec =
            play_episode(&g, &mut IsesFull, &secret, 11, EpisodeOptions::for_game(&g)).unwrap();
        assert!(rec.solved);
        assert_eq!(rec.steps, 3);
        assert_eq!(rec.trace.len(), 3);
        assert_eq!(rec.final_entropy(), 0.0);
        assert!((rec.reward - 1.0 / 3.0).abs() < 1e-12);
    }
}

#[test]
fn singleton_universe_is_already_terminal() {
    let g = TreasureHunt::new(1).unwrap();
    let rec = play_episode(&g, &mut IsesFull, &0, 0, EpisodeOptions::for_game(&g)).unwrap();
    assert!(rec.solved);
    assert_eq!(rec.steps, 0);
    assert!(rec.trace.is_empty());
}

#[test]
fn random_episode_is_deterministic() {
    let g = Mastermind::new(3, 3).unwrap();
    let secret = g.initial_candidates()[17];
    let opts = EpisodeOptions::for_game(&g);
    let strip = |mut r: EpisodeRecord| {
        r.wall_times_ms.clear();
        r
    };
    let a = strip(play_episode(&g, &mut RandomAgent, &secret, 5, opts).unwrap());
    let b = strip(play_episode(&g, &mut RandomAgent, &secret, 5, opts).unwrap());
    assert_eq!(a, b);
    let c = strip(play_episode(&g, &mut RandomAgent, &secret, 6, opts).unwrap());
    assert_ne!(a.trace, c.trace);
}

#[test]
fn step_cap_marks_unsolved() {
    let g = Mastermind::new(3, 3).unwrap();
    let secret = g.initial_candidates()[26];
    let opts = EpisodeOptions {
        step_cap: 1,
        log_decisions: false,
    };
    let rec = play_episode(&g, &mut RandomAgent, &secret, 1, opts).unwrap();
    if !rec.solved {
        assert_eq!(rec.steps, 1);
        assert_eq!(rec.reward, 0.0);
    }
    assert_eq!(g.step_cap(10.0), 48);
}

#[test]
fn unknown_secret_rejected() {
    let g = TreasureHunt::new(8).unwrap();
    assert!(matches!(
        play_episode(&g, &mut IsesFull, &9, 0, EpisodeOptions::for_game(&g)),
        Err(Error::UnknownSecret)
    ));
}

#[test]
fn decision_log_records_scores() {
    let g = TreasureHunt::new(8).unwrap();
    let opts = EpisodeOptions {
        step_cap: 30,
        log_decisions: true,
    };
    let rec = play_episode(&g, &mut IsesFull, &6, 0, opts).unwrap();
    assert_eq!(rec.decisions.len(), 3);
    assert_eq!(rec.decisions[0].scores.len(), 8);
    assert_eq!(rec.decisions[0].scores[3], ("3".to_string(), 2.0));
}

#[test]
fn tabular_and_enumerated_agree_along_episodes() {
    let g = FakeCoinGame::new(6).unwrap();
    for (i, secret) in g.initial_candidates().iter().enumerate() {
        let rec = play_episode(
            &g,
            &mut RandomAgent,
            secret,
            i as u64,
            EpisodeOptions::for_game(&g),
        )
        .unwrap();
        let mut set = EnumeratedInfoSet::initial(&g);
        let mut table = TabularInfoSet::for_game(&g).unwrap();
        let actions = g.legal_actions(&set, 0).into_owned();
        for step in &rec.trace {
            let action = actions
                .iter()
                .find(|a| g.format_action(a) == step.action)
                .unwrap();
            let obs = g.oracle(secret, action).unwrap();
            set = set.update(&g, action, &obs).unwrap();
            table = table.update(&g, action, &obs).unwrap();
            assert_eq!(table.support(&g), set.candidates());
            assert!((table.entropy().unwrap().bits() - step.entropy).abs() < 1e-9);
        }
    }
}

/// Every reachable information set within `depth` queries from the start.
fn reachable<G: DeductionGame>(game: &G, depth: usize) -> Vec<EnumeratedInfoSet<G::Secret>> {
    let mut frontier = vec![EnumeratedInfoSet::initial(game)];
    let mut all = frontier.clone();
    for step in 0..depth {
        let mut next = Vec::new();
        for set in &frontier {
            for a in game.legal_actions(set, step).iter() {
                for (_, members) in set.observation_classes(game, a).unwrap() {
                    let s = EnumeratedInfoSet::new(members);
                    if !next.contains(&s) && !all.contains(&s) {
                        next.push(s);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

#[test]
fn jensen_and_partition_on_small_games() {
    let check = |game: &AnyGame| {
        with_game!(game, g => {
            for set in reachable(g, 1) {
                let prior = set.entropy().unwrap();
                for a in g.legal_actions(&set, 1).iter() {
                    let classes = set.observation_classes(g, a).unwrap();
                    let mut union: Vec<_> = classes.iter().flat_map(|(_, m)| m.clone()).collect();
                    assert_eq!(union.len(), set.len());
                    union.sort_by_key(|s| set.candidates().iter().position(|c| c == s));
                    assert_eq!(union.as_slice(), set.candidates());
                    let post = set.expected_posterior_entropy(g, a).unwrap();
                    assert!(post.at_most(prior));
                    if classes.len() == 1 {
                        assert!(post.approx_eq(prior));
                    } else {
                        assert!(post.bits() < prior.bits() - 1e-9);
                    }
                }
            }
        })
    };
    for (name, scale) in [
        (GameName::TreasureHunt, "cells=8"),
        (GameName::FakeCoin, "coins=4"),
        (GameName::LowMiddleHigh, "max=15"),
    ] {
        check(&build_game(name, scale, None).unwrap());
    }
}

proptest! {
    #[test]
    fn uniform_table_matches_enumerated(n in 1usize..2000) {
        let e = entropy::uniform(n).unwrap().bits();
        prop_assert_eq!(e, (n as f64).log2());
        let t = entropy::shannon(&vec![1.0 / n as f64; n]).unwrap().bits();
        prop_assert!((e - t).abs() < 1e-9);
    }

    #[test]
    fn truthful_episodes_never_gain_entropy(secret in 0u32..32, seed in any::<u64>()) {
        let g = TreasureHunt::new(32).unwrap();
        let rec = play_episode(&g, &mut RandomAgent, &secret, seed, EpisodeOptions::for_game(&g)).unwrap();
        let mut last = rec.initial_entropy;
        for t in &rec.trace {
            prop_assert!(t.entropy <= last + 1e-12);
            last = t.entropy;
        }
    }
}
