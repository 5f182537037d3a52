//! Independently written game oracles and the worked examples checked
//! against them. Shared by the game test suite and the acceptance run.

use std::collections::HashSet;

use ises_core::games::black_box::{Atoms, Board, Port, RayOutcome};
use ises_core::games::bulls_cows::{self, BullsCows};
use ises_core::games::fake_coin::{FakeCoin, Tilt, Weighing, Weight};
use ises_core::games::low_middle_high::Hint;
use ises_core::games::mastermind::{Code, Feedback};
use ises_core::games::treasure_hunt::Side;
use ises_core::games::wordle::{self, Mark};
use ises_core::games::*;
use ises_core::*;

// ---------------------------------------------------------------- mastermind

/// Black pegs by position; total colour matches as the largest matching
/// between secret and guess positions of equal colour, by brute force over
/// permutations.
fn mastermind_by_matching(secret: &[u8], guess: &[u8]) -> (u8, u8) {
    let black = secret.iter().zip(guess).filter(|(a, b)| a == b).count();
    let n = secret.len();
    let mut best = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    fn permute(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(k + 1, perm, f);
            perm.swap(k, i);
        }
    }
    permute(0, &mut perm, &mut |p| {
        let m = (0..n).filter(|&i| secret[i] == guess[p[i]]).count();
        best = best.max(m);
    });
    (black as u8, (best - black) as u8)
}

pub fn mastermind_examples() {
    assert_eq!(mastermind_by_matching(&[0, 1, 2], &[0, 2, 2]), (2, 0));
    assert_eq!(mastermind_by_matching(&[0, 1, 2], &[2, 0, 1]), (0, 3));
    let g = Mastermind::new(3, 3).unwrap();
    let s = Code::new(&[0, 1, 2]);
    assert_eq!(
        g.oracle(&s, &Code::new(&[0, 2, 2])).unwrap(),
        Feedback { black: 2, white: 0 }
    );
    assert_eq!(
        g.oracle(&s, &Code::new(&[2, 0, 1])).unwrap(),
        Feedback { black: 0, white: 3 }
    );
    assert_eq!(g.oracle(&s, &s).unwrap(), Feedback { black: 3, white: 0 });
}

pub fn mastermind_matches_brute_force_on_every_pair() {
    for (pegs, colors) in [(3, 3), (4, 4)] {
        let g = Mastermind::new(pegs, colors).unwrap();
        for s in g.initial_candidates() {
            for a in g.initial_candidates() {
                let fb = g.oracle(s, a).unwrap();
                assert_eq!(
                    (fb.black, fb.white),
                    mastermind_by_matching(s.pegs(), a.pegs())
                );
            }
        }
    }
}

pub fn simple_mastermind_examples() {
    let g = Mastermind::simple(3, 3).unwrap();
    let s = Code::new(&[0, 1, 2]);
    // positional match count
    let positional = |a: &[u8], b: &[u8]| a.iter().zip(b).filter(|(x, y)| x == y).count() as u8;
    let guess = Code::new(&[0, 2, 2]);
    assert_eq!(positional(s.pegs(), guess.pegs()), 2);
    assert_eq!(g.oracle(&s, &guess).unwrap().black, 2);
    assert_eq!(g.oracle(&s, &s).unwrap().black, 3);
    assert_eq!(
        g.oracle(&Code::new(&[0, 0, 0]), &Code::new(&[1, 2, 2]))
            .unwrap()
            .black,
        0
    );
}

// ----------------------------------------------------------------- fake coin

/// Physical balance: genuine coins weigh 10, the fake 9 or 11.
fn balance(secret: FakeCoin, left: &[u8], right: &[u8]) -> Tilt {
    let weight = |c: u8| match (c == secret.coin, secret.weight) {
        (false, _) => 10,
        (true, Weight::Lighter) => 9,
        (true, Weight::Heavier) => 11,
    };
    let l: i32 = left.iter().map(|&c| weight(c)).sum();
    let r: i32 = right.iter().map(|&c| weight(c)).sum();
    match l.cmp(&r) {
        std::cmp::Ordering::Greater => Tilt::LeftHeavy,
        std::cmp::Ordering::Less => Tilt::RightHeavy,
        std::cmp::Ordering::Equal => Tilt::Balanced,
    }
}

fn pans(w: &Weighing) -> (Vec<u8>, Vec<u8>) {
    let list = |m: u32| (0..32u8).filter(|i| m >> i & 1 == 1).collect();
    (list(w.left), list(w.right))
}

pub fn fake_coin_examples() {
    let g = FakeCoinGame::new(4).unwrap();
    let w = Weighing::new(&[0], &[1]);
    let s = FakeCoin {
        coin: 2,
        weight: Weight::Heavier,
    };
    assert_eq!(balance(s, &[0], &[1]), Tilt::Balanced);
    assert_eq!(g.oracle(&s, &w).unwrap(), Tilt::Balanced);
    let s = FakeCoin {
        coin: 0,
        weight: Weight::Lighter,
    };
    assert_eq!(balance(s, &[0], &[1]), Tilt::RightHeavy);
    assert_eq!(g.oracle(&s, &w).unwrap(), Tilt::RightHeavy);

    // 4 of the 8 (coin, direction) pairs balance: posterior entropy log2 4
    let set = EnumeratedInfoSet::initial(&g);
    let survivors = g
        .initial_candidates()
        .iter()
        .filter(|s| balance(**s, &[0], &[1]) == Tilt::Balanced)
        .count();
    assert_eq!(survivors, 4);
    let post = set.update(&g, &w, &Tilt::Balanced).unwrap();
    assert_eq!(post.entropy().unwrap().bits(), 2.0);
}

pub fn fake_coin_matches_physical_balance() {
    for n in [4, 6, 9] {
        let g = FakeCoinGame::new(n).unwrap();
        let set = EnumeratedInfoSet::initial(&g);
        for w in g.legal_actions(&set, 0).iter() {
            let (l, r) = pans(w);
            for s in g.initial_candidates() {
                assert_eq!(g.oracle(s, w).unwrap(), balance(*s, &l, &r));
            }
        }
    }
}

// ------------------------------------------------------------- treasure hunt

pub fn treasure_hunt_examples() {
    let g = TreasureHunt::new(8).unwrap();
    assert_eq!(g.oracle(&5, &3).unwrap(), Side::After);
    assert_eq!(g.oracle(&3, &3).unwrap(), Side::AtOrBefore);
    let set = EnumeratedInfoSet::initial(&g);
    let sizes: Vec<usize> = set
        .observation_classes(&g, &3)
        .unwrap()
        .iter()
        .map(|(_, m)| m.len())
        .collect();
    assert_eq!(sizes, vec![4, 4]);
    assert_eq!(set.expected_posterior_entropy(&g, &3).unwrap().bits(), 2.0);
}

// ------------------------------------------------------------ low middle high

pub fn low_middle_high_examples() {
    let g = LowMiddleHigh::new(15).unwrap();
    assert_eq!(g.oracle(&7, &3).unwrap(), Hint::Low);
    assert_eq!(g.oracle(&7, &7).unwrap(), Hint::Correct);
    let mut counts = [0; 3];
    for s in 1..=15u32 {
        counts[match g.oracle(&s, &8).unwrap() {
            Hint::Low => 0,
            Hint::Correct => 1,
            Hint::High => 2,
        }] += 1;
    }
    assert_eq!(counts, [7, 1, 7]);
}

// ----------------------------------------------------------------- black box

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Heading {
    North,
    East,
    South,
    West,
}

impl Heading {
    fn delta(self) -> (i32, i32) {
        match self {
            Heading::North => (-1, 0),
            Heading::East => (0, 1),
            Heading::South => (1, 0),
            Heading::West => (0, -1),
        }
    }
    fn left(self) -> Heading {
        match self {
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
            Heading::East => Heading::North,
        }
    }
    fn right(self) -> Heading {
        self.left().left().left()
    }
    fn back(self) -> Heading {
        self.left().left()
    }
}

/// Step-by-step tracer over an explicit grid. Ports are named by side and
/// index and converted to the game's numbering only at the end.
fn trace_reference(
    grid: usize,
    atoms: &[(usize, usize)],
    side: char,
    idx: usize,
) -> (String, Vec<(usize, usize)>) {
    let g = grid as i32;
    let mut cells = vec![vec![false; grid]; grid];
    for &(r, c) in atoms {
        cells[r][c] = true;
    }
    let atom = |r: i32, c: i32| r >= 0 && c >= 0 && r < g && c < g && cells[r as usize][c as usize];
    let i = idx as i32;
    let (mut r, mut c, mut h) = match side {
        'T' => (-1, i, Heading::South),
        'R' => (i, g, Heading::West),
        'B' => (g, i, Heading::North),
        _ => (i, -1, Heading::East),
    };
    let ahead = |r: i32, c: i32, h: Heading| {
        let (dr, dc) = h.delta();
        (r + dr, c + dc)
    };
    let diag = |r: i32, c: i32, h: Heading, turn: Heading| {
        let (fr, fc) = ahead(r, c, h);
        let (tr, tc) = turn.delta();
        (fr + tr, fc + tc)
    };
    let mut path = Vec::new();
    let mut first = true;
    loop {
        let (fr, fc) = ahead(r, c, h);
        if atom(fr, fc) {
            return ("ABSORBED".into(), path);
        }
        let (lr, lc) = diag(r, c, h, h.left());
        let (rr, rc) = diag(r, c, h, h.right());
        let (l, rt) = (atom(lr, lc), atom(rr, rc));
        if first && (l || rt) {
            return ("REFLECTED".into(), path);
        }
        first = false;
        if l && rt {
            h = h.back();
        } else if l {
            h = h.right();
        } else if rt {
            h = h.left();
        } else {
            r = fr;
            c = fc;
            let out = if r < 0 {
                Some(('T', c))
            } else if r >= g {
                Some(('B', c))
            } else if c < 0 {
                Some(('L', r))
            } else if c >= g {
                Some(('R', r))
            } else {
                None
            };
            match out {
                Some((s, k)) if s == side && k == i => return ("REFLECTED".into(), path),
                Some((s, k)) => return (format!("EXIT:{s}{k}"), path),
                None => path.push((r as usize, c as usize)),
            }
        }
    }
}

fn port_of(grid: usize, side: char, idx: usize) -> Port {
    let s = "TRBL".find(side).unwrap();
    Port((s * grid + idx) as u8)
}

pub fn black_box_examples() {
    let g = BlackBox::new(4, 2).unwrap();
    // atom-free row: straight through to the opposite side
    let empty_row = Board::new(4, Atoms::from_cells(4, &[(0, 0), (0, 3)]));
    assert_eq!(
        empty_row.trace(port_of(4, 'L', 2)).0,
        RayOutcome::Exit(port_of(4, 'R', 2))
    );
    // atom directly in the entry column
    let hit = Atoms::from_cells(4, &[(3, 2), (0, 0)]);
    assert_eq!(
        g.oracle(&hit, &port_of(4, 'T', 2)).unwrap(),
        RayOutcome::Absorbed
    );

    // single atom at (1,1), ray down column 2
    let board = Board::new(4, Atoms::from_cells(4, &[(1, 1)]));
    let (expected, path) = trace_reference(4, &[(1, 1)], 'T', 2);
    assert_eq!(expected, "EXIT:R0");
    assert_eq!(path, vec![(0, 2), (0, 3)]);
    let (out, got_path) = board.trace(port_of(4, 'T', 2));
    assert_eq!(out, RayOutcome::Exit(port_of(4, 'R', 0)));
    assert_eq!(got_path, path);
}

pub fn black_box_matches_reference_tracer() {
    for (grid, k) in [(4, 2), (5, 2), (4, 3)] {
        let game = BlackBox::new(grid, k).unwrap();
        for atoms in game.initial_candidates() {
            let cells: Vec<(usize, usize)> = (0..grid * grid)
                .filter(|i| atoms.0 >> i & 1 == 1)
                .map(|i| (i / grid, i % grid))
                .collect();
            let board = Board::new(grid, *atoms);
            for (s, side) in "TRBL".chars().enumerate() {
                for idx in 0..grid {
                    let port = Port((s * grid + idx) as u8);
                    let (want, want_path) = trace_reference(grid, &cells, side, idx);
                    let (got, got_path) = board.trace(port);
                    assert_eq!(game.format_obs(&got), want, "{cells:?} {side}{idx}");
                    assert_eq!(got_path, want_path);
                }
            }
        }
    }
}

// -------------------------------------------------------------------- wordle

/// Per-letter budget formulation: a letter can be yellow at most
/// `min(count in secret, count in guess) - greens` times, handed out left
/// to right.
fn wordle_by_budget(secret: &str, guess: &str) -> Vec<Mark> {
    let s: Vec<char> = secret.chars().collect();
    let g: Vec<char> = guess.chars().collect();
    let mut out: Vec<Mark> = (0..g.len())
        .map(|i| {
            if s[i] == g[i] {
                Mark::Green
            } else {
                Mark::Gray
            }
        })
        .collect();
    for letter in 'a'..='z' {
        let in_secret = s.iter().filter(|&&c| c == letter).count();
        let greens = (0..g.len())
            .filter(|&i| g[i] == letter && s[i] == letter)
            .count();
        let mut budget = in_secret - greens;
        for i in 0..g.len() {
            if g[i] == letter && out[i] != Mark::Green && budget > 0 {
                out[i] = Mark::Yellow;
                budget -= 1;
            }
        }
    }
    out
}

pub fn wordle_examples() {
    use Mark::*;
    assert_eq!(wordle_by_budget("aba", "aab"), vec![Green, Yellow, Yellow]);
    assert_eq!(wordle::mark(b"aba", b"aab"), vec![Green, Yellow, Yellow]);
    assert_eq!(wordle::mark(b"zoo", b"zoo"), vec![Green; 3]);
    assert_eq!(wordle::mark(b"zoo", b"cat"), vec![Gray; 3]);
}

pub fn wordle_matches_budget_oracle_on_bundled_dictionary() {
    let g = Wordle::bundled();
    for s in g.initial_candidates() {
        for a in g.initial_candidates() {
            let marks = wordle::mark(g.word(*s).as_bytes(), g.word(*a).as_bytes());
            assert_eq!(marks, wordle_by_budget(g.word(*s), g.word(*a)));
        }
    }
}

// ---------------------------------------------------------------- bulls cows

fn bulls_cows_by_sets(secret: &[u8], guess: &[u8]) -> (u8, u8) {
    let bulls = secret.iter().zip(guess).filter(|(a, b)| a == b).count();
    let s: HashSet<u8> = secret.iter().copied().collect();
    let g: HashSet<u8> = guess.iter().copied().collect();
    let shared = s.intersection(&g).count();
    (bulls as u8, (shared - bulls) as u8)
}

pub fn bulls_cows_examples_and_exhaustive() {
    assert_eq!(bulls_cows_by_sets(&[1, 2, 3], &[3, 2, 1]), (1, 2));
    let g = BullsAndCows::new(3, 6).unwrap();
    assert_eq!(
        g.oracle(&Code::new(&[1, 2, 3]), &Code::new(&[3, 2, 1]))
            .unwrap(),
        BullsCows { bulls: 1, cows: 2 }
    );
    for s in g.initial_candidates() {
        for a in g.initial_candidates() {
            let o = bulls_cows::score(s.pegs(), a.pegs());
            assert_eq!((o.bulls, o.cows), bulls_cows_by_sets(s.pegs(), a.pegs()));
        }
    }
}

/// Every example check, by name. Used by the acceptance run.
#[allow(dead_code)]
pub const CHECKS: &[(&str, fn())] = &[
    ("mastermind_examples", mastermind_examples),
    (
        "mastermind_matches_brute_force_on_every_pair",
        mastermind_matches_brute_force_on_every_pair,
    ),
    ("simple_mastermind_examples", simple_mastermind_examples),
    ("fake_coin_examples", fake_coin_examples),
    (
        "fake_coin_matches_physical_balance",
        fake_coin_matches_physical_balance,
    ),
    ("treasure_hunt_examples", treasure_hunt_examples),
    ("low_middle_high_examples", low_middle_high_examples),
    ("black_box_examples", black_box_examples),
    (
        "black_box_matches_reference_tracer",
        black_box_matches_reference_tracer,
    ),
    ("wordle_examples", wordle_examples),
    (
        "wordle_matches_budget_oracle_on_bundled_dictionary",
        wordle_matches_budget_oracle_on_bundled_dictionary,
    ),
    (
        "bulls_cows_examples_and_exhaustive",
        bulls_cows_examples_and_exhaustive,
    ),
];
