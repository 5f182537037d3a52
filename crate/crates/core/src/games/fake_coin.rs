//! Counterfeit coin: one of `n` coins is lighter or heavier; a balance
//! compares two disjoint pans of equal size.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::{Axis, EnumeratedInfoSet, TabularGame};

use super::ScaleParams;

pub const MAX_COINS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Lighter,
    Heavier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FakeCoin {
    pub coin: u8,
    pub weight: Weight,
}

/// Coins on each pan as bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weighing {
    pub left: u32,
    pub right: u32,
}

impl Weighing {
    pub fn new(left: &[u8], right: &[u8]) -> Self {
        let mask = |coins: &[u8]| coins.iter().fold(0u32, |m, &c| m | 1 << c);
        Weighing {
            left: mask(left),
            right: mask(right),
        }
    }

    pub fn mirrored(self) -> Self {
        Weighing {
            left: self.right,
            right: self.left,
        }
    }
}

impl fmt::Display for Weighing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |m: u32| {
            (0..32)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("+")
        };
        write!(f, "{} v {}", list(self.left), list(self.right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tilt {
    LeftHeavy,
    Balanced,
    RightHeavy,
}

impl Tilt {
    pub fn mirrored(self) -> Self {
        match self {
            Tilt::LeftHeavy => Tilt::RightHeavy,
            Tilt::RightHeavy => Tilt::LeftHeavy,
            Tilt::Balanced => Tilt::Balanced,
        }
    }
}

/// Pure weighing rule.
pub fn weigh(secret: FakeCoin, w: Weighing) -> Tilt {
    let bit = 1u32 << secret.coin;
    let heavy_side = match (w.left & bit != 0, w.right & bit != 0) {
        (true, _) => Tilt::LeftHeavy,
        (_, true) => Tilt::RightHeavy,
        _ => return Tilt::Balanced,
    };
    match secret.weight {
        Weight::Heavier => heavy_side,
        Weight::Lighter => heavy_side.mirrored(),
    }
}

/// Subsets of `pool` (a mask) with exactly `k` members, in lexicographic
/// order of their sorted member lists.
fn combinations(pool: u32, k: usize) -> Vec<u32> {
    let members: Vec<u32> = (0..32).filter(|i| pool >> i & 1 == 1).collect();
    let mut out = Vec::new();
    fn rec(members: &[u32], k: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..members.len() {
            if members.len() - i < k {
                break;
            }
            rec(members, k - 1, i + 1, acc | 1 << members[i], out);
        }
    }
    rec(&members, k, 0, 0, &mut out);
    out
}

#[derive(Debug, Clone)]
pub struct FakeCoinGame {
    coins: usize,
    secrets: Vec<FakeCoin>,
    weighings: Vec<Weighing>,
}

impl FakeCoinGame {
    pub fn new(coins: usize) -> Result<Self> {
        if !(3..=MAX_COINS).contains(&coins) {
            return Err(Error::invalid_scale(
                "fake_coin",
                format!("coins must be in 3..={MAX_COINS}"),
            ));
        }
        let secrets = (0..coins as u8)
            .flat_map(|coin| {
                [Weight::Lighter, Weight::Heavier].map(|weight| FakeCoin { coin, weight })
            })
            .collect();
        let all = (1u32 << coins) - 1;
        let mut weighings = Vec::new();
        for k in 1..=coins / 2 {
            for left in combinations(all, k) {
                for right in combinations(all & !left, k) {
                    // one representative per mirrored pair
                    if left.trailing_zeros() < right.trailing_zeros() {
                        weighings.push(Weighing { left, right });
                    }
                }
            }
        }
        Ok(FakeCoinGame {
            coins,
            secrets,
            weighings,
        })
    }

    pub(crate) fn from_params(p: &mut ScaleParams) -> Result<Self> {
        Self::new(p.take_usize("coins", 4)?)
    }

    pub fn coins(&self) -> usize {
        self.coins
    }

    fn check(&self, w: &Weighing) -> Result<()> {
        let all = (1u32 << self.coins) - 1;
        if (w.left | w.right) & !all != 0 {
            return Err(Error::invalid_action(
                "fake_coin",
                format!("{w}: coin out of range"),
            ));
        }
        if w.left & w.right != 0 {
            return Err(Error::invalid_action(
                "fake_coin",
                format!("{w}: pans overlap"),
            ));
        }
        if w.left.count_ones() != w.right.count_ones() || w.left == 0 {
            return Err(Error::invalid_action(
                "fake_coin",
                format!("{w}: pans must be non-empty and of equal size"),
            ));
        }
        Ok(())
    }
}

impl DeductionGame for FakeCoinGame {
    type Secret = FakeCoin;
    type Action = Weighing;
    type Obs = Tilt;

    fn name(&self) -> &'static str {
        "fake_coin"
    }

    fn scale(&self) -> String {
        format!("coins={}", self.coins)
    }

    fn initial_candidates(&self) -> &[FakeCoin] {
        &self.secrets
    }

    fn legal_actions<'a>(
        &'a self,
        _set: &EnumeratedInfoSet<FakeCoin>,
        _step: usize,
    ) -> Cow<'a, [Weighing]> {
        Cow::Borrowed(&self.weighings)
    }

    fn oracle(&self, secret: &FakeCoin, action: &Weighing) -> Result<Tilt> {
        self.check(action)?;
        if secret.coin as usize >= self.coins {
            return Err(Error::UnknownSecret);
        }
        Ok(weigh(*secret, *action))
    }

    fn termination(&self) -> Termination {
        Termination::Knowledge
    }

    fn format_secret(&self, s: &FakeCoin) -> String {
        let w = match s.weight {
            Weight::Lighter => "lighter",
            Weight::Heavier => "heavier",
        };
        format!("{}:{w}", s.coin)
    }

    fn format_action(&self, a: &Weighing) -> String {
        a.to_string()
    }

    fn format_obs(&self, o: &Tilt) -> String {
        match o {
            Tilt::LeftHeavy => "LEFT_HEAVY",
            Tilt::Balanced => "BALANCED",
            Tilt::RightHeavy => "RIGHT_HEAVY",
        }
        .to_string()
    }
}

impl TabularGame for FakeCoinGame {
    fn table_axes(&self) -> Vec<Axis> {
        vec![
            Axis::new("coin", (0..self.coins).map(|c| c.to_string())),
            Axis::new("weight", ["lighter", "heavier"]),
        ]
    }

    fn cell_secret(&self, cell: usize) -> FakeCoin {
        self.secrets[cell]
    }
}
