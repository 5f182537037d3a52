//! Black Box: atoms hidden on a square grid, probed by rays fired from the
//! edge ports.
//!
//! Ray rules: an atom directly ahead absorbs the ray; an atom on one forward
//! diagonal turns it 90 degrees away; atoms on both forward diagonals send it
//! back; an atom beside the entry cell reflects the ray before it enters. A
//! ray leaving through its own entry port counts as reflected.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{DeductionGame, Termination};
use crate::infoset::EnumeratedInfoSet;

use super::ScaleParams;

pub const MAX_GRID: usize = 8;
const MAX_UNIVERSE: usize = 200_000;

/// Edge position. Ports `0..G` run along the top (rays travel down), `G..2G`
/// down the right side (travel left), `2G..3G` along the bottom (travel up)
/// and `3G..4G` down the left side (travel right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port(pub u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RayOutcome {
    Absorbed,
    Reflected,
    Exit(Port),
}

/// Atom placement as a bit mask over cells, `row * G + col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atoms(pub u64);

impl Atoms {
    pub fn from_cells(grid: usize, cells: &[(usize, usize)]) -> Self {
        Atoms(cells.iter().fold(0, |m, &(r, c)| m | 1 << (r * grid + c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Board {
    grid: usize,
    atoms: u64,
}

impl Board {
    pub fn new(grid: usize, atoms: Atoms) -> Self {
        Board {
            grid,
            atoms: atoms.0,
        }
    }

    fn atom(&self, r: i32, c: i32) -> bool {
        let g = self.grid as i32;
        (0..g).contains(&r) && (0..g).contains(&c) && self.atoms >> (r * g + c) & 1 == 1
    }

    fn inside(&self, r: i32, c: i32) -> bool {
        let g = self.grid as i32;
        (0..g).contains(&r) && (0..g).contains(&c)
    }

    /// Starting position (just outside the grid) and direction of a port.
    fn entry(&self, port: Port) -> (i32, i32, i32, i32) {
        let g = self.grid as i32;
        let i = port.0 as i32 % g;
        match port.0 as i32 / g {
            0 => (-1, i, 1, 0),
            1 => (i, g, 0, -1),
            2 => (g, i, -1, 0),
            _ => (i, -1, 0, 1),
        }
    }

    fn exit_port(&self, r: i32, c: i32) -> Port {
        let g = self.grid as i32;
        let p = if r < 0 {
            c
        } else if c >= g {
            g + r
        } else if r >= g {
            2 * g + c
        } else {
            3 * g + r
        };
        Port(p as u8)
    }

    /// Fires a ray and returns its outcome plus the cells it visited.
    pub fn trace(&self, port: Port) -> (RayOutcome, Vec<(usize, usize)>) {
        let (mut r, mut c, mut dr, mut dc) = self.entry(port);
        let mut path = Vec::new();
        // perpendiculars of the travel direction
        let sides = |dr: i32, dc: i32| [(dc, -dr), (-dc, dr)];

        let (fr, fc) = (r + dr, c + dc);
        if self.atom(fr, fc) {
            return (RayOutcome::Absorbed, path);
        }
        if sides(dr, dc)
            .iter()
            .any(|&(sr, sc)| self.atom(fr + sr, fc + sc))
        {
            return (RayOutcome::Reflected, path);
        }

        loop {
            let (fr, fc) = (r + dr, c + dc);
            if self.atom(fr, fc) {
                return (RayOutcome::Absorbed, path);
            }
            let [(ar, ac), (br, bc)] = sides(dr, dc);
            match (self.atom(fr + ar, fc + ac), self.atom(fr + br, fc + bc)) {
                (true, true) => (dr, dc) = (-dr, -dc),
                (true, false) => (dr, dc) = (-ar, -ac),
                (false, true) => (dr, dc) = (-br, -bc),
                (false, false) => {
                    (r, c) = (fr, fc);
                    if !self.inside(r, c) {
                        let out = self.exit_port(r, c);
                        let outcome = if out == port {
                            RayOutcome::Reflected
                        } else {
                            RayOutcome::Exit(out)
                        };
                        return (outcome, path);
                    }
                    path.push((r as usize, c as usize));
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BlackBox {
    grid: usize,
    atoms: usize,
    placements: Vec<Atoms>,
    ports: Vec<Port>,
}

impl BlackBox {
    pub fn new(grid: usize, atoms: usize) -> Result<Self> {
        if !(2..=MAX_GRID).contains(&grid) {
            return Err(Error::invalid_scale(
                "black_box",
                format!("grid must be in 2..={MAX_GRID}"),
            ));
        }
        let cells = grid * grid;
        if atoms == 0 || atoms >= cells {
            return Err(Error::invalid_scale(
                "black_box",
                "atoms must be in 1..grid*grid",
            ));
        }
        let mut count: u128 = 1;
        for i in 0..atoms as u128 {
            count = count * (cells as u128 - i) / (i + 1);
        }
        if count > MAX_UNIVERSE as u128 {
            return Err(Error::invalid_scale(
                "black_box",
                format!("{count} placements exceeds {MAX_UNIVERSE}"),
            ));
        }
        let mut placements = Vec::with_capacity(count as usize);
        fn rec(cells: usize, k: usize, start: usize, acc: u64, out: &mut Vec<Atoms>) {
            if k == 0 {
                out.push(Atoms(acc));
                return;
            }
            for i in start..=cells - k {
                rec(cells, k - 1, i + 1, acc | 1 << i, out);
            }
        }
        rec(cells, atoms, 0, 0, &mut placements);
        Ok(BlackBox {
            grid,
            atoms,
            placements,
            ports: (0..4 * grid as u8).map(Port).collect(),
        })
    }

    pub(crate) fn from_params(p: &mut ScaleParams) -> Result<Self> {
        let grid = p.take_usize("grid", 4)?;
        let atoms = p.take_usize("atoms", 2)?;
        Self::new(grid, atoms)
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn format_port(&self, port: Port) -> String {
        let side = ["T", "R", "B", "L"][(port.0 as usize / self.grid).min(3)];
        format!("{side}{}", port.0 as usize % self.grid)
    }
}

struct PortDisplay<'a>(&'a BlackBox, Port);

impl fmt::Display for PortDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_port(self.1))
    }
}

impl DeductionGame for BlackBox {
    type Secret = Atoms;
    type Action = Port;
    type Obs = RayOutcome;

    fn name(&self) -> &'static str {
        "black_box"
    }

    fn scale(&self) -> String {
        format!("grid={},atoms={}", self.grid, self.atoms)
    }

    fn initial_candidates(&self) -> &[Atoms] {
        &self.placements
    }

    fn legal_actions<'a>(
        &'a self,
        _set: &EnumeratedInfoSet<Atoms>,
        _step: usize,
    ) -> Cow<'a, [Port]> {
        Cow::Borrowed(&self.ports)
    }

    fn oracle(&self, secret: &Atoms, port: &Port) -> Result<RayOutcome> {
        if port.0 as usize >= 4 * self.grid {
            return Err(Error::invalid_action(
                "black_box",
                format!("port {} outside 0..{}", port.0, 4 * self.grid),
            ));
        }
        Ok(Board::new(self.grid, *secret).trace(*port).0)
    }

    fn termination(&self) -> Termination {
        Termination::Knowledge
    }

    fn format_secret(&self, s: &Atoms) -> String {
        (0..self.grid * self.grid)
            .filter(|i| s.0 >> i & 1 == 1)
            .map(|i| format!("{}{}", i / self.grid, i % self.grid))
            .collect::<Vec<_>>()
            .join("+")
    }

    fn format_action(&self, a: &Port) -> String {
        PortDisplay(self, *a).to_string()
    }

    fn format_obs(&self, o: &RayOutcome) -> String {
        match o {
            RayOutcome::Absorbed => "ABSORBED".into(),
            RayOutcome::Reflected => "REFLECTED".into(),
            RayOutcome::Exit(p) => format!("EXIT:{}", self.format_port(*p)),
        }
    }
}
