//! One-dimensional Fibonacci tiling from the square-lattice projection.
//!
//! A lattice point `n1·e1 + n2·e2` projects to `x∥ = n1·τ + n2` and
//! `x⊥ = −n1 + n2·τ`; it is a tiling vertex iff `x⊥ ∈ (−1, τ]`. The state
//! carried along a tiling is the midpoint-centred, τ-scaled coordinate
//! `y = τ·x⊥ − 1/2`, whose window is `(−τ³/2, τ³/2]`. In `y` a long tile
//! subtracts τ and a short tile adds τ².

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::golden::{consts, GoldenScalar};
use crate::terraces::eta_per_y;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tile {
    /// Long tile, parallel length τ.
    L,
    /// Short tile, parallel length 1.
    S,
}

impl Tile {
    pub fn symbol(self) -> char {
        match self {
            Tile::L => 'L',
            Tile::S => 'S',
        }
    }

    /// Parallel-space length of the tile.
    pub fn length(self) -> GoldenScalar {
        match self {
            Tile::L => GoldenScalar::tau(),
            Tile::S => GoldenScalar::one(),
        }
    }
}

impl TryFrom<char> for Tile {
    type Error = Error;
    fn try_from(c: char) -> Result<Tile> {
        match c {
            'L' | 'l' => Ok(Tile::L),
            'S' | 's' => Ok(Tile::S),
            other => Err(Error::InvalidTile(other)),
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A non-empty word over {L, S}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilePattern(Vec<Tile>);

impl TilePattern {
    pub fn tiles(&self) -> &[Tile] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for TilePattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let tiles = s
            .trim()
            .chars()
            .map(Tile::try_from)
            .collect::<Result<Vec<_>>>()?;
        if tiles.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(TilePattern(tiles))
    }
}

impl fmt::Display for TilePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tiles_to_string(&self.0))
    }
}

pub fn tiles_to_string(tiles: &[Tile]) -> String {
    tiles.iter().map(|t| t.symbol()).collect()
}

/// The experimentally observed terrace string.
pub const TERRACE_STRING: &str = "LLSLLSLSLL";

/// Default search horizon for [`find_string`].
pub const DEFAULT_HORIZON: usize = 10_000;

/// Half-open interval `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window1D {
    pub lo: GoldenScalar,
    pub hi: GoldenScalar,
}

impl Window1D {
    pub fn new(lo: GoldenScalar, hi: GoldenScalar) -> Self {
        Window1D { lo, hi }
    }

    pub fn contains(&self, x: &GoldenScalar) -> bool {
        *x > self.lo && *x <= self.hi
    }

    pub fn length(&self) -> GoldenScalar {
        &self.hi - &self.lo
    }

    pub(crate) fn check(&self, what: &'static str, x: &GoldenScalar) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfWindow {
                what,
                value: format!("{x} (~{:.6})", x.to_f64()),
                window: self.to_string(),
            })
        }
    }
}

impl fmt::Display for Window1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Vertex window `f⊥ = (−1, τ]` for the raw perpendicular coordinate.
pub fn vertex_window() -> Window1D {
    Window1D::new(GoldenScalar::from_int(-1), GoldenScalar::tau())
}

/// Window `(−τ³/2, τ³/2]` for the scaled coordinate `y`.
pub fn y_window() -> Window1D {
    let half = consts::tau_cubed() * consts::half();
    Window1D::new(-&half, half)
}

/// Central LL subwindow in `y`: `(−1/2, 1/2]`.
pub fn ll_y_window() -> Window1D {
    let half = consts::half();
    Window1D::new(-&half, half)
}

pub fn y_of_x_perp(x_perp: &GoldenScalar) -> GoldenScalar {
    GoldenScalar::tau() * x_perp - consts::half()
}

pub fn x_perp_of_y(y: &GoldenScalar) -> GoldenScalar {
    (y + consts::half()) / GoldenScalar::tau()
}

/// Square-lattice point `n1·e1 + n2·e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint2 {
    pub n1: i64,
    pub n2: i64,
}

impl LatticePoint2 {
    pub fn new(n1: i64, n2: i64) -> Self {
        LatticePoint2 { n1, n2 }
    }

    pub fn x_par(&self) -> GoldenScalar {
        GoldenScalar::from_ints(self.n2, self.n1)
    }

    pub fn x_perp(&self) -> GoldenScalar {
        GoldenScalar::from_ints(-self.n1, self.n2)
    }

    /// Staircase index `N = n1 + n2`.
    pub fn index(&self) -> i64 {
        self.n1 + self.n2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexType {
    LS,
    LL,
    SL,
}

/// Classifies a vertex by its perpendicular coordinate:
/// LS on `(−1, 0]`, LL on `(0, τ−1]`, SL on `(τ−1, τ]`.
// `x ≤ τ − 1` is not `x < τ` off the integers.
#[allow(clippy::int_plus_one)]
pub fn vertex_type(x_perp: &GoldenScalar) -> Result<VertexType> {
    vertex_window().check("x_perp", x_perp)?;
    if x_perp.sign() <= 0 {
        Ok(VertexType::LS)
    } else if *x_perp <= GoldenScalar::tau() - 1 {
        Ok(VertexType::LL)
    } else {
        Ok(VertexType::SL)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibonacciState {
    pub y: GoldenScalar,
    pub n: u64,
}

impl FibonacciState {
    pub fn new(y: GoldenScalar) -> Result<Self> {
        y_window().check("y", &y)?;
        Ok(FibonacciState { y, n: 0 })
    }

    /// Tile emitted when leaving this vertex. Long iff `y > −1/2`.
    pub fn next_tile(&self) -> Tile {
        if self.y > -consts::half() {
            Tile::L
        } else {
            Tile::S
        }
    }

    /// Advances one vertex: `y − τ` (L) if that stays in the window, else
    /// `y + τ²` (S).
    pub fn step(&self) -> (FibonacciState, Tile) {
        let window = y_window();
        let long = &self.y - GoldenScalar::tau();
        let (y, tile) = if window.contains(&long) {
            (long, Tile::L)
        } else {
            (&self.y + GoldenScalar::from_ints(1, 1), Tile::S)
        };
        assert!(window.contains(&y), "Fibonacci step left the window");
        (FibonacciState { y, n: self.n + 1 }, tile)
    }
}

/// States `0..=count` and the `count` tiles between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    pub states: Vec<FibonacciState>,
    pub tiles: Vec<Tile>,
}

impl Sequence {
    pub fn tile_string(&self) -> String {
        tiles_to_string(&self.tiles)
    }

    pub fn y_values(&self) -> impl Iterator<Item = &GoldenScalar> {
        self.states.iter().map(|s| &s.y)
    }
}

pub fn sequence(y0: GoldenScalar, count: usize) -> Result<Sequence> {
    let mut state = FibonacciState::new(y0)?;
    let mut states = Vec::with_capacity(count + 1);
    let mut tiles = Vec::with_capacity(count);
    for _ in 0..count {
        let (next, tile) = state.step();
        states.push(state);
        tiles.push(tile);
        state = next;
    }
    states.push(state);
    Ok(Sequence { states, tiles })
}

/// All start indices `N` at which `pattern` is read from the first `horizon`
/// tiles of the line starting at `y0`.
pub fn find_string(y0: GoldenScalar, pattern: &TilePattern, horizon: usize) -> Result<Vec<usize>> {
    let seq = sequence(y0, horizon)?;
    Ok(matches_in(&seq, pattern).collect())
}

/// Like [`find_string`], but drops occurrences with a vertex on the closed
/// end of the window. Those sit on a singular line: the slightest upward
/// shift of `y0` destroys them.
pub fn find_interior_string(
    y0: GoldenScalar,
    pattern: &TilePattern,
    horizon: usize,
) -> Result<Vec<usize>> {
    let seq = sequence(y0, horizon)?;
    let top = y_window().hi;
    Ok(matches_in(&seq, pattern)
        .filter(|&n| seq.states[n..=n + pattern.len()].iter().all(|s| s.y != top))
        .collect())
}

fn matches_in<'a>(seq: &'a Sequence, pattern: &'a TilePattern) -> impl Iterator<Item = usize> + 'a {
    let p = pattern.tiles();
    seq.tiles
        .windows(p.len())
        .enumerate()
        .filter(move |(_, w)| *w == p)
        .map(|(n, _)| n)
}

/// How far an occurrence of a string may be shifted (in η) without the
/// string changing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftBounds {
    /// First vertex of the occurrence.
    pub start: usize,
    /// Vertex holding the largest `y` of the occurrence.
    pub top_n: usize,
    /// Vertex holding the smallest `y` of the occurrence.
    pub bottom_n: usize,
    /// Largest admissible upward shift (inclusive), `≥ 0`.
    pub up: GoldenScalar,
    /// Downward shift limit (exclusive), `≤ 0`.
    pub down: GoldenScalar,
}

impl ShiftBounds {
    /// Admissible shifts form the interval `(down, up]`.
    pub fn admits(&self, delta_eta: &GoldenScalar) -> bool {
        *delta_eta > self.down && *delta_eta <= self.up
    }
}

/// Distances (in y) from the extremes of `ys` to the window boundaries.
/// Returns `(index of max, index of min, room above, room below)`.
pub fn y_extremes_to_boundaries(ys: &[GoldenScalar]) -> (usize, usize, GoldenScalar, GoldenScalar) {
    assert!(!ys.is_empty());
    let window = y_window();
    let (mut top, mut bottom) = (0, 0);
    for (i, y) in ys.iter().enumerate() {
        if *y > ys[top] {
            top = i;
        }
        if *y < ys[bottom] {
            bottom = i;
        }
    }
    let room_up = &window.hi - &ys[top];
    let room_down = &ys[bottom] - &window.lo;
    (top, bottom, room_up, room_down)
}

/// Shift bounds for the first occurrence of `pattern` within `horizon`.
pub fn string_shift_bounds(
    y0: GoldenScalar,
    pattern: &TilePattern,
    horizon: usize,
) -> Result<ShiftBounds> {
    let start = *find_string(y0.clone(), pattern, horizon)?
        .first()
        .ok_or_else(|| Error::PatternNotFound(pattern.to_string()))?;
    occurrence_shift_bounds(y0, pattern, start)
}

/// Shift bounds for the occurrence of `pattern` starting at vertex `start`.
///
/// An occurrence spans vertices `start..=start + len`; it survives a uniform
/// shift of `y` exactly as long as all those vertices stay inside the window.
pub fn occurrence_shift_bounds(
    y0: GoldenScalar,
    pattern: &TilePattern,
    start: usize,
) -> Result<ShiftBounds> {
    let seq = sequence(y0, start + pattern.len())?;
    if seq.tiles[start..] != *pattern.tiles() {
        return Err(Error::PatternNotFound(format!("{pattern} at N={start}")));
    }
    let ys: Vec<GoldenScalar> = seq.states[start..].iter().map(|s| s.y.clone()).collect();
    let (top, bottom, room_up, room_down) = y_extremes_to_boundaries(&ys);
    let scale = eta_per_y();
    Ok(ShiftBounds {
        start,
        top_n: start + top,
        bottom_n: start + bottom,
        up: &scale * &room_up,
        down: -(&scale * &room_down),
    })
}
