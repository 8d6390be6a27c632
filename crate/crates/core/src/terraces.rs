//! Fibonacci sequences of planes perpendicular to a 5fold axis.
//!
//! A Fibonacci line along a 2fold axis codes one plane per vertex `N`; its
//! window coordinate `y` maps linearly to the plane height `η` (in units of
//! `τ·b5`) inside the triacontahedron. Bergman-centre and pentagon planes are
//! the same sequence shifted by `±1/(τ+2)` modulo the η-window.

use std::fmt::Write as _;

use crate::density::{section_area, AreaValue};
use crate::error::Result;
use crate::fibonacci::{self, ShiftBounds, Tile, TilePattern, Window1D};
use crate::golden::{consts, GoldenScalar};
use crate::icosa::fmt_fixed;

/// First vertex of the observed terrace string (terrace 1).
pub const TERRACE_FIRST_N: usize = 9;
/// Number of observed terraces.
pub const TERRACE_COUNT: usize = 11;

/// `η = (2τ⁻¹/(τ+2))·y`.
pub fn eta_per_y() -> GoldenScalar {
    GoldenScalar::tau_pow(-1) * 2 * consts::inv_tau_plus_two()
}

/// `(−τ²/(τ+2), τ²/(τ+2)]`, the image of the y-window.
pub fn eta_window() -> Window1D {
    let hi = GoldenScalar::tau_pow(2) * consts::inv_tau_plus_two();
    Window1D::new(-&hi, hi)
}

pub fn eta_of_y(y: &GoldenScalar) -> Result<GoldenScalar> {
    fibonacci::y_window().check("y", y)?;
    Ok(eta_per_y() * y)
}

pub fn y_of_eta(eta: &GoldenScalar) -> Result<GoldenScalar> {
    eta_window().check("eta", eta)?;
    Ok(eta / eta_per_y())
}

/// `η0 = −τ⁻¹/(τ+2)`, i.e. `y0 = −1/2`.
pub fn canonical_eta0() -> GoldenScalar {
    -(GoldenScalar::tau_pow(-1) * consts::inv_tau_plus_two())
}

/// Offset between vertex planes and Bergman-centre planes, `1/(τ+2)`.
pub fn bergman_shift() -> GoldenScalar {
    consts::inv_tau_plus_two()
}

/// Offset from top-cut pentagon planes to vertex planes, `(2τ+1)/(τ+2)`.
pub fn cut_shift() -> GoldenScalar {
    consts::tau_cubed() * consts::inv_tau_plus_two()
}

/// Shifts `eta` by `delta` and reduces into the η-window. The flag reports
/// whether any reduction was needed.
pub fn shift_eta(eta: &GoldenScalar, delta: &GoldenScalar) -> (GoldenScalar, bool) {
    let w = eta_window();
    let width = w.length();
    let mut x = eta + delta;
    let mut wrapped = false;
    let turns = ((x.to_f64() - w.lo.to_f64()) / width.to_f64()).floor();
    if turns.is_finite() && turns.abs() >= 2.0 {
        x -= &(&width * GoldenScalar::from_int(turns as i64));
        wrapped = true;
    }
    while x > w.hi {
        x -= &width;
        wrapped = true;
    }
    while x <= w.lo {
        x += &width;
        wrapped = true;
    }
    (x, wrapped)
}

/// `eta + delta` reduced modulo `2τ²/(τ+2)` into the η-window.
pub fn wrap_eta(eta: &GoldenScalar, delta: &GoldenScalar) -> GoldenScalar {
    shift_eta(eta, delta).0
}

/// Terrace label (1..=11) of vertex `n` in the canonical string placement.
pub fn terrace_number(n: usize) -> Option<usize> {
    (TERRACE_FIRST_N..TERRACE_FIRST_N + TERRACE_COUNT)
        .contains(&n)
        .then(|| n + 1 - TERRACE_FIRST_N)
}

/// One plane of the sequence with its two shifted companions.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneRecord {
    pub n: usize,
    pub y: GoldenScalar,
    /// `[η1, η2, η3]`: the plane, shifted down and up by `1/(τ+2)`.
    pub eta: [GoldenScalar; 3],
    pub area: [AreaValue; 3],
    /// Tile to the next plane.
    pub tile: Tile,
    /// Whether η2 / η3 needed reduction into the window.
    pub wrapped: [bool; 2],
}

impl PlaneRecord {
    pub fn area_f64(&self) -> [f64; 3] {
        [
            self.area[0].to_f64(),
            self.area[1].to_f64(),
            self.area[2].to_f64(),
        ]
    }

    pub fn eta_f64(&self) -> [f64; 3] {
        [
            self.eta[0].to_f64(),
            self.eta[1].to_f64(),
            self.eta[2].to_f64(),
        ]
    }
}

/// Records for vertices `0..=count` of the line through `eta0`.
pub fn plane_sequence(eta0: &GoldenScalar, count: usize) -> Result<Vec<PlaneRecord>> {
    let seq = fibonacci::sequence(y_of_eta(eta0)?, count)?;
    let shift = bergman_shift();
    seq.states
        .iter()
        .map(|state| {
            let eta1 = eta_of_y(&state.y)?;
            let (eta2, w2) = shift_eta(&eta1, &-&shift);
            let (eta3, w3) = shift_eta(&eta1, &shift);
            let area = [
                section_area(&eta1)?,
                section_area(&eta2)?,
                section_area(&eta3)?,
            ];
            Ok(PlaneRecord {
                n: state.n as usize,
                y: state.y.clone(),
                eta: [eta1, eta2, eta3],
                area,
                tile: state.next_tile(),
                wrapped: [w2, w3],
            })
        })
        .collect()
}

/// The three readings of which atoms dominate the η1 planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Vertex planes; Bergman top faces touch them from below.
    I,
    /// Bergman top-face planes; vertex points sit at η3.
    II,
    /// Bergman top-cut planes; vertex points only where η3 wraps.
    III,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::I, Model::II, Model::III];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Occupancy {
    pub vertex_points: bool,
    pub bergman_top_face: bool,
    pub bergman_top_cut: bool,
}

/// Per-plane occupancy under `model`, decided by whether the shifted
/// sequences sit at their unwrapped relative position.
pub fn occupancy(records: &[PlaneRecord], model: Model) -> Vec<Occupancy> {
    records
        .iter()
        .map(|r| {
            let [eta2_wrapped, eta3_wrapped] = r.wrapped;
            match model {
                Model::I => Occupancy {
                    vertex_points: true,
                    bergman_top_face: !eta2_wrapped,
                    bergman_top_cut: eta2_wrapped,
                },
                Model::II => Occupancy {
                    vertex_points: !eta3_wrapped,
                    bergman_top_face: true,
                    bergman_top_cut: false,
                },
                Model::III => Occupancy {
                    vertex_points: eta3_wrapped,
                    bergman_top_face: false,
                    bergman_top_cut: true,
                },
            }
        })
        .collect()
}

/// A low-density plane a τ⁻¹-scaled spacing away from a sequence plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraPlane {
    pub n: usize,
    /// +1 above, −1 below.
    pub sign: i8,
    pub eta_extra: GoldenScalar,
}

impl ExtraPlane {
    /// `3⁺`, `9⁻`, ... using terrace numbers, or `N14⁺` outside the string.
    pub fn label(&self) -> String {
        let sup = if self.sign > 0 { '⁺' } else { '⁻' };
        match terrace_number(self.n) {
            Some(t) => format!("{t}{sup}"),
            None => format!("N{}{sup}", self.n),
        }
    }
}

/// Companion planes reached by the vertical shift `2τ²/(τ+2)`, which only
/// connects window points with `τ/(τ+2) ≤ |η1| ≤ τ²/(τ+2)`.
pub fn extra_planes(records: &[PlaneRecord]) -> Vec<ExtraPlane> {
    let inv = consts::inv_tau_plus_two();
    let lo = GoldenScalar::tau() * &inv;
    let hi = GoldenScalar::tau_pow(2) * &inv;
    let jump = &hi * 2;
    records
        .iter()
        .filter_map(|r| {
            let e = r.eta[0].abs();
            if e < lo || e > hi {
                return None;
            }
            let sign = -r.eta[0].sign();
            let eta_extra = &r.eta[0] + &jump * GoldenScalar::from_int(sign as i64);
            Some(ExtraPlane {
                n: r.n,
                sign,
                eta_extra,
            })
        })
        .collect()
}

/// Short plane spacing `2τ/(τ+2)` in `b5`.
pub fn short_spacing() -> GoldenScalar {
    GoldenScalar::tau() * 2 * consts::inv_tau_plus_two()
}

/// Long plane spacing `2τ²/(τ+2)` in `b5`.
pub fn long_spacing() -> GoldenScalar {
    GoldenScalar::tau_pow(2) * 2 * consts::inv_tau_plus_two()
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SpacingSequence {
    /// Å.
    pub spacings: Vec<f64>,
}

impl SpacingSequence {
    pub fn total(&self) -> f64 {
        self.spacings.iter().sum()
    }
}

pub fn spacing_from_tiles(tiles: &[Tile], b5_angstrom: f64) -> SpacingSequence {
    let short = short_spacing().to_f64() * b5_angstrom;
    let long = long_spacing().to_f64() * b5_angstrom;
    SpacingSequence {
        spacings: tiles
            .iter()
            .map(|t| match t {
                Tile::L => long,
                Tile::S => short,
            })
            .collect(),
    }
}

/// Distances between consecutive records.
pub fn spacing_in_angstrom(records: &[PlaneRecord], b5_angstrom: f64) -> SpacingSequence {
    let tiles: Vec<Tile> = records.windows(2).map(|w| w[0].tile).collect();
    spacing_from_tiles(&tiles, b5_angstrom)
}

/// Shift bounds of the first interior occurrence of the terrace string on
/// the line through `eta0`.
pub fn terrace_shift_bounds(eta0: &GoldenScalar, horizon: usize) -> Result<ShiftBounds> {
    let pattern: TilePattern = fibonacci::TERRACE_STRING.parse()?;
    let y0 = y_of_eta(eta0)?;
    let start = *fibonacci::find_interior_string(y0.clone(), &pattern, horizon)?
        .first()
        .ok_or_else(|| crate::error::Error::PatternNotFound(pattern.to_string()))?;
    fibonacci::occurrence_shift_bounds(y0, &pattern, start)
}

pub const TABLE_HEADER: [&str; 7] = ["N", "eta1", "eta2", "eta3", "F_eta1", "F_eta2", "F_eta3"];

/// Records as CSV in the column order `N, η1, η2, η3, F(η1), F(η2), F(η3)`.
pub fn table_csv(records: &[PlaneRecord], precision: usize) -> String {
    let mut out = TABLE_HEADER.join(",");
    out.push('\n');
    for r in records {
        let mut row = vec![r.n.to_string()];
        row.extend(r.eta_f64().iter().map(|v| fmt_fixed(*v, precision)));
        row.extend(r.area_f64().iter().map(|v| fmt_fixed(*v, precision)));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Right-aligned text table, with the terrace label and the tile to the next row.
pub fn table_pretty(records: &[PlaneRecord], precision: usize) -> String {
    let width = precision + 4;
    let mut out = format!("{:>4} {:>4} {:>4}", "N", "ter", "next");
    for h in &TABLE_HEADER[1..] {
        let _ = write!(out, " {h:>width$}");
    }
    out.push('\n');
    for r in records {
        let ter = terrace_number(r.n)
            .map(|t| t.to_string())
            .unwrap_or_default();
        let _ = write!(out, "{:>4} {:>4} {:>4}", r.n, ter, r.tile.symbol());
        for v in r.eta_f64().iter().chain(r.area_f64().iter()) {
            let _ = write!(out, " {:>width$}", fmt_fixed(*v, precision));
        }
        out.push('\n');
    }
    out
}
