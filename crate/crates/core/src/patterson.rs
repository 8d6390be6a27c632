//! Planar Patterson function: overlap of a window section with its shifted copy.
//!
//! For a plane-parallel lattice shift `v`, the autocorrelation coefficient at
//! `v∥` is the area of `S(η) ∩ (S(η) + v⊥)`. The circle approximation swaps the
//! section for a disc of equal area, which makes the overlap a lens.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::density::section_area;
use crate::error::{Error, Result};
use crate::golden::GoldenScalar;
use crate::icosa::{fmt_fixed, star_map, ModuleVector6, Triacontahedron, GEOM_EPS, TAU};
use crate::polygon::{self, Point2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ShiftMode {
    #[default]
    Exact,
    Circle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PattersonQuery {
    pub eta: GoldenScalar,
    pub shift: ModuleVector6,
    pub mode: ShiftMode,
}

impl PattersonQuery {
    pub fn new(eta: GoldenScalar, shift: ModuleVector6, mode: ShiftMode) -> Result<Self> {
        in_plane_perp_shift(&shift)?;
        Ok(Self { eta, shift, mode })
    }
}

/// `v⊥` of a plane-parallel shift, in section units (`τ·b5`).
pub fn in_plane_perp_shift(v: &ModuleVector6) -> Result<Point2> {
    let (par, perp) = star_map(v);
    let axial = par.axial();
    if axial.abs() >= GEOM_EPS {
        return Err(Error::NotPlaneParallel(v.n, axial));
    }
    Ok([perp.xyz[0] / TAU, perp.xyz[1] / TAU])
}

/// `|v∥|` in Å.
pub fn parallel_length_angstrom(v: &ModuleVector6, b5_angstrom: f64) -> f64 {
    star_map(v).0.norm() * b5_angstrom
}

/// Area of `poly ∩ (poly + shift)` for a convex CCW polygon.
pub fn overlap_area(poly: &[Point2], shift: Point2) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let moved = polygon::translate(poly, shift);
    polygon::area(&polygon::convex_intersection(poly, &moved))
}

pub fn patterson_exact_with(
    tri: &Triacontahedron,
    eta: &GoldenScalar,
    v: &ModuleVector6,
) -> Result<f64> {
    let shift = in_plane_perp_shift(v)?;
    let section = tri.section(eta)?;
    Ok(overlap_area(&section.vertices, shift))
}

pub fn patterson_exact(q: &PattersonQuery) -> Result<f64> {
    patterson_exact_with(&Triacontahedron::new(), &q.eta, &q.shift)
}

/// Radius of the disc with area `f`.
pub fn circle_radius(f: f64) -> f64 {
    (f.max(0.0) / PI).sqrt()
}

/// Overlap of two discs of radius `r` whose centres are `d` apart.
pub fn lens_area(r: f64, d: f64) -> f64 {
    let d = d.abs();
    if r <= 0.0 || d >= 2.0 * r {
        return 0.0;
    }
    2.0 * r * r * (d / (2.0 * r)).acos() - 0.5 * d * (4.0 * r * r - d * d).sqrt()
}

/// Circle-approximation Patterson value; zero where the plane misses the window.
pub fn patterson_circle(eta: &GoldenScalar, d: f64) -> f64 {
    let f = section_area(eta).map(|a| a.to_f64()).unwrap_or(0.0);
    lens_area(circle_radius(f), d)
}

/// `P(η, d)` on the product grid; rows follow `eta_grid`, columns `d_grid`.
pub fn patterson_surface(eta_grid: &[GoldenScalar], d_grid: &[f64]) -> Vec<Vec<f64>> {
    eta_grid
        .par_iter()
        .map(|eta| d_grid.iter().map(|&d| patterson_circle(eta, d)).collect())
        .collect()
}

/// CSV matrix: header `eta\d,d0,d1,...`, one row per η.
pub fn surface_csv(
    eta_grid: &[GoldenScalar],
    d_grid: &[f64],
    surface: &[Vec<f64>],
    precision: usize,
) -> String {
    let mut out = String::from("eta\\d");
    for d in d_grid {
        let _ = write!(out, ",{}", fmt_fixed(*d, precision));
    }
    out.push('\n');
    for (eta, row) in eta_grid.iter().zip(surface) {
        out.push_str(&fmt_fixed(eta.to_f64(), precision));
        for v in row {
            let _ = write!(out, ",{}", fmt_fixed(*v, precision));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledShift {
    pub label: String,
    pub shift: ModuleVector6,
}

/// Parses `label n1 n2 n3 n4 n5 n6` lines; blank lines and `#` comments are skipped.
pub fn parse_shift_file(text: &str) -> Result<Vec<LabeledShift>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::Parse {
            input: line.to_string(),
            reason: format!("line {}: {reason}", lineno + 1),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(bad(format!(
                "expected a label and 6 integers, got {} fields",
                fields.len()
            )));
        }
        let mut n = [0i64; 6];
        for (slot, f) in n.iter_mut().zip(&fields[1..]) {
            *slot = f
                .parse()
                .map_err(|_| bad(format!("{f:?} is not an integer")))?;
        }
        out.push(LabeledShift {
            label: fields[0].to_string(),
            shift: ModuleVector6::new(n),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub v_par_angstrom: f64,
    pub p: [f64; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct PattersonReport {
    pub mode: ShiftMode,
    /// First row is the zero shift, labelled `0`.
    pub rows: Vec<ReportRow>,
}

/// P at each of the three heights for the zero shift and every labelled shift.
pub fn patterson_report(
    etas: &[GoldenScalar; 3],
    shifts: &[LabeledShift],
    mode: ShiftMode,
    b5_angstrom: f64,
) -> Result<PattersonReport> {
    let tri = Triacontahedron::new();
    let sections = etas
        .iter()
        .map(|e| tri.section(e))
        .collect::<Result<Vec<_>>>()?;
    let eval = |shift: Point2| -> [f64; 3] {
        let mut p = [0.0; 3];
        for (i, s) in sections.iter().enumerate() {
            p[i] = match mode {
                ShiftMode::Exact => overlap_area(&s.vertices, shift),
                ShiftMode::Circle => patterson_circle(&etas[i], shift[0].hypot(shift[1])),
            };
        }
        p
    };
    let mut rows = vec![ReportRow {
        label: "0".to_string(),
        v_par_angstrom: 0.0,
        p: eval([0.0, 0.0]),
    }];
    for s in shifts {
        rows.push(ReportRow {
            label: s.label.clone(),
            v_par_angstrom: parallel_length_angstrom(&s.shift, b5_angstrom),
            p: eval(in_plane_perp_shift(&s.shift)?),
        });
    }
    Ok(PattersonReport { mode, rows })
}

impl PattersonReport {
    /// Each column divided by its zero-shift value (columns with `P(0) = 0` stay zero).
    pub fn normalized(&self) -> PattersonReport {
        let p0 = self.rows[0].p;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut p = r.p;
                for i in 0..3 {
                    p[i] = if p0[i] > 0.0 { p[i] / p0[i] } else { 0.0 };
                }
                ReportRow { p, ..r.clone() }
            })
            .collect();
        PattersonReport {
            mode: self.mode,
            rows,
        }
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("label,v_par_angstrom,P_eta1,P_eta2,P_eta3\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.label,
                fmt_fixed(r.v_par_angstrom, precision),
                fmt_fixed(r.p[0], precision),
                fmt_fixed(r.p[1], precision),
                fmt_fixed(r.p[2], precision),
            );
        }
        out
    }

    /// One column per shift, one row per η; each value drawn as a disc of that area.
    pub fn to_svg(&self, precision: usize) -> String {
        let cell = 4.0;
        let pmax = self
            .rows
            .iter()
            .flat_map(|r| r.p)
            .fold(0.0_f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let width = cell * (self.rows.len() as f64 + 1.0);
        let height = cell * 4.0;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n",
            fmt_fixed(width, 1),
            fmt_fixed(height, 1)
        );
        for (i, name) in ["η1", "η2", "η3"].iter().enumerate() {
            let _ = writeln!(
                out,
                "<text x=\"0.2\" y=\"{}\" font-size=\"1\">{name}</text>",
                fmt_fixed(cell * (i as f64 + 1.5), 2)
            );
        }
        for (j, r) in self.rows.iter().enumerate() {
            let cx = cell * (j as f64 + 1.5);
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"1\" text-anchor=\"middle\">{}</text>",
                fmt_fixed(cx, 2),
                fmt_fixed(cell * 0.6, 2),
                r.label
            );
            for (i, p) in r.p.iter().enumerate() {
                let radius = 0.45 * cell * (p / pmax).sqrt();
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
                    fmt_fixed(cx, 2),
                    fmt_fixed(cell * (i as f64 + 1.5), 2),
                    fmt_fixed(radius, precision)
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::max_area;
    use crate::terraces::{canonical_eta0, plane_sequence};

    fn shift(n: [i64; 6]) -> ModuleVector6 {
        ModuleVector6::new(n)
    }

    /// Simpson integration of the overlap width of two discs.
    fn lens_oracle(r: f64, d: f64) -> f64 {
        if d >= 2.0 * r {
            return 0.0;
        }
        // Overlap is symmetric about x = d/2; integrate its chord over x ∈ [d−r, d/2].
        let (a, b) = (d - r, d / 2.0);
        let n = 20_000;
        let h = (b - a) / n as f64;
        let chord = |x: f64| 2.0 * (r * r - (x - d).powi(2)).max(0.0).sqrt();
        let mut s = chord(a) + chord(b);
        for k in 1..n {
            s += chord(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        2.0 * s * h / 3.0
    }

    #[test]
    fn lens_against_integration() {
        let r = circle_radius(max_area().to_f64());
        for d in [0.0, 0.1, 0.5 * r, r, 1.5 * r, 1.99 * r] {
            assert!(
                (lens_area(r, d) - lens_oracle(r, d)).abs() < 1e-6,
                "d = {d}"
            );
        }
        let closed = r * r * (2.0 * PI / 3.0 - 3f64.sqrt() / 2.0);
        assert!((lens_area(r, r) - closed).abs() < 1e-12);
        assert_eq!(lens_area(r, 2.0 * r), 0.0);
        assert_eq!(lens_area(r, 5.0), 0.0);
    }

    #[test]
    fn circle_reduces_to_area() {
        let z = GoldenScalar::zero();
        assert!((patterson_circle(&z, 0.0) - 2.3511).abs() < 1e-4);
        assert_eq!(patterson_circle(&GoldenScalar::from_int(2), 0.0), 0.0);
        let r0 = circle_radius(max_area().to_f64());
        let mut prev = f64::INFINITY;
        for k in 0..=100 {
            let v = patterson_circle(&z, 2.0 * r0 * k as f64 / 100.0);
            assert!(v <= prev);
            prev = v;
        }
        assert_eq!(prev, 0.0);
    }

    #[test]
    fn zero_shift_is_area() {
        let rows = plane_sequence(&canonical_eta0(), 16).unwrap();
        for eta in &rows[16].eta {
            let q = PattersonQuery::new(eta.clone(), shift([0; 6]), ShiftMode::Exact).unwrap();
            let f = section_area(eta).unwrap().to_f64();
            assert!((patterson_exact(&q).unwrap() - f).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_axial_shifts() {
        assert!(matches!(
            in_plane_perp_shift(&shift([1, 0, 0, 0, 0, 0])),
            Err(Error::NotPlaneParallel(..))
        ));
        assert!(in_plane_perp_shift(&shift([0, 1, 0, 0, 0, 0])).is_err());
        assert!(in_plane_perp_shift(&shift([0, 1, 0, -1, 0, 0])).is_ok());
    }

    #[test]
    fn reported_parallel_length() {
        let v = shift([0, 1, 0, -1, 0, 0]);
        let len = parallel_length_angstrom(&v, 4.56);
        assert!((len - 7.758).abs() < 1e-3, "{len}");
    }

    #[test]
    fn centrosymmetric_overlap() {
        let tri = Triacontahedron::new();
        let eta = GoldenScalar::from_ratios(1, 5, 0, 1);
        for n in [
            [0, 1, 0, -1, 0, 0],
            [0, 1, -1, 0, 0, 0],
            [0, 2, -1, 0, 1, -2],
            [0, 0, 1, 1, -1, -1],
        ] {
            let v = shift(n);
            let a = patterson_exact_with(&tri, &eta, &v).unwrap();
            let b = patterson_exact_with(&tri, &eta, &v.neg()).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_decreases_along_rays() {
        let tri = Triacontahedron::new();
        let s = tri
            .section(&GoldenScalar::from_ratios(-3, 10, 0, 1))
            .unwrap();
        let diam = polygon::diameter(&s.vertices);
        for dir in [0.0_f64, 0.3, 1.1, 2.5] {
            let mut prev = f64::INFINITY;
            for k in 0..=60 {
                let t = diam * k as f64 / 60.0;
                let v = overlap_area(&s.vertices, [t * dir.cos(), t * dir.sin()]);
                assert!(v <= prev + 1e-12);
                prev = v;
            }
            assert!(prev.abs() < 1e-12);
        }
    }

    #[test]
    fn circle_tracks_decagon() {
        let tri = Triacontahedron::new();
        let s = tri.section(&GoldenScalar::zero()).unwrap();
        let r0 = circle_radius(s.area());
        for dir in 0..12 {
            let phi = dir as f64 * PI / 30.0;
            for k in 0..=10 {
                let d = r0 * k as f64 / 10.0;
                let exact = overlap_area(&s.vertices, [d * phi.cos(), d * phi.sin()]);
                let circle = lens_area(r0, d);
                assert!((exact - circle).abs() <= 0.15 * exact, "d={d} phi={phi}");
            }
        }
    }

    #[test]
    fn surface_shape() {
        let etas: Vec<GoldenScalar> = (-10..=10)
            .map(|k| GoldenScalar::from_ratios(k, 10, 0, 1))
            .collect();
        let ds: Vec<f64> = (0..=20).map(|k| k as f64 * 0.05).collect();
        let m = patterson_surface(&etas, &ds);
        let f0 = max_area().to_f64();
        for (i, row) in m.iter().enumerate() {
            assert!((row[0] - section_area(&etas[i]).unwrap().to_f64()).abs() < 1e-12);
            for (j, v) in row.iter().enumerate() {
                assert!(*v >= 0.0 && *v <= f0 + 1e-12);
                assert_eq!(*v, m[m.len() - 1 - i][j]);
            }
        }
        let csv = surface_csv(&etas, &ds, &m, 3);
        assert_eq!(csv.lines().count(), 22);
    }

    #[test]
    fn report_rows() {
        let rows = plane_sequence(&canonical_eta0(), 16).unwrap();
        let etas = rows[16].eta.clone();
        let empty = patterson_report(&etas, &[], ShiftMode::Exact, 4.56).unwrap();
        assert_eq!(empty.rows.len(), 1);
        let p0 = empty.rows[0].p;
        for (p, f) in p0.iter().zip(rows[16].area_f64()) {
            assert!((p - f).abs() < 1e-9);
        }
        assert!(p0[1] < p0[0] && p0[1] < p0[2]);

        let shifts = parse_shift_file("# demo\nI' 0 1 0 -1 0 0\n\nII 0 1 -1 0 0 0\n").unwrap();
        let rep = patterson_report(&etas, &shifts, ShiftMode::Circle, 4.56).unwrap();
        assert_eq!(rep.rows.len(), 3);
        assert_eq!(rep.rows[1].label, "I'");
        assert_eq!(fmt_fixed(rep.rows[1].v_par_angstrom, 2), "7.76");
        let norm = rep.normalized();
        assert_eq!(norm.rows[0].p, [1.0; 3]);
        assert!(norm.rows[1].p.iter().all(|p| *p <= 1.0));
        let csv = rep.to_csv(4);
        assert!(csv.starts_with("label,v_par_angstrom,P_eta1,P_eta2,P_eta3\n0,0.0000,"));
        assert_eq!(rep.to_svg(3).matches("<circle").count(), 9);

        let axial = vec![LabeledShift {
            label: "bad".into(),
            shift: shift([1, 0, 0, 0, 0, 0]),
        }];
        assert!(patterson_report(&etas, &axial, ShiftMode::Exact, 4.56).is_err());
    }

    #[test]
    fn shift_file_errors() {
        assert!(parse_shift_file("I 0 1 0 -1 0").is_err());
        assert!(parse_shift_file("I 0 1 0 -1 0 x").is_err());
        assert!(parse_shift_file("").unwrap().is_empty());
    }
}
