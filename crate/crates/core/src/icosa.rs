//! Icosahedral module, star map and the triacontahedral window.
//!
//! Lengths are in units of `b5`, the projected length of a 6D basis vector,
//! in both `E∥` and `E⊥`. The 5fold axis `e1` is the third coordinate axis of
//! either frame. The remaining basis vectors sit on a cone around it with
//! `cos = ±1/√5`, stepping by 2π/5 in `E∥` and 4π/5 in `E⊥`, so that
//! `e_i∥·e_j∥ + e_i⊥·e_j⊥ = 2δ_ij`.
//!
//! Section polygons are reported in units of `τ·b5`, the unit in which the
//! plane height `η` is measured; in that unit the section area is exactly
//! the closed form [`crate::density::section_area`].

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::golden::GoldenScalar;
use crate::polygon::{self, Point2};

pub const TAU: f64 = 1.618_033_988_749_895;

/// Default physical value of `b5` in Å.
pub const B5_ANGSTROM: f64 = 4.56;

/// Geometric tolerance in `b5` units.
pub const GEOM_EPS: f64 = 1e-9;

/// Short 2fold length `b2 = 2/√(τ+2)·b5`.
pub fn b2() -> f64 {
    2.0 / (TAU + 2.0).sqrt()
}

/// τ-scaled short edge of the tiling, `s = τ·b2`.
pub fn short_edge() -> f64 {
    TAU * b2()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Parallel,
    Perpendicular,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3 {
    pub xyz: [f64; 3],
    pub space: Space,
}

impl Vec3 {
    pub fn new(xyz: [f64; 3], space: Space) -> Self {
        Vec3 { xyz, space }
    }

    pub fn zero(space: Space) -> Self {
        Vec3::new([0.0; 3], space)
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        debug_assert_eq!(self.space, other.space);
        dot(&self.xyz, &other.xyz)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        debug_assert_eq!(self.space, other.space);
        Vec3::new(
            [
                self.xyz[0] + other.xyz[0],
                self.xyz[1] + other.xyz[1],
                self.xyz[2] + other.xyz[2],
            ],
            self.space,
        )
    }

    pub fn scale(&self, k: f64) -> Vec3 {
        Vec3::new(
            [self.xyz[0] * k, self.xyz[1] * k, self.xyz[2] * k],
            self.space,
        )
    }

    /// Component along the 5fold axis `e1`.
    pub fn axial(&self) -> f64 {
        self.xyz[2]
    }

    /// Angle to `e1`, in degrees.
    pub fn angle_to_axis_deg(&self) -> f64 {
        (self.axial() / self.norm())
            .clamp(-1.0, 1.0)
            .acos()
            .to_degrees()
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Projected basis `e1..e6` in the given space.
pub fn basis(space: Space) -> [Vec3; 6] {
    let (cos, step) = match space {
        Space::Parallel => (1.0 / 5f64.sqrt(), 2.0 * PI / 5.0),
        Space::Perpendicular => (-1.0 / 5f64.sqrt(), 4.0 * PI / 5.0),
    };
    let sin = (1.0 - cos * cos).sqrt();
    let mut out = [Vec3::new([0.0, 0.0, 1.0], space); 6];
    for (k, v) in out.iter_mut().enumerate().skip(1) {
        let phi = step * (k - 1) as f64;
        v.xyz = [sin * phi.cos(), sin * phi.sin(), cos];
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Point of the (2F) module: tiling vertex candidate.
    Even,
    /// Bergman-centre candidate.
    Odd,
}

/// Integer coordinates on the icosahedral module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleVector6 {
    pub n: [i64; 6],
}

impl ModuleVector6 {
    pub fn new(n: [i64; 6]) -> Self {
        ModuleVector6 { n }
    }

    /// The unit vector `e_i` for `i` in `1..=6`.
    pub fn unit(i: usize) -> Self {
        let mut n = [0; 6];
        n[i - 1] = 1;
        ModuleVector6 { n }
    }

    pub fn parity(&self) -> Parity {
        if self.n.iter().sum::<i64>().rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn neg(&self) -> Self {
        ModuleVector6::new(self.n.map(|x| -x))
    }

    pub fn add(&self, other: &ModuleVector6) -> Self {
        let mut n = self.n;
        for (a, b) in n.iter_mut().zip(other.n) {
            *a += b;
        }
        ModuleVector6 { n }
    }

    pub fn project(&self, space: Space) -> Vec3 {
        basis(space)
            .iter()
            .zip(self.n)
            .fold(Vec3::zero(space), |acc, (e, k)| acc.add(&e.scale(k as f64)))
    }
}

/// `v ↦ (Σ nᵢ eᵢ∥, Σ nᵢ eᵢ⊥)`.
pub fn star_map(v: &ModuleVector6) -> (Vec3, Vec3) {
    (v.project(Space::Parallel), v.project(Space::Perpendicular))
}

/// Recovers integer indices from both projections, using
/// `nᵢ = (v∥·eᵢ∥ + v⊥·eᵢ⊥)/2`. Returns `None` if the result is not integral.
pub fn lift(v_par: &Vec3, v_perp: &Vec3) -> Option<ModuleVector6> {
    let bp = basis(Space::Parallel);
    let bq = basis(Space::Perpendicular);
    let mut n = [0i64; 6];
    for i in 0..6 {
        let x = 0.5 * (v_par.dot(&bp[i]) + v_perp.dot(&bq[i]));
        let r = x.round();
        if (x - r).abs() > 1e-6 {
            return None;
        }
        n[i] = r as i64;
    }
    Some(ModuleVector6 { n })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Face {
    pub normal: [f64; 3],
    pub support: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    FiveFold,
    ThreeFold,
}

/// The rhombic triacontahedron in `E⊥`, as the intersection of 30 half-spaces
/// normal to the 2fold axes.
#[derive(Clone, Debug)]
pub struct Triacontahedron {
    pub faces: Vec<Face>,
    pub vertices: Vec<([f64; 3], VertexKind)>,
}

impl Default for Triacontahedron {
    fn default() -> Self {
        Triacontahedron::new()
    }
}

/// The 15 2fold axes of `E⊥` (one unit vector per axis), from `eᵢ⊥ ± eⱼ⊥`.
pub fn two_fold_axes(space: Space) -> Vec<[f64; 3]> {
    let e = basis(space);
    let mut axes: Vec<[f64; 3]> = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for sign in [1.0, -1.0] {
                let d = e[i].add(&e[j].scale(sign));
                let u = d.scale(1.0 / d.norm()).xyz;
                if !axes.iter().any(|a| dot(a, &u).abs() > 1.0 - GEOM_EPS) {
                    axes.push(u);
                }
            }
        }
    }
    axes
}

impl Triacontahedron {
    /// Builds the window with its 5fold vertices at distance τ from the centre.
    pub fn new() -> Self {
        let axes = two_fold_axes(Space::Perpendicular);
        assert_eq!(axes.len(), 15);
        // The 5fold vertex τ·e1 lies on the faces closest in direction to e1.
        let support = TAU * axes.iter().map(|a| a[2].abs()).fold(0.0, f64::max);
        let faces: Vec<Face> = axes
            .iter()
            .flat_map(|a| {
                [
                    Face {
                        normal: *a,
                        support,
                    },
                    Face {
                        normal: a.map(|x| -x),
                        support,
                    },
                ]
            })
            .collect();
        let mut tri = Triacontahedron {
            faces,
            vertices: Vec::new(),
        };
        tri.vertices = tri.derive_vertices();
        tri
    }

    fn derive_vertices(&self) -> Vec<([f64; 3], VertexKind)> {
        let f = &self.faces;
        let mut out: Vec<([f64; 3], VertexKind)> = Vec::new();
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                for k in j + 1..f.len() {
                    let Some(p) = solve3(&f[i], &f[j], &f[k]) else {
                        continue;
                    };
                    if !self.contains(&p) || out.iter().any(|(q, _)| dist(q, &p) < 1e-7) {
                        continue;
                    }
                    let kind = if (dot(&p, &p).sqrt() - TAU).abs() < 1e-7 {
                        VertexKind::FiveFold
                    } else {
                        VertexKind::ThreeFold
                    };
                    out.push((p, kind));
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &[f64; 3]) -> bool {
        self.faces
            .iter()
            .all(|f| dot(&f.normal, p) <= f.support + GEOM_EPS)
    }

    /// Planar section at height `η·τ` along the 5fold axis, as a CCW polygon
    /// in units of `τ·b5`.
    pub fn section(&self, eta: &GoldenScalar) -> Result<SectionPolygon> {
        let abs = eta.abs();
        if abs > GoldenScalar::one() {
            return Err(Error::EmptySection(format!("{:.6}", eta.to_f64())));
        }
        if abs == GoldenScalar::one() {
            return Ok(SectionPolygon {
                eta: eta.clone(),
                vertices: vec![[0.0, 0.0]],
            });
        }
        let z = eta.to_f64() * TAU;
        let mut poly: Vec<Point2> = vec![[-2.0, -2.0], [2.0, -2.0], [2.0, 2.0], [-2.0, 2.0]];
        for face in &self.faces {
            let [nx, ny, nz] = face.normal;
            poly = polygon::clip_halfplane(&poly, nx, ny, (face.support - nz * z) / TAU);
        }
        Ok(SectionPolygon {
            eta: eta.clone(),
            vertices: poly,
        })
    }

    /// Points sampled from the section plane are inside iff every face
    /// inequality holds. `x` is in the section's `τ·b5` units.
    pub fn section_contains(&self, eta: f64, x: Point2) -> bool {
        self.contains(&[x[0] * TAU, x[1] * TAU, eta * TAU])
    }
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn solve3(a: &Face, b: &Face, c: &Face) -> Option<[f64; 3]> {
    let bc = cross(&b.normal, &c.normal);
    let det = dot(&a.normal, &bc);
    if det.abs() < 1e-9 {
        return None;
    }
    let ca = cross(&c.normal, &a.normal);
    let ab = cross(&a.normal, &b.normal);
    let mut p = [0.0; 3];
    for i in 0..3 {
        p[i] = (a.support * bc[i] + b.support * ca[i] + c.support * ab[i]) / det;
    }
    Some(p)
}

/// A planar section of the window.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionPolygon {
    pub eta: GoldenScalar,
    /// Counter-clockwise, in units of `τ·b5`.
    pub vertices: Vec<Point2>,
}

impl SectionPolygon {
    pub fn area(&self) -> f64 {
        polygon::area(&self.vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in Å.
    pub fn vertices_angstrom(&self, b5_angstrom: f64) -> Vec<Point2> {
        let k = TAU * b5_angstrom;
        self.vertices.iter().map(|p| [p[0] * k, p[1] * k]).collect()
    }

    /// One vertex per line, `x,y` in Å.
    pub fn to_csv(&self, b5_angstrom: f64, precision: usize) -> String {
        let mut out = String::from("x_angstrom,y_angstrom\n");
        for [x, y] in self.vertices_angstrom(b5_angstrom) {
            let _ = writeln!(
                out,
                "{},{}",
                fmt_fixed(x, precision),
                fmt_fixed(y, precision)
            );
        }
        out
    }

    /// Single closed path in Å, y pointing up.
    pub fn to_svg(&self, b5_angstrom: f64, precision: usize) -> String {
        let r = TAU * TAU * b5_angstrom;
        let mut d = String::new();
        for (i, [x, y]) in self.vertices_angstrom(b5_angstrom).into_iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(
                d,
                "{cmd}{} {} ",
                fmt_fixed(x, precision),
                fmt_fixed(-y, precision)
            );
        }
        d.push('Z');
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{lo} {lo} {w} {w}\">\n\
             <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.05\"/>\n</svg>\n",
            lo = fmt_fixed(-r, 3),
            w = fmt_fixed(2.0 * r, 3),
        )
    }
}

/// Fixed-point formatting without a `-0.000` artefact.
pub fn fmt_fixed(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Half-thickness of each central decagonal prism, `1/(τ+2)` (b5 units).
pub fn prism_half_thickness() -> f64 {
    1.0 / (TAU + 2.0)
}

/// Labels (1..=6) of the 5fold axes whose central decagonal prism contains
/// `p`. An empty result means `p` sits in a 5fold-vertex cap.
pub fn prism_membership(tri: &Triacontahedron, p: &Vec3) -> Result<Vec<usize>> {
    debug_assert_eq!(p.space, Space::Perpendicular);
    if !tri.contains(&p.xyz) {
        return Err(Error::OutsideTriacontahedron(p.xyz));
    }
    let h = prism_half_thickness() + GEOM_EPS;
    Ok(basis(Space::Perpendicular)
        .iter()
        .enumerate()
        .filter(|(_, a)| p.dot(a).abs() <= h)
        .map(|(i, _)| i + 1)
        .collect())
}
