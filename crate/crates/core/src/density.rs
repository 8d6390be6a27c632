//! Section area `F(η)` of the triacontahedron and the planar densities
//! derived from it.
//!
//! `F` is piecewise quadratic in `|η|` with breakpoints `τ⁻¹/(τ+2)`,
//! `τ/(τ+2)` and `τ²/(τ+2)`. It is carried as an exact coefficient of the
//! irrational unit `(τ+2)^(−3/2)`, in units of `(τ·b5)²`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::golden::{consts, GoldenScalar};
use crate::icosa::{short_edge, B5_ANGSTROM, TAU};

/// Density of pentagonal holes seen in STM (Å⁻²). Experimental reference
/// value for comparison reports, not a model output.
pub const EXPERIMENTAL_HOLE_DENSITY: f64 = 4.2e-3;

/// Real value of the area unit `(τ+2)^(−3/2)`.
pub fn area_unit() -> f64 {
    (TAU + 2.0).powf(-1.5)
}

/// `coeff · (τ+2)^(−3/2)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AreaValue {
    pub coeff: GoldenScalar,
}

impl AreaValue {
    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * area_unit()
    }
}

impl fmt::Display for AreaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]·(τ+2)^(-3/2)", self.coeff)
    }
}

/// The three interior breakpoints `τ^k/(τ+2)`, `k = −1, 1, 2`.
pub fn breakpoints() -> [GoldenScalar; 3] {
    let inv = consts::inv_tau_plus_two();
    [-1, 1, 2].map(|k| GoldenScalar::tau_pow(k) * &inv)
}

/// Branch `i` (0..4) of the closed form, evaluated at `e = |η|`.
fn branch(i: usize, e: &GoldenScalar) -> GoldenScalar {
    let t = GoldenScalar::tau();
    let k = consts::tau_plus_two();
    let k2 = &k * &k;
    let [b1, b2, b3] = breakpoints();
    match i {
        0 => &t * 10,
        1 => {
            let d = e - &b1;
            &t * 10 - (&k2 / &t) * (&d * &d) * 5
        }
        2 => {
            let up = &b3 - e;
            let down = e - &b2;
            GoldenScalar::from_int(10) + (&k2 / &t) * (&up * &up) * 5 - &k2 * (&down * &down) * 5
        }
        3 => {
            let d = GoldenScalar::one() - e;
            &k2 * (&d * &d) * 5
        }
        _ => unreachable!(),
    }
}

/// Exact area of the section at height `η`, `−1 ≤ η ≤ 1`.
pub fn section_area(eta: &GoldenScalar) -> Result<AreaValue> {
    let e = eta.abs();
    if e > GoldenScalar::one() {
        return Err(Error::EmptySection(format!("{:.6}", eta.to_f64())));
    }
    let [b1, b2, b3] = breakpoints();
    let i = if e <= b1 {
        0
    } else if e <= b2 {
        1
    } else if e <= b3 {
        2
    } else {
        3
    };
    Ok(AreaValue {
        coeff: branch(i, &e),
    })
}

/// `F(0) = 10τ·(τ+2)^(−3/2)`.
pub fn max_area() -> AreaValue {
    AreaValue {
        coeff: GoldenScalar::tau() * 10,
    }
}

/// `D(η)/D(0) = F(η)/F(0)`, exact.
pub fn relative_density(eta: &GoldenScalar) -> Result<GoldenScalar> {
    Ok(section_area(eta)?.coeff / max_area().coeff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DensityKind {
    Vertex,
    /// Centres of Bergman top-face pentagons.
    BergmanFaceCenter,
    /// Vertices of Bergman top-face pentagons: five per centre.
    BergmanFaceVertex,
    /// Centres of the τ-scaled top-cut pentagons.
    CutPentagonCenter,
    /// Vertices of top-cut pentagons, which share vertices: `(7τ+4)/τ³` per centre.
    CutPentagonVertex,
}

impl DensityKind {
    pub const ALL: [DensityKind; 5] = [
        DensityKind::Vertex,
        DensityKind::BergmanFaceCenter,
        DensityKind::BergmanFaceVertex,
        DensityKind::CutPentagonCenter,
        DensityKind::CutPentagonVertex,
    ];

    /// Points of this kind per vertex-density unit.
    pub fn multiplicity(self) -> GoldenScalar {
        match self {
            DensityKind::Vertex
            | DensityKind::BergmanFaceCenter
            | DensityKind::CutPentagonCenter => GoldenScalar::one(),
            DensityKind::BergmanFaceVertex => GoldenScalar::from_int(5),
            DensityKind::CutPentagonVertex => {
                GoldenScalar::from_ints(4, 7) / GoldenScalar::tau_pow(3)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DensityKind::Vertex => "vertex",
            DensityKind::BergmanFaceCenter => "bergman_face_center",
            DensityKind::BergmanFaceVertex => "bergman_face_vertex",
            DensityKind::CutPentagonCenter => "cut_pentagon_center",
            DensityKind::CutPentagonVertex => "cut_pentagon_vertex",
        }
    }
}

impl FromStr for DensityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DensityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for DensityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Points per Å².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub kind: DensityKind,
}

/// Absolute densities for a given physical scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityModel {
    pub b5_angstrom: f64,
}

impl Default for DensityModel {
    fn default() -> Self {
        DensityModel {
            b5_angstrom: B5_ANGSTROM,
        }
    }
}

impl DensityModel {
    pub fn new(b5_angstrom: f64) -> Result<Self> {
        if !(b5_angstrom > 0.0 && b5_angstrom.is_finite()) {
            return Err(Error::Config(format!(
                "b5 must be positive, got {b5_angstrom}"
            )));
        }
        Ok(DensityModel { b5_angstrom })
    }

    /// Short edge `s = τ·b2` in Å.
    pub fn short_edge_angstrom(&self) -> f64 {
        short_edge() * self.b5_angstrom
    }

    /// Vertex density of a dense (triangle-pattern) plane,
    /// `D(0) = s⁻²·2τ²/(τ+2)^(3/2)`.
    pub fn max_vertex_density(&self) -> f64 {
        let s = self.short_edge_angstrom();
        2.0 * TAU * TAU / (TAU + 2.0).powf(1.5) / (s * s)
    }

    pub fn absolute(&self, eta: &GoldenScalar, kind: DensityKind) -> Result<DensityValue> {
        let rel = relative_density(eta)? * kind.multiplicity();
        Ok(DensityValue {
            value: self.max_vertex_density() * rel.to_f64(),
            kind,
        })
    }
}

/// Edge of the equilateral-triangle tiling with the same point density,
/// from `D = t⁻²·2/√3`.
pub fn equivalent_triangle_edge(density: f64) -> Result<f64> {
    if density.is_nan() || density <= 0.0 {
        return Err(Error::NonPositiveDensity(density));
    }
    Ok((2.0 / (3f64.sqrt() * density)).sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub eta: GoldenScalar,
    pub area: AreaValue,
    pub relative: GoldenScalar,
    pub absolute: f64,
}

/// `steps + 1` evenly spaced heights on `[lo, hi]` plus every breakpoint
/// (either sign) falling inside, sorted.
pub fn profile_grid(lo: &GoldenScalar, hi: &GoldenScalar, steps: usize) -> Vec<GoldenScalar> {
    let steps = steps.max(1) as i64;
    let width = hi - lo;
    let mut grid: Vec<GoldenScalar> = (0..=steps)
        .map(|k| lo + &width * GoldenScalar::from_ratios(k, steps, 0, 1))
        .collect();
    for b in breakpoints() {
        for x in [-b.clone(), b] {
            if x >= *lo && x <= *hi {
                grid.push(x);
            }
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

pub fn density_profile(grid: &[GoldenScalar], model: &DensityModel) -> Result<Vec<ProfileRow>> {
    grid.iter()
        .map(|eta| {
            let area = section_area(eta)?;
            let relative = &area.coeff / max_area().coeff;
            let absolute = model.max_vertex_density() * relative.to_f64();
            Ok(ProfileRow {
                eta: eta.clone(),
                area,
                relative,
                absolute,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(num: i64, den: i64) -> GoldenScalar {
        GoldenScalar::from_ratios(num, den, 0, 1)
    }

    #[test]
    fn area_examples() {
        assert!((section_area(&GoldenScalar::zero()).unwrap().to_f64() - 2.3511).abs() < 1e-4);
        let b2 = &breakpoints()[1];
        assert!((section_area(b2).unwrap().to_f64() - 1.9021).abs() < 1e-4);
        assert_eq!(
            section_area(&GoldenScalar::one()).unwrap().coeff,
            GoldenScalar::zero()
        );
        assert!((section_area(&r(5125, 10000)).unwrap().to_f64() - 1.6746).abs() < 1e-4);
        assert!(section_area(&r(-11, 10)).is_err());
    }

    #[test]
    fn branches_agree_at_breakpoints() {
        for (i, b) in breakpoints().iter().enumerate() {
            assert_eq!(branch(i, b), branch(i + 1, b), "breakpoint {i}");
        }
    }

    #[test]
    fn relative_density_examples() {
        assert_eq!(
            relative_density(&GoldenScalar::zero()).unwrap(),
            GoldenScalar::one()
        );
        let eta_max = &breakpoints()[2];
        let d_min = relative_density(eta_max).unwrap();
        assert_eq!(d_min, (GoldenScalar::tau() * 2).recip().unwrap());
        assert!((d_min.to_f64() - 0.3090).abs() < 1e-4);
        assert!(relative_density(&GoldenScalar::one()).unwrap().is_zero());
    }

    #[test]
    fn absolute_density_examples() {
        let m = DensityModel::default();
        let d0 = m
            .absolute(&GoldenScalar::zero(), DensityKind::Vertex)
            .unwrap();
        assert!((d0.value - 12.6e-3).abs() < 0.1e-3);
        // Two routes to D(0): via the large-triangle area f1 and the closed form.
        let s = m.short_edge_angstrom();
        let f1 = s * s * TAU / 4.0 * (TAU + 2.0).sqrt();
        let via_f1 = 1.0 / (2.0 * f1) * TAU.powi(3) / (TAU + 2.0);
        assert!((via_f1 - m.max_vertex_density()).abs() < 1e-15);

        let cut = m
            .absolute(&GoldenScalar::zero(), DensityKind::CutPentagonVertex)
            .unwrap();
        assert!((cut.value / d0.value - 3.6180).abs() < 1e-4);
        assert_eq!(
            DensityKind::CutPentagonVertex.multiplicity(),
            consts::tau_plus_two()
        );
        let face = m
            .absolute(&GoldenScalar::zero(), DensityKind::BergmanFaceVertex)
            .unwrap();
        assert!((face.value / d0.value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn bergman_face_density_of_row_16() {
        // η2 of row N = 16 (printed as −0.6085, F = 1.2835). The closed form
        // gives 6.90e-3 Å⁻², printed as 6.8e-3.
        let m = DensityModel::default();
        let d = m
            .absolute(&r(-6085, 10000), DensityKind::BergmanFaceCenter)
            .unwrap();
        assert!((d.value - 6.90e-3).abs() < 0.01e-3, "{}", d.value);
        assert!((d.value - 6.8e-3).abs() < 0.15e-3);
    }

    #[test]
    fn equivalent_edge_examples() {
        let d0 = DensityModel::default().max_vertex_density();
        let t = equivalent_triangle_edge(d0).unwrap();
        assert!((t - 9.5).abs() < 0.1);
        assert!((equivalent_triangle_edge(2.0 / 3f64.sqrt()).unwrap() - 1.0).abs() < 1e-15);
        let half = equivalent_triangle_edge(0.5 * d0).unwrap();
        assert!((half - t * 2f64.sqrt()).abs() < 1e-12);
        assert!((half - 13.5).abs() < 0.1);
        assert!(equivalent_triangle_edge(0.0).is_err());
        assert!(equivalent_triangle_edge(-1.0).is_err());
    }

    #[test]
    fn unknown_kind() {
        assert_eq!(
            "vertex".parse::<DensityKind>().unwrap(),
            DensityKind::Vertex
        );
        assert!(matches!(
            "hole".parse::<DensityKind>(),
            Err(Error::UnknownKind(_))
        ));
    }

    #[test]
    fn grid_includes_breakpoints() {
        let g = profile_grid(&GoldenScalar::zero(), &GoldenScalar::one(), 10);
        assert_eq!(g.len(), 14);
        for b in breakpoints() {
            assert!(g.contains(&b));
        }
        let rows = density_profile(&g, &DensityModel::default()).unwrap();
        let last = rows.last().unwrap();
        assert!(last.area.coeff.is_zero() && last.relative.is_zero() && last.absolute == 0.0);
    }

    fn arb_eta() -> impl Strategy<Value = GoldenScalar> {
        (-1_000_000i64..=1_000_000).prop_map(|k| r(k, 1_000_000))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn area_is_even(eta in arb_eta()) {
            prop_assert_eq!(section_area(&eta).unwrap(), section_area(&-eta).unwrap());
        }

        #[test]
        fn area_is_non_increasing_beyond_plateau(a in 170_820i64..=1_000_000, b in 170_820i64..=1_000_000) {
            let b1 = &breakpoints()[0];
            let (lo, hi) = (r(a.min(b), 1_000_000), r(a.max(b), 1_000_000));
            prop_assume!(lo >= *b1);
            prop_assert!(section_area(&lo).unwrap() >= section_area(&hi).unwrap());
        }

        #[test]
        fn area_coefficient_is_non_negative(eta in arb_eta()) {
            prop_assert!(section_area(&eta).unwrap().coeff.sign() >= 0);
        }
    }
}
