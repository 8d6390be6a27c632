//! Convex polygon kernel: half-plane clipping, intersection, shoelace area.

pub type Point2 = [f64; 2];

/// Vertices closer than this are merged after clipping.
pub const MERGE_EPS: f64 = 1e-12;

/// Clips `poly` to the half-plane `a·x + b·y ≤ c` (Sutherland–Hodgman, one edge).
pub fn clip_halfplane(poly: &[Point2], a: f64, b: f64, c: f64) -> Vec<Point2> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let f = |p: &Point2| a * p[0] + b * p[1] - c;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let (fs, fe) = (f(&s), f(&e));
        let s_in = fs <= 0.0;
        let e_in = fe <= 0.0;
        if s_in {
            out.push(s);
        }
        if s_in != e_in {
            let t = fs / (fs - fe);
            out.push([s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])]);
        }
    }
    dedup_ring(out)
}

/// Drops consecutive (cyclically) near-duplicate vertices.
pub fn dedup_ring(mut pts: Vec<Point2>) -> Vec<Point2> {
    let close = |p: &Point2, q: &Point2| {
        (p[0] - q[0]).abs() <= MERGE_EPS && (p[1] - q[1]).abs() <= MERGE_EPS
    };
    pts.dedup_by(|b, a| close(a, b));
    while pts.len() > 1 && close(&pts[0], pts.last().unwrap()) {
        pts.pop();
    }
    pts
}

/// Signed shoelace area (positive for counter-clockwise).
pub fn signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        acc += p[0] * q[1] - p[1] * q[0];
    }
    0.5 * acc
}

pub fn area(poly: &[Point2]) -> f64 {
    signed_area(poly).abs()
}

pub fn translate(poly: &[Point2], shift: Point2) -> Vec<Point2> {
    poly.iter()
        .map(|p| [p[0] + shift[0], p[1] + shift[1]])
        .collect()
}

/// Intersection of two convex polygons, `subject` clipped by each edge of the
/// counter-clockwise `clip`.
pub fn convex_intersection(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let n = clip.len();
    if n < 3 {
        return Vec::new();
    }
    let mut out = subject.to_vec();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let p = clip[i];
        let q = clip[(i + 1) % n];
        // Interior of a CCW polygon lies left of p→q: cross(q - p, x - p) ≥ 0.
        let a = q[1] - p[1];
        let b = -(q[0] - p[0]);
        let c = a * p[0] + b * p[1];
        out = clip_halfplane(&out, a, b, c);
    }
    out
}

/// Point-in-convex-polygon test for a CCW polygon (boundary counts as inside).
pub fn contains(poly: &[Point2], x: Point2) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    (0..n).all(|i| {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0]) >= 0.0
    })
}

/// Largest vertex-to-vertex distance.
pub fn diameter(poly: &[Point2]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in poly.iter().enumerate() {
        for q in &poly[i + 1..] {
            d = d.max(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
        }
    }
    d
}

/// True if every turn is a left turn (tolerance `eps`).
pub fn is_convex_ccw(poly: &[Point2], eps: f64) -> bool {
    let n = poly.len();
    if n < 3 {
        return true;
    }
    (0..n).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let c = poly[(i + 2) % n];
        (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) >= -eps
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(s: f64) -> Vec<Point2> {
        vec![[0.0, 0.0], [s, 0.0], [s, s], [0.0, s]]
    }

    #[test]
    fn unit_square_area() {
        assert_eq!(signed_area(&square(1.0)), 1.0);
        let mut cw = square(1.0);
        cw.reverse();
        assert_eq!(signed_area(&cw), -1.0);
        assert_eq!(area(&cw), 1.0);
    }

    #[test]
    fn clip_square_diagonally() {
        let tri = clip_halfplane(&square(2.0), 1.0, 1.0, 2.0);
        assert_eq!(tri.len(), 3);
        assert!((area(&tri) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn clip_away_everything() {
        assert!(clip_halfplane(&square(1.0), 1.0, 0.0, -1.0).is_empty());
    }

    #[test]
    fn overlapping_squares() {
        let a = square(2.0);
        let b = translate(&a, [1.0, 1.0]);
        let i = convex_intersection(&a, &b);
        assert!((area(&i) - 1.0).abs() < 1e-15);
        assert!(convex_intersection(&a, &translate(&a, [3.0, 0.0])).is_empty());
    }

    #[test]
    fn containment_and_diameter() {
        let a = square(1.0);
        assert!(contains(&a, [0.5, 0.5]));
        assert!(contains(&a, [1.0, 0.5]));
        assert!(!contains(&a, [1.1, 0.5]));
        assert!((diameter(&a) - 2f64.sqrt()).abs() < 1e-15);
        assert!(is_convex_ccw(&a, 0.0));
    }
}
