//! Corners, flat segments and curvature of planar unit spheres.
//!
//! A corner `ŷ` comes with a transverse direction `x̄` and two slopes
//! `m₋ < m₊`. For a convex corner the sphere contains
//!
//! ```text
//! δ·x̄ + (1 + δ·m₋)·ŷ   and   −δ·x̄ + (1 − δ·m₊)·ŷ     for δ ∈ [0, δ_max];
//! ```
//!
//! a concave corner has `m₋` and `m₊` exchanged.
//!
//! Polygonal spheres use their exact vertices. Other spheres are sampled on a
//! θ-uniform grid and split into maximal straight runs.

use serde::Serialize;

use crate::geometry::{rho_product, unit_pair_geometry};
use crate::space::{sample_unit_sphere, structure_report, Family, SpaceDescriptor, Vector};
use crate::{Error, Result};

/// Relative collinearity tolerance (sine of the turning angle).
pub const COLLINEAR_TOL: f64 = 1e-9;
/// Allowed deviation from weight 1 when verifying a corner.
pub const CORNER_TOL: f64 = 1e-9;
/// Default sampling resolution for non-polygonal spheres.
pub const DEFAULT_RESOLUTION: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerKind {
    Convex,
    Concave,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CornerWitness {
    pub y_hat: Vector,
    pub x_bar: Vector,
    pub m_minus: f64,
    pub m_plus: f64,
    pub kind: CornerKind,
    pub delta_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatSegment {
    pub start: Vector,
    pub end: Vector,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub strictly_convex: bool,
    pub strictly_curved: bool,
    pub flat_segments: Vec<FlatSegment>,
    pub corners: Vec<CornerWitness>,
    pub exact_polygon: bool,
    pub resolution: usize,
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm2(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

fn turn_is_straight(prev: [f64; 2], p: [f64; 2], next: [f64; 2]) -> bool {
    let (e1, e2) = (sub(p, prev), sub(next, p));
    cross(e1, e2).abs() <= COLLINEAR_TOL * norm2(e1) * norm2(e2)
}

/// Exact vertices when the sphere is a polygon, with collinear vertices
/// dropped.
fn exact_outline(space: &SpaceDescriptor) -> Option<Vec<[f64; 2]>> {
    let mut v = space.exact_polygon().or_else(|| match space.family() {
        Family::Product { left, right, p } if left.dimension() == 1 && right.dimension() == 1 => {
            SpaceDescriptor::hoelder(*p).exact_polygon()
        }
        _ => None,
    })?;
    loop {
        let n = v.len();
        let drop = (0..n).find(|&k| turn_is_straight(v[(k + n - 1) % n], v[k], v[(k + 1) % n]));
        match drop {
            Some(k) if n > 3 => {
                v.remove(k);
            }
            _ => return Some(v),
        }
    }
}

struct Outline {
    points: Vec<[f64; 2]>,
    exact: bool,
    /// Straight runs as `(first point, edge count)`; indices wrap around.
    runs: Vec<(usize, usize)>,
}

impl Outline {
    fn at(&self, i: usize) -> [f64; 2] {
        self.points[i % self.points.len()]
    }
}

fn outline(space: &SpaceDescriptor, resolution: usize, allow_exact: bool) -> Result<Outline> {
    if space.dimension() != 2 {
        return Err(Error::UnsupportedDimension { expected: 2, got: space.dimension() });
    }
    if let Some(points) = exact_outline(space).filter(|_| allow_exact) {
        let runs = (0..points.len()).map(|k| (k, 1)).collect();
        return Ok(Outline { points, exact: true, runs });
    }
    let sample = sample_unit_sphere(space, resolution)?;
    let points: Vec<[f64; 2]> = sample.points.iter().map(|p| [p[0], p[1]]).collect();
    let n = points.len();
    if n < 3 {
        return Err(Error::InvalidParameter("too few sphere samples".into()));
    }
    let straight: Vec<bool> =
        (0..n).map(|i| turn_is_straight(points[(i + n - 1) % n], points[i], points[(i + 1) % n])).collect();
    let mut runs = Vec::new();
    if let Some(start) = straight.iter().position(|s| !s) {
        let mut i = start + 1;
        while i < start + 1 + n {
            if straight[i % n] {
                let first = i;
                while straight[i % n] {
                    i += 1;
                }
                // interior points first..i-1, so the run spans first-1..=i
                runs.push(((first - 1) % n, i - first + 1));
            } else {
                i += 1;
            }
        }
    }
    Ok(Outline { points, exact: false, runs })
}

/// Frame at a corner from the two edge directions leaving it.
fn corner_frame(y: [f64; 2], e_a: [f64; 2], e_b: [f64; 2]) -> Option<([f64; 2], f64, f64, f64, f64)> {
    let ny = norm2(y);
    let x_bar = [y[1] / ny, -y[0] / ny];
    let split = |e: [f64; 2]| {
        let alpha = e[0] * x_bar[0] + e[1] * x_bar[1];
        let beta = (e[0] * y[0] + e[1] * y[1]) / (ny * ny);
        (alpha, beta)
    };
    let (aa, ba) = split(e_a);
    let (ab, bb) = split(e_b);
    // (α, β) on the +x̄ side and on the −x̄ side
    let ((ap, bp), (am, bm)) = if aa > 0.0 && ab < 0.0 {
        ((aa, ba), (ab, bb))
    } else if ab > 0.0 && aa < 0.0 {
        ((ab, bb), (aa, ba))
    } else {
        return None;
    };
    Some((x_bar, bp / ap, bm / am, ap, -am))
}

fn make_witness(space: &SpaceDescriptor, y: [f64; 2], far_a: [f64; 2], far_b: [f64; 2]) -> Result<Option<CornerWitness>> {
    let w = space.weight(&y)?;
    if w == 0.0 {
        return Ok(None);
    }
    let y = [y[0] / w, y[1] / w];
    let Some((x_bar, a, b, reach_p, reach_m)) = corner_frame(y, sub(far_a, y), sub(far_b, y)) else {
        return Ok(None);
    };
    if a == b {
        return Ok(None);
    }
    let (kind, m_minus, m_plus) = if a < b { (CornerKind::Convex, a, b) } else { (CornerKind::Concave, b, a) };
    let mut witness = CornerWitness {
        y_hat: Vector::xy(y[0], y[1]),
        x_bar: Vector::xy(x_bar[0], x_bar[1]),
        m_minus,
        m_plus,
        kind,
        delta_max: reach_p.min(reach_m).min(1.0),
    };
    for _ in 0..40 {
        let deltas: Vec<f64> = (1..=10).map(|k| witness.delta_max * k as f64 / 10.0).collect();
        if verify_corner(space, &witness, &deltas) {
            return Ok(Some(witness));
        }
        witness.delta_max /= 2.0;
    }
    Ok(None)
}

/// Corners of a planar sphere, ordered by angle.
pub fn find_corners(space: &SpaceDescriptor, resolution: usize) -> Result<Vec<CornerWitness>> {
    corners_from(space, resolution, true)
}

fn corners_from(space: &SpaceDescriptor, resolution: usize, allow_exact: bool) -> Result<Vec<CornerWitness>> {
    if !space.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let o = outline(space, resolution, allow_exact)?;
    let n = o.points.len();
    let r = o.runs.len();
    let mut out = Vec::new();
    for k in 0..r {
        let (a_first, a_len) = o.runs[k];
        let (b_first, b_len) = o.runs[(k + 1) % r];
        let a_end = a_first + a_len;
        let corner = match (b_first + n - a_end % n) % n {
            0 => o.at(a_end),
            1 => {
                // the corner falls between two samples: intersect the run lines
                let (p1, p2) = (o.at(a_first), o.at(a_end));
                let (q1, q2) = (o.at(b_first), o.at(b_first + b_len));
                let (da, db) = (sub(p2, p1), sub(q2, q1));
                let den = cross(da, db);
                if den == 0.0 {
                    continue;
                }
                let t = cross(sub(q1, p1), db) / den;
                [p1[0] + t * da[0], p1[1] + t * da[1]]
            }
            _ => continue,
        };
        if let Some(w) = make_witness(space, corner, o.at(a_first), o.at(b_first + b_len))? {
            out.push(w);
        }
    }
    if o.exact {
        // edge k ends at vertex k+1; report corners starting from vertex 0
        let k = 1.min(out.len());
        out.rotate_right(k);
    }
    Ok(out)
}

/// The two vectors the corner definition requires to be unit at `delta`.
pub fn corner_vectors(w: &CornerWitness, delta: f64) -> (Vector, Vector) {
    let (first, second) = match w.kind {
        CornerKind::Convex => (w.m_minus, w.m_plus),
        CornerKind::Concave => (w.m_plus, w.m_minus),
    };
    let (x, y) = (&w.x_bar, &w.y_hat);
    let p = Vector::xy(delta * x[0] + (1.0 + delta * first) * y[0], delta * x[1] + (1.0 + delta * first) * y[1]);
    let q = Vector::xy(-delta * x[0] + (1.0 - delta * second) * y[0], -delta * x[1] + (1.0 - delta * second) * y[1]);
    (p, q)
}

/// Checks both defining identities at every `delta` to [`CORNER_TOL`].
pub fn verify_corner(space: &SpaceDescriptor, w: &CornerWitness, deltas: &[f64]) -> bool {
    deltas.iter().all(|&d| {
        let (p, q) = corner_vectors(w, d);
        match (space.weight(&p), space.weight(&q)) {
            (Ok(a), Ok(b)) => (a - 1.0).abs() <= CORNER_TOL && (b - 1.0).abs() <= CORNER_TOL,
            _ => false,
        }
    })
}

/// `⟨p|q⟩_ρ` of the corner pair at `delta`, computed directly and from the
/// series `T·B^ρ` with
/// `T = 1 + δD + δ²K₋/4`, `B = 1 + δD + δ²K₊/4`, `K∓ = D² ∓ ‖2x̄ + (m₋+m₊)ŷ‖²`,
/// where `D = m₋ − m₊` for a convex corner and `m₊ − m₋` for a concave one.
pub fn corner_pair_product(space: &SpaceDescriptor, w: &CornerWitness, delta: f64, rho: f64) -> Result<(f64, f64)> {
    let (p, q) = corner_vectors(w, delta);
    let numeric = rho_product(space, &p, &q, rho)?;
    let dd = match w.kind {
        CornerKind::Convex => w.m_minus - w.m_plus,
        CornerKind::Concave => w.m_plus - w.m_minus,
    };
    let sm = w.m_minus + w.m_plus;
    let l = space.weight(&[2.0 * w.x_bar[0] + sm * w.y_hat[0], 2.0 * w.x_bar[1] + sm * w.y_hat[1]])?;
    let k_minus = dd * dd - l * l;
    let k_plus = dd * dd + l * l;
    let t = 1.0 + delta * dd + delta * delta * k_minus / 4.0;
    let b = 1.0 + delta * dd + delta * delta * k_plus / 4.0;
    let analytic = if rho == 0.0 { t } else { t * b.powf(rho) };
    Ok((numeric, analytic))
}

/// Flat segments and corners; `strictly_convex` also requires the sampled
/// triangle inequality.
pub fn curvature_report(space: &SpaceDescriptor, resolution: usize) -> Result<CurvatureReport> {
    let o = outline(space, resolution, true)?;
    let flat_segments: Vec<FlatSegment> = o
        .runs
        .iter()
        .map(|&(a, len)| FlatSegment { start: Vector::from(o.at(a)), end: Vector::from(o.at(a + len)) })
        .collect();
    let corners = if space.is_positive_definite() { find_corners(space, resolution)? } else { Vec::new() };
    let strictly_curved = flat_segments.is_empty() && corners.is_empty();
    let strictly_convex = strictly_curved && structure_report(space, 1000, 1e-9)?.triangle_inequality_holds;
    Ok(CurvatureReport { strictly_convex, strictly_curved, flat_segments, corners, exact_polygon: o.exact, resolution })
}

/// `(1 − t²)·(1 + t²)^ρ`, the CSB ratio of the pair `z ± t·w` on a flat
/// segment through `z` with direction `w`.
pub fn flat_segment_value(t: f64, rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t must lie in [0, 1), got {t}")));
    }
    let t2 = t * t;
    Ok((1.0 - t2) * (1.0 + t2).powf(rho))
}

/// `−log(1 − t²)/log(1 + t²)`: the exponent above which the flat-segment pair
/// at `t` violates CSB.
pub fn flat_segment_threshold(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter(format!("t must lie in (0, 1), got {t}")));
    }
    let t2 = t * t;
    Ok(-(-t2).ln_1p() / t2.ln_1p())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatSegmentWitness {
    pub z: Vector,
    pub w: Vector,
    pub t: f64,
    pub x: Vector,
    pub y: Vector,
    /// `|Δ/4|·(Σ/4)^ρ` of `(x, y)`.
    pub value: f64,
    /// `(1 − t²)·(1 + t²)^ρ`.
    pub analytic: f64,
}

/// The pair `z ± t·w` on a flat segment with `t` maximizing the ratio at
/// `rho > 1`, clipped to the segment.
pub fn flat_segment_witness(space: &SpaceDescriptor, seg: &FlatSegment, rho: f64) -> Result<FlatSegmentWitness> {
    if !(rho > 1.0) {
        return Err(Error::InvalidParameter(format!("flat-segment witnesses need rho > 1, got {rho}")));
    }
    let z: Vec<f64> = seg.start.iter().zip(seg.end.iter()).map(|(a, b)| 0.5 * (a + b)).collect();
    let dir = seg.end.sub(&seg.start);
    let len = space.weight(&dir)?;
    if len == 0.0 {
        return Err(Error::ZeroWeight);
    }
    let w = dir.scaled(1.0 / len);
    let t = ((rho - 1.0) / (rho + 1.0)).sqrt().min(0.5 * len * (1.0 - 1e-9));
    let x = Vector::new(z.iter().zip(w.iter()).map(|(a, b)| a + t * b).collect())?;
    let y = Vector::new(z.iter().zip(w.iter()).map(|(a, b)| a - t * b).collect())?;
    let value = unit_pair_geometry(space, &x, &y)?.cosine(rho)?.abs();
    Ok(FlatSegmentWitness { z: Vector::new(z)?, w, t, x, y, value, analytic: flat_segment_value(t, rho)? })
}

/// `E(t) = ¼(‖v + u‖² − ‖v − u‖²)` with `u = (w + t·v)/‖w + t·v‖`.
pub fn e_map(space: &SpaceDescriptor, v: &[f64], w: &[f64], t: f64) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: v.len(), got: w.len() });
    }
    let z: Vec<f64> = w.iter().zip(v).map(|(a, b)| a + t * b).collect();
    let u = space.normalize(&z)?;
    let plus: Vec<f64> = v.iter().zip(u.iter()).map(|(a, b)| a + b).collect();
    let minus: Vec<f64> = v.iter().zip(u.iter()).map(|(a, b)| a - b).collect();
    let (s, d) = (space.weight(&plus)?, space.weight(&minus)?);
    Ok(0.25 * (s * s - d * d))
}

/// Sphere polyline as CSV with header `theta,x,y`.
pub fn sphere_csv(space: &SpaceDescriptor, resolution: usize) -> Result<String> {
    let sample = sample_unit_sphere(space, resolution)?;
    let mut out = String::from("theta,x,y\n");
    for (theta, p) in sample.angles.iter().zip(&sample.points) {
        out.push_str(&format!("{},{},{}\n", crate::fmt::sig12(*theta), crate::fmt::sig12(p[0]), crate::fmt::sig12(p[1])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deltas() -> Vec<f64> {
        (1..=10).map(|k| k as f64 / 10.0).collect()
    }

    #[test]
    fn taxicab_corners() {
        let corners = find_corners(&SpaceDescriptor::hoelder(1.0), DEFAULT_RESOLUTION).unwrap();
        assert_eq!(corners.len(), 4);
        for c in &corners {
            assert_eq!(c.kind, CornerKind::Convex);
            assert!(c.y_hat[0] == 0.0 || c.y_hat[1] == 0.0);
            assert_eq!((c.m_minus, c.m_plus), (-1.0, 1.0));
            assert_eq!(c.delta_max, 1.0);
        }
    }

    #[test]
    fn hexagon_concave_corner() {
        let hex = SpaceDescriptor::hexagon(2.0).unwrap();
        let corners = find_corners(&hex, DEFAULT_RESOLUTION).unwrap();
        assert_eq!(corners.len(), 6);
        let top = corners.iter().find(|c| c.y_hat[..] == [0.0, 1.0]).unwrap();
        assert_eq!(top.kind, CornerKind::Concave);
        assert_eq!(&top.x_bar[..], &[1.0, 0.0]);
        assert_eq!((top.m_minus, top.m_plus), (-1.0, 1.0));
        assert!(verify_corner(&hex, top, &deltas()));
        let convex = corners.iter().filter(|c| c.kind == CornerKind::Convex).count();
        assert_eq!(convex, 4);
        let side = corners.iter().find(|c| c.y_hat[..] == [1.0, 2.0]).unwrap();
        assert!((side.delta_max - 1.0 / 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn smooth_sphere_has_no_corners() {
        assert!(find_corners(&SpaceDescriptor::hoelder(2.0), DEFAULT_RESOLUTION).unwrap().is_empty());
    }

    #[test]
    fn perturbed_witness_fails() {
        let hex = SpaceDescriptor::hexagon(2.0).unwrap();
        let mut w = find_corners(&hex, 64).unwrap().into_iter().find(|c| c.kind == CornerKind::Concave).unwrap();
        w.m_plus += 0.05;
        assert!(!verify_corner(&hex, &w, &deltas()));
    }

    #[test]
    fn corner_pair_product_series() {
        let hex = SpaceDescriptor::hexagon(2.0).unwrap();
        let w = CornerWitness {
            y_hat: Vector::xy(0.0, 1.0),
            x_bar: Vector::xy(1.0, 0.0),
            m_minus: -1.0,
            m_plus: 1.0,
            kind: CornerKind::Concave,
            delta_max: 1.0,
        };
        let (n, a) = corner_pair_product(&hex, &w, 1.0, 0.0).unwrap();
        assert_eq!((n, a), (3.0, 3.0));
        let l1 = SpaceDescriptor::hoelder(1.0);
        let w = CornerWitness { kind: CornerKind::Convex, ..w };
        let (n, a) = corner_pair_product(&l1, &w, 0.0, 0.7).unwrap();
        assert_eq!((n, a), (1.0, 1.0));
        let (n, a) = corner_pair_product(&l1, &w, 0.01, -1.5).unwrap();
        assert!(n > 1.0 && (n - a).abs() < 1e-12);
    }

    #[test]
    fn curvature_examples() {
        let r = curvature_report(&SpaceDescriptor::hoelder(0.5), DEFAULT_RESOLUTION).unwrap();
        assert!(r.strictly_curved && !r.strictly_convex);
        let r = curvature_report(&SpaceDescriptor::hoelder(1.0), DEFAULT_RESOLUTION).unwrap();
        assert!(!r.strictly_curved && !r.strictly_convex);
        assert_eq!(r.flat_segments.len(), 4);
        let r = curvature_report(&SpaceDescriptor::hoelder(3.0), DEFAULT_RESOLUTION).unwrap();
        assert!(r.strictly_curved && r.strictly_convex, "{:?}", r.flat_segments.len());
    }

    #[test]
    fn sampled_outline_finds_corners() {
        let l1 = SpaceDescriptor::hoelder(1.0);
        let sampled = corners_from(&l1, 4096, false).unwrap();
        assert_eq!(sampled.len(), 4);
        assert!(sampled.iter().all(|c| c.kind == CornerKind::Convex));
        assert!(sampled.iter().all(|c| (c.m_minus + 1.0).abs() < 1e-9 && (c.m_plus - 1.0).abs() < 1e-9));

        // (±1, ±2) fall between grid directions
        let hex = SpaceDescriptor::hexagon(2.0).unwrap();
        let sampled = corners_from(&hex, 4096, false).unwrap();
        assert_eq!(sampled.len(), 6);
        let side = sampled.iter().find(|c| c.y_hat[0] > 0.5 && c.y_hat[1] > 0.5).unwrap();
        assert!((side.y_hat[0] - 1.0).abs() < 1e-9 && (side.y_hat[1] - 2.0).abs() < 1e-9);
        assert_eq!(side.kind, CornerKind::Convex);
        assert_eq!(sampled.iter().filter(|c| c.kind == CornerKind::Concave).count(), 2);
    }

    #[test]
    fn flat_segment_helpers() {
        assert_eq!(flat_segment_value(0.0, 3.0).unwrap(), 1.0);
        assert_eq!(flat_segment_value(0.5, 2.0).unwrap(), 1.171875);
        assert!((flat_segment_threshold(1e-3).unwrap() - 1.0).abs() < 1e-5);
        assert!(flat_segment_value(1.0, 0.0).is_err());
    }

    #[test]
    fn e_map_examples() {
        let e = SpaceDescriptor::hoelder(2.0);
        let v = [1.0, 0.0];
        let w = [0.0, 1.0];
        assert!((e_map(&e, &v, &w, 1.0).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((e_map(&e, &v, &w, 1e6).unwrap() - 1.0).abs() < 1e-6);
        assert!((e_map(&e, &v, &w, -1e6).unwrap() + 1.0).abs() < 1e-6);
        let l1 = SpaceDescriptor::hoelder(1.0);
        let g = unit_pair_geometry(&l1, &[0.5, 0.5], &w).unwrap();
        assert_eq!(e_map(&l1, &[0.5, 0.5], &w, 0.0).unwrap(), g.delta / 4.0);
    }
}
