//! Radial evaluation for planar weights given by their unit sphere.

use std::f64::consts::{PI, TAU};

use crate::{Error, Result};

/// Largest angular gap between neighbouring table samples (after mirroring)
/// across which [`RadialTable`] still interpolates.
pub const MAX_TABLE_GAP: f64 = PI / 2.0;

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Maps `x` and `−x` to the same representative in the closed upper
/// half-plane (minus the negative axis), so balanced evaluation is exact.
fn canonical(x: f64, y: f64) -> (f64, f64) {
    if y < 0.0 || (y == 0.0 && x < 0.0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// A star-shaped polygonal unit sphere, centrally symmetric.
#[derive(Clone, Debug)]
pub struct RadialPolygon {
    vertices: Vec<[f64; 2]>,
    angles: Vec<f64>,
}

impl RadialPolygon {
    pub fn new(vertices: &[[f64; 2]]) -> Result<Self> {
        if vertices.len() < 4 {
            return Err(Error::InvalidParameter(format!(
                "polygon sphere needs at least 4 vertices, got {}",
                vertices.len()
            )));
        }
        for v in vertices {
            if !(v[0].is_finite() && v[1].is_finite()) {
                return Err(Error::NonFinite(format!("polygon vertex {v:?}")));
            }
            if v[0] == 0.0 && v[1] == 0.0 {
                return Err(Error::InvalidParameter("polygon vertex at the origin".into()));
            }
            let scale = v[0].abs().max(v[1].abs());
            let mirrored = vertices
                .iter()
                .any(|w| (w[0] + v[0]).abs() <= 1e-12 * scale && (w[1] + v[1]).abs() <= 1e-12 * scale);
            if !mirrored {
                return Err(Error::InvalidParameter(format!(
                    "polygon is not centrally symmetric: {v:?} has no negation"
                )));
            }
        }

        // `+ 0.0` folds −0 into +0 so atan2 puts (x, ±0) in one place
        let mut sorted: Vec<(f64, [f64; 2])> =
            vertices.iter().map(|v| [v[0] + 0.0, v[1] + 0.0]).map(|v| (v[1].atan2(v[0]), v)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        sorted.dedup_by(|b, a| a.1 == b.1);

        let n = sorted.len();
        for k in 0..n {
            let a = sorted[k].1;
            let b = sorted[(k + 1) % n].1;
            if cross(a, b) <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "polygon vertices {a:?} and {b:?} do not bound a proper sector"
                )));
            }
        }

        Ok(Self {
            angles: sorted.iter().map(|s| s.0).collect(),
            vertices: sorted.into_iter().map(|s| s.1).collect(),
        })
    }

    /// Distinct vertices sorted counter-clockwise by angle in `(−π, π]`.
    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn weight(&self, x: f64, y: f64) -> f64 {
        if x == 0.0 && y == 0.0 {
            return 0.0;
        }
        let (x, y) = canonical(x, y);
        let theta = y.atan2(x);
        let n = self.vertices.len();
        let k = match self.angles.partition_point(|&a| a <= theta) {
            0 => n - 1,
            i => i - 1,
        };
        let a = self.vertices[k];
        let b = self.vertices[(k + 1) % n];
        cross([x, y], [b[0] - a[0], b[1] - a[1]]) / cross(a, b)
    }
}

/// Sphere radius samples `R(θ)`, linearly interpolated in `θ`.
///
/// Each sample is mirrored to `θ + π`, so a table over a half-turn suffices.
#[derive(Clone, Debug)]
pub struct RadialTable {
    thetas: Vec<f64>,
    radii: Vec<f64>,
}

impl RadialTable {
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidParameter("radial table is empty".into()));
        }
        let mut points = Vec::with_capacity(2 * samples.len());
        for &(theta, r) in samples {
            if !(theta.is_finite() && r.is_finite()) {
                return Err(Error::NonFinite(format!("radial sample ({theta}, {r})")));
            }
            if r <= 0.0 {
                return Err(Error::InvalidParameter(format!("radial sample radius must be > 0, got {r}")));
            }
            let t = theta.rem_euclid(TAU);
            points.push((t, r));
            points.push(((t + PI).rem_euclid(TAU), r));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(points.len());
        for (t, r) in points {
            match merged.last() {
                Some(&(lt, lr)) if (t - lt).abs() <= 1e-12 => {
                    if (r - lr).abs() > 1e-12 * r.max(lr) {
                        return Err(Error::InvalidParameter(format!(
                            "radial table has conflicting radii {lr} and {r} at θ = {t}"
                        )));
                    }
                }
                _ => merged.push((t, r)),
            }
        }
        Ok(Self {
            thetas: merged.iter().map(|p| p.0).collect(),
            radii: merged.iter().map(|p| p.1).collect(),
        })
    }

    /// Interpolated radius in direction `theta`.
    pub fn radius(&self, theta: f64) -> Result<f64> {
        let t = theta.rem_euclid(TAU);
        let n = self.thetas.len();
        let i = self.thetas.partition_point(|&a| a <= t);
        let (lo, hi) = match i {
            0 => (n - 1, 0),
            i if i == n => (n - 1, 0),
            i => (i - 1, i),
        };
        let (t0, t1) = (self.thetas[lo], self.thetas[hi]);
        let gap = (t1 - t0).rem_euclid(TAU);
        let gap = if n == 1 || gap == 0.0 { TAU } else { gap };
        let offset = (t - t0).rem_euclid(TAU);
        if offset == 0.0 {
            return Ok(self.radii[lo]);
        }
        if gap > MAX_TABLE_GAP {
            return Err(Error::Unbracketed { theta });
        }
        let w = offset / gap;
        Ok(self.radii[lo] * (1.0 - w) + self.radii[hi] * w)
    }

    pub fn weight(&self, x: f64, y: f64) -> Result<f64> {
        if x == 0.0 && y == 0.0 {
            return Ok(0.0);
        }
        let (x, y) = canonical(x, y);
        Ok(x.hypot(y) / self.radius(y.atan2(x))?)
    }
}
