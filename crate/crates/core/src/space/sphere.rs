//! Unit-sphere sampling.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{SpaceDescriptor, Vector};
use crate::{Error, Result};

/// Sampling fails with [`Error::NotPositiveDefinite`] once more than this
/// fraction of directions has weight zero.
pub const ZERO_WEIGHT_FRACTION_LIMIT: f64 = 0.01;

/// Direction `k` of an `n`-point θ-uniform grid on the Euclidean circle.
/// Quarter-turn directions are exact axis vectors.
pub fn grid_direction(k: usize, n: usize) -> [f64; 2] {
    if (4 * k).is_multiple_of(n) {
        return match (4 * k / n) % 4 {
            0 => [1.0, 0.0],
            1 => [0.0, 1.0],
            2 => [-1.0, 0.0],
            _ => [0.0, -1.0],
        };
    }
    let theta = TAU * k as f64 / n as f64;
    [theta.cos(), theta.sin()]
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereSample {
    /// Direction angle of each returned point.
    pub angles: Vec<f64>,
    pub points: Vec<Vector>,
    /// Grid angles whose direction has weight zero.
    pub skipped: Vec<f64>,
}

/// Unit vectors along a θ-uniform grid of `resolution` directions.
pub fn sample_unit_sphere(space: &SpaceDescriptor, resolution: usize) -> Result<SphereSample> {
    if space.dimension() != 2 {
        return Err(Error::UnsupportedDimension { expected: 2, got: space.dimension() });
    }
    if resolution == 0 {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let mut out = SphereSample { angles: Vec::new(), points: Vec::new(), skipped: Vec::new() };
    for k in 0..resolution {
        let theta = TAU * k as f64 / resolution as f64;
        let dir = grid_direction(k, resolution);
        let w = space.weight(&dir)?;
        if w == 0.0 {
            out.skipped.push(theta);
        } else {
            out.angles.push(theta);
            out.points.push(Vector::xy(dir[0] / w, dir[1] / w));
        }
    }
    if out.skipped.len() as f64 > ZERO_WEIGHT_FRACTION_LIMIT * resolution as f64 {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(out)
}

/// `count` seeded unit vectors in any dimension, drawn from Gaussian
/// directions.
pub fn sample_unit_sphere_random(space: &SpaceDescriptor, count: usize, seed: u64) -> Result<Vec<Vector>> {
    let n = space.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut zero = 0usize;
    while out.len() < count {
        let g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let w = space.weight(&g)?;
        if w == 0.0 {
            zero += 1;
            if zero as f64 > ZERO_WEIGHT_FRACTION_LIMIT * count.max(100) as f64 {
                return Err(Error::NotPositiveDefinite);
            }
            continue;
        }
        out.push(Vector::new(g.iter().map(|c| c / w).collect())?);
    }
    Ok(out)
}
