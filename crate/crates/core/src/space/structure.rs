//! Sampled checks of positive definiteness, the triangle inequality and the
//! parallelogram identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{grid_direction, SpaceDescriptor, Vector};
use crate::Result;

/// Number of grid directions used for deterministic planar pairs.
const GRID: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessPair {
    pub x: Vector,
    pub y: Vector,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub is_positive_definite: bool,
    /// A nonzero vector of weight zero, if one was sampled.
    pub zero_weight_witness: Option<Vector>,
    pub triangle_inequality_holds: bool,
    /// `lhs = ‖x+y‖`, `rhs = ‖x‖+‖y‖`.
    pub triangle_witness: Option<WitnessPair>,
    pub parallelogram_identity_holds: bool,
    /// `lhs = ‖x+y‖²+‖x−y‖²`, `rhs = 2‖x‖²+2‖y‖²`.
    pub parallelogram_witness: Option<WitnessPair>,
    pub sample_count: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub ip_candidate: bool,
}

fn deterministic_pairs(n: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    let basis = |i: usize| {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        e
    };
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((basis(i), basis(j)));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut s = basis(i);
            s[j] = 1.0;
            let mut d = basis(i);
            d[j] = -1.0;
            pairs.push((s, d));
        }
    }
    if n == 2 {
        for a in 0..GRID {
            for b in 0..GRID {
                pairs.push((grid_direction(a, GRID).to_vec(), grid_direction(b, GRID).to_vec()));
            }
        }
    }
    pairs
}

/// Checks the structural conditions with [`crate::DEFAULT_SEED`].
pub fn structure_report(space: &SpaceDescriptor, samples: usize, tol: f64) -> Result<StructureReport> {
    structure_report_seeded(space, samples, tol, crate::DEFAULT_SEED)
}

/// Evaluates each condition on the deterministic pairs (basis pairs, then a
/// planar direction grid) followed by `samples` seeded random pairs. The first
/// failing pair is kept as witness.
pub fn structure_report_seeded(space: &SpaceDescriptor, samples: usize, tol: f64, seed: u64) -> Result<StructureReport> {
    let n = space.dimension();
    let mut pairs = deterministic_pairs(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        pairs.push((x, y));
    }

    let mut zero_weight_witness = None;
    let mut triangle_witness = None;
    let mut parallelogram_witness = None;
    for (x, y) in &pairs {
        let nx = space.weight(x)?;
        let ny = space.weight(y)?;
        if zero_weight_witness.is_none() {
            for (v, w) in [(x, nx), (y, ny)] {
                if w == 0.0 && v.iter().any(|c| *c != 0.0) {
                    zero_weight_witness = Some(Vector::new(v.clone())?);
                    break;
                }
            }
        }
        let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        let ns = space.weight(&sum)?;
        let nd = space.weight(&diff)?;

        if triangle_witness.is_none() {
            let rhs = nx + ny;
            if ns > rhs + tol * rhs.max(1.0) {
                triangle_witness =
                    Some(WitnessPair { x: Vector::new(x.clone())?, y: Vector::new(y.clone())?, lhs: ns, rhs });
            }
        }
        if parallelogram_witness.is_none() {
            let lhs = ns * ns + nd * nd;
            let rhs = 2.0 * nx * nx + 2.0 * ny * ny;
            if (lhs - rhs).abs() > tol * rhs.max(1.0) {
                parallelogram_witness =
                    Some(WitnessPair { x: Vector::new(x.clone())?, y: Vector::new(y.clone())?, lhs, rhs });
            }
        }
    }

    let is_positive_definite = space.is_positive_definite() && zero_weight_witness.is_none();
    let triangle_inequality_holds = triangle_witness.is_none();
    let parallelogram_identity_holds = parallelogram_witness.is_none();
    Ok(StructureReport {
        is_positive_definite,
        zero_weight_witness,
        triangle_inequality_holds,
        triangle_witness,
        parallelogram_identity_holds,
        parallelogram_witness,
        sample_count: pairs.len(),
        tolerance: tol,
        seed,
        ip_candidate: is_positive_definite && triangle_inequality_holds && parallelogram_identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_plane_is_ip_candidate() {
        let r = structure_report(&SpaceDescriptor::hoelder(2.0), 1000, 1e-12).unwrap();
        assert!(r.is_positive_definite && r.triangle_inequality_holds && r.parallelogram_identity_holds);
        assert!(r.ip_candidate);
    }

    #[test]
    fn taxicab_parallelogram_witness() {
        let r = structure_report(&SpaceDescriptor::hoelder(1.0), 1000, 1e-12).unwrap();
        assert!(r.triangle_inequality_holds);
        let w = r.parallelogram_witness.unwrap();
        assert_eq!((&w.x[..], &w.y[..]), (&[1.0, 0.0][..], &[0.0, 1.0][..]));
        assert_eq!((w.lhs, w.rhs), (8.0, 4.0));
        assert!(!r.ip_candidate);
    }

    #[test]
    fn half_hoelder_breaks_triangle() {
        let r = structure_report(&SpaceDescriptor::hoelder(0.5), 1000, 1e-12).unwrap();
        assert!(r.is_positive_definite);
        let w = r.triangle_witness.unwrap();
        assert!(w.lhs > w.rhs);
    }

    #[test]
    fn pathological_a_is_not_positive_definite() {
        let r = structure_report(&SpaceDescriptor::pathological_a(), 100, 1e-12).unwrap();
        assert!(!r.is_positive_definite);
        assert!(r.zero_weight_witness.is_some());
    }
}
