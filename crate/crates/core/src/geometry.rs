//! Sum/difference geometry of a pair, the ρ-product and the ρ-angle.

use serde::Serialize;

use crate::space::SpaceDescriptor;
use crate::{Error, Result};

/// Cosines within this distance outside `[−1, 1]` are clamped.
pub const COSINE_CLAMP: f64 = 1e-12;

/// `s`, `d`, `Σ = s²+d²`, `Δ = s²−d²` of two nonzero vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairGeometry {
    pub s: f64,
    pub d: f64,
    pub sigma: f64,
    pub delta: f64,
}

impl PairGeometry {
    pub fn from_sd(s: f64, d: f64) -> Self {
        let (s2, d2) = (s * s, d * d);
        Self { s, d, sigma: s2 + d2, delta: s2 - d2 }
    }

    /// `(Δ/4)·(Σ/4)^ρ`.
    ///
    /// The exponents `0`, `1` and `−1` use the rational closed forms so they
    /// agree bit-for-bit with [`special_angle`].
    pub fn cosine(&self, rho: f64) -> Result<f64> {
        if !rho.is_finite() {
            return Err(Error::NonFinite(format!("rho = {rho}")));
        }
        if self.sigma == 0.0 {
            return Err(Error::DegenerateSigma);
        }
        Ok(if rho == 0.0 {
            self.delta / 4.0
        } else if rho == 1.0 {
            self.delta * self.sigma / 16.0
        } else if rho == -1.0 {
            self.delta / self.sigma
        } else if self.delta == 0.0 {
            0.0
        } else {
            self.delta / 4.0 * (rho * (self.sigma / 4.0).ln()).exp()
        })
    }
}

fn nonzero_weight(space: &SpaceDescriptor, x: &[f64]) -> Result<f64> {
    let w = space.weight(x)?;
    if w == 0.0 {
        return Err(Error::ZeroWeight);
    }
    if !w.is_finite() {
        return Err(Error::NonFinite(format!("weight {w}")));
    }
    Ok(w)
}

/// Geometry of the normalized pair `x/‖x‖`, `y/‖y‖`.
///
/// `s` and `d` are divided by `√(‖x̂‖·‖ŷ‖)`, which is `1` up to rounding; this
/// makes `(x, x)` give exactly `s = 2, d = 0` and `(x, −x)` exactly
/// `s = 0, d = 2`.
pub fn pair_geometry(space: &SpaceDescriptor, x: &[f64], y: &[f64]) -> Result<PairGeometry> {
    let nx = nonzero_weight(space, x)?;
    let ny = nonzero_weight(space, y)?;
    if y.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    let u: Vec<f64> = x.iter().map(|c| c / nx).collect();
    let v: Vec<f64> = y.iter().map(|c| c / ny).collect();
    unit_pair_geometry(space, &u, &v)
}

/// [`pair_geometry`] for vectors that are already (numerically) unit.
pub fn unit_pair_geometry(space: &SpaceDescriptor, u: &[f64], v: &[f64]) -> Result<PairGeometry> {
    let norm = (space.weight_unchecked(u)? * space.weight_unchecked(v)?).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroWeight);
    }
    let (sum, diff) = sum_diff(u, v);
    let s = space.weight_unchecked(&sum)? / norm;
    let d = space.weight_unchecked(&diff)? / norm;
    Ok(PairGeometry::from_sd(s, d))
}

fn sum_diff(u: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    (
        u.iter().zip(v).map(|(a, b)| a + b).collect(),
        u.iter().zip(v).map(|(a, b)| a - b).collect(),
    )
}

/// `⟨x|y⟩_ρ = ‖x‖·‖y‖·(Δ/4)·(Σ/4)^ρ`, and `0` when either weight vanishes.
pub fn rho_product(space: &SpaceDescriptor, x: &[f64], y: &[f64], rho: f64) -> Result<f64> {
    let nx = space.weight(x)?;
    let ny = space.weight(y)?;
    if nx == 0.0 || ny == 0.0 {
        return Ok(0.0);
    }
    let g = pair_geometry(space, x, y)?;
    Ok(nx * ny * g.cosine(rho)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleOutcome {
    pub cosine: f64,
    pub defined: bool,
    pub angle_rad: Option<f64>,
}

impl AngleOutcome {
    pub fn from_cosine(cosine: f64) -> Self {
        let defined = cosine.abs() <= 1.0 + COSINE_CLAMP;
        let angle_rad = defined.then(|| cosine.clamp(-1.0, 1.0).acos());
        Self { cosine, defined, angle_rad }
    }
}

/// `∠_ρ(x, y)`; undefined outcomes keep the offending cosine.
pub fn rho_angle(space: &SpaceDescriptor, x: &[f64], y: &[f64], rho: f64) -> Result<AngleOutcome> {
    let g = pair_geometry(space, x, y)?;
    Ok(AngleOutcome::from_cosine(g.cosine(rho)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpecialRho {
    One,
    Zero,
    MinusOne,
}

impl SpecialRho {
    pub fn value(self) -> f64 {
        match self {
            SpecialRho::One => 1.0,
            SpecialRho::Zero => 0.0,
            SpecialRho::MinusOne => -1.0,
        }
    }

    pub fn from_value(rho: f64) -> Option<Self> {
        match rho {
            1.0 => Some(SpecialRho::One),
            0.0 => Some(SpecialRho::Zero),
            -1.0 => Some(SpecialRho::MinusOne),
            _ => None,
        }
    }
}

/// Closed forms: `arccos((s⁴−d⁴)/16)`, `arccos(Δ/4)`, `arccos(Δ/Σ)`.
pub fn special_angle(space: &SpaceDescriptor, x: &[f64], y: &[f64], which: SpecialRho) -> Result<AngleOutcome> {
    let g = pair_geometry(space, x, y)?;
    let (s2, d2) = (g.s * g.s, g.d * g.d);
    let cosine = match which {
        // s⁴ − d⁴ factored as (s²−d²)(s²+d²)
        SpecialRho::One => (s2 - d2) * (s2 + d2) / 16.0,
        SpecialRho::Zero => (s2 - d2) / 4.0,
        SpecialRho::MinusOne => {
            if g.sigma == 0.0 {
                return Err(Error::DegenerateSigma);
            }
            (s2 - d2) / (s2 + d2)
        }
    };
    Ok(AngleOutcome::from_cosine(cosine))
}

/// The angle of the standard dot product.
pub fn euclid_angle(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    let nx = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let ny = y.iter().map(|c| c * c).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        return Err(Error::ZeroWeight);
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    Ok((dot / (nx * ny)).clamp(-1.0, 1.0).acos())
}

/// `|Δ/4|·(Σ/4)^ρ` for a pair, the quantity bounded by 1 under CSB.
pub fn csb_value(space: &SpaceDescriptor, x: &[f64], y: &[f64], rho: f64) -> Result<f64> {
    Ok(pair_geometry(space, x, y)?.cosine(rho)?.abs())
}
