//! Balanced weights on finite-dimensional real vector spaces.
//!
//! A [`SpaceDescriptor`] pairs a dimension with a weight [`Family`]. Every
//! two-dimensional family is evaluated through its unit-sphere radius, so a
//! single radial code path serves polygons, tables and the pathological
//! spheres alike.

mod json;
mod radial;
mod sphere;
mod structure;

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use radial::{RadialPolygon, RadialTable, MAX_TABLE_GAP};
pub use sphere::{
    grid_direction, sample_unit_sphere, sample_unit_sphere_random, SphereSample,
    ZERO_WEIGHT_FRACTION_LIMIT,
};
pub use structure::{structure_report, structure_report_seeded, StructureReport, WitnessPair};

/// A point of ℝⁿ with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("vector must have at least one coordinate".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("vector coordinate {bad}")));
        }
        Ok(Self(coords))
    }

    pub fn xy(x: f64, y: f64) -> Self {
        Self(vec![x, y])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, r: f64) -> Self {
        Self(self.0.iter().map(|c| c * r).collect())
    }

    pub fn add(&self, other: &[f64]) -> Self {
        Self(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &[f64]) -> Self {
        Self(self.0.iter().zip(other).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<[f64; 2]> for Vector {
    fn from(p: [f64; 2]) -> Self {
        Self(p.to_vec())
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A real number or ±∞. NaN is rejected at construction.
///
/// Serializes as a JSON number, or as the strings `"inf"` / `"-inf"`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);

    pub fn new(v: f64) -> Result<Self> {
        if v.is_nan() {
            Err(Error::InvalidParameter("extended real may not be NaN".into()))
        } else {
            Ok(Self(v))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl From<f64> for ExtReal {
    /// Panics on NaN; use [`ExtReal::new`] for untrusted input.
    fn from(v: f64) -> Self {
        Self::new(v).expect("ExtReal from NaN")
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl std::str::FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(Self::INFINITY),
            "-inf" | "-infinity" => Ok(Self::NEG_INFINITY),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("not an extended real: {other:?}")))
                .and_then(Self::new),
        }
    }
}

/// Generalized power mean of non-negative values, the rule shared by the
/// Hölder weights and by product weights.
///
/// * `p > 0`: `(Σ vᵢ^p)^{1/p}`
/// * `p < 0`: `(Σ vᵢ^p)^{1/p}` if every `vᵢ > 0`, else `0`
/// * `p = 0`: `0`
/// * `p = ±∞`: max / min
pub fn power_mean(p: f64, values: &[f64]) -> f64 {
    if p == f64::INFINITY {
        return values.iter().copied().fold(0.0, f64::max);
    }
    if p == f64::NEG_INFINITY {
        return values.iter().copied().fold(f64::INFINITY, f64::min);
    }
    if p == 0.0 {
        return 0.0;
    }
    if p > 0.0 {
        if p == 1.0 {
            return values.iter().sum();
        }
        let m = values.iter().copied().fold(0.0, f64::max);
        if m == 0.0 {
            return 0.0;
        }
        if p == 2.0 {
            return m * values.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt();
        }
        m * values.iter().map(|v| (v / m).powf(p)).sum::<f64>().powf(1.0 / p)
    } else {
        let m = values.iter().copied().fold(f64::INFINITY, f64::min);
        if m == 0.0 {
            return 0.0;
        }
        // (v/m) ≥ 1, so every term lies in (0, 1] and the sum in [1, n].
        m * values.iter().map(|v| (v / m).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// The weight families a [`SpaceDescriptor`] can carry.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Hölder weight `‖·‖_p` for `p ∈ ℝ ∪ {±∞}`; negative `p` is applied
    /// coordinatewise, which extends the planar definition to ℝⁿ.
    Hoelder { p: ExtReal },
    /// Polygonal sphere through `(0,1), (1,r), (1,−r), (0,−1), (−1,−r), (−1,r)`.
    Hexagon { r: f64 },
    /// Polygonal sphere through the given centrally symmetric vertices.
    PolygonSphere { vertices: Vec<[f64; 2]> },
    /// Sphere radius sampled at direction angles, interpolated linearly in θ.
    RadialTable { samples: Vec<(f64, f64)> },
    /// `‖(a, b)‖_p` built from the factor weights.
    Product { left: Box<SpaceDescriptor>, right: Box<SpaceDescriptor>, p: ExtReal },
    /// Sphere `|x|·|y| = 1`; every axis point has weight zero.
    PathologicalA,
    /// Euclidean circle with `(±1, 0)` replaced by `(±2, 0)`.
    PathologicalB,
    /// Euclidean circle with `(±1, 0)` replaced by `(±½, 0)`.
    PathologicalC,
}

#[derive(Clone, Debug)]
enum Kernel {
    PowerMean(f64),
    Polygon(RadialPolygon),
    Table(RadialTable),
    Product { split: usize, p: f64 },
    PathologicalA,
    /// Euclidean except on the first axis, where the weight is `|x|·factor`.
    AxisOverride(f64),
}

/// An immutable finite-dimensional space with a balanced weight.
///
/// The positive-definiteness and continuity flags are decided when the
/// descriptor is built.
#[derive(Clone, Debug)]
pub struct SpaceDescriptor {
    dimension: usize,
    family: Family,
    kernel: Kernel,
    positive_definite: bool,
    continuous_weight: bool,
}

impl PartialEq for SpaceDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.family == other.family
    }
}

impl SpaceDescriptor {
    /// Planar Hölder weight.
    pub fn hoelder(p: impl Into<ExtReal>) -> Self {
        Self::hoelder_n(p, 2).expect("dimension 2 is valid")
    }

    pub fn hoelder_n(p: impl Into<ExtReal>, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let p = p.into();
        Ok(Self {
            dimension,
            family: Family::Hoelder { p },
            kernel: Kernel::PowerMean(p.value()),
            positive_definite: p.value() > 0.0,
            continuous_weight: true,
        })
    }

    /// The real line with `|·|`.
    pub fn line() -> Self {
        Self::hoelder_n(2.0, 1).expect("dimension 1 is valid")
    }

    pub fn hexagon(r: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidParameter(format!("hexagon parameter r must be finite and ≥ 0, got {r}")));
        }
        let vertices = hexagon_vertices(r);
        let polygon = RadialPolygon::new(&vertices)?;
        Ok(Self {
            dimension: 2,
            family: Family::Hexagon { r },
            kernel: Kernel::Polygon(polygon),
            positive_definite: true,
            continuous_weight: true,
        })
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Result<Self> {
        let polygon = RadialPolygon::new(&vertices)?;
        Ok(Self {
            dimension: 2,
            family: Family::PolygonSphere { vertices },
            kernel: Kernel::Polygon(polygon),
            positive_definite: true,
            continuous_weight: true,
        })
    }

    pub fn radial_table(samples: Vec<(f64, f64)>) -> Result<Self> {
        let table = RadialTable::new(&samples)?;
        Ok(Self {
            dimension: 2,
            family: Family::RadialTable { samples },
            kernel: Kernel::Table(table),
            positive_definite: true,
            continuous_weight: true,
        })
    }

    /// `‖(a, b)‖_p` on `A × B`; coordinates of `A` come first.
    pub fn product(left: SpaceDescriptor, right: SpaceDescriptor, p: impl Into<ExtReal>) -> Self {
        let p = p.into();
        let split = left.dimension;
        let positive_definite = p.value() > 0.0 && left.positive_definite && right.positive_definite;
        let continuous_weight = left.continuous_weight && right.continuous_weight;
        Self {
            dimension: left.dimension + right.dimension,
            kernel: Kernel::Product { split, p: p.value() },
            family: Family::Product { left: Box::new(left), right: Box::new(right), p },
            positive_definite,
            continuous_weight,
        }
    }

    pub fn pathological_a() -> Self {
        Self {
            dimension: 2,
            family: Family::PathologicalA,
            kernel: Kernel::PathologicalA,
            positive_definite: false,
            continuous_weight: true,
        }
    }

    pub fn pathological_b() -> Self {
        Self {
            dimension: 2,
            family: Family::PathologicalB,
            kernel: Kernel::AxisOverride(0.5),
            positive_definite: true,
            continuous_weight: false,
        }
    }

    pub fn pathological_c() -> Self {
        Self {
            dimension: 2,
            family: Family::PathologicalC,
            kernel: Kernel::AxisOverride(2.0),
            positive_definite: true,
            continuous_weight: false,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_positive_definite(&self) -> bool {
        self.positive_definite
    }

    pub fn has_continuous_weight(&self) -> bool {
        self.continuous_weight
    }

    /// Exact sphere vertices (counter-clockwise) when the unit sphere is a
    /// polygon: polygon and hexagon families, and planar `‖·‖₁`, `‖·‖_∞`.
    pub fn exact_polygon(&self) -> Option<Vec<[f64; 2]>> {
        match (&self.kernel, self.dimension) {
            (Kernel::Polygon(poly), _) => Some(poly.vertices().to_vec()),
            (Kernel::PowerMean(p), 2) if *p == 1.0 => {
                Some(vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
            }
            (Kernel::PowerMean(p), 2) if *p == f64::INFINITY => {
                Some(vec![[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])
            }
            _ => None,
        }
    }

    /// Evaluates the weight, checking the dimension.
    pub fn weight(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, got: x.len() });
        }
        self.weight_unchecked(x)
    }

    pub(crate) fn weight_unchecked(&self, x: &[f64]) -> Result<f64> {
        match &self.kernel {
            Kernel::PowerMean(p) => Ok(power_mean_abs(*p, x)),
            Kernel::Polygon(poly) => Ok(poly.weight(x[0], x[1])),
            Kernel::Table(table) => table.weight(x[0], x[1]),
            Kernel::Product { split, p } => {
                let (left, right) = match &self.family {
                    Family::Product { left, right, .. } => (left, right),
                    _ => unreachable!("product kernel without product family"),
                };
                let a = left.weight_unchecked(&x[..*split])?;
                let b = right.weight_unchecked(&x[*split..])?;
                Ok(power_mean(*p, &[a, b]))
            }
            Kernel::PathologicalA => Ok((x[0].abs() * x[1].abs()).sqrt()),
            Kernel::AxisOverride(factor) => {
                if x[1] == 0.0 {
                    Ok(x[0].abs() * factor)
                } else {
                    Ok(x[0].hypot(x[1]))
                }
            }
        }
    }

    /// Returns `x / ‖x‖`.
    pub fn normalize(&self, x: &[f64]) -> Result<Vector> {
        let w = self.weight(x)?;
        if w == 0.0 {
            return Err(Error::ZeroWeight);
        }
        if !w.is_finite() {
            return Err(Error::NonFinite(format!("weight {w}")));
        }
        Ok(Vector(x.iter().map(|c| c / w).collect()))
    }

    /// Short human-readable identifier, e.g. `hoelder(p=1)`.
    pub fn label(&self) -> String {
        match &self.family {
            Family::Hoelder { p } if self.dimension == 2 => format!("hoelder(p={p})"),
            Family::Hoelder { p } => format!("hoelder(p={p},n={})", self.dimension),
            Family::Hexagon { r } => format!("hexagon(r={r})"),
            Family::PolygonSphere { vertices } => format!("polygon({} vertices)", vertices.len()),
            Family::RadialTable { samples } => format!("radial_table({} samples)", samples.len()),
            Family::Product { left, right, p } => {
                format!("product[{} x {}](p={p})", left.label(), right.label())
            }
            Family::PathologicalA => "pathological_a".into(),
            Family::PathologicalB => "pathological_b".into(),
            Family::PathologicalC => "pathological_c".into(),
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `product_space` under its operational name.
pub fn product_space(left: SpaceDescriptor, right: SpaceDescriptor, p: impl Into<ExtReal>) -> SpaceDescriptor {
    SpaceDescriptor::product(left, right, p)
}

/// Free-function form of [`SpaceDescriptor::weight`].
pub fn eval_weight(space: &SpaceDescriptor, x: &[f64]) -> Result<f64> {
    space.weight(x)
}

/// Free-function form of [`SpaceDescriptor::normalize`].
pub fn normalize(space: &SpaceDescriptor, x: &[f64]) -> Result<Vector> {
    space.normalize(x)
}

fn power_mean_abs(p: f64, x: &[f64]) -> f64 {
    match x {
        [a] => power_mean(p, &[a.abs()]),
        [a, b] => power_mean(p, &[a.abs(), b.abs()]),
        _ => {
            let abs: Vec<f64> = x.iter().map(|c| c.abs()).collect();
            power_mean(p, &abs)
        }
    }
}

pub(crate) fn hexagon_vertices(r: f64) -> Vec<[f64; 2]> {
    vec![[0.0, 1.0], [1.0, r], [1.0, -r], [0.0, -1.0], [-1.0, -r], [-1.0, r]]
}
