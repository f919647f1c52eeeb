//! Generalized ρ-angles on balanced-weighted vector spaces.
//!
//! A *balanced weight* on ℝⁿ is an absolutely homogeneous functional
//! `‖r·x‖ = |r|·‖x‖`; it need not satisfy the triangle inequality. For two
//! nonzero vectors the crate works with
//!
//! ```text
//! s = ‖x/‖x‖ + y/‖y‖‖,   d = ‖x/‖x‖ − y/‖y‖‖,
//! Σ = s² + d²,            Δ = s² − d²,
//! ⟨x|y⟩_ρ = ‖x‖·‖y‖ · (Δ/4) · (Σ/4)^ρ,
//! ∠_ρ(x, y) = arccos((Δ/4)·(Σ/4)^ρ)     whenever |(Δ/4)·(Σ/4)^ρ| ≤ 1.
//! ```
//!
//! The modules follow that chain:
//!
//! * [`space`]: weight families, unit-sphere sampling, structural checks.
//! * [`geometry`]: `s, d, Σ, Δ`, the ρ-product and the ρ-angle.
//! * [`csb`]: numerical search for `sup |Δ/4|·(Σ/4)^ρ` over unit pairs,
//!   which decides whether a space "has the angle ∠_ρ".
//! * [`classify`]: the exponent interval `Υ = (ν, μ)`, class memberships and
//!   parameter sweeps.
//! * [`corners`]: convex/concave corners, flat segments and curvature.
//! * [`axioms`]: property checks of the angle-space axioms An1–An11.
//! * [`cli`]: the `bwangle` command-line front end.

pub mod axioms;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod corners;
pub mod csb;
mod error;
mod fmt;
pub mod geometry;
pub mod repro;
pub mod space;

pub use error::{Error, Result};
pub use space::{ExtReal, Family, SpaceDescriptor, Vector};

/// Seed used by every randomized check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED_B0A7;
