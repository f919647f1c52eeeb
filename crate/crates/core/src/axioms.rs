//! Sampled checks of the angle-space axioms An1–An11 for `∠_ρ`.
//!
//! An1 asks for a continuous surjection onto `[0, π]`, An2–An7 are the
//! pointwise identities every `∠_ρ` satisfies where defined, An8–An10 are the
//! Euclidean triangle relations, and An11 asks that `t ↦ ∠(x, y + t·x)` be a
//! decreasing homeomorphism onto `(0, π)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::rho_angle;
use crate::space::{SpaceDescriptor, Vector};
use crate::{Error, Result};

/// Tolerance of the identities An2–An10.
pub const AXIOM_TOL: f64 = 1e-9;
/// Image coverage tolerance of An1.
pub const COVERAGE_TOL: f64 = 1e-3;
/// Perturbation size and bound of the An1 continuity probe.
pub const CONTINUITY_ETA: f64 = 1e-7;
pub const CONTINUITY_BOUND: f64 = 1e-4;
/// An11 limits at `t = ±10⁶` must be this close to `0` and `π`.
pub const LIMIT_TOL: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    An1,
    An2,
    An3,
    An4,
    An5,
    An6,
    An7,
    An8,
    An9,
    An10,
    An11,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::An1,
        Axiom::An2,
        Axiom::An3,
        Axiom::An4,
        Axiom::An5,
        Axiom::An6,
        Axiom::An7,
        Axiom::An8,
        Axiom::An9,
        Axiom::An10,
        Axiom::An11,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub status: AxiomStatus,
    /// Largest discrepancy seen, or the witness's discrepancy on failure.
    pub discrepancy: f64,
    pub witness: Option<Vec<Vector>>,
    /// Value the An1 coverage witness was measured against.
    pub target: Option<f64>,
    pub checked: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub space: String,
    pub rho: f64,
    pub results: Vec<AxiomResult>,
    pub sample_count: usize,
    pub seed: u64,
    /// Random pairs whose angle `∠_ρ(x, y)` is undefined.
    pub undefined_pairs: usize,
}

impl AxiomReport {
    pub fn status(&self, axiom: Axiom) -> AxiomStatus {
        self.results.iter().find(|r| r.axiom == axiom).map_or(AxiomStatus::Skipped, |r| r.status)
    }
}

fn angle(space: &SpaceDescriptor, rho: f64, x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    Ok(rho_angle(space, x, y, rho)?.angle_rad)
}

fn neg(x: &[f64]) -> Vec<f64> {
    x.iter().map(|c| -c).collect()
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Sum of angles, `None` if any is undefined.
fn angles(space: &SpaceDescriptor, rho: f64, pairs: &[(&[f64], &[f64])]) -> Result<Option<Vec<f64>>> {
    let mut out = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        match angle(space, rho, x, y)? {
            Some(a) => out.push(a),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Discrepancy of a pointwise axiom at witness vectors; `∞` when an angle
/// involved is undefined.
///
/// Witness layouts: An2, An3 `[x]`; An5 `[x, y, r·x, s·y]`; An1 `[x, y, x′]`
/// (continuity) or `[x, y]` with a target (coverage); the rest `[x, y]`.
pub fn pointwise_discrepancy(
    space: &SpaceDescriptor,
    rho: f64,
    axiom: Axiom,
    w: &[Vector],
    target: Option<f64>,
) -> Result<f64> {
    let need = match axiom {
        Axiom::An2 | Axiom::An3 => 1,
        Axiom::An5 => 4,
        Axiom::An1 if target.is_none() => 3,
        _ => 2,
    };
    if w.len() != need {
        return Err(Error::InvalidParameter(format!("{axiom} witness needs {need} vectors, got {}", w.len())));
    }
    let x = &w[0][..];
    let inf = f64::INFINITY;
    let d = match axiom {
        Axiom::An2 => angles(space, rho, &[(x, x)])?.map_or(inf, |a| a[0].abs()),
        Axiom::An3 => angles(space, rho, &[(&neg(x), x)])?.map_or(inf, |a| (a[0] - PI).abs()),
        Axiom::An4 => {
            let y = &w[1][..];
            angles(space, rho, &[(x, y), (y, x)])?.map_or(inf, |a| (a[0] - a[1]).abs())
        }
        Axiom::An5 => angles(space, rho, &[(x, &w[1][..]), (&w[2][..], &w[3][..])])?.map_or(inf, |a| (a[0] - a[1]).abs()),
        Axiom::An6 => {
            let y = &w[1][..];
            angles(space, rho, &[(x, y), (&neg(x), &neg(y))])?.map_or(inf, |a| (a[0] - a[1]).abs())
        }
        Axiom::An7 => {
            let y = &w[1][..];
            angles(space, rho, &[(x, y), (&neg(x), y)])?.map_or(inf, |a| (a[0] + a[1] - PI).abs())
        }
        Axiom::An8 => {
            let y = &w[1][..];
            let s = add(x, y);
            angles(space, rho, &[(x, &s), (&s, y), (x, y)])?.map_or(inf, |a| (a[0] + a[1] - a[2]).abs())
        }
        Axiom::An9 => {
            let y = &w[1][..];
            let (yx, xy) = (sub(y, x), sub(x, y));
            angles(space, rho, &[(x, y), (&neg(x), &yx), (&neg(y), &xy)])?
                .map_or(inf, |a| (a[0] + a[1] + a[2] - PI).abs())
        }
        Axiom::An10 => {
            let y = &w[1][..];
            let (yx, xy) = (sub(y, x), sub(x, y));
            angles(space, rho, &[(y, &yx), (x, &xy), (&neg(x), y)])?.map_or(inf, |a| (a[0] + a[1] - a[2]).abs())
        }
        Axiom::An1 => match target {
            Some(t) => angles(space, rho, &[(x, &w[1][..])])?.map_or(inf, |a| (a[0] - t).abs()),
            None => angles(space, rho, &[(x, &w[1][..]), (&w[2][..], &w[1][..])])?.map_or(inf, |a| (a[0] - a[1]).abs()),
        },
        Axiom::An11 => {
            return Err(Error::InvalidParameter("An11 is not a pointwise axiom".into()));
        }
    };
    Ok(d)
}

/// Re-evaluates the stored witness of a result.
pub fn axiom_discrepancy(space: &SpaceDescriptor, rho: f64, result: &AxiomResult) -> Result<Option<f64>> {
    match (&result.witness, result.axiom) {
        (None, _) | (_, Axiom::An11) => Ok(None),
        (Some(w), axiom) => pointwise_discrepancy(space, rho, axiom, w, result.target).map(Some),
    }
}

struct Sample {
    x: Vector,
    y: Vector,
    r: f64,
    s: f64,
    /// Unit Euclidean perturbation direction for the continuity probe.
    e: Vec<f64>,
}

fn samples(n: usize, count: usize, seed: u64) -> Result<Vec<Sample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = 10f64.powf(rng.gen_range(-1.0..1.0));
        let s = 10f64.powf(rng.gen_range(-1.0..1.0));
        let e: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ne = e.iter().map(|c| c * c).sum::<f64>().sqrt();
        if ne == 0.0 || x.iter().all(|c| *c == 0.0) || y.iter().all(|c| *c == 0.0) {
            continue;
        }
        out.push(Sample { x: Vector::new(x)?, y: Vector::new(y)?, r, s, e: e.iter().map(|c| c / ne).collect() });
    }
    Ok(out)
}

fn witness_for(axiom: Axiom, p: &Sample) -> Vec<Vector> {
    match axiom {
        Axiom::An2 | Axiom::An3 => vec![p.x.clone()],
        Axiom::An5 => vec![p.x.clone(), p.y.clone(), p.x.scaled(p.r), p.y.scaled(p.s)],
        _ => vec![p.x.clone(), p.y.clone()],
    }
}

/// Checks a pointwise axiom over `witnesses`, in order. Zero-weight
/// intermediates (e.g. `x + y = 0`) are skipped.
fn check_pointwise(
    space: &SpaceDescriptor,
    rho: f64,
    axiom: Axiom,
    witnesses: Vec<Vec<Vector>>,
    skip: &[bool],
) -> Result<AxiomResult> {
    let values: Vec<Result<Option<f64>>> = witnesses
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            if skip.get(i).copied().unwrap_or(false) {
                return Ok(None);
            }
            match pointwise_discrepancy(space, rho, axiom, w, None) {
                Ok(d) => Ok(Some(d)),
                Err(Error::ZeroWeight) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut max = 0.0f64;
    let mut checked = 0;
    for (i, v) in values.into_iter().enumerate() {
        let Some(d) = v? else { continue };
        checked += 1;
        if d > AXIOM_TOL {
            return Ok(AxiomResult {
                axiom,
                status: AxiomStatus::Fail,
                discrepancy: d,
                witness: Some(witnesses[i].clone()),
                target: None,
                checked,
                detail: if d.is_infinite() { "an angle in the identity is undefined".into() } else { format!("identity off by {d:e}") },
            });
        }
        max = max.max(d);
    }
    Ok(AxiomResult {
        axiom,
        status: if checked == 0 { AxiomStatus::Skipped } else { AxiomStatus::Pass },
        discrepancy: max,
        witness: None,
        target: None,
        checked,
        detail: format!("{checked} pairs within {AXIOM_TOL:e}"),
    })
}

fn basis(n: usize, i: usize) -> Vector {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    Vector::new(v).expect("basis vector is finite")
}

fn check_an1(space: &SpaceDescriptor, rho: f64, pts: &[Sample], defined: &[bool]) -> Result<AxiomResult> {
    let n = space.dimension();
    if n < 2 {
        return Ok(skipped(Axiom::An1, "needs dimension ≥ 2"));
    }
    if let Some(i) = defined.iter().position(|d| !d) {
        return Ok(AxiomResult {
            axiom: Axiom::An1,
            status: AxiomStatus::Fail,
            discrepancy: f64::INFINITY,
            witness: Some(vec![pts[i].x.clone(), pts[i].y.clone()]),
            target: Some(FRAC_PI_2),
            checked: i + 1,
            detail: "angle undefined at a pair of nonzero vectors".into(),
        });
    }

    // image of the half-turn path y(θ) = cos θ·e₁ + sin θ·e₂ seen from e₁
    let (e1, e2) = (basis(n, 0), basis(n, 1));
    const STEPS: usize = 20_000;
    let path: Vec<Vector> = (0..=STEPS)
        .map(|k| match k {
            0 => e1.clone(),
            STEPS => e1.neg(),
            _ => {
                let t = PI * k as f64 / STEPS as f64;
                e1.scaled(t.cos()).add(&e2.scaled(t.sin()))
            }
        })
        .collect();
    let image: Vec<Option<f64>> =
        path.par_iter().map(|y| angle(space, rho, &e1, y)).collect::<Result<Vec<_>>>()?;
    for target in [0.0, FRAC_PI_2, PI] {
        let (best, idx) = image
            .iter()
            .enumerate()
            .map(|(k, a)| (a.map_or(f64::INFINITY, |a| (a - target).abs()), k))
            .fold((f64::INFINITY, 0), |acc, c| if c.0 < acc.0 { c } else { acc });
        if best > COVERAGE_TOL {
            return Ok(AxiomResult {
                axiom: Axiom::An1,
                status: AxiomStatus::Fail,
                discrepancy: best,
                witness: Some(vec![e1.clone(), path[idx].clone()]),
                target: Some(target),
                checked: image.len(),
                detail: format!("image misses {target} by {best:e}"),
            });
        }
    }

    // continuity modulus away from the arccos endpoints
    let probes: Vec<Result<Option<(f64, Vec<Vector>)>>> = pts
        .par_iter()
        .map(|p| {
            let c = rho_angle(space, &p.x, &p.y, rho)?.cosine;
            if c.abs() > 0.99 {
                return Ok(None);
            }
            let nx = p.x.iter().map(|c| c * c).sum::<f64>().sqrt();
            let shifted = p.x.add(&p.e.iter().map(|c| c * CONTINUITY_ETA * nx).collect::<Vec<_>>());
            let w = vec![p.x.clone(), p.y.clone(), shifted];
            Ok(Some((pointwise_discrepancy(space, rho, Axiom::An1, &w, None)?, w)))
        })
        .collect();
    let mut max = 0.0f64;
    let mut checked = 0;
    for probe in probes {
        let Some((d, w)) = probe? else { continue };
        checked += 1;
        if d > CONTINUITY_BOUND {
            return Ok(AxiomResult {
                axiom: Axiom::An1,
                status: AxiomStatus::Fail,
                discrepancy: d,
                witness: Some(w),
                target: None,
                checked,
                detail: format!("relative perturbation {CONTINUITY_ETA:e} moved the angle by {d:e}"),
            });
        }
        max = max.max(d);
    }
    Ok(AxiomResult {
        axiom: Axiom::An1,
        status: AxiomStatus::Pass,
        discrepancy: max,
        witness: None,
        target: None,
        checked,
        detail: format!("image covers 0, π/2, π within {COVERAGE_TOL:e}; {checked} continuity probes within {CONTINUITY_BOUND:e}"),
    })
}

/// t-grid for An11: `sinh`-spaced over `[−10³, 10³]`.
pub fn an11_grid() -> Vec<f64> {
    let z = 1e3f64.asinh();
    (0..=400).map(|k| (-z + 2.0 * z * k as f64 / 400.0).sinh()).collect()
}

fn check_an11(space: &SpaceDescriptor, rho: f64, pts: &[Sample]) -> Result<AxiomResult> {
    let n = space.dimension();
    if n < 2 {
        return Ok(skipped(Axiom::An11, "needs dimension ≥ 2"));
    }
    let mut pairs = vec![(basis(n, 0), basis(n, 1))];
    pairs.extend(pts.iter().take(16).map(|p| (p.x.clone(), p.y.clone())));
    let grid = an11_grid();
    for (x, y) in &pairs {
        // skip (numerically) dependent pairs
        let g = crate::geometry::pair_geometry(space, x, y)?;
        if g.s < 1e-6 || g.d < 1e-6 {
            continue;
        }
        let theta = |t: f64| -> Result<Option<f64>> { angle(space, rho, x, &y.add(&x.scaled(t))) };
        let mut prev: Option<(f64, f64)> = None;
        for &t in &grid {
            let Some(a) = theta(t)? else {
                return Ok(an11_fail(x, y, f64::INFINITY, format!("angle undefined at t = {t}")));
            };
            if let Some((pt, pa)) = prev {
                if a >= pa {
                    return Ok(an11_fail(x, y, a - pa, format!("not decreasing between t = {pt} and t = {t}")));
                }
            }
            prev = Some((t, a));
        }
        let (lo, hi) = (theta(1e6)?, theta(-1e6)?);
        match (lo, hi) {
            (Some(lo), Some(hi)) if lo <= LIMIT_TOL && hi >= PI - LIMIT_TOL => {}
            _ => {
                return Ok(an11_fail(x, y, f64::INFINITY, format!("limits at t = ±1e6 are {hi:?} and {lo:?}")));
            }
        }
    }
    Ok(AxiomResult {
        axiom: Axiom::An11,
        status: AxiomStatus::Pass,
        discrepancy: 0.0,
        witness: None,
        target: None,
        checked: pairs.len(),
        detail: format!("strictly decreasing on {} grid points with limits near π and 0", grid.len()),
    })
}

fn an11_fail(x: &Vector, y: &Vector, d: f64, detail: String) -> AxiomResult {
    AxiomResult {
        axiom: Axiom::An11,
        status: AxiomStatus::Fail,
        discrepancy: d,
        witness: Some(vec![x.clone(), y.clone()]),
        target: None,
        checked: 1,
        detail,
    }
}

fn skipped(axiom: Axiom, why: &str) -> AxiomResult {
    AxiomResult {
        axiom,
        status: AxiomStatus::Skipped,
        discrepancy: 0.0,
        witness: None,
        target: None,
        checked: 0,
        detail: why.into(),
    }
}

/// Runs every axiom check on `samples` seeded random pairs.
///
/// Pairs where `∠_ρ(x, y)` is undefined are left out of An4–An7 and counted
/// in `undefined_pairs`; An1 fails if there are any.
pub fn check_axioms(space: &SpaceDescriptor, rho: f64, samples_n: usize, seed: u64) -> Result<AxiomReport> {
    if !space.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if samples_n == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let n = space.dimension();
    let pts = samples(n, samples_n, seed)?;
    let defined: Vec<bool> = pts
        .par_iter()
        .map(|p| Ok(rho_angle(space, &p.x, &p.y, rho)?.defined))
        .collect::<Result<Vec<_>>>()?;
    let undefined = defined.iter().filter(|d| !**d).count();
    let not_defined: Vec<bool> = defined.iter().map(|d| !d).collect();

    let mut results = vec![check_an1(space, rho, &pts, &defined)?];
    for axiom in [Axiom::An2, Axiom::An3] {
        let w = pts.iter().map(|p| witness_for(axiom, p)).collect();
        results.push(check_pointwise(space, rho, axiom, w, &[])?);
    }
    for axiom in [Axiom::An4, Axiom::An5, Axiom::An6, Axiom::An7] {
        let w = pts.iter().map(|p| witness_for(axiom, p)).collect();
        results.push(check_pointwise(space, rho, axiom, w, &not_defined)?);
    }
    for axiom in [Axiom::An8, Axiom::An9, Axiom::An10] {
        let mut w = Vec::with_capacity(pts.len() + 1);
        if n >= 2 {
            w.push(vec![basis(n, 0), basis(n, 1)]);
        }
        w.extend(pts.iter().map(|p| witness_for(axiom, p)));
        results.push(check_pointwise(space, rho, axiom, w, &[])?);
    }
    results.push(check_an11(space, rho, &pts)?);
    Ok(AxiomReport { space: space.label(), rho, results, sample_count: pts.len(), seed, undefined_pairs: undefined })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleRow {
    pub quantity: String,
    pub computed: f64,
    pub closed_form: f64,
    pub abs_diff: f64,
    pub pass: bool,
}

/// The fixed taxicab computations at `ρ = 0` with `x = (1,0)`, `y = (0,1)`
/// that break An8, An9 and An10.
pub fn reproduce_counterexamples() -> Result<Vec<CounterexampleRow>> {
    let l1 = SpaceDescriptor::hoelder(1.0);
    let a = |x: [f64; 2], y: [f64; 2]| -> Result<f64> {
        rho_angle(&l1, &x, &y, 0.0)?.angle_rad.ok_or_else(|| Error::NonFinite("undefined angle".into()))
    };
    let c = 0.75f64.acos();
    let (x, y) = ([1.0, 0.0], [0.0, 1.0]);
    let xy = [1.0, 1.0];
    let mut rows = Vec::new();
    let mut row = |quantity: &str, computed: f64, closed_form: f64, extra: bool| {
        let abs_diff = (computed - closed_form).abs();
        rows.push(CounterexampleRow {
            quantity: quantity.into(),
            computed,
            closed_form,
            abs_diff,
            pass: abs_diff <= 1e-12 && extra,
        });
    };
    let right = a(x, y)?;
    row("angle0(x, y)", right, FRAC_PI_2, true);
    row("angle0(x, x+y)", a(x, xy)?, c, true);
    row("angle0(x+y, y)", a(xy, y)?, c, true);
    let an8 = a(x, xy)? + a(xy, y)?;
    row("An8: angle0(x, x+y) + angle0(x+y, y)", an8, 2.0 * c, true);
    row("An8: gap to angle0(x, y)", an8 - right, 2.0 * c - FRAC_PI_2, (an8 - right).abs() > 1e-3);
    let an9 = right + a([-1.0, 0.0], [-1.0, 1.0])? + a([0.0, -1.0], [1.0, -1.0])?;
    row("An9: angle0(-x, y-x)", a([-1.0, 0.0], [-1.0, 1.0])?, c, true);
    row("An9: angle0(-y, x-y)", a([0.0, -1.0], [1.0, -1.0])?, c, true);
    row("An9: triangle sum", an9, FRAC_PI_2 + 2.0 * c, an9 < PI);
    let an10 = a(y, [-1.0, 1.0])? + a(x, [1.0, -1.0])?;
    row("An10: angle0(y, y-x) + angle0(x, x-y)", an10, 2.0 * c, true);
    let rhs = a([-1.0, 0.0], y)?;
    row("An10: angle0(-x, y)", rhs, FRAC_PI_2, true);
    row("An10: gap", an10 - rhs, 2.0 * c - FRAC_PI_2, (an10 - rhs).abs() > 1e-3);
    Ok(rows)
}

/// Counterexample table as CSV.
pub fn counterexamples_csv(rows: &[CounterexampleRow]) -> String {
    use crate::fmt::sig12;
    let mut out = String::from("quantity,computed,closed_form,abs_diff,pass\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            crate::classify::csv_field(&r.quantity),
            sig12(r.computed),
            sig12(r.closed_form),
            sig12(r.abs_diff),
            r.pass
        ));
    }
    out
}
