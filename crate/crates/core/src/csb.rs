//! Search for the supremum of `f_ρ(u, v) = |Δ/4|·(Σ/4)^ρ` over unit pairs.
//!
//! A space has the angle `∠_ρ` exactly when this supremum is at most 1. The
//! search is a lower bound: a coarse scan followed by pattern-search
//! refinement from the best cells. A report with `holds = true` means no
//! violation was found at the configured resolution.
//!
//! Planar spaces scan two tables over the θ-uniform sphere grid: all grid
//! pairs, and pairs straddling each grid direction at log-spaced separations
//! far below the grid spacing (violations below `ρ = −1` live there). Other
//! dimensions scan seeded random pairs instead.

use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::unit_pair_geometry;
use crate::space::{grid_direction, SpaceDescriptor, Vector};
use crate::{Error, Result};

/// Number of separations per centre in the near-diagonal table.
const NEAR_OFFSETS: usize = 24;
/// Smallest near-diagonal separation relative to the grid spacing.
const NEAR_SPAN: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsbConfig {
    /// Directions on the planar sphere grid.
    pub resolution: usize,
    /// Pattern-search iterations per start.
    pub refine_steps: usize,
    /// Starts taken from each table.
    pub starts: usize,
    /// `holds ⇔ sup ≤ 1 + tol`.
    pub tol: f64,
    pub seed: u64,
    /// Random pairs scanned outside the plane.
    pub random_pairs: usize,
}

impl Default for CsbConfig {
    fn default() -> Self {
        Self {
            resolution: 1024,
            refine_steps: 40,
            starts: 16,
            tol: 1e-7,
            seed: crate::DEFAULT_SEED,
            random_pairs: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// One-dimensional space; every pair is `±u`.
    Line,
    Grid,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CsbReport {
    pub rho: f64,
    pub sup_estimate: f64,
    pub witness: (Vector, Vector),
    pub holds: bool,
    pub mode: SearchMode,
    pub grid_resolution: usize,
    pub refinement_steps: usize,
    pub tolerance: f64,
    pub seed: u64,
}

/// `(f_ρ, u, v)`.
type Candidate = (f64, Vec<f64>, Vec<f64>);

/// `(ln|Δ/4|, ln(Σ/4))`, so `ln f_ρ = lq + ρ·lb`.
type LogEntry = [f64; 2];

struct PlanarTables {
    n: usize,
    directions: Vec<[f64; 2]>,
    main: Vec<LogEntry>,
    offsets: Vec<f64>,
    near: Vec<LogEntry>,
}

struct RandomTables {
    main: Vec<LogEntry>,
    near: Vec<LogEntry>,
}

enum Tables {
    Line,
    /// Resolutions `n, n/2, n/4, …` down to the smallest multiple of 4 that
    /// is at least 8; the estimate is the best over all levels, so doubling the
    /// resolution never lowers it.
    Planar(Vec<PlanarTables>),
    Random(RandomTables),
}

/// A prepared search: the pair tables are built once and rescored per `ρ`.
pub struct CsbSearch<'a> {
    space: &'a SpaceDescriptor,
    config: CsbConfig,
    tables: Tables,
}

fn unit(space: &SpaceDescriptor, x: &[f64]) -> Result<Vec<f64>> {
    let w = space.weight(x)?;
    if w == 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(x.iter().map(|c| c / w).collect())
}

fn log_entry(space: &SpaceDescriptor, u: &[f64], v: &[f64]) -> Result<LogEntry> {
    let g = unit_pair_geometry(space, u, v)?;
    if g.sigma == 0.0 {
        return Err(Error::DegenerateSigma);
    }
    Ok([(g.delta / 4.0).abs().ln(), (g.sigma / 4.0).ln()])
}

/// `f_ρ` at a pair of unit vectors.
pub fn pair_value(space: &SpaceDescriptor, u: &[f64], v: &[f64], rho: f64) -> Result<f64> {
    Ok(unit_pair_geometry(space, u, v)?.cosine(rho)?.abs())
}

/// `(value, index)` ordered by value descending, then index ascending.
fn better(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

fn push_top(top: &mut Vec<(f64, usize)>, cand: (f64, usize), k: usize) {
    if top.len() == k && !better(cand, top[k - 1]) {
        return;
    }
    let pos = top.iter().position(|&t| better(cand, t)).unwrap_or(top.len());
    top.insert(pos, cand);
    top.truncate(k);
}

/// Deterministic top-k of `ln f_ρ` over a table, scanned in parallel chunks.
fn top_k(table: &[LogEntry], rho: f64, k: usize, chunk: usize) -> Vec<(f64, usize)> {
    let partial: Vec<Vec<(f64, usize)>> = table
        .par_chunks(chunk.max(1))
        .enumerate()
        .map(|(c, rows)| {
            let mut top = Vec::with_capacity(k + 1);
            for (j, e) in rows.iter().enumerate() {
                let v = e[0] + rho * e[1];
                if !v.is_nan() {
                    push_top(&mut top, (v, c * chunk + j), k);
                }
            }
            top
        })
        .collect();
    let mut top = Vec::with_capacity(k + 1);
    for cand in partial.into_iter().flatten() {
        push_top(&mut top, cand, k);
    }
    top
}

impl<'a> CsbSearch<'a> {
    pub fn new(space: &'a SpaceDescriptor, config: CsbConfig) -> Result<Self> {
        if !space.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        if config.starts == 0 {
            return Err(Error::InvalidParameter("starts must be positive".into()));
        }
        let tables = match space.dimension() {
            1 => Tables::Line,
            2 => {
                if config.resolution < 8 || !config.resolution.is_multiple_of(4) {
                    return Err(Error::InvalidParameter(format!(
                        "resolution must be a multiple of 4 and at least 8, got {}",
                        config.resolution
                    )));
                }
                let mut levels = Vec::new();
                let mut n = config.resolution;
                while n >= 8 && n.is_multiple_of(4) {
                    levels.push(Self::planar_tables(space, n)?);
                    n /= 2;
                }
                Tables::Planar(levels)
            }
            _ => {
                if config.random_pairs == 0 {
                    return Err(Error::InvalidParameter("random_pairs must be positive".into()));
                }
                Tables::Random(Self::random_tables(space, &config)?)
            }
        };
        Ok(Self { space, config, tables })
    }

    pub fn config(&self) -> &CsbConfig {
        &self.config
    }

    fn planar_tables(space: &SpaceDescriptor, n: usize) -> Result<PlanarTables> {
        let half = n / 2;
        let directions: Vec<[f64; 2]> = (0..n).map(|k| grid_direction(k, n)).collect();
        let points: Vec<Vec<f64>> = directions.iter().map(|d| unit(space, d)).collect::<Result<_>>()?;
        let main: Vec<LogEntry> = (0..half)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == i || j == i + half {
                            Ok([f64::NEG_INFINITY, 0.0])
                        } else {
                            log_entry(space, &points[i], &points[j])
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();

        let h = TAU / n as f64;
        let offsets: Vec<f64> = (0..NEAR_OFFSETS)
            .map(|k| h * NEAR_SPAN.powf(k as f64 / (NEAR_OFFSETS - 1) as f64))
            .collect();
        let near: Vec<LogEntry> = (0..half)
            .into_par_iter()
            .map(|c| {
                let theta = h * c as f64;
                offsets
                    .iter()
                    .map(|o| {
                        let a = unit(space, &direction(theta - o / 2.0))?;
                        let b = unit(space, &direction(theta + o / 2.0))?;
                        log_entry(space, &a, &b)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(PlanarTables { n, directions, main, offsets, near })
    }

    fn random_pair(space: &SpaceDescriptor, seed: u64, index: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let n = space.dimension();
        let u: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        Ok((unit(space, &u)?, unit(space, &v)?))
    }

    /// Near pairs use streams above the main pairs'.
    fn random_near_pair(space: &SpaceDescriptor, seed: u64, index: usize, base: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((base + index) as u64);
        let n = space.dimension();
        let u: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let w: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let frac: f64 = Uniform::new(0.0, 1.0).sample(&mut rng);
        let o = 0.1 * NEAR_SPAN.powf(frac);
        let u = unit(space, &u)?;
        let wn = w.iter().map(|c| c * c).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        let v: Vec<f64> = u.iter().zip(&w).map(|(a, b)| a + o * b / wn).collect();
        Ok((u, unit(space, &v)?, o))
    }

    fn near_count(config: &CsbConfig) -> usize {
        (config.random_pairs / 8).max(1)
    }

    fn random_tables(space: &SpaceDescriptor, config: &CsbConfig) -> Result<RandomTables> {
        let seed = config.seed;
        let main = (0..config.random_pairs)
            .into_par_iter()
            .map(|k| {
                let (u, v) = Self::random_pair(space, seed, k)?;
                log_entry(space, &u, &v)
            })
            .collect::<Result<Vec<_>>>()?;
        let base = config.random_pairs;
        let near = (0..Self::near_count(config))
            .into_par_iter()
            .map(|k| {
                let (u, v, _) = Self::random_near_pair(space, seed, k, base)?;
                log_entry(space, &u, &v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RandomTables { main, near })
    }

    /// Estimates `sup f_ρ` and returns the best pair found.
    pub fn sup(&self, rho: f64) -> Result<CsbReport> {
        if !rho.is_finite() {
            return Err(Error::NonFinite(format!("rho = {rho}")));
        }
        let (value, u, v, mode) = match &self.tables {
            Tables::Line => (1.0, vec![1.0], vec![1.0], SearchMode::Line),
            Tables::Planar(levels) => {
                let mut best: Option<Candidate> = None;
                for t in levels {
                    let cand = self.planar_sup(t, rho)?;
                    if best.as_ref().is_none_or(|b| cand.0 > b.0) {
                        best = Some(cand);
                    }
                }
                let (value, u, v) = best.expect("at least one planar level");
                (value, u, v, SearchMode::Grid)
            }
            Tables::Random(t) => {
                let (value, u, v) = self.random_sup(t, rho)?;
                (value, u, v, SearchMode::Random)
            }
        };
        Ok(CsbReport {
            rho,
            sup_estimate: value,
            witness: (Vector::new(u)?, Vector::new(v)?),
            holds: value <= 1.0 + self.config.tol,
            mode,
            grid_resolution: match mode {
                SearchMode::Random => self.config.random_pairs,
                _ => self.config.resolution,
            },
            refinement_steps: self.config.refine_steps,
            tolerance: self.config.tol,
            seed: self.config.seed,
        })
    }

    pub fn holds(&self, rho: f64) -> Result<bool> {
        Ok(self.sup(rho)?.holds)
    }

    fn planar_sup(&self, t: &PlanarTables, rho: f64) -> Result<Candidate> {
        let space = self.space;
        let k = self.config.starts;
        let h = TAU / t.n as f64;

        let u0 = unit(space, &t.directions[0])?;
        let mut best = (pair_value(space, &u0, &u0, rho)?, u0.clone(), u0);

        // (centre, separation, step, exact grid pair)
        let mut starts: Vec<(f64, f64, f64, Option<(usize, usize)>)> = Vec::new();
        for (_, idx) in top_k(&t.main, rho, k, t.n) {
            let (i, mut j) = (idx / t.n, idx % t.n);
            // f is unchanged under v -> -v, so fold the separation into (0, π)
            let mut steps = (j + t.n - i) % t.n;
            if steps > t.n / 2 {
                j = (j + t.n / 2) % t.n;
                steps -= t.n / 2;
            }
            let o = h * steps as f64;
            starts.push((h * i as f64 + o / 2.0, o, h, Some((i, j))));
        }
        for (_, idx) in top_k(&t.near, rho, k, t.offsets.len()) {
            let (c, o) = (idx / t.offsets.len(), t.offsets[idx % t.offsets.len()]);
            starts.push((h * c as f64, o, o / 2.0, None));
        }

        let refined: Vec<Result<Candidate>> = starts
            .par_iter()
            .map(|&(c, o, step, grid)| {
                let (a, b) = match grid {
                    Some((i, j)) => (unit(space, &t.directions[i])?, unit(space, &t.directions[j])?),
                    None => (unit(space, &direction(c - o / 2.0))?, unit(space, &direction(c + o / 2.0))?),
                };
                let init = (pair_value(space, &a, &b, rho)?, a, b);
                self.pattern_search_planar(init, c, o, step, rho)
            })
            .collect();
        for r in refined {
            let cand = r?;
            if cand.0 > best.0 {
                best = cand;
            }
        }
        Ok(best)
    }

    fn pattern_search_planar(
        &self,
        init: Candidate,
        mut c: f64,
        mut o: f64,
        step: f64,
        rho: f64,
    ) -> Result<Candidate> {
        let space = self.space;
        let mut best = init;
        let (mut sc, mut so) = (step, step);
        for _ in 0..self.config.refine_steps {
            let mut improved: Option<(f64, Vec<f64>, Vec<f64>, f64, f64)> = None;
            for (dc, dox) in [(sc, 0.0), (-sc, 0.0), (0.0, so), (0.0, -so)] {
                let (nc, no) = (c + dc, o + dox);
                if no <= 0.0 || no >= PI {
                    continue;
                }
                let a = unit(space, &direction(nc - no / 2.0))?;
                let b = unit(space, &direction(nc + no / 2.0))?;
                let val = pair_value(space, &a, &b, rho)?;
                if val > improved.as_ref().map_or(best.0, |m| m.0) {
                    improved = Some((val, a, b, nc, no));
                }
            }
            match improved {
                Some((val, a, b, nc, no)) => {
                    best = (val, a, b);
                    c = nc;
                    o = no;
                }
                None => {
                    sc /= 2.0;
                    so /= 2.0;
                }
            }
        }
        Ok(best)
    }

    fn random_sup(&self, t: &RandomTables, rho: f64) -> Result<Candidate> {
        let space = self.space;
        let k = self.config.starts;
        let seed = self.config.seed;
        let n = space.dimension();

        let mut e0 = vec![0.0; n];
        e0[0] = 1.0;
        let u0 = unit(space, &e0)?;
        let mut best = (pair_value(space, &u0, &u0, rho)?, u0.clone(), u0);

        let mut starts: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
        for (_, idx) in top_k(&t.main, rho, k, 4096) {
            let (u, v) = Self::random_pair(space, seed, idx)?;
            starts.push((u, v, 0.1));
        }
        let base = self.config.random_pairs;
        for (_, idx) in top_k(&t.near, rho, k, 4096) {
            let (u, v, o) = Self::random_near_pair(space, seed, idx, base)?;
            starts.push((u, v, o / 2.0));
        }
        let refined: Vec<Result<Candidate>> = starts
            .into_par_iter()
            .map(|(u, v, step)| {
                let val = pair_value(space, &u, &v, rho)?;
                self.pattern_search_random((val, u, v), step, rho)
            })
            .collect();
        for r in refined {
            let cand = r?;
            if cand.0 > best.0 {
                best = cand;
            }
        }
        Ok(best)
    }

    fn pattern_search_random(
        &self,
        init: Candidate,
        step: f64,
        rho: f64,
    ) -> Result<Candidate> {
        let space = self.space;
        let n = space.dimension();
        let mut best = init;
        let mut step = step;
        for _ in 0..self.config.refine_steps {
            let mut improved: Option<Candidate> = None;
            for coord in 0..2 * n {
                for sign in [1.0, -1.0] {
                    let (mut a, mut b) = (best.1.clone(), best.2.clone());
                    if coord < n {
                        a[coord] += sign * step;
                    } else {
                        b[coord - n] += sign * step;
                    }
                    if space.weight(&a)? == 0.0 || space.weight(&b)? == 0.0 {
                        continue;
                    }
                    let (a, b) = (unit(space, &a)?, unit(space, &b)?);
                    let val = pair_value(space, &a, &b, rho)?;
                    if val > improved.as_ref().map_or(best.0, |c| c.0) {
                        improved = Some((val, a, b));
                    }
                }
            }
            match improved {
                Some(c) => best = c,
                None => step /= 2.0,
            }
        }
        Ok(best)
    }
}

/// Euclidean direction at angle `theta`, exact on the axes.
fn direction(theta: f64) -> [f64; 2] {
    let q = theta / (PI / 2.0);
    if q == q.round() {
        return match (q.round() as i64).rem_euclid(4) {
            0 => [1.0, 0.0],
            1 => [0.0, 1.0],
            2 => [-1.0, 0.0],
            _ => [0.0, -1.0],
        };
    }
    [theta.cos(), theta.sin()]
}

/// One-shot [`CsbSearch::sup`].
pub fn csb_sup(space: &SpaceDescriptor, rho: f64, config: &CsbConfig) -> Result<CsbReport> {
    CsbSearch::new(space, config.clone())?.sup(rho)
}

/// `sup f_ρ ≤ 1 + tol` at the default search settings.
pub fn has_angle(space: &SpaceDescriptor, rho: f64, tol: f64) -> Result<bool> {
    let config = CsbConfig { tol, ..CsbConfig::default() };
    Ok(csb_sup(space, rho, &config)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> CsbConfig {
        CsbConfig { resolution: 256, random_pairs: 20_000, ..CsbConfig::default() }
    }

    #[test]
    fn minus_one_is_attained_on_the_diagonal() {
        for space in [SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(2.0).unwrap(), SpaceDescriptor::hoelder(0.5)] {
            let r = csb_sup(&space, -1.0, &quick()).unwrap();
            assert_eq!(r.sup_estimate, 1.0);
            assert_eq!(r.witness.0, r.witness.1);
            assert!(r.holds);
        }
    }

    #[test]
    fn euclidean_holds_at_large_rho() {
        let r = csb_sup(&SpaceDescriptor::hoelder(2.0), 7.0, &quick()).unwrap();
        assert!((r.sup_estimate - 1.0).abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn taxicab_fails_above_one() {
        let r = csb_sup(&SpaceDescriptor::hoelder(1.0), 1.2, &quick()).unwrap();
        assert!(!r.holds);
        // ln f ≈ εt² − t⁴ for ε = 0.2 peaks at about 1.0093
        assert!(r.sup_estimate > 1.009);
        let (u, v) = (&r.witness.0, &r.witness.1);
        let re = pair_value(&SpaceDescriptor::hoelder(1.0), u, v, 1.2).unwrap();
        assert!((re - r.sup_estimate).abs() <= 1e-12);
    }

    #[test]
    fn rejects_non_positive_definite() {
        assert_eq!(csb_sup(&SpaceDescriptor::hoelder(-1.0), 0.0, &quick()).unwrap_err(), Error::NotPositiveDefinite);
        assert_eq!(csb_sup(&SpaceDescriptor::pathological_a(), 0.0, &quick()).unwrap_err(), Error::NotPositiveDefinite);
    }

    #[test]
    fn random_mode_is_deterministic() {
        let space = SpaceDescriptor::hoelder_n(1.0, 3).unwrap();
        let a = csb_sup(&space, 1.5, &quick()).unwrap();
        let b = csb_sup(&space, 1.5, &quick()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mode, SearchMode::Random);
        assert!(!a.holds);
    }

    #[test]
    fn line_always_holds() {
        let r = csb_sup(&SpaceDescriptor::line(), 10.0, &quick()).unwrap();
        assert_eq!(r.sup_estimate, 1.0);
        assert_eq!(r.mode, SearchMode::Line);
    }

    #[test]
    fn top_k_prefers_low_index_on_ties() {
        let table = vec![[0.0, 0.0]; 10];
        let top = top_k(&table, 1.0, 3, 4);
        assert_eq!(top.iter().map(|t| t.1).collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}
