//! The exponent interval `Υ = (ν, μ)`, class membership and parameter sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::csb::{CsbConfig, CsbSearch};
use crate::fmt::sig12;
use crate::space::{structure_report, ExtReal, SpaceDescriptor};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpsilonConfig {
    pub bracket_tol: f64,
    /// Validity at `±rho_cap` is reported as `±∞`.
    pub rho_cap: f64,
    pub csb: CsbConfig,
}

impl Default for UpsilonConfig {
    fn default() -> Self {
        Self { bracket_tol: 1e-3, rho_cap: 64.0, csb: CsbConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpsilonResult {
    pub nu: ExtReal,
    pub mu: ExtReal,
    pub nu_attained: bool,
    pub mu_attained: bool,
    /// Last `(valid, invalid)` exponents on each side; `None` when that side
    /// stayed valid up to the cap.
    pub nu_bracket: Option<(f64, f64)>,
    pub mu_bracket: Option<(f64, f64)>,
    pub bracket_tol: f64,
    pub rho_cap: f64,
    pub csb_config: CsbConfig,
    /// Number of CSB searches run.
    pub evaluations: usize,
}

struct Bisector<'a> {
    search: CsbSearch<'a>,
    evaluations: usize,
}

impl Bisector<'_> {
    fn valid(&mut self, rho: f64) -> Result<bool> {
        self.evaluations += 1;
        self.search.holds(rho)
    }

    /// Walks from `−1` in direction `sign`, doubling the step, then bisects.
    /// Returns `(endpoint, bracket)`.
    fn side(&mut self, sign: f64, cfg: &UpsilonConfig) -> Result<(f64, Option<(f64, f64)>)> {
        let mut valid = -1.0;
        let mut step = 1.0;
        let invalid = loop {
            let cand = -1.0 + sign * step;
            if cand.abs() >= cfg.rho_cap {
                let cap = sign * cfg.rho_cap;
                if self.valid(cap)? {
                    return Ok((sign * f64::INFINITY, None));
                }
                break cap;
            }
            if self.valid(cand)? {
                valid = cand;
                step *= 2.0;
            } else {
                break cand;
            }
        };
        let (mut good, mut bad) = (valid, invalid);
        while (bad - good).abs() > cfg.bracket_tol {
            let mid = 0.5 * (good + bad);
            if self.valid(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Ok((good, Some((good, bad))))
    }
}

/// Brackets both ends of the set of valid exponents, which is an interval
/// containing `−1`.
pub fn upsilon(space: &SpaceDescriptor, config: &UpsilonConfig) -> Result<UpsilonResult> {
    if !(config.bracket_tol > 0.0) || !(config.rho_cap > 1.0) {
        return Err(Error::InvalidParameter("bracket_tol must be > 0 and rho_cap > 1".into()));
    }
    let mut b = Bisector { search: CsbSearch::new(space, config.csb.clone())?, evaluations: 0 };
    let (mu, mu_bracket) = b.side(1.0, config)?;
    let (nu, nu_bracket) = b.side(-1.0, config)?;
    let nu_attained = nu.is_finite() && b.valid(nu)?;
    let mu_attained = mu.is_finite() && b.valid(mu)?;
    Ok(UpsilonResult {
        nu: ExtReal::new(nu)?,
        mu: ExtReal::new(mu)?,
        nu_attained,
        mu_attained,
        nu_bracket,
        mu_bracket,
        bracket_tol: config.bracket_tol,
        rho_cap: config.rho_cap,
        csb_config: config.csb.clone(),
        evaluations: b.evaluations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    /// `pdBW`, `pdBW_<ρ>`, `NORM`, `NORM_<ρ>` or `IPspace`.
    pub class: String,
    pub rho: Option<f64>,
    pub member: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassMembership {
    pub space: String,
    pub memberships: Vec<Membership>,
    pub sample_count: usize,
}

impl ClassMembership {
    pub fn get(&self, class: &str) -> Option<bool> {
        self.memberships.iter().find(|m| m.class == class).map(|m| m.member)
    }
}

/// Class name for an exponent, e.g. `NORM_-0.5`.
pub fn class_tag(base: &str, rho: f64) -> String {
    format!("{base}_{}", sig12(rho))
}

/// Samples used for the structural checks behind a class report.
pub const CLASS_SAMPLES: usize = 2000;
/// Tolerance of the sampled triangle and parallelogram checks.
pub const CLASS_TOL: f64 = 1e-9;

pub fn class_report(space: &SpaceDescriptor, rho_list: &[f64], csb: &CsbConfig) -> Result<ClassMembership> {
    let st = structure_report(space, CLASS_SAMPLES, CLASS_TOL)?;
    let pd = st.is_positive_definite;
    let norm = pd && st.triangle_inequality_holds;
    let mut out = Vec::new();
    out.push(Membership {
        class: "pdBW".into(),
        rho: None,
        member: pd,
        evidence: match &st.zero_weight_witness {
            Some(w) => format!("weight zero at {w}"),
            None if pd => "no nonzero vector of weight zero".into(),
            None => "family is not positive definite".into(),
        },
    });
    out.push(Membership {
        class: "NORM".into(),
        rho: None,
        member: norm,
        evidence: match &st.triangle_witness {
            Some(w) => format!("‖x+y‖ = {} > ‖x‖+‖y‖ = {} at x = {}, y = {}", sig12(w.lhs), sig12(w.rhs), w.x, w.y),
            None if pd => "triangle inequality holds on all sampled pairs".into(),
            None => "not positive definite".into(),
        },
    });

    let search = if pd { Some(CsbSearch::new(space, csb.clone())?) } else { None };
    for &rho in rho_list {
        let (holds, evidence) = match &search {
            Some(s) => {
                let r = s.sup(rho)?;
                (r.holds, format!("sup f = {} at ({}, {})", sig12(r.sup_estimate), r.witness.0, r.witness.1))
            }
            None => (false, "not positive definite".into()),
        };
        out.push(Membership { class: class_tag("pdBW", rho), rho: Some(rho), member: holds, evidence: evidence.clone() });
        out.push(Membership {
            class: class_tag("NORM", rho),
            rho: Some(rho),
            member: norm && holds,
            evidence: if norm { evidence } else { "not in NORM".into() },
        });
    }

    let ip = norm && st.parallelogram_identity_holds;
    out.push(Membership {
        class: "IPspace".into(),
        rho: None,
        member: ip,
        evidence: match &st.parallelogram_witness {
            Some(w) => format!("parallelogram sums {} vs {} at x = {}, y = {}", sig12(w.lhs), sig12(w.rhs), w.x, w.y),
            None if norm => "parallelogram identity holds on all sampled pairs".into(),
            None => "not in NORM".into(),
        },
    });
    Ok(ClassMembership { space: space.label(), memberships: out, sample_count: st.sample_count })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub family_param: String,
    pub upsilon: Option<UpsilonResult>,
    pub has_angle: Vec<bool>,
    pub note: Option<String>,
}

/// A member valid at `inner_rho` but not at `outer_rho`; both exponents lie
/// on the same side of `−1`, `inner_rho` closer to it. Such a member shows the
/// class at `outer_rho` is strictly smaller than the one at `inner_rho`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProperWitness {
    pub inner_rho: f64,
    pub outer_rho: f64,
    pub member: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub rho_grid: Vec<f64>,
    pub rows: Vec<SweepRow>,
    pub proper_witnesses: Vec<ProperWitness>,
}

fn sweep_row(name: &str, space: &SpaceDescriptor, rho_grid: &[f64], config: &UpsilonConfig) -> Result<SweepRow> {
    if !space.is_positive_definite() {
        return Ok(SweepRow {
            family_param: name.into(),
            upsilon: None,
            has_angle: vec![false; rho_grid.len()],
            note: Some("not positive definite".into()),
        });
    }
    let ups = upsilon(space, config)?;
    let search = CsbSearch::new(space, config.csb.clone())?;
    let has_angle = rho_grid.iter().map(|&r| search.holds(r)).collect::<Result<Vec<_>>>()?;
    Ok(SweepRow { family_param: name.into(), upsilon: Some(ups), has_angle, note: None })
}

/// Computes `Υ` and the `has_angle` row for every member. Rows are computed
/// concurrently and returned in input order.
pub fn conjecture_sweep(
    members: &[(String, SpaceDescriptor)],
    rho_grid: &[f64],
    config: &UpsilonConfig,
) -> Result<SweepTable> {
    let rows = members
        .par_iter()
        .map(|(name, space)| sweep_row(name, space, rho_grid, config))
        .collect::<Result<Vec<_>>>()?;

    let mut order: Vec<usize> = (0..rho_grid.len()).collect();
    order.sort_by(|&a, &b| rho_grid[a].total_cmp(&rho_grid[b]));
    let mut proper_witnesses = Vec::new();
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ra, rb) = (rho_grid[a], rho_grid[b]);
        let (inner, outer) = if rb <= -1.0 {
            (b, a)
        } else if ra >= -1.0 {
            (a, b)
        } else {
            continue;
        };
        if let Some(row) = rows.iter().find(|r| r.has_angle[inner] && !r.has_angle[outer]) {
            proper_witnesses.push(ProperWitness {
                inner_rho: rho_grid[inner],
                outer_rho: rho_grid[outer],
                member: row.family_param.clone(),
            });
        }
    }
    Ok(SweepTable { rho_grid: rho_grid.to_vec(), rows, proper_witnesses })
}

impl SweepTable {
    /// CSV with columns `family_param, nu, mu, nu_attained, mu_attained` and
    /// one `rho_<v>` 0/1 column per grid value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family_param,nu,mu,nu_attained,mu_attained");
        for r in &self.rho_grid {
            out.push_str(&format!(",rho_{}", sig12(*r)));
        }
        out.push('\n');
        for row in &self.rows {
            let (nu, mu, na, ma) = match &row.upsilon {
                Some(u) => (sig12(u.nu.value()), sig12(u.mu.value()), u.nu_attained, u.mu_attained),
                None => (String::new(), String::new(), false, false),
            };
            out.push_str(&format!("{},{nu},{mu},{},{}", csv_field(&row.family_param), na as u8, ma as u8));
            for &h in &row.has_angle {
                out.push_str(if h { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> UpsilonConfig {
        UpsilonConfig { csb: CsbConfig { resolution: 256, ..CsbConfig::default() }, ..UpsilonConfig::default() }
    }

    #[test]
    fn taxicab_upsilon() {
        let u = upsilon(&SpaceDescriptor::hoelder(1.0), &quick()).unwrap();
        assert!((u.nu.value() + 1.0).abs() <= 1e-3, "{u:?}");
        assert!((u.mu.value() - 1.0).abs() <= 1e-3, "{u:?}");
        assert!(u.nu_attained && u.mu_attained);
    }

    #[test]
    fn euclidean_upsilon_hits_cap() {
        let u = upsilon(&SpaceDescriptor::hoelder(2.0), &quick()).unwrap();
        assert_eq!(u.nu, ExtReal::NEG_INFINITY);
        assert_eq!(u.mu, ExtReal::INFINITY);
        assert!(!u.nu_attained && !u.mu_attained);
        assert_eq!(u.nu_bracket, None);
    }

    #[test]
    fn class_report_hexagon() {
        let c = class_report(&SpaceDescriptor::hexagon(2.0).unwrap(), &[0.0], &quick().csb).unwrap();
        assert_eq!(c.get("pdBW"), Some(true));
        assert_eq!(c.get("pdBW_0"), Some(false));
        assert_eq!(c.get("NORM"), Some(false));
        assert_eq!(c.get("IPspace"), Some(false));
    }

    #[test]
    fn class_report_non_positive_definite() {
        let c = class_report(&SpaceDescriptor::pathological_a(), &[-1.0], &quick().csb).unwrap();
        assert!(c.memberships.iter().all(|m| !m.member));
    }

    #[test]
    fn csv_layout() {
        let members = vec![("p=1".to_string(), SpaceDescriptor::hoelder(1.0)), ("A".to_string(), SpaceDescriptor::pathological_a())];
        let t = conjecture_sweep(&members, &[-2.0, 0.0], &quick()).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "family_param,nu,mu,nu_attained,mu_attained,rho_-2,rho_0");
        assert!(lines[1].starts_with("p=1,-1"));
        assert!(lines[1].ends_with(",1,1,0,1"));
        assert_eq!(lines[2], "A,,,0,0,0,0");
    }
}
