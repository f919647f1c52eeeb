//! Reproduction suite: every published value the crate can recompute, with
//! a pass/fail verdict each.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::axioms::{check_axioms, reproduce_counterexamples, Axiom, AxiomStatus};
use crate::catalog::{bundled, lines_product};
use crate::classify::{class_report, upsilon, UpsilonConfig};
use crate::corners::{
    corner_pair_product, curvature_report, e_map, find_corners, flat_segment_threshold, verify_corner, CornerKind,
    DEFAULT_RESOLUTION,
};
use crate::csb::{csb_sup, has_angle, CsbConfig};
use crate::fmt::sig12;
use crate::geometry::{euclid_angle, pair_geometry, rho_angle, rho_product, special_angle, SpecialRho};
use crate::space::{sample_unit_sphere, sample_unit_sphere_random, structure_report, SpaceDescriptor};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproCheck {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

type Outcome = Result<(String, String, bool)>;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn angle(space: &SpaceDescriptor, x: [f64; 2], y: [f64; 2], rho: f64) -> Result<f64> {
    rho_angle(space, &x, &y, rho)?.angle_rad.ok_or_else(|| Error::NonFinite("undefined angle".into()))
}

fn weights() -> Outcome {
    let hex = SpaceDescriptor::hexagon(2.0)?;
    let a = hex.weight(&[1.0, 2.0])?;
    let b = SpaceDescriptor::hoelder(-2.0).weight(&[1.0, 0.0])?;
    let c = SpaceDescriptor::hoelder(-1.0).normalize(&[1.0, 0.0]);
    let pass = a == 1.0 && b == 0.0 && matches!(c, Err(Error::ZeroWeight));
    Ok(("hexagon(2)(1,2)=1; hoelder(-2)(1,0)=0; normalize fails".into(), format!("{}; {}; {:?}", sig12(a), sig12(b), c.err()), pass))
}

fn sphere_samples() -> Outcome {
    let s = sample_unit_sphere(&SpaceDescriptor::hexagon(2.0)?, 4096)?;
    let near = |t: [f64; 2]| s.points.iter().map(|p| (p[0] - t[0]).hypot(p[1] - t[1])).fold(f64::INFINITY, f64::min);
    let (a, b) = (near([0.0, 1.0]), near([1.0, 2.0]));
    let neg = sample_unit_sphere(&SpaceDescriptor::hoelder(-1.0), 1024)?;
    let pass = a < 5e-3 && b < 5e-3 && neg.skipped.len() == 4;
    Ok((
        "vertices within grid spacing; 4 axis directions skipped".into(),
        format!("{}, {}; {} skipped", sig12(a), sig12(b), neg.skipped.len()),
        pass,
    ))
}

fn structure() -> Outcome {
    let r = structure_report(&SpaceDescriptor::hoelder(0.5), 1000, 1e-9)?;
    let pass = r.is_positive_definite && !r.triangle_inequality_holds && r.triangle_witness.is_some();
    Ok((
        "positive definite, triangle fails".into(),
        format!("pd={}, triangle={}", r.is_positive_definite, r.triangle_inequality_holds),
        pass,
    ))
}

fn products() -> Outcome {
    let mut worst = 0.0f64;
    for p in [0.5, 1.0, 2.0, 3.0, f64::INFINITY] {
        let (prod, h) = (lines_product(p), SpaceDescriptor::hoelder(p));
        for v in sample_unit_sphere_random(&SpaceDescriptor::hoelder(2.0), 200, 7)? {
            worst = worst.max((prod.weight(&v)? - h.weight(&v)?).abs());
        }
    }
    let zero = lines_product(0.0).weight(&[1.0, 1.0])?;
    let max = SpaceDescriptor::product(SpaceDescriptor::line(), SpaceDescriptor::line(), f64::INFINITY).weight(&[2.0, -3.0])?;
    let pass = worst <= 1e-12 && zero == 0.0 && max == 3.0;
    Ok(("line x line = hoelder(p); p=0 gives 0; p=inf max rule 3".into(), format!("{}; {}; {}", sig12(worst), sig12(zero), sig12(max)), pass))
}

fn sd_values() -> Outcome {
    let g = pair_geometry(&SpaceDescriptor::hoelder(1.0), &[1.0, 0.0], &[0.0, 1.0])?;
    let zero = rho_product(&SpaceDescriptor::hoelder(3.0), &[1.0, 2.0], &[0.0, 0.0], 0.5)?;
    let pass = g.s == 2.0 && g.d == 2.0 && g.sigma == 8.0 && g.delta == 0.0 && zero == 0.0;
    Ok(("s=2 d=2 S=8 D=0; product with 0 is 0".into(), format!("{} {} {} {}; {}", g.s, g.d, g.sigma, g.delta, zero), pass))
}

fn hexagon_products() -> Outcome {
    let mut worst = 0.0f64;
    for r in [2.0, 3.0, 5.0] {
        let hex = SpaceDescriptor::hexagon(r)?;
        for rho in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            let v = rho_product(&hex, &[1.0, r], &[-1.0, r], -rho)?;
            let want = (r * r - 1.0) / (r * r + 1.0f64).powf(rho);
            worst = worst.max((v - want).abs() / want.abs().max(1.0));
        }
    }
    Ok(("(r^2-1)/(r^2+1)^rho".into(), format!("max rel diff {}", sig12(worst)), worst <= 1e-12))
}

fn taxicab_angles() -> Outcome {
    let l1 = SpaceDescriptor::hoelder(1.0);
    let a = angle(&l1, [1.0, 0.0], [0.0, 1.0], 0.0)?;
    let b = angle(&l1, [1.0, 0.0], [1.0, 1.0], 0.0)?;
    let pass = close(a, FRAC_PI_2, 1e-12) && close(b, 0.75f64.acos(), 1e-12) && close(b.to_degrees(), 41.41, 5e-3);
    Ok(("pi/2, arccos(3/4) = 41.41 deg".into(), format!("{}, {} ({} deg)", sig12(a), sig12(b), sig12(b.to_degrees())), pass))
}

fn self_angles() -> Outcome {
    let mut pass = true;
    for (_, space) in bundled()? {
        for x in sample_unit_sphere_random(&space, 20, 3)? {
            for rho in [-2.0, 0.0, 1.5] {
                let a = rho_angle(&space, &x, &x, rho)?.angle_rad;
                let b = rho_angle(&space, &x.neg(), &x, rho)?.angle_rad;
                pass &= a == Some(0.0) && b.is_some_and(|b| close(b, PI, 1e-12));
            }
        }
    }
    Ok(("angle(x,x)=0, angle(-x,x)=pi".into(), format!("all bundled spaces: {pass}"), pass))
}

fn minus_one_defined() -> Outcome {
    let mut pass = true;
    for (_, space) in bundled()? {
        let pts = sample_unit_sphere_random(&space, 60, 5)?;
        for w in pts.windows(2) {
            pass &= special_angle(&space, &w[0], &w[1], SpecialRho::MinusOne)?.defined;
        }
    }
    Ok(("defined on every pair".into(), format!("{pass}"), pass))
}

fn euclid_collapse() -> Outcome {
    let l2 = SpaceDescriptor::hoelder(2.0);
    let pts = sample_unit_sphere_random(&l2, 400, 11)?;
    let mut worst = 0.0f64;
    for w in pts.windows(2) {
        let e = euclid_angle(&w[0], &w[1])?;
        for which in [SpecialRho::One, SpecialRho::Zero, SpecialRho::MinusOne] {
            let a = special_angle(&l2, &w[0], &w[1], which)?.angle_rad.unwrap_or(f64::INFINITY);
            worst = worst.max((a - e).abs());
        }
    }
    Ok(("equal to the Euclidean angle".into(), format!("max diff {}", sig12(worst)), worst <= 1e-9))
}

fn csb_values(cfg: &CsbConfig) -> Outcome {
    let l1 = SpaceDescriptor::hoelder(1.0);
    let a = csb_sup(&l1, -1.0, cfg)?;
    let b = csb_sup(&SpaceDescriptor::hoelder(2.0), 7.0, cfg)?;
    let ok = [-1.0, 0.0, 1.0].iter().map(|&r| has_angle(&l1, r, cfg.tol)).collect::<Result<Vec<_>>>()?;
    let c = has_angle(&l1, 1.2, cfg.tol)?;
    let d = has_angle(&SpaceDescriptor::hexagon(2.0)?, 0.0, cfg.tol)?;
    let pass = a.sup_estimate == 1.0 && a.witness.0 == a.witness.1 && close(b.sup_estimate, 1.0, 1e-12) && ok.iter().all(|v| *v) && !c && !d;
    Ok((
        "sup(-1)=1 at x=y; l2 sup(7)=1; l1 has -1,0,1 not 1.2; hexagon(2) lacks 0".into(),
        format!("{}; {}; {:?} {}; {}", sig12(a.sup_estimate), sig12(b.sup_estimate), ok, c, d),
        pass,
    ))
}

fn upsilons(cfg: &UpsilonConfig) -> Outcome {
    let mut obs = Vec::new();
    let mut pass = true;
    for p in [1.0, f64::INFINITY] {
        let u = upsilon(&SpaceDescriptor::hoelder(p), cfg)?;
        pass &= close(u.nu.value(), -1.0, 1e-3) && close(u.mu.value(), 1.0, 1e-3);
        obs.push(format!("({}, {})", sig12(u.nu.value()), sig12(u.mu.value())));
    }
    let u = upsilon(&SpaceDescriptor::hoelder(2.0), cfg)?;
    pass &= u.nu.value() == f64::NEG_INFINITY && u.mu.value() == f64::INFINITY;
    obs.push(format!("({}, {})", u.nu, u.mu));
    Ok(("l1 (-1,1); linf (-1,1); l2 (-inf,inf)".into(), obs.join("; "), pass))
}

fn product_sweep(cfg: &UpsilonConfig) -> Outcome {
    let mut worst = 0.0f64;
    for p in [1.0, 3.0] {
        let a = upsilon(&lines_product(p), cfg)?;
        let b = upsilon(&SpaceDescriptor::hoelder(p), cfg)?;
        for (x, y) in [(a.nu, b.nu), (a.mu, b.mu)] {
            let d = if x.value() == y.value() { 0.0 } else { (x.value() - y.value()).abs() };
            worst = worst.max(d);
        }
    }
    let l2 = upsilon(&lines_product(2.0), cfg)?;
    let pass = worst <= 1e-3 && !l2.nu.is_finite() && !l2.mu.is_finite();
    Ok(("product rows equal hoelder rows; p=2 is inner product".into(), format!("max diff {}; p=2 ({}, {})", sig12(worst), l2.nu, l2.mu), pass))
}

fn classes(cfg: &CsbConfig) -> Outcome {
    let l1 = class_report(&SpaceDescriptor::hoelder(1.0), &[-1.0, 0.0, 1.0], cfg)?;
    let hex = class_report(&SpaceDescriptor::hexagon(2.0)?, &[0.0], cfg)?;
    let l1_ok = ["NORM_-1", "NORM_0", "NORM_1"].iter().all(|c| l1.get(c) == Some(true));
    let hex_ok = hex.get("pdBW") == Some(true) && hex.get("pdBW_0") == Some(false) && hex.get("NORM") == Some(false);
    Ok(("l1 in NORM_rho for rho in {-1,0,1}; hexagon(2) pdBW, not pdBW_0, not NORM".into(), format!("{l1_ok}; {hex_ok}"), l1_ok && hex_ok))
}

fn corners() -> Outcome {
    let l1 = find_corners(&SpaceDescriptor::hoelder(1.0), DEFAULT_RESOLUTION)?;
    let l1_ok = l1.len() == 4
        && l1.iter().all(|c| c.kind == CornerKind::Convex && (c.y_hat[0].abs() + c.y_hat[1].abs() - 1.0).abs() < 1e-12 && c.y_hat[0] * c.y_hat[1] == 0.0);
    let hex = SpaceDescriptor::hexagon(2.0)?;
    let hc = find_corners(&hex, DEFAULT_RESOLUTION)?;
    let fig = hc.iter().find(|c| c.kind == CornerKind::Concave && c.y_hat[1] > 0.0);
    let deltas: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let fig_ok = fig.is_some_and(|c| {
        c.y_hat[..] == [0.0, 1.0] && c.x_bar[..] == [1.0, 0.0] && c.m_minus == -1.0 && c.m_plus == 1.0 && verify_corner(&hex, c, &deltas)
    });
    let convex = hc.iter().filter(|c| c.kind == CornerKind::Convex).count();
    let pass = l1_ok && fig_ok && convex == 4;
    Ok(("l1: 4 convex axis corners; hexagon(2): concave at (0,1) m=(-1,1), 4 convex".into(), format!("{l1_ok}; {fig_ok}, {convex} convex"), pass))
}

fn convex_corner_limit() -> Outcome {
    let l1 = SpaceDescriptor::hoelder(1.0);
    let c = find_corners(&l1, DEFAULT_RESOLUTION)?.into_iter().next().ok_or_else(|| Error::NonFinite("no corner".into()))?;
    let (numeric, _) = corner_pair_product(&l1, &c, 1e-3, -1.5)?;
    let hex = SpaceDescriptor::hexagon(2.0)?;
    let v = rho_product(&hex, &[1.0, 2.0], &[-1.0, 2.0], 0.0)?;
    Ok(("l1 corner pair at rho=-1.5 exceeds 1; hexagon(2) <(1,2)|(-1,2)>_0 = 3".into(), format!("{}; {}", sig12(numeric), sig12(v)), numeric > 1.0 && v == 3.0))
}

fn curvature() -> Outcome {
    let a = curvature_report(&SpaceDescriptor::hoelder(0.5), DEFAULT_RESOLUTION)?;
    let b = curvature_report(&SpaceDescriptor::hoelder(1.0), DEFAULT_RESOLUTION)?;
    let pass = a.strictly_curved && !a.strictly_convex && !b.strictly_curved && !b.strictly_convex && b.flat_segments.len() == 4;
    Ok((
        "hoelder(0.5) curved not convex; hoelder(1) neither, 4 flats".into(),
        format!("{} {}; {} {} {}", a.strictly_curved, a.strictly_convex, b.strictly_curved, b.strictly_convex, b.flat_segments.len()),
        pass,
    ))
}

fn flat_limits() -> Outcome {
    let th = flat_segment_threshold(1e-3)?;
    let l1 = SpaceDescriptor::hoelder(1.0);
    let (v, w) = ([0.6, 0.4], [-0.3, 0.9]);
    let e0 = e_map(&l1, &v, &w, 0.0)?;
    let gu = pair_geometry(&l1, &v, &w)?;
    let pass = close(th, 1.0, 1e-5) && close(e0, gu.delta / 4.0, 1e-12);
    Ok(("threshold(1e-3) -> 1; E(0) = Delta/4".into(), format!("{}; {} vs {}", sig12(th), sig12(e0), sig12(gu.delta / 4.0)), pass))
}

fn axioms() -> Outcome {
    let l1 = check_axioms(&SpaceDescriptor::hoelder(1.0), 0.0, 2000, crate::DEFAULT_SEED)?;
    let first_seven = [Axiom::An1, Axiom::An2, Axiom::An3, Axiom::An4, Axiom::An5, Axiom::An6, Axiom::An7]
        .iter()
        .all(|a| l1.status(*a) == AxiomStatus::Pass);
    let broken = [Axiom::An8, Axiom::An9, Axiom::An10].iter().all(|a| l1.status(*a) == AxiomStatus::Fail);
    let an11 = l1.status(Axiom::An11) == AxiomStatus::Pass;
    let mut l2 = true;
    for rho in [-3.0, 0.0, 2.0] {
        let r = check_axioms(&SpaceDescriptor::hoelder(2.0), rho, 2000, crate::DEFAULT_SEED)?;
        l2 &= r.results.iter().all(|x| x.status == AxiomStatus::Pass);
    }
    let rows = reproduce_counterexamples()?;
    let table = rows.iter().all(|r| r.pass);
    Ok((
        "l1 at 0: An1-7 and An11 pass, An8-10 fail; l2 all pass; counterexample table exact".into(),
        format!("{first_seven} {broken} {an11}; {l2}; {table}"),
        first_seven && broken && an11 && l2 && table,
    ))
}

/// Runs every check with the default configurations.
pub fn run_all() -> Vec<ReproCheck> {
    let ucfg = UpsilonConfig::default();
    let cfg = CsbConfig::default();
    let checks: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("weight values", Box::new(weights)),
        ("sphere sampling", Box::new(sphere_samples)),
        ("hoelder(0.5) structure", Box::new(structure)),
        ("product weights", Box::new(products)),
        ("s, d, Sigma, Delta", Box::new(sd_values)),
        ("hexagon vertex product", Box::new(hexagon_products)),
        ("taxicab angles", Box::new(taxicab_angles)),
        ("self and antipodal angles", Box::new(self_angles)),
        ("rho=-1 always defined", Box::new(minus_one_defined)),
        ("inner-product collapse", Box::new(euclid_collapse)),
        ("csb verdicts", Box::new(move || csb_values(&cfg))),
        ("upsilon", Box::new({
            let c = ucfg.clone();
            move || upsilons(&c)
        })),
        ("product sweep", Box::new(move || product_sweep(&ucfg))),
        ("class memberships", Box::new(move || classes(&CsbConfig::default()))),
        ("corners", Box::new(corners)),
        ("convex and concave corner pairs", Box::new(convex_corner_limit)),
        ("curvature", Box::new(curvature)),
        ("flat-segment limits", Box::new(flat_limits)),
        ("axioms", Box::new(axioms)),
    ];
    checks
        .into_iter()
        .map(|(id, f)| match f() {
            Ok((expected, observed, pass)) => ReproCheck { id: id.into(), expected, observed, pass },
            Err(e) => ReproCheck { id: id.into(), expected: String::new(), observed: format!("error: {e}"), pass: false },
        })
        .collect()
}
