//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use bwangle::axioms::reproduce_counterexamples;
use bwangle::catalog::{bundled, lines_product, sweep_members};
use bwangle::classify::{conjecture_sweep, upsilon, UpsilonConfig};
use bwangle::corners::{
    corner_pair_product, corner_vectors, curvature_report, find_corners, flat_segment_witness, verify_corner,
    CornerKind, DEFAULT_RESOLUTION,
};
use bwangle::csb::{csb_sup, pair_value, CsbConfig, CsbSearch};
use bwangle::geometry::{euclid_angle, rho_angle, rho_product};
use bwangle::space::structure_report;
use bwangle::{Result, SpaceDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<(bool, String)>;

fn angle0(space: &SpaceDescriptor, x: [f64; 2], y: [f64; 2]) -> Result<f64> {
    Ok(rho_angle(space, &x, &y, 0.0)?.angle_rad.unwrap_or(f64::NAN))
}

fn c1() -> Verdict {
    let l1 = SpaceDescriptor::hoelder(1.0);
    let a = angle0(&l1, [1.0, 0.0], [0.0, 1.0])?;
    let b = angle0(&l1, [1.0, 0.0], [1.0, 1.0])?;
    let (ea, eb) = ((a - FRAC_PI_2).abs(), (b - 0.75f64.acos()).abs());
    let deg = b.to_degrees();
    Ok((ea <= 1e-12 && eb <= 1e-12 && (deg - 41.41).abs() < 5e-3, format!("|err| {ea:e}, {eb:e}; {deg:.4} deg")))
}

fn c2() -> Verdict {
    let rows = reproduce_counterexamples()?;
    let worst = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    let gap = rows.iter().find(|r| r.quantity.starts_with("An8: gap")).map_or(f64::NAN, |r| r.computed);
    Ok((rows.iter().all(|r| r.pass), format!("{} rows, max |diff| {worst:e}, An8 gap {gap:.6}", rows.len())))
}

fn c3() -> Verdict {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, p) in [("l1", 1.0), ("linf", f64::INFINITY)] {
        let t = Instant::now();
        let u = upsilon(&SpaceDescriptor::hoelder(p), &UpsilonConfig::default())?;
        let secs = t.elapsed().as_secs_f64();
        let (nu, mu) = (u.nu.value(), u.mu.value());
        ok &= (nu + 1.0).abs() <= 1e-3 && (mu - 1.0).abs() <= 1e-3 && secs <= 60.0;
        detail.push(format!("{name} ({nu}, {mu}) in {secs:.2}s"));
    }
    Ok((ok, detail.join("; ")))
}

fn c4() -> Verdict {
    let l2 = SpaceDescriptor::hoelder(2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(bwangle::DEFAULT_SEED);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let y = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let e = euclid_angle(&x, &y)?;
        for rho in [-5.0, -1.0, 0.0, 1.0, 5.0] {
            let a = rho_angle(&l2, &x, &y, rho)?.angle_rad.unwrap_or(f64::INFINITY);
            worst = worst.max((a - e).abs());
        }
    }
    Ok((worst <= 1e-9, format!("max |diff| {worst:e}")))
}

fn c5() -> Verdict {
    let mut worst = 0.0f64;
    let all = bundled()?;
    for (_, space) in &all {
        worst = worst.max(csb_sup(space, -1.0, &CsbConfig::default())?.sup_estimate);
    }
    Ok((worst <= 1.0 + 1e-12, format!("{} instances, max sup {worst}", all.len())))
}

fn c6() -> Verdict {
    let grid: Vec<f64> = (0..41).map(|k| -3.0 + 0.15 * k as f64).collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for space in [SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(2.0)?] {
        let search = CsbSearch::new(&space, CsbConfig::default())?;
        let bits = grid.iter().map(|&r| search.holds(r)).collect::<Result<Vec<_>>>()?;
        let first = bits.iter().position(|b| *b);
        let last = bits.iter().rposition(|b| *b);
        let interval = match (first, last) {
            (Some(a), Some(b)) => bits[a..=b].iter().all(|x| *x),
            _ => true,
        };
        ok &= interval;
        let s: String = bits.iter().map(|b| if *b { '1' } else { '0' }).collect();
        detail.push(format!("{space} {s}"));
    }
    Ok((ok, detail.join("; ")))
}

fn c7() -> Verdict {
    let l1 = find_corners(&SpaceDescriptor::hoelder(1.0), DEFAULT_RESOLUTION)?;
    let axes = l1.iter().all(|c| {
        c.kind == CornerKind::Convex && c.y_hat[0] * c.y_hat[1] == 0.0 && c.y_hat[0].abs() + c.y_hat[1].abs() == 1.0
    });
    let hex = SpaceDescriptor::hexagon(2.0)?;
    let deltas: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    let fig = find_corners(&hex, DEFAULT_RESOLUTION)?.into_iter().find(|c| {
        c.kind == CornerKind::Concave && c.y_hat[..] == [0.0, 1.0] && c.m_minus == -1.0 && c.m_plus == 1.0
    });
    let verified = fig.as_ref().is_some_and(|c| verify_corner(&hex, c, &deltas));
    Ok((l1.len() == 4 && axes && verified, format!("l1: {} convex corners on the axes = {axes}; hexagon(2) figure corner verified = {verified}", l1.len())))
}

fn c8() -> Verdict {
    let hex = SpaceDescriptor::hexagon(2.0)?;
    let r = csb_sup(&hex, 0.0, &CsbConfig::default())?;
    let again = pair_value(&hex, &r.witness.0, &r.witness.1, 0.0)?;
    let corners = find_corners(&hex, DEFAULT_RESOLUTION)?;
    let mut worst = 0.0f64;
    for c in &corners {
        for k in 1..=10 {
            let d = c.delta_max * k as f64 / 10.0;
            let (numeric, analytic) = corner_pair_product(&hex, c, d, 0.0)?;
            worst = worst.max((numeric - analytic).abs());
        }
    }
    let exact = rho_product(&hex, &[1.0, 2.0], &[-1.0, 2.0], 0.0)?;
    let ok = r.sup_estimate > 1.0 && (again - r.sup_estimate).abs() <= 1e-12 && worst <= 1e-9 && exact == 3.0;
    Ok((ok, format!("sup {} at {} {}; series |diff| {worst:e}; product {exact}", r.sup_estimate, r.witness.0, r.witness.1)))
}

fn c9() -> Verdict {
    let l1 = SpaceDescriptor::hoelder(1.0);
    let report = curvature_report(&l1, DEFAULT_RESOLUTION)?;
    let seg = report.flat_segments.first().ok_or_else(|| bwangle::Error::NonFinite("no flat segment".into()))?;
    let w = flat_segment_witness(&l1, seg, 1.1)?;
    let flat_ok = w.value > 1.0 && (w.value - w.analytic).abs() <= 1e-9;
    let search = CsbSearch::new(&l1, CsbConfig::default())?;
    let (h_plus, h_minus) = (search.holds(1.1)?, search.holds(-1.1)?);
    // a convex-corner pair that breaks CSB at −1.1
    let corner = report.corners.iter().find(|c| c.kind == CornerKind::Convex);
    let corner_pair = corner.and_then(|c| {
        (0..60).map(|k| c.delta_max * 0.5f64.powi(k)).find_map(|d| {
            let (p, q) = corner_vectors(c, d);
            pair_value(&l1, &p, &q, -1.1).ok().filter(|v| *v > 1.0).map(|v| (d, v))
        })
    });
    let ok = flat_ok && !h_plus && !h_minus && corner_pair.is_some();
    Ok((
        ok,
        format!(
            "t = {:.4}: f = {} vs {}; has_angle(1.1) = {h_plus}, has_angle(-1.1) = {h_minus}; corner pair {corner_pair:?}",
            w.t, w.value, w.analytic
        ),
    ))
}

fn c10() -> Verdict {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for r in [2.0, 3.0, 5.0] {
        let hex = SpaceDescriptor::hexagon(r)?;
        let bound = -(r * r - 1.0f64).ln() / (r * r + 1.0f64).ln();
        for e in [-2.0, -1.0, bound, 0.0] {
            let v = rho_product(&hex, &[1.0, r], &[-1.0, r], e)?;
            worst = worst.max((v - (r * r - 1.0) * (r * r + 1.0f64).powf(e)).abs());
        }
        let u = upsilon(&hex, &UpsilonConfig::default())?;
        ok &= u.mu.value() <= bound + 1e-3;
        detail.push(format!("r={r}: mu {} <= {bound:.6}", u.mu));
    }
    ok &= worst <= 1e-12;
    Ok((ok, format!("product |diff| {worst:e}; {}", detail.join(", "))))
}

fn c11() -> Verdict {
    let spaces = [
        SpaceDescriptor::hoelder(1.0),
        SpaceDescriptor::hoelder(f64::INFINITY),
        SpaceDescriptor::hoelder(3.0),
        SpaceDescriptor::hoelder(0.5),
        SpaceDescriptor::hexagon(0.5)?,
        SpaceDescriptor::hexagon(2.0)?,
        SpaceDescriptor::hexagon(3.0)?,
    ];
    let cfg = UpsilonConfig::default();
    let mut ok = true;
    let mut checked = 0;
    for space in &spaces {
        let u = upsilon(space, &cfg)?;
        let search = CsbSearch::new(space, cfg.csb.clone())?;
        for (end, outside) in [(u.nu.value(), u.nu.value() - 0.01), (u.mu.value(), u.mu.value() + 0.01)] {
            if end.is_finite() {
                checked += 1;
                let good = search.holds(end)? && !search.holds(outside)?;
                if !good {
                    ok = false;
                }
            }
        }
    }
    Ok((ok && checked > 0, format!("{checked} finite endpoints re-tested")))
}

fn c12() -> Verdict {
    let r05 = curvature_report(&SpaceDescriptor::hoelder(0.5), DEFAULT_RESOLUTION)?;
    let r1 = curvature_report(&SpaceDescriptor::hoelder(1.0), DEFAULT_RESOLUTION)?;
    let r3 = curvature_report(&SpaceDescriptor::hoelder(3.0), DEFAULT_RESOLUTION)?;
    let ok = r05.strictly_curved && !r05.strictly_convex && !r1.strictly_curved && !r1.strictly_convex && r3.strictly_curved && r3.strictly_convex;
    let f = |r: &bwangle::corners::CurvatureReport| format!("curved={} convex={}", r.strictly_curved, r.strictly_convex);
    Ok((ok, format!("p=0.5 {}; p=1 {}; p=3 {}", f(&r05), f(&r1), f(&r3))))
}

fn c13() -> Verdict {
    let st2 = structure_report(&lines_product(2.0), 2000, 1e-12)?;
    let mut ok = st2.parallelogram_identity_holds;
    for p in [1.0, 3.0] {
        let st = structure_report(&lines_product(p), 2000, 1e-12)?;
        ok &= !st.parallelogram_identity_holds && st.parallelogram_witness.is_some();
    }
    let params = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let cfg = UpsilonConfig::default();
    let prod = conjecture_sweep(&sweep_members("product", &params)?, &grid, &cfg)?;
    let hold = conjecture_sweep(&sweep_members("hoelder", &params)?, &grid, &cfg)?;
    let mut worst = 0.0f64;
    for (a, b) in prod.rows.iter().zip(&hold.rows) {
        let (Some(ua), Some(ub)) = (&a.upsilon, &b.upsilon) else {
            ok = false;
            continue;
        };
        for (x, y) in [(ua.nu.value(), ub.nu.value()), (ua.mu.value(), ub.mu.value())] {
            worst = worst.max(if x == y { 0.0 } else { (x - y).abs() });
        }
        ok &= a.has_angle == b.has_angle;
    }
    ok &= worst <= 1e-3;
    Ok((ok, format!("p=2 parallelogram {}; sweep max |diff| {worst:e}", st2.parallelogram_identity_holds)))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 13] = [
        ("taxicab angles at rho = 0", c1),
        ("An8-An10 counterexamples", c2),
        ("Upsilon of l1 and linf", c3),
        ("Euclidean collapse", c4),
        ("rho = -1 validity for bundled spaces", c5),
        ("interval structure of valid exponents", c6),
        ("corner detection", c7),
        ("concave-corner violation", c8),
        ("flat-segment and convex-corner bounds", c9),
        ("hexagon analytic bound", c10),
        ("endpoint attainment", c11),
        ("curvature classification", c12),
        ("product construction", c13),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {detail} [{:.2}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
