mod common;

use bwangle::axioms::{axiom_discrepancy, check_axioms, Axiom, AxiomStatus};
use bwangle::geometry::rho_angle;
use bwangle::SpaceDescriptor;
use common::*;
use proptest::prelude::*;

const POINTWISE: [Axiom; 6] = [Axiom::An2, Axiom::An3, Axiom::An4, Axiom::An5, Axiom::An6, Axiom::An7];

#[test]
fn pointwise_axioms_on_ten_thousand_pairs() {
    let cases = [
        (SpaceDescriptor::hoelder(1.0), -1.0),
        (SpaceDescriptor::hoelder(1.0), 0.5),
        (SpaceDescriptor::hoelder(3.0), 1.0),
        (SpaceDescriptor::hexagon(0.5).unwrap(), 0.0),
        (SpaceDescriptor::hexagon(3.0).unwrap(), -1.0),
        (SpaceDescriptor::hoelder(0.5), -1.0),
        (SpaceDescriptor::pathological_b(), -1.0),
        (SpaceDescriptor::hoelder_n(1.5, 3).unwrap(), 0.0),
    ];
    for (space, rho) in cases {
        let r = check_axioms(&space, rho, 10_000, bwangle::DEFAULT_SEED).unwrap();
        assert_eq!(r.undefined_pairs, 0, "{space} at {rho}");
        for a in POINTWISE {
            assert_eq!(r.status(a), AxiomStatus::Pass, "{space} at {rho}: {a}");
        }
    }
}

#[test]
fn failures_reevaluate_from_witnesses() {
    let cases = [
        (SpaceDescriptor::hoelder(1.0), 0.0),
        (SpaceDescriptor::hoelder(f64::INFINITY), 0.5),
        (SpaceDescriptor::hexagon(2.0).unwrap(), -1.0),
        (SpaceDescriptor::hexagon(3.0).unwrap(), 1.0),
    ];
    let mut failures = 0;
    for (space, rho) in cases {
        let r = check_axioms(&space, rho, 2000, 17).unwrap();
        for res in r.results.iter().filter(|x| x.status == AxiomStatus::Fail) {
            let Some(again) = axiom_discrepancy(&space, rho, res).unwrap() else { continue };
            failures += 1;
            let same = again == res.discrepancy || (again - res.discrepancy).abs() <= 1e-12;
            assert!(same, "{space} {rho} {}: {again} vs {}", res.axiom, res.discrepancy);
        }
    }
    assert!(failures >= 6);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4096, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scaling_keeps_status_and_value((space, x, y) in planar_pair(), rho in -3.0f64..3.0, r in 0.01f64..100.0, s in 0.01f64..100.0) {
        let a = rho_angle(&space, &x, &y, rho).unwrap();
        let rx: Vec<f64> = x.iter().map(|c| r * c).collect();
        let sy: Vec<f64> = y.iter().map(|c| s * c).collect();
        let b = rho_angle(&space, &rx, &sy, rho).unwrap();
        prop_assert_eq!(a.defined, b.defined);
        if let (Some(p), Some(q)) = (a.angle_rad, b.angle_rad) {
            prop_assert!((p - q).abs() <= 1e-9, "{p} vs {q}");
        }
    }
}
