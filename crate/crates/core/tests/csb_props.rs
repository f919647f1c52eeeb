mod common;

use bwangle::catalog::bundled;
use bwangle::csb::{csb_sup, pair_value, CsbConfig, CsbSearch};
use bwangle::SpaceDescriptor;
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valid_exponents_form_an_interval(space in planar_space(), a in -4.0f64..4.0, b in -4.0f64..4.0, t in 0.0f64..1.0) {
        let (lo, hi) = (a.min(b), a.max(b));
        let mid = lo + t * (hi - lo);
        let search = CsbSearch::new(&space, quick_csb()).unwrap();
        if search.holds(lo).unwrap() && search.holds(hi).unwrap() {
            prop_assert!(search.holds(mid).unwrap(), "{space}: {lo} {mid} {hi}");
        }
    }

    #[test]
    fn witness_reproduces_estimate(space in planar_space(), rho in -4.0f64..4.0) {
        let r = csb_sup(&space, rho, &quick_csb()).unwrap();
        let v = pair_value(&space, &r.witness.0, &r.witness.1, rho).unwrap();
        prop_assert!((v - r.sup_estimate).abs() <= 1e-12 * r.sup_estimate.max(1.0), "{v} vs {}", r.sup_estimate);
        prop_assert_eq!(r.holds, r.sup_estimate <= 1.0 + r.tolerance);
    }

    #[test]
    fn more_refinement_never_lowers_the_estimate(space in planar_space(), rho in -4.0f64..4.0, steps in 0usize..30) {
        let base = CsbConfig { refine_steps: steps, ..quick_csb() };
        let more = CsbConfig { refine_steps: steps + 10, ..quick_csb() };
        let a = csb_sup(&space, rho, &base).unwrap().sup_estimate;
        let b = csb_sup(&space, rho, &more).unwrap().sup_estimate;
        prop_assert!(b >= a, "{space} rho {rho}: {a} -> {b}");
    }

    #[test]
    fn finer_grid_never_lowers_the_estimate(space in planar_space(), rho in -4.0f64..4.0) {
        let coarse = csb_sup(&space, rho, &CsbConfig { resolution: 128, ..quick_csb() }).unwrap().sup_estimate;
        let fine = csb_sup(&space, rho, &CsbConfig { resolution: 256, ..quick_csb() }).unwrap().sup_estimate;
        prop_assert!(fine >= coarse, "{space} rho {rho}: {coarse} -> {fine}");
    }
}

#[test]
fn minus_one_never_exceeds_one() {
    let cfg = CsbConfig { random_pairs: 20_000, ..CsbConfig::default() };
    for (name, space) in bundled().unwrap() {
        let r = csb_sup(&space, -1.0, &cfg).unwrap();
        assert!(r.sup_estimate <= 1.0 + 1e-12, "{name}: {}", r.sup_estimate);
    }
}

#[test]
fn three_dimensional_search_is_seeded() {
    let space = SpaceDescriptor::hoelder_n(1.0, 3).unwrap();
    let cfg = CsbConfig { random_pairs: 20_000, ..CsbConfig::default() };
    let a = csb_sup(&space, 1.5, &cfg).unwrap();
    let b = csb_sup(&space, 1.5, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(!a.holds, "l1 in 3-D has flat faces: {}", a.sup_estimate);
    let l2 = csb_sup(&SpaceDescriptor::hoelder_n(2.0, 3).unwrap(), 5.0, &cfg).unwrap();
    assert!(l2.holds && (l2.sup_estimate - 1.0).abs() <= 1e-12);
}
