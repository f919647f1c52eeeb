#![allow(dead_code)]

use bwangle::catalog::{ellipse_table, lines_product, regular_octagon};
use bwangle::csb::CsbConfig;
use bwangle::SpaceDescriptor;
use proptest::prelude::*;

/// Positive definite planar spaces from every family.
pub fn planar_space() -> impl Strategy<Value = SpaceDescriptor> {
    prop_oneof![
        (0.3f64..6.0).prop_map(SpaceDescriptor::hoelder),
        Just(SpaceDescriptor::hoelder(f64::INFINITY)),
        (0.0f64..5.0).prop_map(|r| SpaceDescriptor::hexagon(r).unwrap()),
        (0.5f64..4.0).prop_map(lines_product),
        Just(regular_octagon().unwrap()),
        Just(ellipse_table().unwrap()),
        Just(SpaceDescriptor::pathological_b()),
        Just(SpaceDescriptor::pathological_c()),
    ]
}

/// Every family, including weights that vanish off the origin.
pub fn any_space() -> impl Strategy<Value = SpaceDescriptor> {
    prop_oneof![
        4 => planar_space(),
        1 => (-5.0f64..-0.2).prop_map(SpaceDescriptor::hoelder),
        1 => Just(SpaceDescriptor::pathological_a()),
        1 => (0.5f64..4.0, 1usize..5).prop_map(|(p, n)| SpaceDescriptor::hoelder_n(p, n).unwrap()),
        1 => (0.5f64..3.0).prop_map(|p| SpaceDescriptor::product(SpaceDescriptor::hoelder(1.0), SpaceDescriptor::line(), p)),
    ]
}

pub fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, n).prop_filter("nonzero", |v| v.iter().any(|c| c.abs() > 1e-3))
}

/// A space together with two nonzero vectors of its dimension.
pub fn space_and_pair() -> impl Strategy<Value = (SpaceDescriptor, Vec<f64>, Vec<f64>)> {
    any_space().prop_flat_map(|s| {
        let n = s.dimension();
        (Just(s), coords(n), coords(n))
    })
}

pub fn planar_pair() -> impl Strategy<Value = (SpaceDescriptor, Vec<f64>, Vec<f64>)> {
    planar_space().prop_flat_map(|s| (Just(s), coords(2), coords(2)))
}

/// Small planar search grid for property runs.
pub fn quick_csb() -> CsbConfig {
    CsbConfig { resolution: 256, ..CsbConfig::default() }
}
