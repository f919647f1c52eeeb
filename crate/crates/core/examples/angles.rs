//! ρ-products and ρ-angles, including the taxicab values at ρ = 0.

use bwangle::geometry::{pair_geometry, rho_angle, rho_product};
use bwangle::SpaceDescriptor;

fn main() -> bwangle::Result<()> {
    let l1 = SpaceDescriptor::hoelder(1.0);
    for (x, y) in [([1.0, 0.0], [0.0, 1.0]), ([1.0, 0.0], [1.0, 1.0]), ([1.0, 1.0], [0.0, 1.0])] {
        let g = pair_geometry(&l1, &x, &y)?;
        let a = rho_angle(&l1, &x, &y, 0.0)?.angle_rad.expect("taxicab has the angle at 0");
        println!("{x:?} {y:?}: s={} d={} Σ={} Δ={}  angle {a:.12} rad = {:.2}°", g.s, g.d, g.sigma, g.delta, a.to_degrees());
    }

    // the same pair under different exponents
    let (x, y) = ([3.0, 1.0], [-1.0, 2.0]);
    for rho in [-1.0, 0.0, 1.0] {
        let o = rho_angle(&l1, &x, &y, rho)?;
        println!("rho {rho:>4}: product {:.6}, cosine {:.6}, angle {:?}", rho_product(&l1, &x, &y, rho)?, o.cosine, o.angle_rad);
    }

    // a concave hexagon vertex pair has no angle at ρ = −0.5
    let hex = SpaceDescriptor::hexagon(3.0)?;
    let o = rho_angle(&hex, &[1.0, 3.0], &[-1.0, 3.0], -0.5)?;
    println!("hexagon(3): cosine {:.10} defined {}", o.cosine, o.defined);
    Ok(())
}
