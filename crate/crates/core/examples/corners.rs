//! Corners, flat segments and the pairs that break CSB near them.

use bwangle::corners::{corner_pair_product, curvature_report, flat_segment_witness, CornerKind};
use bwangle::SpaceDescriptor;

fn main() -> bwangle::Result<()> {
    for space in [SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hexagon(2.0)?, SpaceDescriptor::hoelder(0.5), SpaceDescriptor::hoelder(3.0)] {
        let r = curvature_report(&space, 4096)?;
        println!(
            "{}: strictly convex {}, strictly curved {}, {} flat segments, {} corners",
            space.label(),
            r.strictly_convex,
            r.strictly_curved,
            r.flat_segments.len(),
            r.corners.len()
        );
        for c in &r.corners {
            let rho = if c.kind == CornerKind::Convex { -1.5 } else { 0.0 };
            let d = c.delta_max.min(0.01);
            let (numeric, analytic) = corner_pair_product(&space, c, d, rho)?;
            println!(
                "  {:?} at {} (x̄ {}, m₋ {}, m₊ {}): δ={d} ρ={rho} product {numeric:.9} series {analytic:.9}",
                c.kind, c.y_hat, c.x_bar, c.m_minus, c.m_plus
            );
        }
        if let Some(seg) = r.flat_segments.first() {
            let w = flat_segment_witness(&space, seg, 1.1)?;
            println!("  flat segment pair {} {}: f = {:.9} (analytic {:.9})", w.x, w.y, w.value, w.analytic);
        }
    }
    Ok(())
}
