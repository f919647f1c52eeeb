//! Weight families, JSON descriptors and structural checks.

use bwangle::space::{sample_unit_sphere, structure_report};
use bwangle::SpaceDescriptor;

fn main() -> bwangle::Result<()> {
    let spaces = [
        SpaceDescriptor::hoelder(1.0),
        SpaceDescriptor::hoelder(0.5),
        SpaceDescriptor::hoelder(-1.0),
        SpaceDescriptor::hexagon(2.0)?,
        SpaceDescriptor::from_json(r#"{"family":"product","left":{"family":"hoelder","p":2,"dimension":1},"right":{"family":"hoelder","p":2,"dimension":1},"p":3}"#)?,
        SpaceDescriptor::pathological_b(),
    ];
    for s in &spaces {
        let st = structure_report(s, 1000, 1e-9)?;
        println!(
            "{:<40} ‖(1,2)‖ = {:<10.6} pd={} triangle={} parallelogram={}",
            s.label(),
            s.weight(&[1.0, 2.0])?,
            st.is_positive_definite,
            st.triangle_inequality_holds,
            st.parallelogram_identity_holds
        );
    }

    // axis directions of Hoelder(-1) have weight zero and are skipped
    let sample = sample_unit_sphere(&SpaceDescriptor::hoelder(-1.0), 1024)?;
    println!("hoelder(-1) sphere: {} points, skipped angles {:?}", sample.points.len(), sample.skipped);
    println!("{}", spaces[4].to_json());
    Ok(())
}
