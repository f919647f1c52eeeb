//! The exponent interval Υ = (ν, μ) and class memberships.

use bwangle::classify::{class_report, upsilon, UpsilonConfig};
use bwangle::SpaceDescriptor;

fn main() -> bwangle::Result<()> {
    let cfg = UpsilonConfig::default();
    for space in [
        SpaceDescriptor::hoelder(1.0),
        SpaceDescriptor::hoelder(f64::INFINITY),
        SpaceDescriptor::hoelder(3.0),
        SpaceDescriptor::hoelder(2.0),
        SpaceDescriptor::hexagon(0.5)?,
        SpaceDescriptor::hexagon(3.0)?,
    ] {
        let u = upsilon(&space, &cfg)?;
        println!("{:<18} Υ = ({}, {})  attained {}/{}  {} searches", space.label(), u.nu, u.mu, u.nu_attained, u.mu_attained, u.evaluations);
    }

    let hex = SpaceDescriptor::hexagon(2.0)?;
    for m in class_report(&hex, &[-1.0, 0.0], &cfg.csb)?.memberships {
        println!("{:<10} {:<5} {}", m.class, m.member, m.evidence);
    }
    Ok(())
}
