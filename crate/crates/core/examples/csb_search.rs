//! Searching for the supremum of |Δ/4|·(Σ/4)^ρ over unit pairs.

use bwangle::csb::{CsbConfig, CsbSearch};
use bwangle::SpaceDescriptor;

fn main() -> bwangle::Result<()> {
    let cfg = CsbConfig::default();
    for space in [SpaceDescriptor::hoelder(1.0), SpaceDescriptor::hoelder(2.0), SpaceDescriptor::hexagon(2.0)?] {
        // tables are built once and rescored for every exponent
        let search = CsbSearch::new(&space, cfg.clone())?;
        for rho in [-1.5, -1.0, 0.0, 1.0, 1.2] {
            let r = search.sup(rho)?;
            println!(
                "{:<16} rho {rho:>5}: sup {:.9} holds {:<5} witness {} {}",
                space.label(),
                r.sup_estimate,
                r.holds,
                r.witness.0,
                r.witness.1
            );
        }
    }

    let cube = SpaceDescriptor::hoelder_n(1.0, 3)?;
    let r = CsbSearch::new(&cube, CsbConfig { random_pairs: 100_000, ..cfg })?.sup(1.5)?;
    println!("{} rho 1.5: sup {:.6} ({:?} mode)", cube.label(), r.sup_estimate, r.mode);
    Ok(())
}
