//! Υ rows for Hölder spaces and products of two lines, as CSV.

use bwangle::catalog::sweep_members;
use bwangle::classify::{conjecture_sweep, UpsilonConfig};

fn main() -> bwangle::Result<()> {
    let grid = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
    let params = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let cfg = UpsilonConfig::default();
    for family in ["hoelder", "product"] {
        let table = conjecture_sweep(&sweep_members(family, &params)?, &grid, &cfg)?;
        print!("{}", table.to_csv());
        for w in &table.proper_witnesses {
            println!("# {} has the angle at {} but not at {}", w.member, w.inner_rho, w.outer_rho);
        }
    }
    Ok(())
}
