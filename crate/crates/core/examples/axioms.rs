//! Axiom checks An1–An11 and the taxicab counterexamples.

use bwangle::axioms::{check_axioms, counterexamples_csv, reproduce_counterexamples};
use bwangle::SpaceDescriptor;

fn main() -> bwangle::Result<()> {
    for (space, rho) in [(SpaceDescriptor::hoelder(1.0), 0.0), (SpaceDescriptor::hoelder(2.0), 2.0)] {
        let report = check_axioms(&space, rho, 5000, bwangle::DEFAULT_SEED)?;
        println!("{} at rho = {rho}:", space.label());
        for r in &report.results {
            let w = r.witness.as_ref().map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            println!("  {:<5} {:?}  {:.3e}  {}", r.axiom.to_string(), r.status, r.discrepancy, w.unwrap_or_default());
        }
    }
    print!("{}", counterexamples_csv(&reproduce_counterexamples()?));
    Ok(())
}
