// Outcome, largest fixpoint and the join of post-fixpoints coincide for
// monotonic operators; a local operator shows what breaks otherwise.

use gamefix::fixtures;
use gamefix::iteration::{verify_contracting_outcome, verify_tarski};
use gamefix::property::ProfileOperator;
use gamefix::{Limits, PropertySpec, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    for game in fixtures::standard() {
        for spec in [PropertySpec::SD_G, PropertySpec::MSD_G, PropertySpec::BR_G_PURE] {
            let op = ProfileOperator::uniform(spec, &game);
            let r = verify_tarski(&op, &game, &limits)?;
            println!(
                "{:>6} {:<10} {:<15} fixpoints={:<3} post-fixpoints={}",
                game.name(),
                spec.to_string(),
                r.verdict.to_string(),
                r.fixpoints,
                r.post_fixpoints
            );
        }
    }
    let shrink = fixtures::shrink();
    let op = ProfileOperator::uniform(PropertySpec::SD_L, &shrink);
    let r = verify_tarski(&op, &shrink, &limits)?;
    println!("shrink sd:l: {}", r.verdict);
    let c = verify_contracting_outcome(&op, &shrink, &limits)?;
    println!(
        "shrink sd:l as a contracting operator: {} (closure ordinal {})",
        c.verdict,
        c.closure_ordinal.map(|o| o.to_string()).unwrap_or_default()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
