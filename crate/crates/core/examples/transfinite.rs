// An elimination that needs one step past ω.

use gamefix::transfinite::{by_name, iterate_symbolic, validate_witness, EngineConfig};
use gamefix::{Ordinal, Result};

pub fn run_example() -> Result<()> {
    let game = by_name("witness-tg").expect("registered");
    let report = validate_witness(game.as_ref(), 50, 1)?;
    println!("validation: passed {} with {} probes", report.passed, report.probes_checked);
    let trace = iterate_symbolic(game.as_ref(), Ordinal::new(2, 0), &EngineConfig::default())?;
    for step in &trace.steps {
        println!("T^{:<5} = {}", step.ordinal.to_string(), step.restriction);
    }
    println!("closure ordinal {:?}", trace.closure_ordinal.map(|o| o.to_string()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
