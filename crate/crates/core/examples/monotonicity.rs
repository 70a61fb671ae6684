// Global properties are monotonic; local ones hold on singleton restrictions.

use gamefix::fixtures;
use gamefix::verify::{check_property_monotone, check_singleton_condition};
use gamefix::{Limits, PropertySpec, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    let games = fixtures::standard();
    for spec in [PropertySpec::SD_G, PropertySpec::MSD_G, PropertySpec::BR_G_PURE, PropertySpec::SD_L] {
        for game in games.iter().chain([fixtures::shrink()].iter()) {
            let r = check_property_monotone(spec, game, &limits)?;
            println!("monotone {:<10} {:>6}: {} violations in {} pairs", spec.to_string(), game.name(), r.violation_count, r.pairs_checked);
        }
    }
    for spec in [PropertySpec::SD_L, PropertySpec::MSD_L, PropertySpec::BR_L_PURE, PropertySpec::SD_G] {
        let pd = fixtures::prisoners_dilemma();
        let r = check_singleton_condition(spec, &pd)?;
        let failures: Vec<String> = r.failures.iter().map(|f| format!("({}) player {}", f.joint.join(","), f.player)).collect();
        println!("singleton {:<10} pd: {} {}", spec.to_string(), if r.passed { "pass" } else { "fail" }, failures.join("; "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
