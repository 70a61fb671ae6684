// Iterated elimination on the bundled games under several properties.

use gamefix::fixtures;
use gamefix::property::outcome;
use gamefix::{PropertyProfile, PropertySpec, Result};

pub fn run_example() -> Result<()> {
    let specs = [PropertySpec::SD_L, PropertySpec::SD_G, PropertySpec::MSD_L, PropertySpec::BR_G_PURE];
    for game in fixtures::standard() {
        for spec in specs {
            let profile = PropertyProfile::uniform(spec, game.num_players());
            let trace = outcome(&profile, &game)?;
            let path: Vec<String> = trace.steps.iter().map(|s| s.restriction.display(&game)).collect();
            println!("{:>6} {:<10} {}", game.name(), spec.to_string(), path.join(" -> "));
        }
    }

    // Players may use different properties.
    let chain = fixtures::elimination_chain();
    let mixed: PropertyProfile = PropertyProfile(vec![PropertySpec::SD_L, PropertySpec::BR_G_PURE]);
    let trace = outcome(&mixed, &chain)?;
    println!("chain under {mixed}: outcome {} at ordinal {}", trace.outcome.display(&chain), trace.closure_ordinal);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
