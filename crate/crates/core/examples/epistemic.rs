// Common knowledge of rationality by exhaustive model enumeration, and the
// explicit witness models.

use gamefix::epistemic::{epistemic_report, witness_model_thm1, witness_model_thm2};
use gamefix::{fixtures, Limits, PropertyProfile, PropertySpec, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    let pd = fixtures::prisoners_dilemma();
    for spec in [PropertySpec::SD_G, PropertySpec::SD_L] {
        let profile = PropertyProfile::uniform(spec, 2);
        let r = epistemic_report(&pd, 3, &profile, &limits)?;
        println!(
            "pd {spec}: CK {:?} CB {:?} outcome {:?} -> {}",
            r.ck_restriction.0, r.cb_restriction.0, r.operator_outcome.0, r.verdict
        );
    }

    let mp = fixtures::matching_pennies();
    let profile = PropertyProfile::uniform(PropertySpec::BR_G_PURE, 2);
    let w = witness_model_thm1(&mp, &profile, &limits)?;
    let j = w.to_json(&mp, &profile);
    println!("mp witness: E = {:?}, assignment {:?}, passed {}", j.event, j.model.assignment, j.passed);

    let profile = PropertyProfile::uniform(PropertySpec::SD_L, 2);
    for joint in pd.joint_strategies() {
        let w = witness_model_thm2(&pd, &profile, &joint)?;
        println!("pd state {}: in K*RAT {}", w.model.space().label(w.state), w.state_in_ck);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
