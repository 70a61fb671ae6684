// Mixed dominance and best responses, with their certificates.

use gamefix::dominance::{exists_supporting_belief, mixed_dominance_witness, BeliefKind};
use gamefix::fixtures;
use gamefix::{Restriction, Result};

pub fn run_example() -> Result<()> {
    let mix = fixtures::mixed_dominance();
    let top = Restriction::top(&mix);
    let pool = *top.component(0);
    for s in 0..mix.num_strategies(0) {
        match mixed_dominance_witness(&mix, &top, 0, &pool, s)? {
            Some(m) => println!("{} is dominated by {}", mix.strategy_name(0, s), serde_json::to_string(&m.to_json(&mix)).unwrap()),
            None => println!("{} is not dominated by any mixture", mix.strategy_name(0, s)),
        }
        for kind in [BeliefKind::Pure, BeliefKind::Correlated] {
            let belief = exists_supporting_belief(&mix, &top, &pool, 0, s, kind)?;
            println!(
                "  best response ({kind:?}): {}",
                belief.map(|b| serde_json::to_string(&b.to_json(&mix)).unwrap()).unwrap_or_else(|| "none".into())
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
