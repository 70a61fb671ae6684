// Rationalizable strategies survive local elimination.

use gamefix::random::random_pool;
use gamefix::verify::{verify_theorem_just, verify_theorem_just1};
use gamefix::{fixtures, Limits, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    let mut games = fixtures::standard();
    games.extend(random_pool(3, 5, 3));
    for game in &games {
        let a = verify_theorem_just(game, &limits)?;
        let b = verify_theorem_just1(game, &limits)?;
        println!(
            "{:>6}: br:g:pure {} ⊆ sd:l {} [{}]   br:g:corr {} ⊆ msd:l {} [{}]",
            game.name(),
            show(&a.first_outcome.0),
            show(&a.second_outcome.0),
            if a.passed { "ok" } else { "FAIL" },
            show(&b.first_outcome.0),
            show(&b.second_outcome.0),
            if b.passed { "ok" } else { "FAIL" },
        );
    }
    Ok(())
}

fn show(sets: &[Vec<String>]) -> String {
    let parts: Vec<String> = sets.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
    format!("({})", parts.join(","))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
