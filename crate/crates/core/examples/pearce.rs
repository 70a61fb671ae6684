// Never a best response to a correlated belief iff strictly dominated by a
// mixture, checked restriction by restriction.

use gamefix::random::{random_pool, random_restriction, rng};
use gamefix::verify::{pearce_over, pearce_over_lattice};
use gamefix::{fixtures, Limits, Restriction, Result};

pub fn run_example() -> Result<()> {
    let limits = Limits::default();
    for game in fixtures::standard() {
        let r = pearce_over_lattice(&game, &limits)?;
        println!("{:>6}: {} restrictions, {} mismatches", game.name(), r.restrictions_checked, r.mismatch_count);
    }
    let mut draw = rng(11);
    for game in random_pool(11, 5, 4) {
        let sample: Vec<Restriction> = (0..20).map(|_| random_restriction(&mut draw, &game)).collect();
        let r = pearce_over(&game, &sample)?;
        println!("{:>6}: {} sampled restrictions, {} mismatches", game.name(), r.restrictions_checked, r.mismatch_count);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
