// Reading, writing and generating game files.

use gamefix::format::{parse_game, write_game};
use gamefix::random::{random_game, rng};
use gamefix::Result;

const TEXT: &str = "\
# Stag hunt
game stag
players 2
strategies 1 : S H
strategies 2 : S H
payoffs
S S : 4 4
S H : 0 3
H S : 3 0
H H : 3 3
end
";

pub fn run_example() -> Result<()> {
    let game = parse_game(TEXT)?;
    println!("{} has {} joint strategies", game.name(), game.num_joint_strategies());
    let again = parse_game(&write_game(&game)?)?;
    assert_eq!(game, again);
    let random = random_game(&mut rng(42), "r", 2, 3);
    print!("{}", write_game(&random)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
