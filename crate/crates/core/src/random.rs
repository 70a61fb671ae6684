//! Seeded random games for the sampled verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::Game;
use crate::rational::int;
use crate::restriction::Restriction;

pub const PAYOFF_MIN: i64 = -5;
pub const PAYOFF_MAX: i64 = 5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two-player game with the given shape and integer payoffs uniform in
/// `[PAYOFF_MIN, PAYOFF_MAX]`.
pub fn random_game<R: Rng>(rng: &mut R, name: &str, rows: usize, cols: usize) -> Game {
    let names = |prefix: char, k: usize| (0..k).map(|i| format!("{prefix}{i}")).collect();
    Game::from_fn(name, vec![names('r', rows), names('c', cols)], |_| {
        vec![
            int(rng.gen_range(PAYOFF_MIN..=PAYOFF_MAX)),
            int(rng.gen_range(PAYOFF_MIN..=PAYOFF_MAX)),
        ]
    })
    .expect("valid shape")
}

/// `count` games whose row and column counts are drawn from `2..=max_side`.
pub fn random_pool(seed: u64, count: usize, max_side: usize) -> Vec<Game> {
    let mut rng = rng(seed);
    (0..count)
        .map(|k| {
            let rows = rng.gen_range(2..=max_side);
            let cols = rng.gen_range(2..=max_side);
            random_game(&mut rng, &format!("rand-{seed}-{k}"), rows, cols)
        })
        .collect()
}

/// Uniformly random restriction of `game` (each strategy kept with probability 1/2).
pub fn random_restriction<R: Rng>(rng: &mut R, game: &Game) -> Restriction {
    let bits = (0..game.num_players())
        .map(|i| {
            let n = game.num_strategies(i);
            let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            rng.gen::<u64>() & mask
        })
        .collect();
    Restriction::from_bits(game, bits).expect("masked to shape")
}
