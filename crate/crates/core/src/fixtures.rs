//! Bundled example games.

use crate::format::parse_game;
use crate::game::Game;

pub const PD_TEXT: &str = include_str!("../fixtures/pd.game");
pub const MP_TEXT: &str = include_str!("../fixtures/mp.game");
pub const MIX_TEXT: &str = include_str!("../fixtures/mix.game");
pub const CHAIN_TEXT: &str = include_str!("../fixtures/chain.game");
pub const THREE_PLAYER_TEXT: &str = include_str!("../fixtures/3p.game");
pub const SHRINK_TEXT: &str = include_str!("../fixtures/shrink.game");

fn load(text: &str) -> Game {
    parse_game(text).expect("bundled fixture parses")
}

/// Prisoner's dilemma, `{C,D}²`.
pub fn prisoners_dilemma() -> Game {
    load(PD_TEXT)
}

/// Matching pennies, `{H,T}²`.
pub fn matching_pennies() -> Game {
    load(MP_TEXT)
}

/// Row `{T,M,B}` × column `{L,R}`; `B` is dominated by the `T`/`M` mix only.
pub fn mixed_dominance() -> Game {
    load(MIX_TEXT)
}

/// Row `{T,M,B}` × column `{L,C,R}`; pure elimination takes three rounds.
pub fn elimination_chain() -> Game {
    load(CHAIN_TEXT)
}

pub fn three_player() -> Game {
    load(THREE_PLAYER_TEXT)
}

pub fn shrink() -> Game {
    load(SHRINK_TEXT)
}

/// The four two-player fixtures used throughout the verification suites.
pub fn standard() -> Vec<Game> {
    vec![
        prisoners_dilemma(),
        matching_pennies(),
        mixed_dominance(),
        elimination_chain(),
    ]
}

pub fn by_name(name: &str) -> Option<Game> {
    Some(match name {
        "pd" => prisoners_dilemma(),
        "mp" => matching_pennies(),
        "mix" => mixed_dominance(),
        "chain" => elimination_chain(),
        "three" | "3p" => three_player(),
        "shrink" => shrink(),
        _ => return None,
    })
}
