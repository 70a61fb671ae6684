//! Iterated elimination of strategies as fixpoints of operators on the
//! lattice of restrictions of a strategic game.

pub mod cli;
pub mod dominance;
pub mod epistemic;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod iteration;
pub mod limits;
pub mod lp;
pub mod ordinal;
pub mod property;
pub mod random;
pub mod rational;
pub mod restriction;
pub mod transfinite;
pub mod verify;

pub use error::{Error, Result};
pub use game::Game;
pub use limits::Limits;
pub use ordinal::Ordinal;
pub use property::{PropertyProfile, PropertySpec};
pub use rational::Rational;
pub use restriction::{Restriction, StrategySet};
