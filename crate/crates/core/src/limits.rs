//! Enumeration budgets.

use crate::game::Game;

pub const LATTICE_ENV: &str = "GAMEFIX_LATTICE_BUDGET";
pub const MODEL_ENV: &str = "GAMEFIX_MODEL_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest restriction lattice that may be enumerated.
    pub lattice: u64,
    /// Largest number of epistemic models that may be enumerated.
    pub models: u128,
    /// Iteration budget override; `None` means `10·Σ|T_i|`.
    pub iterations: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            lattice: 1 << 16,
            models: 200_000_000,
            iterations: None,
        }
    }
}

impl Limits {
    /// Defaults overridden by `GAMEFIX_LATTICE_BUDGET` / `GAMEFIX_MODEL_BUDGET`.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(v) = std::env::var(LATTICE_ENV).ok().and_then(|v| v.parse().ok()) {
            limits.lattice = v;
        }
        if let Some(v) = std::env::var(MODEL_ENV).ok().and_then(|v| v.parse().ok()) {
            limits.models = v;
        }
        limits
    }

    pub fn iteration_budget(&self, game: &Game) -> usize {
        self.iterations.unwrap_or(10 * game.total_strategies())
    }
}
