//! Finite strategic games with exact payoffs.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest number of strategies a single player may have.
pub const MAX_STRATEGIES: usize = 64;

/// Index of a strategy within one player's ordered strategy list.
pub type StrategyId = usize;

/// One strategy per player, by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointStrategy(pub Vec<StrategyId>);

/// One strategy per opponent of `player`, in player order with `player` skipped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpponentProfile {
    pub player: usize,
    pub strategies: Vec<StrategyId>,
}

impl OpponentProfile {
    /// Full joint strategy obtained by inserting `own` at the player's slot.
    pub fn with_own(&self, own: StrategyId) -> JointStrategy {
        let mut joint = self.strategies.clone();
        joint.insert(self.player, own);
        JointStrategy(joint)
    }
}

/// A finite game `(T_1, ..., T_n, p_1, ..., p_n)`.
///
/// Joint strategies are stored row-major: the last player's strategy varies
/// fastest. Players are 0-based internally and 1-based in the text format.
#[derive(Clone, PartialEq, Eq)]
pub struct Game {
    name: String,
    strategy_names: Vec<Vec<String>>,
    strides: Vec<usize>,
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    /// Builds a game from strategy names and a payoff table given in
    /// row-major joint-strategy order (see [`Game::joint_strategies`]).
    pub fn new(
        name: impl Into<String>,
        strategy_names: Vec<Vec<String>>,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = strategy_names.len();
        if n < 2 {
            return Err(Error::Argument(format!("a game needs at least 2 players, got {n}")));
        }
        for (i, names) in strategy_names.iter().enumerate() {
            if names.is_empty() {
                return Err(Error::Argument(format!("player {} has no strategies", i + 1)));
            }
            if names.len() > MAX_STRATEGIES {
                return Err(Error::Argument(format!(
                    "player {} has {} strategies; at most {MAX_STRATEGIES} are supported",
                    i + 1,
                    names.len()
                )));
            }
            let mut seen = HashSet::new();
            for s in names {
                if !seen.insert(s.as_str()) {
                    return Err(Error::Argument(format!(
                        "duplicate strategy `{s}` for player {}",
                        i + 1
                    )));
                }
            }
        }
        let mut strides = vec![1; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * strategy_names[i + 1].len();
        }
        let cells = strides[0] * strategy_names[0].len();
        if payoffs.len() != cells {
            return Err(Error::Argument(format!(
                "expected {cells} payoff vectors, got {}",
                payoffs.len()
            )));
        }
        if let Some(bad) = payoffs.iter().position(|p| p.len() != n) {
            return Err(Error::Argument(format!(
                "payoff vector {bad} has {} entries, expected {n}",
                payoffs[bad].len()
            )));
        }
        Ok(Self {
            name: name.into(),
            strategy_names,
            strides,
            payoffs,
        })
    }

    /// Builds a game by evaluating `payoff` at every joint strategy.
    pub fn from_fn(
        name: impl Into<String>,
        strategy_names: Vec<Vec<String>>,
        mut payoff: impl FnMut(&[StrategyId]) -> Vec<Rational>,
    ) -> Result<Self> {
        let sizes: Vec<usize> = strategy_names.iter().map(Vec::len).collect();
        let payoffs = joint_iter(sizes.clone()).map(|j| payoff(&j)).collect();
        Self::new(name, strategy_names, payoffs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_players(&self) -> usize {
        self.strategy_names.len()
    }

    pub fn num_strategies(&self, player: usize) -> usize {
        self.strategy_names[player].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strategy_names.iter().map(Vec::len).collect()
    }

    /// `Σ_i |T_i|`.
    pub fn total_strategies(&self) -> usize {
        self.strategy_names.iter().map(Vec::len).sum()
    }

    pub fn num_joint_strategies(&self) -> usize {
        self.payoffs.len()
    }

    pub fn strategy_names(&self, player: usize) -> &[String] {
        &self.strategy_names[player]
    }

    pub fn strategy_name(&self, player: usize, s: StrategyId) -> &str {
        &self.strategy_names[player][s]
    }

    pub fn strategy_index(&self, player: usize, name: &str) -> Option<StrategyId> {
        self.strategy_names[player].iter().position(|s| s == name)
    }

    pub(crate) fn stride(&self, player: usize) -> usize {
        self.strides[player]
    }

    pub fn joint_index(&self, joint: &[StrategyId]) -> usize {
        joint.iter().zip(&self.strides).map(|(s, st)| s * st).sum()
    }

    pub fn decode_joint(&self, mut index: usize) -> JointStrategy {
        let mut out = Vec::with_capacity(self.num_players());
        for (i, st) in self.strides.iter().enumerate() {
            out.push(index / st);
            index %= st;
            debug_assert!(out[i] < self.num_strategies(i));
        }
        JointStrategy(out)
    }

    /// `p_player(joint)`.
    pub fn payoff(&self, player: usize, joint: &[StrategyId]) -> &Rational {
        &self.payoffs[self.joint_index(joint)][player]
    }

    pub(crate) fn payoff_at(&self, joint_index: usize, player: usize) -> &Rational {
        &self.payoffs[joint_index][player]
    }

    /// Payoff vectors in row-major order.
    pub fn payoff_table(&self) -> &[Vec<Rational>] {
        &self.payoffs
    }

    /// All joint strategies in row-major order.
    pub fn joint_strategies(&self) -> impl Iterator<Item = JointStrategy> + '_ {
        joint_iter(self.sizes()).map(JointStrategy)
    }

    /// Checks that a strategy index exists for the player.
    pub fn check_strategy(&self, player: usize, s: StrategyId) -> Result<()> {
        if player >= self.num_players() {
            return Err(Error::Argument(format!("unknown player {}", player + 1)));
        }
        if s >= self.num_strategies(player) {
            return Err(Error::Argument(format!(
                "player {} has no strategy #{s}",
                player + 1
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game")
            .field("name", &self.name)
            .field("strategies", &self.strategy_names)
            .finish_non_exhaustive()
    }
}

/// Row-major iteration over the product `0..sizes[0] × ... × 0..sizes[n-1]`.
pub fn joint_iter(sizes: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let total: usize = sizes.iter().product();
    (0..total).map(move |mut idx| {
        let mut out = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            out[i] = idx % sizes[i];
            idx /= sizes[i];
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn names(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn joint_index_roundtrip() {
        let g = Game::from_fn("t", names(&[&["a", "b"], &["x", "y", "z"]]), |j| {
            vec![int(j[0] as i64), int(j[1] as i64)]
        })
        .unwrap();
        for (idx, j) in g.joint_strategies().enumerate() {
            assert_eq!(g.joint_index(&j.0), idx);
            assert_eq!(g.decode_joint(idx), j);
            assert_eq!(g.payoff(1, &j.0), &int(j.0[1] as i64));
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Game::new("t", names(&[&["a"]]), vec![vec![int(0)]]).is_err());
        assert!(Game::new("t", names(&[&["a"], &[]]), vec![]).is_err());
        assert!(Game::new("t", names(&[&["a", "a"], &["x"]]), vec![vec![int(0); 2]; 2]).is_err());
        assert!(Game::new("t", names(&[&["a"], &["x"]]), vec![]).is_err());
        assert!(Game::new("t", names(&[&["a"], &["x"]]), vec![vec![int(0)]]).is_err());
    }
}
