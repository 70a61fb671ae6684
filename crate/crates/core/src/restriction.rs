//! Restrictions `(S_1, ..., S_n)` of a game and the complete lattice they form
//! under componentwise inclusion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, JointStrategy, StrategyId};

/// A subset of one player's strategies, as a bit set over the ordered list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategySet {
    bits: u64,
    universe: u8,
}

fn full_mask(universe: usize) -> u64 {
    if universe >= 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

impl StrategySet {
    pub fn empty(universe: usize) -> Self {
        Self { bits: 0, universe: universe as u8 }
    }

    pub fn full(universe: usize) -> Self {
        Self { bits: full_mask(universe), universe: universe as u8 }
    }

    pub fn from_bits(universe: usize, bits: u64) -> Result<Self> {
        if bits & !full_mask(universe) != 0 {
            return Err(Error::Argument(format!(
                "bit set {bits:#b} exceeds {universe} strategies"
            )));
        }
        Ok(Self { bits, universe: universe as u8 })
    }

    pub fn singleton(universe: usize, s: StrategyId) -> Self {
        Self { bits: 1 << s, universe: universe as u8 }
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = StrategyId>) -> Self {
        let mut set = Self::empty(universe);
        for s in items {
            set.insert(s);
        }
        set
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn contains(&self, s: StrategyId) -> bool {
        s < 64 && self.bits & (1 << s) != 0
    }

    pub fn insert(&mut self, s: StrategyId) {
        assert!(s < self.universe(), "strategy {s} outside universe {}", self.universe);
        self.bits |= 1 << s;
    }

    pub fn remove(&mut self, s: StrategyId) {
        if s < 64 {
            self.bits &= !(1 << s);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { bits: self.bits | other.bits, universe: self.universe }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { bits: self.bits & other.bits, universe: self.universe }
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = StrategyId> + '_ {
        let bits = self.bits;
        (0..self.universe()).filter(move |s| bits & (1 << s) != 0)
    }
}

impl fmt::Debug for StrategySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An element of the restriction lattice of a game.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Restriction {
    sets: Vec<StrategySet>,
}

impl Restriction {
    /// The largest element `(T_1, ..., T_n)`.
    pub fn top(game: &Game) -> Self {
        Self {
            sets: (0..game.num_players())
                .map(|i| StrategySet::full(game.num_strategies(i)))
                .collect(),
        }
    }

    /// The least element `(∅, ..., ∅)`.
    pub fn bottom(game: &Game) -> Self {
        Self {
            sets: (0..game.num_players())
                .map(|i| StrategySet::empty(game.num_strategies(i)))
                .collect(),
        }
    }

    pub fn from_sets(game: &Game, sets: Vec<StrategySet>) -> Result<Self> {
        if sets.len() != game.num_players()
            || sets
                .iter()
                .enumerate()
                .any(|(i, s)| s.universe() != game.num_strategies(i))
        {
            return Err(Error::Shape(format!(
                "restriction does not match the shape of game `{}`",
                game.name()
            )));
        }
        Ok(Self { sets })
    }

    pub fn from_bits(game: &Game, bits: Vec<u64>) -> Result<Self> {
        if bits.len() != game.num_players() {
            return Err(Error::Shape(format!(
                "{} components for a {}-player game",
                bits.len(),
                game.num_players()
            )));
        }
        let sets = bits
            .into_iter()
            .enumerate()
            .map(|(i, b)| StrategySet::from_bits(game.num_strategies(i), b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { sets })
    }

    /// Builds a restriction from strategy names, one list per player.
    pub fn from_names<S: AsRef<str>>(game: &Game, names: &[Vec<S>]) -> Result<Self> {
        if names.len() != game.num_players() {
            return Err(Error::Shape(format!(
                "{} components for a {}-player game",
                names.len(),
                game.num_players()
            )));
        }
        let mut sets = Vec::with_capacity(names.len());
        for (i, list) in names.iter().enumerate() {
            let mut set = StrategySet::empty(game.num_strategies(i));
            for name in list {
                let name = name.as_ref();
                let s = game.strategy_index(i, name).ok_or_else(|| {
                    Error::Argument(format!("unknown strategy `{name}` for player {}", i + 1))
                })?;
                set.insert(s);
            }
            sets.push(set);
        }
        Ok(Self { sets })
    }

    /// `({s_1}, ..., {s_n})`.
    pub fn singletons(game: &Game, joint: &JointStrategy) -> Self {
        Self {
            sets: joint
                .0
                .iter()
                .enumerate()
                .map(|(i, &s)| StrategySet::singleton(game.num_strategies(i), s))
                .collect(),
        }
    }

    pub fn num_players(&self) -> usize {
        self.sets.len()
    }

    pub fn component(&self, player: usize) -> &StrategySet {
        &self.sets[player]
    }

    pub fn components(&self) -> &[StrategySet] {
        &self.sets
    }

    pub fn set_component(&mut self, player: usize, set: StrategySet) {
        assert_eq!(set.universe(), self.sets[player].universe());
        self.sets[player] = set;
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.sets.len() == other.sets.len()
            && self
                .sets
                .iter()
                .zip(&other.sets)
                .all(|(a, b)| a.universe == b.universe)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Shape("restrictions belong to different games".into()))
        }
    }

    /// Componentwise inclusion.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self.is_subset_unchecked(other))
    }

    pub(crate) fn is_subset_unchecked(&self, other: &Self) -> bool {
        self.sets.iter().zip(&other.sets).all(|(a, b)| a.is_subset(b))
    }

    /// Componentwise intersection of a non-empty list.
    pub fn meet(items: &[Restriction]) -> Result<Self> {
        Self::fold(items, StrategySet::intersection)
    }

    /// Componentwise union of a non-empty list.
    pub fn join(items: &[Restriction]) -> Result<Self> {
        Self::fold(items, StrategySet::union)
    }

    fn fold(items: &[Restriction], f: fn(&StrategySet, &StrategySet) -> StrategySet) -> Result<Self> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::Argument("meet/join of an empty list".into()))?;
        let mut acc = first.clone();
        for r in rest {
            acc.check_shape(r)?;
            for (a, b) in acc.sets.iter_mut().zip(&r.sets) {
                *a = f(a, b);
            }
        }
        Ok(acc)
    }

    /// Whether some component is empty.
    pub fn has_empty_component(&self) -> bool {
        self.sets.iter().any(StrategySet::is_empty)
    }

    pub fn total_len(&self) -> usize {
        self.sets.iter().map(StrategySet::len).sum()
    }

    /// Strategy names per player, in strategy order.
    pub fn to_names(&self, game: &Game) -> Vec<Vec<String>> {
        self.sets
            .iter()
            .enumerate()
            .map(|(i, set)| set.iter().map(|s| game.strategy_name(i, s).to_string()).collect())
            .collect()
    }

    /// `({C,D},{D})`-style rendering.
    pub fn display(&self, game: &Game) -> String {
        let parts: Vec<String> = self
            .to_names(game)
            .into_iter()
            .map(|names| format!("{{{}}}", names.join(",")))
            .collect();
        format!("({})", parts.join(","))
    }

    /// Position of this restriction in the lattice enumeration order: the
    /// components' bit sets concatenated, player 1 in the low bits.
    pub fn lattice_index(&self) -> u64 {
        let mut idx = 0u64;
        let mut shift = 0;
        for set in &self.sets {
            idx |= set.bits << shift;
            shift += set.universe();
        }
        idx
    }

    pub fn from_lattice_index(game: &Game, mut idx: u64) -> Self {
        let sets = (0..game.num_players())
            .map(|i| {
                let n = game.num_strategies(i);
                let set = StrategySet { bits: idx & full_mask(n), universe: n as u8 };
                idx = if n >= 64 { 0 } else { idx >> n };
                set
            })
            .collect();
        Self { sets }
    }
}

/// Number of restrictions of `game`, `2^{Σ|T_i|}`.
pub fn lattice_size(game: &Game) -> u128 {
    1u128.checked_shl(game.total_strategies() as u32).unwrap_or(u128::MAX)
}

/// Fails with a budget error unless the full lattice has at most `limit` elements.
pub fn check_lattice_budget(game: &Game, limit: u64) -> Result<()> {
    let size = lattice_size(game);
    if game.total_strategies() > 63 || size > limit as u128 {
        return Err(Error::Budget {
            what: "restriction lattice",
            attempted: size,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// All restrictions in lattice-index order. Callers check the budget first.
pub fn all_restrictions(game: &Game) -> impl Iterator<Item = Restriction> + '_ {
    let size = 1u64 << game.total_strategies();
    (0..size).map(move |idx| Restriction::from_lattice_index(game, idx))
}

/// Lattice indices of all sub-restrictions of the restriction with index `idx`.
pub fn sub_indices(idx: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(idx);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & idx) };
        Some(cur)
    })
}

/// Serializable view of a restriction: strategy names per player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NamedRestriction(pub Vec<Vec<String>>);

impl NamedRestriction {
    pub fn new(game: &Game, r: &Restriction) -> Self {
        Self(r.to_names(game))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(game: &Game, names: &[&[&str]]) -> Restriction {
        let v: Vec<Vec<&str>> = names.iter().map(|x| x.to_vec()).collect();
        Restriction::from_names(game, &v).unwrap()
    }

    #[test]
    fn top_is_full() {
        let pd = fixtures::prisoners_dilemma();
        assert_eq!(Restriction::top(&pd), r(&pd, &[&["C", "D"], &["C", "D"]]));
        let chain = fixtures::elimination_chain();
        assert_eq!(
            Restriction::top(&chain).to_names(&chain),
            vec![vec!["T", "M", "B"], vec!["L", "C", "R"]]
        );
        let tiny = Game::from_fn(
            "tiny",
            vec![vec!["a".into()], vec!["x".into()]],
            |_| vec![crate::rational::int(0); 2],
        )
        .unwrap();
        let top = Restriction::top(&tiny);
        assert!(top.components().iter().all(|s| s.len() == 1));
    }

    #[test]
    fn leq_examples() {
        let pd = fixtures::prisoners_dilemma();
        let dd = r(&pd, &[&["D"], &["D"]]);
        assert!(dd.leq(&Restriction::top(&pd)).unwrap());
        assert!(!r(&pd, &[&["C"], &["D"]]).leq(&dd).unwrap());
        assert!(dd.leq(&dd).unwrap());
        let chain = fixtures::elimination_chain();
        assert!(matches!(dd.leq(&Restriction::top(&chain)), Err(Error::Shape(_))));
    }

    #[test]
    fn meet_join_examples() {
        let pd = fixtures::prisoners_dilemma();
        let m = Restriction::meet(&[r(&pd, &[&["C", "D"], &["D"]]), r(&pd, &[&["D"], &["C", "D"]])]);
        assert_eq!(m.unwrap(), r(&pd, &[&["D"], &["D"]]));
        let j = Restriction::join(&[r(&pd, &[&["C"], &["D"]]), r(&pd, &[&["D"], &["C"]])]);
        assert_eq!(j.unwrap(), Restriction::top(&pd));
        let g = r(&pd, &[&["C"], &["C", "D"]]);
        assert_eq!(Restriction::meet(std::slice::from_ref(&g)).unwrap(), g);
        assert!(matches!(Restriction::meet(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn lattice_index_roundtrip() {
        let chain = fixtures::elimination_chain();
        for (i, g) in all_restrictions(&chain).enumerate() {
            assert_eq!(g.lattice_index(), i as u64);
        }
        assert_eq!(sub_indices(0b101).collect::<Vec<_>>(), vec![0b101, 0b100, 0b001, 0]);
    }

    #[test]
    fn lattice_laws_exhaustive() {
        // Σ|T_i| = 5, so 32 elements and every pair/triple is checked.
        let mix = fixtures::mixed_dominance();
        let all: Vec<_> = all_restrictions(&mix).collect();
        for a in &all {
            assert!(a.leq(a).unwrap());
            for b in &all {
                let ab = a.leq(b).unwrap();
                if ab && b.leq(a).unwrap() {
                    assert_eq!(a, b);
                }
                let m = Restriction::meet(&[a.clone(), b.clone()]).unwrap();
                let j = Restriction::join(&[a.clone(), b.clone()]).unwrap();
                assert!(m.leq(a).unwrap() && m.leq(b).unwrap());
                assert!(a.leq(&j).unwrap() && b.leq(&j).unwrap());
                assert_eq!(ab, m == *a);
                for c in &all {
                    if ab && b.leq(c).unwrap() {
                        assert!(a.leq(c).unwrap());
                    }
                    if c.leq(a).unwrap() && c.leq(b).unwrap() {
                        assert!(c.leq(&m).unwrap());
                    }
                    if a.leq(c).unwrap() && b.leq(c).unwrap() {
                        assert!(j.leq(c).unwrap());
                    }
                }
            }
        }
    }
}
