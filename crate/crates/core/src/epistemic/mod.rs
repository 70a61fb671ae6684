//! States, possibility correspondences and common knowledge of rationality.
//!
//! Events are bit masks over at most [`MAX_STATES`] states.

pub mod enumerate;
pub mod witness;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, StrategyId};
use crate::property::{eval_property, PropertyProfile};
use crate::restriction::{NamedRestriction, Restriction, StrategySet};

pub use enumerate::{
    count_correspondences, enumerate_ck_cb, epistemic_report, Comparison, EnumerationResult, EpistemicReport,
    Mode,
};
pub use witness::{witness_model_thm1, witness_model_thm2, Thm1Witness, Thm2Witness};

pub const MAX_STATES: usize = 64;

/// A subset of the state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Event(pub u64);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn full(size: usize) -> Self {
        if size >= 64 {
            Event(u64::MAX)
        } else {
            Event((1u64 << size) - 1)
        }
    }

    pub fn singleton(state: usize) -> Self {
        Event(1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Self {
        Event(states.into_iter().fold(0, |acc, w| acc | 1 << w))
    }

    pub fn contains(self, state: usize) -> bool {
        self.0 >> state & 1 == 1
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub fn intersection(self, other: Event) -> Event {
        Event(self.0 & other.0)
    }

    pub fn without(self, state: usize) -> Event {
        Event(self.0 & !(1 << state))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&w| self.contains(w))
    }
}

/// The ordered finite set Ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    labels: Vec<String>,
}

impl StateSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Argument("state space must be nonempty".into()));
        }
        if labels.len() > MAX_STATES {
            return Err(Error::Argument(format!("at most {MAX_STATES} states are supported")));
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::Argument(format!("duplicate state label `{l}`")));
            }
        }
        Ok(Self { labels })
    }

    /// States `w1, ..., wm`.
    pub fn with_size(size: usize) -> Result<Self> {
        Self::new((1..=size).map(|k| format!("w{k}")).collect())
    }

    /// One state per joint strategy, labeled like `(C,D)`.
    pub fn joint_strategies(game: &Game) -> Result<Self> {
        Self::new(
            game.joint_strategies()
                .map(|j| {
                    let names: Vec<&str> =
                        j.0.iter().enumerate().map(|(i, &s)| game.strategy_name(i, s)).collect();
                    format!("({})", names.join(","))
                })
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, state: usize) -> &str {
        &self.labels[state]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> Event {
        Event::full(self.size())
    }

    pub fn state(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn event_labels(&self, e: Event) -> Vec<String> {
        e.iter().map(|w| self.labels[w].clone()).collect()
    }
}

/// `s_i(ω)` for every player and state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyAssignment {
    choices: Vec<Vec<StrategyId>>,
}

impl StrategyAssignment {
    /// `choices[i][ω]` is the strategy of player `i` in state `ω`.
    pub fn new(game: &Game, space: &StateSpace, choices: Vec<Vec<StrategyId>>) -> Result<Self> {
        if choices.len() != game.num_players() {
            return Err(Error::Shape(format!(
                "assignment covers {} players, game has {}",
                choices.len(),
                game.num_players()
            )));
        }
        for (i, row) in choices.iter().enumerate() {
            if row.len() != space.size() {
                return Err(Error::Shape(format!("assignment for player {} is not total", i + 1)));
            }
            for &s in row {
                game.check_strategy(i, s)?;
            }
        }
        Ok(Self { choices })
    }

    /// `s_i(ω) = ω_i` on the joint-strategy space.
    pub fn from_joint(game: &Game) -> Self {
        let joints: Vec<_> = game.joint_strategies().collect();
        Self {
            choices: (0..game.num_players()).map(|i| joints.iter().map(|j| j.0[i]).collect()).collect(),
        }
    }

    pub fn strategy(&self, player: usize, state: usize) -> StrategyId {
        self.choices[player][state]
    }

    pub fn choices(&self) -> &[Vec<StrategyId>] {
        &self.choices
    }

    pub fn is_onto(&self, game: &Game, player: usize) -> bool {
        let hit = self.choices[player].iter().fold(0u64, |acc, &s| acc | 1 << s);
        hit.count_ones() as usize == game.num_strategies(player)
    }
}

/// The three properties (i)–(iii), computed from the cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub nonempty: bool,
    pub introspective: bool,
    pub reflexive: bool,
}

impl Classification {
    pub fn is_belief(self) -> bool {
        self.nonempty && self.introspective
    }

    pub fn is_knowledge(self) -> bool {
        self.is_belief() && self.reflexive
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.is_knowledge() {
            "knowledge"
        } else if self.is_belief() {
            "belief"
        } else {
            "unclassified"
        };
        f.write_str(name)
    }
}

/// `ω ↦ P(ω)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilityCorrespondence {
    cells: Vec<Event>,
}

impl PossibilityCorrespondence {
    pub fn new(space: &StateSpace, cells: Vec<Event>) -> Result<Self> {
        if cells.len() != space.size() {
            return Err(Error::Shape(format!(
                "correspondence has {} cells for {} states",
                cells.len(),
                space.size()
            )));
        }
        if cells.iter().any(|c| !c.is_subset(space.full())) {
            return Err(Error::Shape("correspondence leaves the state space".into()));
        }
        Ok(Self { cells })
    }

    /// `P(ω)` is the block containing `ω`.
    pub fn from_partition(space: &StateSpace, blocks: &[Event]) -> Result<Self> {
        let mut seen = Event::EMPTY;
        for b in blocks {
            if b.is_empty() || !b.intersection(seen).is_empty() {
                return Err(Error::Argument("blocks must be nonempty and disjoint".into()));
            }
            seen = seen.union(*b);
        }
        if seen != space.full() {
            return Err(Error::Argument("blocks must cover the state space".into()));
        }
        let cells = (0..space.size())
            .map(|w| *blocks.iter().find(|b| b.contains(w)).expect("covered"))
            .collect();
        Ok(Self { cells })
    }

    /// `P(ω) = {ω}`.
    pub fn identity(space: &StateSpace) -> Self {
        Self { cells: (0..space.size()).map(Event::singleton).collect() }
    }

    pub fn cell(&self, state: usize) -> Event {
        self.cells[state]
    }

    pub fn cells(&self) -> &[Event] {
        &self.cells
    }

    pub fn classify(&self) -> Classification {
        let nonempty = self.cells.iter().all(|c| !c.is_empty());
        let introspective = self.cells.iter().all(|c| c.iter().all(|w2| self.cells[w2] == *c));
        let reflexive = self.cells.iter().enumerate().all(|(w, c)| c.contains(w));
        Classification { nonempty, introspective, reflexive }
    }

    /// The distinct cells in order of first appearance, when they partition Ω.
    pub fn partition(&self) -> Option<Vec<Event>> {
        if !self.classify().is_knowledge() {
            return None;
        }
        let mut out: Vec<Event> = Vec::new();
        for c in &self.cells {
            if !out.contains(c) {
                out.push(*c);
            }
        }
        Some(out)
    }
}

/// Ω, the assignment and one correspondence per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicModel {
    space: StateSpace,
    assignment: StrategyAssignment,
    correspondences: Vec<PossibilityCorrespondence>,
}

impl EpistemicModel {
    pub fn new(
        game: &Game,
        space: StateSpace,
        assignment: StrategyAssignment,
        correspondences: Vec<PossibilityCorrespondence>,
    ) -> Result<Self> {
        if correspondences.len() != game.num_players() {
            return Err(Error::Shape(format!(
                "{} correspondences for {} players",
                correspondences.len(),
                game.num_players()
            )));
        }
        if assignment.choices.len() != game.num_players()
            || assignment.choices.iter().any(|row| row.len() != space.size())
        {
            return Err(Error::Shape("assignment does not match the state space".into()));
        }
        if correspondences.iter().any(|p| p.cells.len() != space.size()) {
            return Err(Error::Shape("correspondence does not match the state space".into()));
        }
        Ok(Self { space, assignment, correspondences })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn assignment(&self) -> &StrategyAssignment {
        &self.assignment
    }

    pub fn correspondence(&self, player: usize) -> &PossibilityCorrespondence {
        &self.correspondences[player]
    }

    pub fn correspondences(&self) -> &[PossibilityCorrespondence] {
        &self.correspondences
    }

    pub fn is_evident(&self, f: Event) -> bool {
        f.iter().all(|w| self.correspondences.iter().all(|p| p.cell(w).is_subset(f)))
    }

    /// `{ω | ∀i P_i(ω) ⊆ E}`.
    pub fn b_event(&self, e: Event) -> Event {
        Event::from_states(
            (0..self.space.size()).filter(|&w| self.correspondences.iter().all(|p| p.cell(w).is_subset(e))),
        )
    }

    /// Same formula as [`Self::b_event`].
    pub fn k_event(&self, e: Event) -> Event {
        self.b_event(e)
    }

    /// The largest evident subset of `e`.
    pub fn largest_evident_subset(&self, e: Event) -> Event {
        let mut cur = e;
        loop {
            let next = Event::from_states(
                cur.iter().filter(|&w| self.correspondences.iter().all(|p| p.cell(w).is_subset(cur))),
            );
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    fn require(&self, knowledge: bool) -> Result<()> {
        for (i, p) in self.correspondences.iter().enumerate() {
            let c = p.classify();
            let ok = if knowledge { c.is_knowledge() } else { c.is_belief() };
            if !ok {
                let wanted = if knowledge { "knowledge" } else { "belief" };
                return Err(Error::Classification(format!(
                    "correspondence of player {} is {c}, not a {wanted} correspondence",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// `K* E`: states with some evident `F` such that `ω ∈ F ⊆ E`.
    pub fn common_knowledge_event(&self, e: Event) -> Result<Event> {
        self.require(true)?;
        Ok(self.largest_evident_subset(e))
    }

    /// `K* E` through evident `F ⊆ K E`.
    pub fn common_knowledge_event_via_k(&self, e: Event) -> Result<Event> {
        self.require(true)?;
        Ok(self.largest_evident_subset(self.k_event(e)))
    }

    /// `B* E`: states with some evident `F` such that `ω ∈ F ⊆ B E`.
    pub fn common_belief_event(&self, e: Event) -> Result<Event> {
        self.require(false)?;
        Ok(self.largest_evident_subset(self.b_event(e)))
    }

    /// `G_E`: the strategies chosen in the states of `e`.
    pub fn event_restriction(&self, game: &Game, e: Event) -> Restriction {
        let sets = (0..game.num_players())
            .map(|i| {
                let bits = e.iter().fold(0u64, |acc, w| acc | 1 << self.assignment.strategy(i, w));
                StrategySet::from_bits(game.num_strategies(i), bits).expect("assignment is within the game")
            })
            .collect();
        Restriction::from_sets(game, sets).expect("assignment is within the game")
    }

    /// States where every player `i` is `φ_i`-rational.
    pub fn rational_states(&self, game: &Game, profile: &PropertyProfile) -> Result<Event> {
        profile.check(game)?;
        let mut rat = Event::EMPTY;
        'states: for w in 0..self.space.size() {
            for i in 0..game.num_players() {
                let g = self.event_restriction(game, self.correspondences[i].cell(w));
                if !eval_property(profile.spec(i), game, i, self.assignment.strategy(i, w), &g)? {
                    continue 'states;
                }
            }
            rat = rat.union(Event::singleton(w));
        }
        Ok(rat)
    }

    /// `K* RAT`.
    pub fn ck_states(&self, game: &Game, profile: &PropertyProfile) -> Result<Event> {
        let rat = self.rational_states(game, profile)?;
        self.common_knowledge_event(rat)
    }

    /// `RAT ∩ B* RAT`.
    pub fn cb_states(&self, game: &Game, profile: &PropertyProfile) -> Result<Event> {
        let rat = self.rational_states(game, profile)?;
        Ok(rat.intersection(self.common_belief_event(rat)?))
    }

    pub fn to_json(&self, game: &Game) -> ModelJson {
        ModelJson {
            states: self.space.labels.clone(),
            assignment: (0..game.num_players())
                .map(|i| {
                    (0..self.space.size())
                        .map(|w| game.strategy_name(i, self.assignment.strategy(i, w)).to_string())
                        .collect()
                })
                .collect(),
            correspondences: self
                .correspondences
                .iter()
                .map(|p| p.cells.iter().map(|c| self.space.event_labels(*c)).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub states: Vec<String>,
    /// `assignment[i][ω]` names the strategy of player `i + 1`.
    pub assignment: Vec<Vec<String>>,
    /// `correspondences[i][ω]` lists the labels of `P_i(ω)`.
    pub correspondences: Vec<Vec<Vec<String>>>,
}

pub(crate) fn named(game: &Game, r: &Restriction) -> NamedRestriction {
    NamedRestriction::new(game, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::property::PropertySpec;

    fn partition_model(game: &Game, blocks: &[Event]) -> EpistemicModel {
        let space = StateSpace::joint_strategies(game).unwrap();
        let p = PossibilityCorrespondence::from_partition(&space, blocks).unwrap();
        let a = StrategyAssignment::from_joint(game);
        EpistemicModel::new(game, space, a, vec![p.clone(), p]).unwrap()
    }

    #[test]
    fn evident_examples() {
        let pd = fixtures::prisoners_dilemma();
        let m = partition_model(&pd, &[Event(0b0011), Event(0b0100), Event(0b1000)]);
        assert!(m.is_evident(Event::full(4)));
        assert!(m.is_evident(Event::EMPTY));
        assert!(!m.is_evident(Event::singleton(0)));
        assert!(m.is_evident(Event(0b0011)));
    }

    #[test]
    fn k_and_common_knowledge() {
        let pd = fixtures::prisoners_dilemma();
        // Cells {w1,w2}, {w3}, {w4}.
        let m = partition_model(&pd, &[Event(0b0011), Event(0b0100), Event(0b1000)]);
        assert_eq!(m.k_event(Event::full(4)), Event::full(4));
        assert_eq!(m.k_event(Event::EMPTY), Event::EMPTY);
        assert_eq!(m.k_event(Event(0b0011)), Event(0b0011));
        assert_eq!(m.common_knowledge_event(Event(0b0101)).unwrap(), Event(0b0100));
        assert_eq!(m.common_knowledge_event(Event::full(4)).unwrap(), Event::full(4));
        assert_eq!(m.common_belief_event(Event::full(4)).unwrap(), Event::full(4));
        assert_eq!(m.common_knowledge_event(Event::EMPTY).unwrap(), Event::EMPTY);
    }

    #[test]
    fn classification_is_computed() {
        let space = StateSpace::with_size(3).unwrap();
        let belief = PossibilityCorrespondence::new(&space, vec![Event(0b010), Event(0b010), Event(0b010)]).unwrap();
        let c = belief.classify();
        assert!(c.is_belief() && !c.is_knowledge());
        let bad = PossibilityCorrespondence::new(&space, vec![Event(0b011), Event(0b010), Event(0b100)]).unwrap();
        assert!(!bad.classify().is_belief());
        let pd = fixtures::prisoners_dilemma();
        let s4 = StateSpace::with_size(4).unwrap();
        let a = StrategyAssignment::new(&pd, &s4, vec![vec![0, 1, 0, 1], vec![0, 0, 1, 1]]).unwrap();
        let p = PossibilityCorrespondence::new(&s4, vec![Event(0b0010); 4]).unwrap();
        let m = EpistemicModel::new(&pd, s4, a, vec![p.clone(), p]).unwrap();
        assert!(matches!(m.common_knowledge_event(Event::full(4)), Err(Error::Classification(_))));
        assert!(m.common_belief_event(Event::full(4)).is_ok());
    }

    #[test]
    fn event_restriction_examples() {
        let pd = fixtures::prisoners_dilemma();
        let m = partition_model(&pd, &[Event::full(4)]);
        assert_eq!(m.event_restriction(&pd, Event::full(4)), Restriction::top(&pd));
        assert!(m.event_restriction(&pd, Event::EMPTY).total_len() == 0);
        let dd = m.space().state("(D,D)").unwrap();
        assert_eq!(m.event_restriction(&pd, Event::singleton(dd)).display(&pd), "({D},{D})");
    }

    #[test]
    fn rational_state_examples() {
        let pd = fixtures::prisoners_dilemma();
        let m = partition_model(&pd, &[Event::full(4)]);
        let rat = m.rational_states(&pd, &PropertyProfile::uniform(PropertySpec::SD_G, 2)).unwrap();
        assert_eq!(m.space().event_labels(rat), vec!["(D,D)"]);
        let space = StateSpace::joint_strategies(&pd).unwrap();
        let id = PossibilityCorrespondence::identity(&space);
        let m = EpistemicModel::new(&pd, space, StrategyAssignment::from_joint(&pd), vec![id.clone(), id]).unwrap();
        let rat = m.rational_states(&pd, &PropertyProfile::uniform(PropertySpec::SD_L, 2)).unwrap();
        assert_eq!(rat, Event::full(4));
    }
}
