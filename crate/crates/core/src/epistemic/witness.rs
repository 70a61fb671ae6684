//! Models realizing the outcome (monotonic properties) or a given joint
//! strategy (properties holding on singleton restrictions).

use serde::{Deserialize, Serialize};

use super::{named, EpistemicModel, Event, ModelJson, PossibilityCorrespondence, StateSpace, StrategyAssignment};
use crate::error::{Error, Result};
use crate::game::{Game, JointStrategy};
use crate::limits::Limits;
use crate::property::{outcome, PropertyProfile};
use crate::restriction::{NamedRestriction, Restriction};
use crate::verify::{profile_satisfies_singleton, table_is_monotone, PropertyTable};

#[derive(Debug, Clone)]
pub struct Thm1Witness {
    pub model: EpistemicModel,
    pub event: Event,
    pub outcome: Restriction,
    pub degenerate: bool,
    pub event_evident: bool,
    pub event_restriction_is_outcome: bool,
    pub event_within_rat: bool,
    pub event_within_ck: bool,
}

impl Thm1Witness {
    /// With an empty component of `T^∞` the event is empty and the
    /// restriction check is waived.
    pub fn passed(&self) -> bool {
        self.event_evident
            && self.event_within_rat
            && self.event_within_ck
            && (self.event_restriction_is_outcome || self.degenerate)
    }

    pub fn to_json(&self, game: &Game, profile: &PropertyProfile) -> Thm1Json {
        Thm1Json {
            game: game.name().to_string(),
            profile: profile.clone(),
            outcome: named(game, &self.outcome),
            model: self.model.to_json(game),
            event: self.model.space().event_labels(self.event),
            degenerate: self.degenerate,
            event_evident: self.event_evident,
            event_restriction_is_outcome: self.event_restriction_is_outcome,
            event_within_rat: self.event_within_rat,
            event_within_ck: self.event_within_ck,
            passed: self.passed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm1Json {
    pub game: String,
    pub profile: PropertyProfile,
    pub outcome: NamedRestriction,
    pub model: ModelJson,
    pub event: Vec<String>,
    pub degenerate: bool,
    pub event_evident: bool,
    pub event_restriction_is_outcome: bool,
    pub event_within_rat: bool,
    pub event_within_ck: bool,
    pub passed: bool,
}

/// Builds a knowledge model on `max_i |T_i|` states with an evident event `E`
/// such that `G_E = T^∞`, then checks `E ⊆ RAT` and `E ⊆ K* RAT`.
///
/// Outside `E`, `s_k` avoids `S_k` whenever `S_k ≠ T_k`.
pub fn witness_model_thm1(game: &Game, profile: &PropertyProfile, limits: &Limits) -> Result<Thm1Witness> {
    profile.check(game)?;
    let table = PropertyTable::build(profile, game, limits)?;
    if !table_is_monotone(&table) {
        return Err(Error::Precondition(format!("profile {profile} is not monotonic on {}", game.name())));
    }
    let out = outcome(profile, game)?.outcome;
    let n = game.num_players();
    let m = (0..n).map(|i| game.num_strategies(i)).max().unwrap_or(1);
    let space = StateSpace::with_size(m)?;
    let degenerate = out.has_empty_component();

    let mut choices = vec![vec![0usize; m]; n];
    let event = if degenerate {
        for (i, row) in choices.iter_mut().enumerate() {
            for (w, c) in row.iter_mut().enumerate() {
                *c = w % game.num_strategies(i);
            }
        }
        Event::EMPTY
    } else {
        let j0 = (0..n).max_by_key(|&j| (out.component(j).len(), std::cmp::Reverse(j))).unwrap();
        let inside: Vec<usize> = out.component(j0).iter().collect();
        let outside: Vec<usize> = (0..game.num_strategies(j0)).filter(|s| !out.component(j0).contains(*s)).collect();
        let order: Vec<usize> = inside.iter().chain(outside.iter()).copied().collect();
        for w in 0..m {
            choices[j0][w] = if w < order.len() { order[w] } else { inside[0] };
        }
        let e = Event::from_states((0..m).filter(|&w| out.component(j0).contains(choices[j0][w])));
        for k in (0..n).filter(|&k| k != j0) {
            let s_in: Vec<usize> = out.component(k).iter().collect();
            let s_out: Vec<usize> =
                (0..game.num_strategies(k)).filter(|s| !out.component(k).contains(*s)).collect();
            for (t, w) in e.iter().enumerate() {
                choices[k][w] = s_in[t % s_in.len()];
            }
            for (t, w) in (0..m).filter(|&w| !e.contains(w)).enumerate() {
                choices[k][w] = if s_out.is_empty() { s_in[0] } else { s_out[t % s_out.len()] };
            }
        }
        e
    };
    let assignment = StrategyAssignment::new(game, &space, choices)?;
    let mut blocks = Vec::new();
    if !event.is_empty() {
        blocks.push(event);
    }
    blocks.extend((0..m).filter(|&w| !event.contains(w)).map(Event::singleton));
    let p = PossibilityCorrespondence::from_partition(&space, &blocks)?;
    let model = EpistemicModel::new(game, space, assignment, vec![p; n])?;

    let rat = model.rational_states(game, profile)?;
    let ck = model.common_knowledge_event(rat)?;
    Ok(Thm1Witness {
        event_evident: model.is_evident(event),
        event_restriction_is_outcome: model.event_restriction(game, event) == out,
        event_within_rat: event.is_subset(rat),
        event_within_ck: event.is_subset(ck),
        model,
        event,
        outcome: out,
        degenerate,
    })
}

#[derive(Debug, Clone)]
pub struct Thm2Witness {
    pub model: EpistemicModel,
    pub state: usize,
    pub state_in_rat: bool,
    pub state_in_ck: bool,
}

impl Thm2Witness {
    pub fn passed(&self) -> bool {
        self.state_in_rat && self.state_in_ck
    }

    pub fn to_json(&self, game: &Game, profile: &PropertyProfile) -> Thm2Json {
        Thm2Json {
            game: game.name().to_string(),
            profile: profile.clone(),
            state: self.model.space().label(self.state).to_string(),
            model: self.model.to_json(game),
            state_in_rat: self.state_in_rat,
            state_in_ck: self.state_in_ck,
            passed: self.passed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm2Json {
    pub game: String,
    pub profile: PropertyProfile,
    pub state: String,
    pub model: ModelJson,
    pub state_in_rat: bool,
    pub state_in_ck: bool,
    pub passed: bool,
}

/// Ω = joint strategies with `s_i(ω) = ω_i` and `P_j(ω) = {ω}` for every
/// player; checks that the state of `joint` is in `K* RAT`.
pub fn witness_model_thm2(game: &Game, profile: &PropertyProfile, joint: &JointStrategy) -> Result<Thm2Witness> {
    if joint.0.len() != game.num_players() {
        return Err(Error::Shape(format!("joint strategy has {} entries", joint.0.len())));
    }
    for (i, &s) in joint.0.iter().enumerate() {
        game.check_strategy(i, s)?;
    }
    if !profile_satisfies_singleton(profile, game)? {
        return Err(Error::Precondition(format!(
            "profile {profile} fails on some singleton restriction of {}",
            game.name()
        )));
    }
    let space = StateSpace::joint_strategies(game)?;
    let state = game.joint_index(&joint.0);
    let p = PossibilityCorrespondence::identity(&space);
    let model =
        EpistemicModel::new(game, space, StrategyAssignment::from_joint(game), vec![p; game.num_players()])?;
    let rat = model.rational_states(game, profile)?;
    let ck = model.common_knowledge_event(rat)?;
    Ok(Thm2Witness { state_in_rat: rat.contains(state), state_in_ck: ck.contains(state), model, state })
}
