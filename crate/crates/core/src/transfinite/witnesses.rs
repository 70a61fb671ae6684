//! The registry of bundled symbolic games.

use num_traits::{One, ToPrimitive};

use super::set::{level, level_start, Bound, SymbolicSet};
use super::{SymRestriction, SymbolicGame};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::game::Game;
use crate::iteration::IterationTrace;
use crate::property::{apply_operator, PropertyProfile, PropertySpec};
use crate::rational::{int, Rational};
use crate::restriction::{Restriction, StrategySet};

pub const WITNESS_NAMES: [&str; 4] = ["witness-tg", "embedded-finite-pd", "identity", "broken-limit"];

pub fn registry() -> Vec<Box<dyn SymbolicGame>> {
    WITNESS_NAMES.iter().map(|n| by_name(n).expect("registered")).collect()
}

pub fn by_name(name: &str) -> Option<Box<dyn SymbolicGame>> {
    match name {
        "witness-tg" => Some(Box::new(WitnessTg { broken_limit: false })),
        "broken-limit" => Some(Box::new(WitnessTg { broken_limit: true })),
        "embedded-finite-pd" => Some(Box::new(
            EmbeddedGame::new("embedded-finite-pd", fixtures::prisoners_dilemma(), PropertySpec::SD_G)
                .expect("two-player fixture"),
        )),
        "identity" => Some(Box::new(IdentityGame)),
        _ => None,
    }
}

fn unit_interval() -> SymbolicSet {
    SymbolicSet::half_open(int(0), int(1))
}

/// Two players; strategies are levels in `[0,1)` plus extra points.
///
/// Player 1 has `[0,1]`. Player 2 has `[0,1) ∪ {2,3}`. For `x, y` in `[0,1)`:
///
/// * `p1(x,y) = 2` if `level(x) > level(y)`, else `0`; `p1(1,·) = 1`;
///   `p1(x,2) = p1(x,3) = 0`.
/// * `p2(y,x) = 2` if `level(y) > level(x)`, else `0`; `p2(y,1) = 0`;
///   `p2(2,x) = 2`, `p2(2,1) = 0`; `p2(3,·) = 1`.
///
/// Under `sd:g` each round removes the lowest remaining level of both
/// players, so `T^k = ([1-2^-k,1], [1-2^-k,1) ∪ {2,3})` and
/// `T^ω = ({1},{2,3})`. Strategy 2 only survives while player 1 keeps a
/// level, so it is removed at `ω+1`.
#[derive(Debug, Clone, Copy)]
pub struct WitnessTg {
    broken_limit: bool,
}

impl WitnessTg {
    /// Payoff to `player` for playing `own` against `other`.
    pub fn payoff(player: usize, own: &Rational, other: &Rational) -> Rational {
        let one = Rational::one();
        let lv = |q: &Rational| level(q);
        match player {
            0 => {
                if *own == one {
                    int(1)
                } else {
                    match (lv(own), lv(other)) {
                        (Some(a), Some(b)) if a > b => int(2),
                        _ => int(0),
                    }
                }
            }
            _ => {
                if *own == int(3) {
                    int(1)
                } else if *own == int(2) {
                    if *other == one {
                        int(0)
                    } else {
                        int(2)
                    }
                } else {
                    match (lv(own), lv(other)) {
                        (Some(a), Some(b)) if a > b => int(2),
                        _ => int(0),
                    }
                }
            }
        }
    }

    fn keep_from(other: &SymbolicSet) -> Option<Rational> {
        let levels = other.intersection(&unit_interval());
        match levels.inf() {
            Some(Bound::Finite(q)) => Some(level_start(level(q).expect("inside [0,1)") + 1)),
            _ => None,
        }
    }

    fn unbounded_levels(s: &SymbolicSet) -> bool {
        let part = s.intersection(&unit_interval());
        matches!(part.sup(), Some(Bound::Finite(q)) if q.is_one())
    }
}

impl SymbolicGame for WitnessTg {
    fn name(&self) -> &str {
        if self.broken_limit {
            "broken-limit"
        } else {
            "witness-tg"
        }
    }

    fn encodes(&self) -> &str {
        "sd:g"
    }

    fn description(&self) -> &str {
        if self.broken_limit {
            "witness-tg with a limit rule that keeps eliminated points"
        } else {
            "level game whose sd:g elimination closes at ω+1"
        }
    }

    fn initial(&self) -> SymRestriction {
        SymRestriction(vec![
            SymbolicSet::closed(int(0), int(1)),
            unit_interval().union(&SymbolicSet::points([int(2), int(3)])),
        ])
    }

    fn step(&self, g: &SymRestriction) -> Result<SymRestriction> {
        let (s1, s2) = (g.component(0), g.component(1));
        if !s1.contains(&int(1)) || !s2.contains(&int(3)) {
            return Err(Error::Unsupported(
                "the witness step needs 1 for player 1 and 3 for player 2".into(),
            ));
        }
        let one = SymbolicSet::points([int(1)]);
        let t1 = match Self::keep_from(s2) {
            Some(c) => s1.intersection(&SymbolicSet::closed(c, int(1))),
            None => s1.intersection(&one),
        };
        let extras = if s1.intersection(&unit_interval()).is_empty() {
            SymbolicSet::points([int(3)])
        } else {
            SymbolicSet::points([int(2), int(3)])
        };
        let t2 = match Self::keep_from(s1) {
            Some(c) => s2.intersection(&SymbolicSet::half_open(c, int(1)).union(&extras)),
            None => s2.intersection(&extras),
        };
        Ok(SymRestriction(vec![t1, t2]))
    }

    fn limit(&self, start: &SymRestriction) -> Option<SymRestriction> {
        if !(Self::unbounded_levels(start.component(0)) && Self::unbounded_levels(start.component(1))) {
            return None;
        }
        let outside = unit_interval().complement();
        let mut lim: Vec<SymbolicSet> = start.0.iter().map(|s| s.intersection(&outside)).collect();
        if self.broken_limit {
            let low = SymbolicSet::closed(int(0), Rational::new(1.into(), 4.into()));
            lim = lim.into_iter().map(|s| s.union(&low)).collect();
        }
        Some(SymRestriction(lim))
    }
}

/// A finite game with strategy `k` of each player placed at the point `k`.
#[derive(Debug, Clone)]
pub struct EmbeddedGame {
    name: String,
    encodes: String,
    game: Game,
    profile: PropertyProfile,
}

impl EmbeddedGame {
    pub fn new(name: &str, game: Game, spec: PropertySpec) -> Result<Self> {
        let profile = PropertyProfile::uniform(spec, game.num_players());
        profile.check(&game)?;
        Ok(Self { name: name.to_string(), encodes: spec.to_string(), game, profile })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn lift(&self, r: &Restriction) -> SymRestriction {
        SymRestriction(
            r.components().iter().map(|s| SymbolicSet::points(s.iter().map(|k| int(k as i64)))).collect(),
        )
    }

    pub fn lower(&self, g: &SymRestriction) -> Result<Restriction> {
        let mut sets = Vec::new();
        for (i, s) in g.0.iter().enumerate() {
            let mut set = StrategySet::empty(self.game.num_strategies(i));
            for p in s.pieces() {
                let k = match (&p.lo, p.is_point()) {
                    (Bound::Finite(q), true) if q.is_integer() => q.to_integer().to_usize(),
                    _ => None,
                };
                match k {
                    Some(k) if k < self.game.num_strategies(i) => set.insert(k),
                    _ => return Err(Error::Shape(format!("`{p}` is not a strategy of player {}", i + 1))),
                }
            }
            sets.push(set);
        }
        Restriction::from_sets(&self.game, sets)
    }

    /// Lifts every step of a finite trace.
    pub fn lift_trace(&self, trace: &IterationTrace<Restriction>) -> Vec<(crate::ordinal::Ordinal, SymRestriction)> {
        trace.steps.iter().map(|s| (s.ordinal, self.lift(&s.restriction))).collect()
    }
}

impl SymbolicGame for EmbeddedGame {
    fn name(&self) -> &str {
        &self.name
    }

    fn encodes(&self) -> &str {
        &self.encodes
    }

    fn description(&self) -> &str {
        "finite game lifted to point sets"
    }

    fn initial(&self) -> SymRestriction {
        self.lift(&Restriction::top(&self.game))
    }

    fn step(&self, g: &SymRestriction) -> Result<SymRestriction> {
        let r = self.lower(g)?;
        Ok(self.lift(&apply_operator(&self.profile, &self.game, &r)?))
    }

    fn limit(&self, _start: &SymRestriction) -> Option<SymRestriction> {
        None
    }
}

/// `([0,1], [0,1])` with the identity step.
#[derive(Debug, Clone, Copy)]
pub struct IdentityGame;

impl SymbolicGame for IdentityGame {
    fn name(&self) -> &str {
        "identity"
    }

    fn encodes(&self) -> &str {
        "none"
    }

    fn description(&self) -> &str {
        "identity step on two unit intervals"
    }

    fn initial(&self) -> SymRestriction {
        let u = SymbolicSet::closed(int(0), int(1));
        SymRestriction(vec![u.clone(), u])
    }

    fn step(&self, g: &SymRestriction) -> Result<SymRestriction> {
        Ok(g.clone())
    }

    fn limit(&self, _start: &SymRestriction) -> Option<SymRestriction> {
        None
    }
}
