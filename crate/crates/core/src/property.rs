//! Rationality properties `φ(s_i, G)` and the elimination operator `T_φ̄`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dominance::{
    exists_supporting_belief, mixed_dominance_witness, strictly_dominates_pure, BeliefKind,
};
use crate::error::{Error, Result};
use crate::game::{Game, StrategyId};
use crate::iteration::{iterate_operator, IterationTrace, Operator};
use crate::restriction::{Restriction, StrategySet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Not strictly dominated by a pure strategy of the pool.
    Sd,
    /// Not strictly dominated by a mixture over the pool.
    Msd,
    /// A best response within the pool to some belief held in `G`.
    Br(BeliefKind),
}

/// Whether the comparison pool is `T_i` (global) or `S_i` (local).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PropertySpec {
    pub kind: Kind,
    pub scope: Scope,
}

impl PropertySpec {
    pub const SD_G: Self = Self { kind: Kind::Sd, scope: Scope::Global };
    pub const SD_L: Self = Self { kind: Kind::Sd, scope: Scope::Local };
    pub const MSD_G: Self = Self { kind: Kind::Msd, scope: Scope::Global };
    pub const MSD_L: Self = Self { kind: Kind::Msd, scope: Scope::Local };
    pub const BR_G_PURE: Self = Self { kind: Kind::Br(BeliefKind::Pure), scope: Scope::Global };
    pub const BR_L_PURE: Self = Self { kind: Kind::Br(BeliefKind::Pure), scope: Scope::Local };
    pub const BR_G_CORR: Self = Self { kind: Kind::Br(BeliefKind::Correlated), scope: Scope::Global };
    pub const BR_L_CORR: Self = Self { kind: Kind::Br(BeliefKind::Correlated), scope: Scope::Local };

    pub fn global(self) -> Self {
        Self { scope: Scope::Global, ..self }
    }

    pub fn local(self) -> Self {
        Self { scope: Scope::Local, ..self }
    }

    /// The comparison pool `S'_i`: `T_i` for global, `S_i` for local.
    pub fn pool(&self, game: &Game, g: &Restriction, player: usize) -> StrategySet {
        match self.scope {
            Scope::Global => StrategySet::full(game.num_strategies(player)),
            Scope::Local => *g.component(player),
        }
    }
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = match self.scope {
            Scope::Global => "g",
            Scope::Local => "l",
        };
        match self.kind {
            Kind::Sd => write!(f, "sd:{scope}"),
            Kind::Msd => write!(f, "msd:{scope}"),
            Kind::Br(b) => {
                let b = match b {
                    BeliefKind::Pure => "pure",
                    BeliefKind::Correlated => "corr",
                    BeliefKind::Independent => "ind",
                };
                write!(f, "br:{scope}:{b}")
            }
        }
    }
}

/// `sd:l | sd:g | msd:l | msd:g | br:<l|g>:<pure|corr|ind>`.
impl FromStr for PropertySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("unknown property `{text}`"));
        let parts: Vec<&str> = text.split(':').collect();
        let scope = match parts.get(1) {
            Some(&"g") => Scope::Global,
            Some(&"l") => Scope::Local,
            _ => return Err(bad()),
        };
        let kind = match (parts[0], parts.len()) {
            ("sd", 2) => Kind::Sd,
            ("msd", 2) => Kind::Msd,
            ("br", 3) => Kind::Br(match parts[2] {
                "pure" => BeliefKind::Pure,
                "corr" => BeliefKind::Correlated,
                "ind" => BeliefKind::Independent,
                _ => return Err(bad()),
            }),
            _ => return Err(bad()),
        };
        Ok(Self { kind, scope })
    }
}

impl Serialize for PropertySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PropertySpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `φ̄ = (φ_1, ..., φ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PropertyProfile(pub Vec<PropertySpec>);

impl PropertyProfile {
    pub fn uniform(spec: PropertySpec, players: usize) -> Self {
        Self(vec![spec; players])
    }

    pub fn spec(&self, player: usize) -> PropertySpec {
        self.0[player]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check(&self, game: &Game) -> Result<()> {
        if self.0.len() != game.num_players() {
            return Err(Error::Argument(format!(
                "profile has {} properties for a {}-player game",
                self.0.len(),
                game.num_players()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PropertyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `φ(s_i, G) = φ(s_i, G, G')` with `G' = H` (global) or `G' = G` (local).
pub fn eval_property(
    spec: PropertySpec,
    game: &Game,
    player: usize,
    s: StrategyId,
    g: &Restriction,
) -> Result<bool> {
    game.check_strategy(player, s)?;
    let pool = spec.pool(game, g, player);
    match spec.kind {
        Kind::Sd => {
            for d in pool.iter() {
                if strictly_dominates_pure(game, g, player, d, s)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Kind::Msd => Ok(mixed_dominance_witness(game, g, player, &pool, s)?.is_none()),
        Kind::Br(kind) => Ok(exists_supporting_belief(game, g, &pool, player, s, kind)?.is_some()),
    }
}

/// `T_φ̄(G) = (S'_1, ..., S'_n)` with `S'_i = {s_i ∈ S_i | φ_i(s_i, G)}`.
pub fn apply_operator(profile: &PropertyProfile, game: &Game, g: &Restriction) -> Result<Restriction> {
    profile.check(game)?;
    let mut out = g.clone();
    for i in 0..game.num_players() {
        let mut kept = *g.component(i);
        for s in g.component(i).iter() {
            if !eval_property(profile.spec(i), game, i, s, g)? {
                kept.remove(s);
            }
        }
        out.set_component(i, kept);
    }
    Ok(out)
}

/// `T_φ̄` bound to a game, usable wherever an [`Operator`] is expected.
pub struct ProfileOperator<'a> {
    pub profile: PropertyProfile,
    pub game: &'a Game,
}

impl<'a> ProfileOperator<'a> {
    pub fn new(profile: PropertyProfile, game: &'a Game) -> Result<Self> {
        profile.check(game)?;
        Ok(Self { profile, game })
    }

    pub fn uniform(spec: PropertySpec, game: &'a Game) -> Self {
        Self { profile: PropertyProfile::uniform(spec, game.num_players()), game }
    }
}

impl Operator for ProfileOperator<'_> {
    fn apply(&self, g: &Restriction) -> Result<Restriction> {
        apply_operator(&self.profile, self.game, g)
    }
}

/// The outcome of iterated elimination under `profile`.
pub fn outcome(profile: &PropertyProfile, game: &Game) -> Result<IterationTrace<Restriction>> {
    let op = ProfileOperator::new(profile.clone(), game)?;
    iterate_operator(&op, game, 10 * game.total_strategies())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ordinal::Ordinal;

    fn r(game: &Game, names: &[&[&str]]) -> Restriction {
        let v: Vec<Vec<&str>> = names.iter().map(|x| x.to_vec()).collect();
        Restriction::from_names(game, &v).unwrap()
    }

    #[test]
    fn spec_grammar_roundtrip() {
        for text in ["sd:l", "sd:g", "msd:l", "msd:g", "br:l:pure", "br:g:pure", "br:l:corr", "br:g:corr", "br:l:ind", "br:g:ind"] {
            let spec: PropertySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        for bad in ["sd", "sd:x", "br:g", "br:g:mixed", "msd:l:pure", "xx:l", ""] {
            assert!(bad.parse::<PropertySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn eval_examples() {
        let pd = fixtures::prisoners_dilemma();
        let top = Restriction::top(&pd);
        let cc = r(&pd, &[&["C"], &["C"]]);
        assert!(!eval_property(PropertySpec::SD_L, &pd, 0, 0, &top).unwrap());
        assert!(eval_property(PropertySpec::SD_L, &pd, 0, 0, &cc).unwrap());
        assert!(!eval_property(PropertySpec::SD_G, &pd, 0, 0, &cc).unwrap());
    }

    #[test]
    fn apply_examples() {
        let pd = fixtures::prisoners_dilemma();
        let sd_l = PropertyProfile::uniform(PropertySpec::SD_L, 2);
        assert_eq!(apply_operator(&sd_l, &pd, &Restriction::top(&pd)).unwrap(), r(&pd, &[&["D"], &["D"]]));

        let mix = fixtures::mixed_dominance();
        let msd_l = PropertyProfile::uniform(PropertySpec::MSD_L, 2);
        assert_eq!(
            apply_operator(&msd_l, &mix, &Restriction::top(&mix)).unwrap(),
            r(&mix, &[&["T", "M"], &["L", "R"]])
        );

        // Heterogeneous: row uses sd:l, column br:g:pure; each image is
        // computed from the same G.
        let chain = fixtures::elimination_chain();
        let het = PropertyProfile(vec![PropertySpec::SD_L, PropertySpec::BR_G_PURE]);
        let top = Restriction::top(&chain);
        let img = apply_operator(&het, &chain, &top).unwrap();
        let row = apply_operator(&PropertyProfile::uniform(PropertySpec::SD_L, 2), &chain, &top).unwrap();
        let col = apply_operator(&PropertyProfile::uniform(PropertySpec::BR_G_PURE, 2), &chain, &top).unwrap();
        assert_eq!(img.component(0), row.component(0));
        assert_eq!(img.component(1), col.component(1));
        // Column: L is the best reply to T, R to M and B; C never is.
        assert_eq!(img, r(&chain, &[&["T", "M", "B"], &["L", "R"]]));
    }

    #[test]
    fn outcome_examples() {
        let mp = fixtures::matching_pennies();
        let t = outcome(&PropertyProfile::uniform(PropertySpec::BR_G_PURE, 2), &mp).unwrap();
        assert_eq!(t.outcome, Restriction::top(&mp));
        assert_eq!(t.closure_ordinal, Ordinal::ZERO);

        let chain = fixtures::elimination_chain();
        let t = outcome(&PropertyProfile::uniform(PropertySpec::SD_L, 2), &chain).unwrap();
        assert_eq!(t.outcome, r(&chain, &[&["T"], &["L"]]));
        assert_eq!(t.closure_ordinal, Ordinal::finite(3));
        let expected = [
            r(&chain, &[&["T", "M", "B"], &["L", "C", "R"]]),
            r(&chain, &[&["T", "M", "B"], &["L", "R"]]),
            r(&chain, &[&["T"], &["L", "R"]]),
            r(&chain, &[&["T"], &["L"]]),
        ];
        let steps: Vec<_> = t.steps.iter().map(|s| s.restriction.clone()).collect();
        assert_eq!(steps, expected);

        let pd = fixtures::prisoners_dilemma();
        let t = outcome(&PropertyProfile::uniform(PropertySpec::MSD_L, 2), &pd).unwrap();
        assert_eq!(t.outcome, r(&pd, &[&["D"], &["D"]]));
    }

    #[test]
    fn independent_rejected_for_three_players() {
        let g = fixtures::three_player();
        let p = PropertyProfile::uniform("br:l:ind".parse().unwrap(), 3);
        assert!(matches!(outcome(&p, &g), Err(Error::Unsupported(_))));
    }
}
