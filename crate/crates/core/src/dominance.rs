//! Strict dominance (pure and mixed) and best responses to beliefs.
//!
//! All comparisons are exact. Quantifiers over an empty opponent set are
//! taken literally: "dominates on G" holds vacuously and "some belief held
//! in G" fails.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Game, OpponentProfile, StrategyId};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::rational::{format_rational, Rational};
use crate::restriction::{Restriction, StrategySet};

/// Joint indices of `(0, s_{-i})` for every `s_{-i} ∈ S_{-i}`, in row-major
/// order. Adding `s·stride(i)` gives the index of `(s, s_{-i})`.
pub(crate) fn opponent_bases(game: &Game, g: &Restriction, player: usize) -> Vec<usize> {
    let mut bases = vec![0usize];
    for j in 0..game.num_players() {
        if j == player {
            continue;
        }
        let stride = game.stride(j);
        let members: Vec<usize> = g.component(j).iter().collect();
        bases = bases
            .iter()
            .flat_map(|b| members.iter().map(move |&s| b + s * stride))
            .collect();
    }
    bases
}

fn profile_of_base(game: &Game, player: usize, base: usize) -> OpponentProfile {
    let mut joint = game.decode_joint(base).0;
    joint.remove(player);
    OpponentProfile { player, strategies: joint }
}

fn base_of_profile(game: &Game, profile: &OpponentProfile) -> usize {
    game.joint_index(&profile.with_own(0).0)
}

fn pay(game: &Game, player: usize, s: StrategyId, base: usize) -> &Rational {
    game.payoff_at(base + s * game.stride(player), player)
}

/// `s'_i ≻_G s_i`: strictly better against every `s_{-i} ∈ S_{-i}`.
/// Both strategies range over `T_i`, not only `S_i`.
pub fn strictly_dominates_pure(
    game: &Game,
    context: &Restriction,
    player: usize,
    dominator: StrategyId,
    dominated: StrategyId,
) -> Result<bool> {
    game.check_strategy(player, dominator)?;
    game.check_strategy(player, dominated)?;
    Ok(opponent_bases(game, context, player)
        .iter()
        .all(|&b| pay(game, player, dominator, b) > pay(game, player, dominated, b)))
}

/// A probability distribution over some of a player's strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    pub owner: usize,
    /// `(strategy, weight)` pairs with positive weights, by strategy index.
    pub weights: Vec<(StrategyId, Rational)>,
}

impl MixedStrategy {
    /// Validates weights (non-negative, summing to one, support inside
    /// `support` when given) and drops zero entries.
    pub fn new(
        game: &Game,
        owner: usize,
        weights: Vec<(StrategyId, Rational)>,
        support: Option<&StrategySet>,
    ) -> Result<Self> {
        let mut total = Rational::zero();
        let mut out: Vec<(StrategyId, Rational)> = Vec::new();
        for (s, w) in weights {
            game.check_strategy(owner, s)?;
            if w.is_negative() {
                return Err(Error::Argument(format!("negative weight for strategy #{s}")));
            }
            if w.is_zero() {
                continue;
            }
            if support.is_some_and(|set| !set.contains(s)) {
                return Err(Error::Argument(format!(
                    "strategy `{}` outside the allowed support",
                    game.strategy_name(owner, s)
                )));
            }
            if out.iter().any(|(t, _)| *t == s) {
                return Err(Error::Argument(format!("strategy #{s} listed twice")));
            }
            total += &w;
            out.push((s, w));
        }
        if !total.is_one() {
            return Err(Error::Argument(format!(
                "weights sum to {}, not 1",
                format_rational(&total)
            )));
        }
        out.sort_by_key(|(s, _)| *s);
        Ok(Self { owner, weights: out })
    }

    pub fn uniform(owner: usize, pool: &StrategySet) -> Self {
        let n = Rational::from_integer((pool.len() as i64).into());
        Self {
            owner,
            weights: pool.iter().map(|s| (s, Rational::one() / &n)).collect(),
        }
    }

    pub fn weight(&self, s: StrategyId) -> Rational {
        self.weights
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Expected payoff to the owner against the opponent profile at `base`.
    fn payoff_against(&self, game: &Game, base: usize) -> Rational {
        self.weights
            .iter()
            .map(|(s, w)| w * pay(game, self.owner, *s, base))
            .sum()
    }

    /// Whether the mixture strictly dominates `dominated` on `context`.
    pub fn strictly_dominates(&self, game: &Game, context: &Restriction, dominated: StrategyId) -> bool {
        opponent_bases(game, context, self.owner)
            .iter()
            .all(|&b| self.payoff_against(game, b) > *pay(game, self.owner, dominated, b))
    }

    pub fn to_json(&self, game: &Game) -> MixedJson {
        MixedJson {
            player: self.owner + 1,
            weights: self
                .weights
                .iter()
                .map(|(s, w)| (game.strategy_name(self.owner, *s).to_string(), format_rational(w)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedJson {
    pub player: usize,
    pub weights: Vec<(String, String)>,
}

/// A mixture over `pool` that strictly dominates `dominated` on `context`,
/// if one exists.
///
/// Solves `max ε` subject to `Σ m(s')·p_i(s', s_{-i}) ≥ p_i(s_i, s_{-i}) + ε`
/// for every `s_{-i} ∈ S_{-i}` and `m ∈ Δ(pool)`; a witness exists iff the
/// optimum is positive. The witness is re-checked by direct evaluation.
pub fn mixed_dominance_witness(
    game: &Game,
    context: &Restriction,
    player: usize,
    pool: &StrategySet,
    dominated: StrategyId,
) -> Result<Option<MixedStrategy>> {
    game.check_strategy(player, dominated)?;
    if pool.universe() != game.num_strategies(player) {
        return Err(Error::Shape("dominator pool does not match the player".into()));
    }
    if pool.is_empty() {
        return Ok(None);
    }
    let bases = opponent_bases(game, context, player);
    if bases.is_empty() {
        return Ok(Some(MixedStrategy::uniform(player, pool)));
    }
    let members: Vec<StrategyId> = pool.iter().collect();
    let k = members.len();
    // Variables: m_1..m_k, ε⁺, ε⁻.
    let mut lp = LinearProgram::new(k + 2);
    lp.objective[k] = Rational::one();
    lp.objective[k + 1] = -Rational::one();
    for &b in &bases {
        let mut row: Vec<Rational> = members.iter().map(|&s| pay(game, player, s, b).clone()).collect();
        row.push(-Rational::one());
        row.push(Rational::one());
        lp.add(row, Relation::Ge, pay(game, player, dominated, b).clone());
    }
    let mut sum = vec![Rational::one(); k];
    sum.extend([Rational::zero(), Rational::zero()]);
    lp.add(sum, Relation::Eq, Rational::one());

    match lp.solve() {
        LpOutcome::Optimal { point, value } => {
            if !value.is_positive() {
                return Ok(None);
            }
            let weights = members.iter().copied().zip(point).collect();
            let witness = MixedStrategy::new(game, player, weights, Some(pool))?;
            if !witness.strictly_dominates(game, context, dominated) {
                return Err(Error::Validation("LP dominance witness failed re-evaluation".into()));
            }
            Ok(Some(witness))
        }
        other => Err(Error::Validation(format!("mixed-dominance LP returned {other:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BeliefKind {
    /// A single opponent profile `s_{-i} ∈ S_{-i}`.
    Pure,
    /// A distribution over `S_{-i}`.
    Correlated,
    /// A product of opponents' mixed strategies.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Belief {
    Pure(OpponentProfile),
    Correlated(Vec<(OpponentProfile, Rational)>),
    Independent(Vec<MixedStrategy>),
}

impl Belief {
    pub fn kind(&self) -> BeliefKind {
        match self {
            Belief::Pure(_) => BeliefKind::Pure,
            Belief::Correlated(_) => BeliefKind::Correlated,
            Belief::Independent(_) => BeliefKind::Independent,
        }
    }

    /// The belief as `(opponent-profile base index, probability)` pairs.
    fn distribution(&self, game: &Game, player: usize) -> Result<Vec<(usize, Rational)>> {
        match self {
            Belief::Pure(p) => Ok(vec![(base_of_profile(game, p), Rational::one())]),
            Belief::Correlated(dist) => Ok(dist
                .iter()
                .map(|(p, w)| (base_of_profile(game, p), w.clone()))
                .collect()),
            Belief::Independent(mixes) => {
                let mut out = vec![(0usize, Rational::one())];
                let mut opponents = (0..game.num_players()).filter(|&j| j != player);
                for m in mixes {
                    let j = opponents.next().ok_or_else(|| {
                        Error::Argument("too many mixed strategies in belief".into())
                    })?;
                    if m.owner != j {
                        return Err(Error::Argument("belief mixtures out of player order".into()));
                    }
                    out = out
                        .iter()
                        .flat_map(|(b, p)| {
                            m.weights.iter().map(move |(s, w)| (b + s * game.stride(j), p * w))
                        })
                        .collect();
                }
                if opponents.next().is_some() {
                    return Err(Error::Argument("missing mixed strategy in belief".into()));
                }
                Ok(out)
            }
        }
    }

    fn validate(&self, game: &Game, context: &Restriction, player: usize) -> Result<Vec<(usize, Rational)>> {
        let check_profile = |p: &OpponentProfile| -> Result<()> {
            if p.player != player || p.strategies.len() + 1 != game.num_players() {
                return Err(Error::Argument("belief profile has the wrong shape".into()));
            }
            let joint = p.with_own(0);
            for (j, &s) in joint.0.iter().enumerate() {
                if j == player {
                    continue;
                }
                game.check_strategy(j, s)?;
                if !context.component(j).contains(s) {
                    return Err(Error::Argument(format!(
                        "belief support includes `{}` outside the context",
                        game.strategy_name(j, s)
                    )));
                }
            }
            Ok(())
        };
        match self {
            Belief::Pure(p) => check_profile(p)?,
            Belief::Correlated(dist) => {
                let mut total = Rational::zero();
                for (p, w) in dist {
                    check_profile(p)?;
                    if w.is_negative() {
                        return Err(Error::Argument("negative belief weight".into()));
                    }
                    total += w;
                }
                if !total.is_one() {
                    return Err(Error::Argument("belief weights do not sum to 1".into()));
                }
            }
            Belief::Independent(mixes) => {
                for m in mixes {
                    let total: Rational = m.weights.iter().map(|(_, w)| w.clone()).sum();
                    if !total.is_one() || m.weights.iter().any(|(_, w)| w.is_negative()) {
                        return Err(Error::Argument("invalid mixed strategy in belief".into()));
                    }
                    if m.weights.iter().any(|(s, _)| !context.component(m.owner).contains(*s)) {
                        return Err(Error::Argument("belief support outside the context".into()));
                    }
                }
            }
        }
        self.distribution(game, player)
    }

    pub fn to_json(&self, game: &Game) -> BeliefJson {
        let label = |p: &OpponentProfile| -> Vec<String> {
            let mut names = Vec::new();
            let mut j = 0;
            for &s in &p.strategies {
                if j == p.player {
                    j += 1;
                }
                names.push(game.strategy_name(j, s).to_string());
                j += 1;
            }
            names
        };
        match self {
            Belief::Pure(p) => BeliefJson::Pure { profile: label(p) },
            Belief::Correlated(dist) => BeliefJson::Correlated {
                distribution: dist.iter().map(|(p, w)| (label(p), format_rational(w))).collect(),
            },
            Belief::Independent(mixes) => BeliefJson::Independent {
                mixtures: mixes.iter().map(|m| m.to_json(game)).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BeliefJson {
    Pure { profile: Vec<String> },
    Correlated { distribution: Vec<(Vec<String>, String)> },
    Independent { mixtures: Vec<MixedJson> },
}

fn expected(game: &Game, player: usize, s: StrategyId, dist: &[(usize, Rational)]) -> Rational {
    dist.iter().map(|(b, w)| w * pay(game, player, s, *b)).sum()
}

fn reject_independent(game: &Game, kind: BeliefKind) -> Result<()> {
    if kind == BeliefKind::Independent && game.num_players() > 2 {
        return Err(Error::Unsupported(format!(
            "best response to independent mixed beliefs with {} players",
            game.num_players()
        )));
    }
    Ok(())
}

/// Whether `candidate` is a best response within `pool` to `belief`, which
/// must be held in `context`.
pub fn is_best_response(
    game: &Game,
    context: &Restriction,
    pool: &StrategySet,
    player: usize,
    candidate: StrategyId,
    belief: &Belief,
) -> Result<bool> {
    reject_independent(game, belief.kind())?;
    game.check_strategy(player, candidate)?;
    let dist = belief.validate(game, context, player)?;
    let own = expected(game, player, candidate, &dist);
    Ok(pool.iter().all(|s| own >= expected(game, player, s, &dist)))
}

/// Some belief of the given kind, held in `context`, to which `candidate`
/// is a best response within `pool`.
///
/// Pure beliefs are found by enumeration; correlated ones by an exact LP
/// feasibility problem over `Δ(S_{-i})`. With two players an independent
/// belief is a mixed strategy of the single opponent and is found on the
/// correlated path.
pub fn exists_supporting_belief(
    game: &Game,
    context: &Restriction,
    pool: &StrategySet,
    player: usize,
    candidate: StrategyId,
    kind: BeliefKind,
) -> Result<Option<Belief>> {
    reject_independent(game, kind)?;
    game.check_strategy(player, candidate)?;
    let bases = opponent_bases(game, context, player);
    if bases.is_empty() {
        return Ok(None);
    }
    let found = match kind {
        BeliefKind::Pure => bases
            .iter()
            .find(|&&b| {
                let own = pay(game, player, candidate, b);
                pool.iter().all(|s| own >= pay(game, player, s, b))
            })
            .map(|&b| Belief::Pure(profile_of_base(game, player, b))),
        BeliefKind::Correlated | BeliefKind::Independent => {
            let mut lp = LinearProgram::new(bases.len());
            for s in pool.iter().filter(|&s| s != candidate) {
                let row = bases
                    .iter()
                    .map(|&b| pay(game, player, candidate, b) - pay(game, player, s, b))
                    .collect();
                lp.add(row, Relation::Ge, Rational::zero());
            }
            lp.add(vec![Rational::one(); bases.len()], Relation::Eq, Rational::one());
            match lp.solve() {
                LpOutcome::Optimal { point, .. } => {
                    let dist: Vec<(OpponentProfile, Rational)> = bases
                        .iter()
                        .zip(point)
                        .filter(|(_, w)| !w.is_zero())
                        .map(|(&b, w)| (profile_of_base(game, player, b), w))
                        .collect();
                    Some(if kind == BeliefKind::Independent {
                        let opponent = 1 - player;
                        let weights = dist.iter().map(|(p, w)| (p.strategies[0], w.clone())).collect();
                        Belief::Independent(vec![MixedStrategy::new(game, opponent, weights, None)?])
                    } else {
                        Belief::Correlated(dist)
                    })
                }
                LpOutcome::Infeasible => None,
                LpOutcome::Unbounded => {
                    return Err(Error::Validation("feasibility LP reported unbounded".into()))
                }
            }
        }
    };
    if let Some(belief) = &found {
        if !is_best_response(game, context, pool, player, candidate, belief)? {
            return Err(Error::Validation("belief witness failed re-evaluation".into()));
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PearceEntry {
    pub player: usize,
    pub strategy: String,
    /// Survives as a best response to some correlated belief.
    pub best_response: bool,
    /// Survives as not strictly dominated by a mixture.
    pub undominated: bool,
    pub belief: Option<BeliefJson>,
    pub dominator: Option<MixedJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PearceReport {
    pub game: String,
    pub restriction: crate::restriction::NamedRestriction,
    pub best_response_image: crate::restriction::NamedRestriction,
    pub undominated_image: crate::restriction::NamedRestriction,
    pub mismatches: Vec<PearceEntry>,
    pub entries: Vec<PearceEntry>,
    pub passed: bool,
}

/// Computes the local correlated-best-response image and the local
/// mixed-undominated image of `g` independently and compares them.
pub fn pearce_equivalence_check(game: &Game, g: &Restriction) -> Result<PearceReport> {
    let mut br_image = g.clone();
    let mut msd_image = g.clone();
    let mut entries = Vec::new();
    for i in 0..game.num_players() {
        let pool = *g.component(i);
        let mut br_set = pool;
        let mut msd_set = pool;
        for s in pool.iter() {
            let belief = exists_supporting_belief(game, g, &pool, i, s, BeliefKind::Correlated)?;
            let dominator = mixed_dominance_witness(game, g, i, &pool, s)?;
            if belief.is_none() {
                br_set.remove(s);
            }
            if dominator.is_some() {
                msd_set.remove(s);
            }
            entries.push(PearceEntry {
                player: i + 1,
                strategy: game.strategy_name(i, s).to_string(),
                best_response: belief.is_some(),
                undominated: dominator.is_none(),
                belief: belief.map(|b| b.to_json(game)),
                dominator: dominator.map(|m| m.to_json(game)),
            });
        }
        br_image.set_component(i, br_set);
        msd_image.set_component(i, msd_set);
    }
    let mismatches: Vec<PearceEntry> = entries
        .iter()
        .filter(|e| e.best_response != e.undominated)
        .cloned()
        .collect();
    use crate::restriction::NamedRestriction as N;
    Ok(PearceReport {
        game: game.name().to_string(),
        restriction: N::new(game, g),
        best_response_image: N::new(game, &br_image),
        undominated_image: N::new(game, &msd_image),
        passed: mismatches.is_empty() && br_image == msd_image,
        mismatches,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;

    fn set(game: &Game, player: usize, names: &[&str]) -> StrategySet {
        StrategySet::from_indices(
            game.num_strategies(player),
            names.iter().map(|n| game.strategy_index(player, n).unwrap()),
        )
    }

    fn idx(game: &Game, player: usize, name: &str) -> StrategyId {
        game.strategy_index(player, name).unwrap()
    }

    fn pure(game: &Game, player: usize, names: &[&str]) -> Belief {
        let mut strategies = Vec::new();
        let mut j = 0;
        for n in names {
            if j == player {
                j += 1;
            }
            strategies.push(idx(game, j, n));
            j += 1;
        }
        Belief::Pure(OpponentProfile { player, strategies })
    }

    #[test]
    fn pure_dominance_examples() {
        let pd = fixtures::prisoners_dilemma();
        let top = Restriction::top(&pd);
        assert!(strictly_dominates_pure(&pd, &top, 0, 1, 0).unwrap());
        let mix = fixtures::mixed_dominance();
        let top = Restriction::top(&mix);
        assert!(!strictly_dominates_pure(&mix, &top, 0, idx(&mix, 0, "T"), idx(&mix, 0, "B")).unwrap());
        // Empty opponent set: vacuous.
        let mut g = Restriction::top(&pd);
        g.set_component(1, StrategySet::empty(2));
        assert!(strictly_dominates_pure(&pd, &g, 0, 0, 1).unwrap());
        assert!(strictly_dominates_pure(&pd, &g, 0, 1, 1).unwrap());
        assert!(strictly_dominates_pure(&pd, &top, 0, 7, 0).is_err());
    }

    #[test]
    fn mixed_dominance_examples() {
        let mix = fixtures::mixed_dominance();
        let top = Restriction::top(&mix);
        let b = idx(&mix, 0, "B");
        let w = mixed_dominance_witness(&mix, &top, 0, &set(&mix, 0, &["T", "M"]), b)
            .unwrap()
            .expect("B is dominated by a mix");
        assert!(w.strictly_dominates(&mix, &top, b));
        let t = w.weight(idx(&mix, 0, "T"));
        assert!(t > ratio(1, 3) && t < ratio(2, 3));

        let pd = fixtures::prisoners_dilemma();
        let ptop = Restriction::top(&pd);
        assert!(mixed_dominance_witness(&pd, &ptop, 0, &StrategySet::full(2), 1).unwrap().is_none());
        assert!(mixed_dominance_witness(&mix, &top, 0, &set(&mix, 0, &["B"]), b).unwrap().is_none());
        assert!(mixed_dominance_witness(&mix, &top, 0, &StrategySet::empty(3), b).unwrap().is_none());

        let mut g = top.clone();
        g.set_component(1, StrategySet::empty(2));
        let w = mixed_dominance_witness(&mix, &g, 0, &set(&mix, 0, &["T", "M"]), b).unwrap().unwrap();
        assert_eq!(w, MixedStrategy::uniform(0, &set(&mix, 0, &["T", "M"])));
    }

    #[test]
    fn best_response_examples() {
        let mp = fixtures::matching_pennies();
        let top = Restriction::top(&mp);
        let full = StrategySet::full(2);
        assert!(is_best_response(&mp, &top, &full, 0, idx(&mp, 0, "H"), &pure(&mp, 0, &["H"])).unwrap());

        let pd = fixtures::prisoners_dilemma();
        let top = Restriction::top(&pd);
        assert!(!is_best_response(&pd, &top, &full, 0, 0, &pure(&pd, 0, &["C"])).unwrap());

        let mix = fixtures::mixed_dominance();
        let top = Restriction::top(&mix);
        let belief = Belief::Correlated(vec![
            (OpponentProfile { player: 0, strategies: vec![0] }, ratio(1, 2)),
            (OpponentProfile { player: 0, strategies: vec![1] }, ratio(1, 2)),
        ]);
        assert!(!is_best_response(&mix, &top, &StrategySet::full(3), 0, idx(&mix, 0, "B"), &belief).unwrap());
    }

    #[test]
    fn belief_errors() {
        let pd = fixtures::prisoners_dilemma();
        let mut g = Restriction::top(&pd);
        g.set_component(1, set(&pd, 1, &["D"]));
        let outside = pure(&pd, 0, &["C"]);
        assert!(matches!(
            is_best_response(&pd, &g, &StrategySet::full(2), 0, 1, &outside),
            Err(Error::Argument(_))
        ));
        let three = fixtures::three_player();
        let top = Restriction::top(&three);
        assert!(matches!(
            exists_supporting_belief(&three, &top, &StrategySet::full(2), 0, 0, BeliefKind::Independent),
            Err(Error::Unsupported(_))
        ));
        let bad_sum = Belief::Correlated(vec![(OpponentProfile { player: 0, strategies: vec![0] }, ratio(1, 2))]);
        assert!(is_best_response(&pd, &Restriction::top(&pd), &StrategySet::full(2), 0, 0, &bad_sum).is_err());
    }

    #[test]
    fn supporting_belief_examples() {
        let mp = fixtures::matching_pennies();
        let top = Restriction::top(&mp);
        let full = StrategySet::full(2);
        let t = idx(&mp, 0, "T");
        let b = exists_supporting_belief(&mp, &top, &full, 0, t, BeliefKind::Pure).unwrap().unwrap();
        assert!(is_best_response(&mp, &top, &full, 0, t, &b).unwrap());

        let mix = fixtures::mixed_dominance();
        let mtop = Restriction::top(&mix);
        let none = exists_supporting_belief(&mix, &mtop, &StrategySet::full(3), 0, idx(&mix, 0, "B"), BeliefKind::Correlated);
        assert!(none.unwrap().is_none());

        for kind in [BeliefKind::Pure, BeliefKind::Correlated, BeliefKind::Independent] {
            let s = idx(&mix, 0, "B");
            let pool = StrategySet::singleton(3, s);
            assert!(exists_supporting_belief(&mix, &mtop, &pool, 0, s, kind).unwrap().is_some());
        }
        let mut g = mtop.clone();
        g.set_component(1, StrategySet::empty(2));
        assert!(exists_supporting_belief(&mix, &g, &StrategySet::full(3), 0, 0, BeliefKind::Correlated)
            .unwrap()
            .is_none());
    }

    #[test]
    fn pearce_fixtures() {
        let mix = fixtures::mixed_dominance();
        let r = pearce_equivalence_check(&mix, &Restriction::top(&mix)).unwrap();
        assert!(r.passed);
        assert_eq!(r.best_response_image.0, vec![vec!["T", "M"], vec!["L", "R"]]);
        let pd = fixtures::prisoners_dilemma();
        let r = pearce_equivalence_check(&pd, &Restriction::top(&pd)).unwrap();
        assert!(r.passed);
        assert_eq!(r.undominated_image.0, vec![vec!["D"], vec!["D"]]);
    }
}
