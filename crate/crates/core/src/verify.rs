//! Exhaustive verifiers for properties and the elimination theorems.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dominance::{pearce_equivalence_check, PearceReport};
use crate::error::Result;
use crate::game::Game;
use crate::iteration::{contraction_violation, monotonicity_violation, RestrictionPair};
use crate::limits::Limits;
use crate::ordinal::Ordinal;
use crate::property::{eval_property, outcome, PropertyProfile, PropertySpec};
use crate::restriction::{check_lattice_budget, sub_indices, NamedRestriction, Restriction};

/// `φ_i(s, G)` for every restriction `G`, player `i` and `s ∈ T_i`.
///
/// Entry `idx` is a bit mask laid out like a lattice index: bit
/// `offset_i + s` is set iff `φ_i(s, G_idx)` holds. The operator image is
/// therefore `idx & table[idx]`.
#[derive(Debug, Clone)]
pub struct PropertyTable {
    pub profile: PropertyProfile,
    masks: Vec<u64>,
}

impl PropertyTable {
    pub fn build(profile: &PropertyProfile, game: &Game, limits: &Limits) -> Result<Self> {
        profile.check(game)?;
        check_lattice_budget(game, limits.lattice)?;
        let size = 1u64 << game.total_strategies();
        let masks = (0..size)
            .into_par_iter()
            .map(|idx| {
                let g = Restriction::from_lattice_index(game, idx);
                let mut mask = 0u64;
                let mut offset = 0;
                for i in 0..game.num_players() {
                    for s in 0..game.num_strategies(i) {
                        if eval_property(profile.spec(i), game, i, s, &g)? {
                            mask |= 1 << (offset + s);
                        }
                    }
                    offset += game.num_strategies(i);
                }
                Ok(mask)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { profile: profile.clone(), masks })
    }

    pub fn uniform(spec: PropertySpec, game: &Game, limits: &Limits) -> Result<Self> {
        Self::build(&PropertyProfile::uniform(spec, game.num_players()), game, limits)
    }

    /// Mask of `(i, s)` pairs satisfying `φ_i` at the restriction `idx`.
    pub fn mask(&self, idx: u64) -> u64 {
        self.masks[idx as usize]
    }

    /// `T_φ̄(G_idx)` as a lattice index.
    pub fn image(&self, idx: u64) -> u64 {
        idx & self.masks[idx as usize]
    }

    pub fn images(&self) -> Vec<u64> {
        (0..self.masks.len() as u64).map(|i| self.image(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }
}

/// Maps a bit position of the concatenated layout back to `(player, strategy)`.
fn locate(game: &Game, mut bit: usize) -> (usize, usize) {
    for i in 0..game.num_players() {
        if bit < game.num_strategies(i) {
            return (i, bit);
        }
        bit -= game.num_strategies(i);
    }
    unreachable!("bit outside the game")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneViolation {
    pub smaller: NamedRestriction,
    pub larger: NamedRestriction,
    pub player: usize,
    pub strategy: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub game: String,
    pub property: PropertySpec,
    pub pairs_checked: u64,
    pub violation_count: u64,
    /// The first violations in lattice order (at most [`MAX_LISTED`]).
    pub violations: Vec<MonotoneViolation>,
    pub passed: bool,
}

pub const MAX_LISTED: usize = 16;

/// Checks `G ⊆ G' ∧ φ(s_i, G) ⇒ φ(s_i, G')` over every pair of restrictions
/// and every `s_i ∈ T_i`.
pub fn check_property_monotone(spec: PropertySpec, game: &Game, limits: &Limits) -> Result<MonotoneReport> {
    let table = PropertyTable::uniform(spec, game, limits)?;
    Ok(monotone_report_from_table(&table, spec, game))
}

pub(crate) fn monotone_report_from_table(table: &PropertyTable, spec: PropertySpec, game: &Game) -> MonotoneReport {
    let per_big: Vec<(u64, u64, Vec<(u64, u64)>)> = (0..table.len() as u64)
        .into_par_iter()
        .map(|big| {
            let at_big = table.mask(big);
            let mut pairs = 0u64;
            let mut count = 0u64;
            let mut listed = Vec::new();
            for small in sub_indices(big) {
                pairs += 1;
                let bad = table.mask(small) & !at_big;
                if bad != 0 {
                    count += bad.count_ones() as u64;
                    if listed.len() < MAX_LISTED {
                        listed.push((small, bad));
                    }
                }
            }
            (pairs, count, listed)
        })
        .collect();
    let mut report = MonotoneReport {
        game: game.name().to_string(),
        property: spec,
        pairs_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        passed: true,
    };
    let named = |idx| NamedRestriction::new(game, &Restriction::from_lattice_index(game, idx));
    for (big, (pairs, count, listed)) in per_big.into_iter().enumerate() {
        report.pairs_checked += pairs;
        report.violation_count += count;
        for (small, bad) in listed {
            for bit in 0..64 {
                if bad & (1 << bit) != 0 && report.violations.len() < MAX_LISTED {
                    let (player, s) = locate(game, bit);
                    report.violations.push(MonotoneViolation {
                        smaller: named(small),
                        larger: named(big as u64),
                        player: player + 1,
                        strategy: game.strategy_name(player, s).to_string(),
                    });
                }
            }
        }
    }
    report.passed = report.violation_count == 0;
    report
}

/// True iff every `φ_i` in the table's profile is monotonic.
pub fn table_is_monotone(table: &PropertyTable) -> bool {
    (0..table.len() as u64)
        .into_par_iter()
        .all(|big| sub_indices(big).all(|small| table.mask(small) & !table.mask(big) == 0))
}

/// True iff `φ_i(s_i, ({s_1}, ..., {s_n}))` holds for every player and joint strategy.
pub fn profile_satisfies_singleton(profile: &PropertyProfile, game: &Game) -> Result<bool> {
    profile.check(game)?;
    for joint in game.joint_strategies() {
        let g = Restriction::singletons(game, &joint);
        for (i, &s) in joint.0.iter().enumerate() {
            if !eval_property(profile.spec(i), game, i, s, &g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonFailure {
    pub joint: Vec<String>,
    pub player: usize,
    pub strategy: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonReport {
    pub game: String,
    pub property: PropertySpec,
    pub joint_strategies_checked: u64,
    pub failures: Vec<SingletonFailure>,
    pub passed: bool,
}

/// Evaluates `φ(s_i, ({s_1}, ..., {s_n}))` at every joint strategy and player.
pub fn check_singleton_condition(spec: PropertySpec, game: &Game) -> Result<SingletonReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for joint in game.joint_strategies() {
        checked += 1;
        let g = Restriction::singletons(game, &joint);
        for (i, &s) in joint.0.iter().enumerate() {
            if !eval_property(spec, game, i, s, &g)? {
                failures.push(SingletonFailure {
                    joint: joint
                        .0
                        .iter()
                        .enumerate()
                        .map(|(j, &t)| game.strategy_name(j, t).to_string())
                        .collect(),
                    player: i + 1,
                    strategy: game.strategy_name(i, s).to_string(),
                });
            }
        }
    }
    Ok(SingletonReport {
        game: game.name().to_string(),
        property: spec,
        joint_strategies_checked: checked,
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Subset,
    Equal,
}

/// One pointwise link `T_a(G) ⊆ T_b(G)` (or `=`) of a proof chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub lhs: PropertySpec,
    pub relation: Relation,
    pub rhs: PropertySpec,
    pub holds: bool,
    pub violation: Option<NamedRestriction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub game: String,
    pub restrictions_checked: u64,
    pub chain: Vec<ChainLink>,
    pub first: PropertySpec,
    pub second: PropertySpec,
    pub first_monotone: bool,
    pub first_monotonicity_violation: Option<RestrictionPair>,
    pub second_contracting: bool,
    pub first_outcome: NamedRestriction,
    pub first_closure_ordinal: Ordinal,
    pub second_outcome: NamedRestriction,
    pub second_closure_ordinal: Ordinal,
    pub outcome_inclusion: bool,
    pub passed: bool,
}

fn chain_link(game: &Game, a: &PropertyTable, b: &PropertyTable, relation: Relation) -> ChainLink {
    let violation = (0..a.len() as u64).find(|&idx| {
        let (ia, ib) = (a.image(idx), b.image(idx));
        match relation {
            Relation::Subset => ia & !ib != 0,
            Relation::Equal => ia != ib,
        }
    });
    ChainLink {
        lhs: a.profile.spec(0),
        relation,
        rhs: b.profile.spec(0),
        holds: violation.is_none(),
        violation: violation.map(|i| NamedRestriction::new(game, &Restriction::from_lattice_index(game, i))),
    }
}

fn theorem_report(
    theorem: &str,
    game: &Game,
    limits: &Limits,
    links: &[(PropertySpec, Relation, PropertySpec)],
    first: PropertySpec,
    second: PropertySpec,
) -> Result<TheoremReport> {
    let mut tables: Vec<(PropertySpec, PropertyTable)> = Vec::new();
    let mut table_for = |spec: PropertySpec| -> Result<usize> {
        if let Some(k) = tables.iter().position(|(s, _)| *s == spec) {
            return Ok(k);
        }
        tables.push((spec, PropertyTable::uniform(spec, game, limits)?));
        Ok(tables.len() - 1)
    };
    let mut idx_links = Vec::new();
    for &(a, rel, b) in links {
        idx_links.push((table_for(a)?, rel, table_for(b)?));
    }
    let first_k = table_for(first)?;
    let second_k = table_for(second)?;
    let chain: Vec<ChainLink> = idx_links
        .into_iter()
        .map(|(a, rel, b)| chain_link(game, &tables[a].1, &tables[b].1, rel))
        .collect();
    let mono = monotonicity_violation(&tables[first_k].1.images());
    let contracting = contraction_violation(&tables[second_k].1.images()).is_none();
    let out1 = outcome(&PropertyProfile::uniform(first, game.num_players()), game)?;
    let out2 = outcome(&PropertyProfile::uniform(second, game.num_players()), game)?;
    let outcome_inclusion = out1.outcome.is_subset_unchecked(&out2.outcome);
    let passed = chain.iter().all(|l| l.holds) && mono.is_none() && contracting && outcome_inclusion;
    Ok(TheoremReport {
        theorem: theorem.to_string(),
        game: game.name().to_string(),
        restrictions_checked: tables[first_k].1.len() as u64,
        chain,
        first,
        second,
        first_monotone: mono.is_none(),
        first_monotonicity_violation: mono.map(|(a, b)| {
            RestrictionPair {
                smaller: NamedRestriction::new(game, &Restriction::from_lattice_index(game, a)),
                larger: NamedRestriction::new(game, &Restriction::from_lattice_index(game, b)),
            }
        }),
        second_contracting: contracting,
        first_outcome: NamedRestriction::new(game, &out1.outcome),
        first_closure_ordinal: out1.closure_ordinal,
        second_outcome: NamedRestriction::new(game, &out2.outcome),
        second_closure_ordinal: out2.closure_ordinal,
        outcome_inclusion,
        passed,
    })
}

/// Rationalizability with pure beliefs refines local pure elimination:
/// `T_{br:g:pure}(G) ⊆ T_{sd:g}(G) ⊆ T_{sd:l}(G)` on every `G`, `T_{br:g:pure}`
/// monotonic, hence `T^∞_{br:g:pure} ⊆ T^∞_{sd:l}`.
pub fn verify_theorem_just(game: &Game, limits: &Limits) -> Result<TheoremReport> {
    theorem_report(
        "just",
        game,
        limits,
        &[
            (PropertySpec::BR_G_PURE, Relation::Subset, PropertySpec::SD_G),
            (PropertySpec::SD_G, Relation::Subset, PropertySpec::SD_L),
        ],
        PropertySpec::BR_G_PURE,
        PropertySpec::SD_L,
    )
}

/// The correlated-belief analogue for mixed dominance:
/// `T_{br:g:corr}(G) ⊆ T_{br:l:corr}(G) = T_{msd:l}(G)` on every `G`, hence
/// `T^∞_{br:g:corr} ⊆ T^∞_{msd:l}`.
pub fn verify_theorem_just1(game: &Game, limits: &Limits) -> Result<TheoremReport> {
    theorem_report(
        "just1",
        game,
        limits,
        &[
            (PropertySpec::BR_G_CORR, Relation::Subset, PropertySpec::BR_L_CORR),
            (PropertySpec::BR_L_CORR, Relation::Equal, PropertySpec::MSD_L),
        ],
        PropertySpec::BR_G_CORR,
        PropertySpec::MSD_L,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PearceSummary {
    pub game: String,
    pub restrictions_checked: u64,
    pub mismatch_count: u64,
    /// The first mismatching restrictions (at most [`MAX_LISTED`]).
    pub mismatches: Vec<PearceReport>,
    pub passed: bool,
}

/// Runs [`pearce_equivalence_check`] on each given restriction.
pub fn pearce_over(game: &Game, restrictions: &[Restriction]) -> Result<PearceSummary> {
    let reports = restrictions
        .par_iter()
        .map(|g| pearce_equivalence_check(game, g))
        .collect::<Result<Vec<_>>>()?;
    let failing: Vec<PearceReport> = reports.into_iter().filter(|r| !r.passed).collect();
    Ok(PearceSummary {
        game: game.name().to_string(),
        restrictions_checked: restrictions.len() as u64,
        mismatch_count: failing.len() as u64,
        passed: failing.is_empty(),
        mismatches: failing.into_iter().take(MAX_LISTED).collect(),
    })
}

/// [`pearce_over`] on every restriction of the game.
pub fn pearce_over_lattice(game: &Game, limits: &Limits) -> Result<PearceSummary> {
    check_lattice_budget(game, limits.lattice)?;
    let all: Vec<Restriction> = (0..1u64 << game.total_strategies())
        .map(|i| Restriction::from_lattice_index(game, i))
        .collect();
    pearce_over(game, &all)
}
