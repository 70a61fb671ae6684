//! Exhaustive enumeration of epistemic models over a fixed Ω.
//!
//! Every strategy assignment is combined with every tuple of correspondences
//! of the requested class. Knowledge correspondences are the partitions of Ω.
//! A belief correspondence is given by disjoint nonempty target cells: states
//! inside a target cell map to it, every other state maps to any target cell.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{named, Event};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::iteration::Verdict;
use crate::limits::Limits;
use crate::property::{outcome, PropertyProfile};
use crate::restriction::{NamedRestriction, Restriction};
use crate::verify::{profile_satisfies_singleton, table_is_monotone, PropertyTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Knowledge,
    Belief,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::OperatorOutcome => "operator outcome",
            Comparison::FullGame => "full game",
            Comparison::None => "none",
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Knowledge => "knowledge",
            Mode::Belief => "belief",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knowledge" => Ok(Mode::Knowledge),
            "belief" => Ok(Mode::Belief),
            _ => Err(Error::Argument(format!("unknown mode `{s}` (expected knowledge or belief)"))),
        }
    }
}

/// All set partitions of `states`, blocks in order of their least element.
pub fn set_partitions(states: &[usize]) -> Vec<Vec<Event>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Event> = Vec::new();
    fn go(states: &[usize], k: usize, blocks: &mut Vec<Event>, out: &mut Vec<Vec<Event>>) {
        if k == states.len() {
            out.push(blocks.clone());
            return;
        }
        let w = states[k];
        for b in 0..blocks.len() {
            let saved = blocks[b];
            blocks[b] = saved.union(Event::singleton(w));
            go(states, k + 1, blocks, out);
            blocks[b] = saved;
        }
        blocks.push(Event::singleton(w));
        go(states, k + 1, blocks, out);
        blocks.pop();
    }
    go(states, 0, &mut blocks, &mut out);
    out
}

/// Cell vectors `P(ω)` of every correspondence of the class on `size` states.
pub fn correspondences(size: usize, mode: Mode) -> Vec<Vec<Event>> {
    let all: Vec<usize> = (0..size).collect();
    match mode {
        Mode::Knowledge => set_partitions(&all)
            .into_iter()
            .map(|blocks| all.iter().map(|&w| *blocks.iter().find(|b| b.contains(w)).unwrap()).collect())
            .collect(),
        Mode::Belief => {
            let mut out = Vec::new();
            for u in 1..(1u64 << size) {
                let inside: Vec<usize> = Event(u).iter().collect();
                let outside: Vec<usize> = all.iter().copied().filter(|&w| !Event(u).contains(w)).collect();
                for blocks in set_partitions(&inside) {
                    let k = blocks.len();
                    let mut base = vec![Event::EMPTY; size];
                    for b in &blocks {
                        for w in b.iter() {
                            base[w] = *b;
                        }
                    }
                    let combos = k.pow(outside.len() as u32);
                    for mut code in 0..combos {
                        let mut cells = base.clone();
                        for &w in &outside {
                            cells[w] = blocks[code % k];
                            code /= k;
                        }
                        out.push(cells);
                    }
                }
            }
            out
        }
    }
}

fn stirling2(n: usize) -> Vec<Vec<u128>> {
    let mut s = vec![vec![0u128; n + 1]; n + 1];
    s[0][0] = 1;
    for a in 1..=n {
        for k in 1..=a {
            s[a][k] = s[a - 1][k - 1].saturating_add((k as u128).saturating_mul(s[a - 1][k]));
        }
    }
    s
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, j| acc.saturating_mul((n - j) as u128) / (j as u128 + 1))
}

/// Number of correspondences of the class on `size` states, saturating at `u128::MAX`.
pub fn count_correspondences(size: usize, mode: Mode) -> u128 {
    let s = stirling2(size);
    match mode {
        Mode::Knowledge => s[size].iter().fold(0u128, |a, &b| a.saturating_add(b)),
        Mode::Belief => {
            let mut total = 0u128;
            for u in 1..=size {
                let mut inner = 0u128;
                for k in 1..=u {
                    let spread = (k as u128).checked_pow((size - u) as u32).unwrap_or(u128::MAX);
                    inner = inner.saturating_add(s[u][k].saturating_mul(spread));
                }
                total = total.saturating_add(binomial(size, u).saturating_mul(inner));
            }
            total
        }
    }
}

/// `Π_i |T_i|^m · C^n` where `C` counts correspondences.
pub fn count_models(game: &Game, omega_size: usize, mode: Mode) -> u128 {
    let mut total = 1u128;
    for i in 0..game.num_players() {
        let per = (game.num_strategies(i) as u128).checked_pow(omega_size as u32).unwrap_or(u128::MAX);
        total = total.saturating_mul(per);
    }
    let c = count_correspondences(omega_size, mode);
    for _ in 0..game.num_players() {
        total = total.saturating_mul(c);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub mode: Mode,
    pub omega_size: usize,
    pub models_enumerated: u64,
    /// Models in which the CK (resp. CB) set is nonempty.
    pub models_with_states: u64,
    /// `G` of the union of CK (resp. CB) sets over all models.
    pub restriction: Restriction,
}

fn largest_evident(mut cur: u64, cells: &[&[Event]]) -> u64 {
    loop {
        let mut next = cur;
        let mut rest = cur;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if cells.iter().any(|p| p[w].0 & !cur != 0) {
                next &= !(1 << w);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Union over all models of the CK states (knowledge) or the CB states (belief),
/// as a restriction.
pub fn enumerate_ck_cb(
    game: &Game,
    omega_size: usize,
    profile: &PropertyProfile,
    mode: Mode,
    limits: &Limits,
) -> Result<EnumerationResult> {
    profile.check(game)?;
    let needed = (0..game.num_players()).map(|i| game.num_strategies(i)).max().unwrap_or(0);
    if omega_size < needed {
        return Err(Error::Precondition(format!(
            "|Ω| = {omega_size} is smaller than the largest strategy set ({needed})"
        )));
    }
    let attempted = count_models(game, omega_size, mode);
    if attempted > limits.models {
        return Err(Error::Budget { what: "epistemic models", attempted, limit: limits.models });
    }
    let table = PropertyTable::build(profile, game, limits)?;
    Ok(enumerate_with_table(game, omega_size, mode, &table))
}

fn enumerate_with_table(game: &Game, m: usize, mode: Mode, table: &PropertyTable) -> EnumerationResult {
    let n = game.num_players();
    let sizes: Vec<usize> = (0..n).map(|i| game.num_strategies(i)).collect();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| {
        let o = *acc;
        *acc += s;
        Some(o)
    })
    .collect();
    let corrs = correspondences(m, mode);
    let c = corrs.len();
    let assignments: u64 = sizes.iter().map(|&s| (s as u64).pow(m as u32)).product();

    let (acc, with_states) = (0..assignments)
        .into_par_iter()
        .map(|mut a| {
            let mut st = vec![vec![0usize; m]; n];
            for i in 0..n {
                for w in 0..m {
                    st[i][w] = (a % sizes[i] as u64) as usize;
                    a /= sizes[i] as u64;
                }
            }
            let stbit: Vec<u64> =
                (0..m).map(|w| (0..n).fold(0u64, |b, i| b | 1 << (offsets[i] + st[i][w]))).collect();
            let mut evidx = vec![0u64; 1 << m];
            for e in 1..(1usize << m) {
                evidx[e] = evidx[e & (e - 1)] | stbit[e.trailing_zeros() as usize];
            }
            let rat: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    corrs
                        .iter()
                        .map(|cells| {
                            (0..m).fold(0u64, |r, w| {
                                let mask = table.mask(evidx[cells[w].0 as usize]);
                                if mask >> (offsets[i] + st[i][w]) & 1 == 1 {
                                    r | 1 << w
                                } else {
                                    r
                                }
                            })
                        })
                        .collect()
                })
                .collect();
            let mut acc = 0u64;
            let mut with_states = 0u64;
            let mut idx = vec![0usize; n];
            loop {
                let r = (0..n).fold(Event::full(m).0, |r, i| r & rat[i][idx[i]]);
                let cells: Vec<&[Event]> = (0..n).map(|i| corrs[idx[i]].as_slice()).collect();
                let states = match mode {
                    Mode::Knowledge => largest_evident(r, &cells),
                    Mode::Belief => {
                        let be = (0..m).fold(0u64, |b, w| {
                            if cells.iter().all(|p| p[w].0 & !r == 0) {
                                b | 1 << w
                            } else {
                                b
                            }
                        });
                        r & largest_evident(be, &cells)
                    }
                };
                if states != 0 {
                    with_states += 1;
                    acc |= evidx[states as usize];
                }
                let mut k = 0;
                loop {
                    if k == n {
                        return (acc, with_states);
                    }
                    idx[k] += 1;
                    if idx[k] < c {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        })
        .reduce(|| (0, 0), |x, y| (x.0 | y.0, x.1 + y.1));

    EnumerationResult {
        mode,
        omega_size: m,
        models_enumerated: assignments * (c as u64).pow(n as u32),
        models_with_states: with_states,
        restriction: Restriction::from_lattice_index(game, acc),
    }
}

/// What the enumerated restrictions are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// Every `φ_i` is monotonic: compare with `T^∞`.
    OperatorOutcome,
    /// Every `φ_i` holds on singleton restrictions: compare with the full game.
    FullGame,
    /// Neither hypothesis holds.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCounts {
    pub knowledge: u64,
    pub belief: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpistemicReport {
    pub game: String,
    pub profile: PropertyProfile,
    pub omega_size: usize,
    pub models_enumerated: ModelCounts,
    pub ck_restriction: NamedRestriction,
    pub cb_restriction: NamedRestriction,
    pub operator_outcome: NamedRestriction,
    pub comparison: Comparison,
    pub expected: Option<NamedRestriction>,
    pub verdict: Verdict,
}

/// Runs both modes and compares them with the outcome or the full game.
pub fn epistemic_report(
    game: &Game,
    omega_size: usize,
    profile: &PropertyProfile,
    limits: &Limits,
) -> Result<EpistemicReport> {
    let ck = enumerate_ck_cb(game, omega_size, profile, Mode::Knowledge, limits)?;
    let cb = enumerate_ck_cb(game, omega_size, profile, Mode::Belief, limits)?;
    let out = outcome(profile, game)?.outcome;
    let table = PropertyTable::build(profile, game, limits)?;
    let (comparison, expected) = if table_is_monotone(&table) {
        (Comparison::OperatorOutcome, Some(out.clone()))
    } else if profile_satisfies_singleton(profile, game)? {
        (Comparison::FullGame, Some(Restriction::top(game)))
    } else {
        (Comparison::None, None)
    };
    let verdict = match &expected {
        None => Verdict::PreconditionViolation,
        Some(e) if ck.restriction == *e && cb.restriction == *e => Verdict::Pass,
        Some(_) => Verdict::Counterexample,
    };
    Ok(EpistemicReport {
        game: game.name().to_string(),
        profile: profile.clone(),
        omega_size,
        models_enumerated: ModelCounts { knowledge: ck.models_enumerated, belief: cb.models_enumerated },
        ck_restriction: named(game, &ck.restriction),
        cb_restriction: named(game, &cb.restriction),
        operator_outcome: named(game, &out),
        comparison,
        expected: expected.map(|e| named(game, &e)),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epistemic::{EpistemicModel, PossibilityCorrespondence, StateSpace, StrategyAssignment};
    use crate::fixtures;
    use crate::property::PropertySpec;

    /// Brute force over every map Ω → P(Ω), classified literally.
    fn brute_count(m: usize, mode: Mode) -> usize {
        let space = StateSpace::with_size(m).unwrap();
        let subsets = 1usize << m;
        let total = subsets.pow(m as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let cells = (0..m)
                    .map(|_| {
                        let e = Event((c % subsets) as u64);
                        c /= subsets;
                        e
                    })
                    .collect();
                let p = PossibilityCorrespondence::new(&space, cells).unwrap();
                let cl = p.classify();
                match mode {
                    Mode::Knowledge => cl.is_knowledge(),
                    Mode::Belief => cl.is_belief(),
                }
            })
            .count()
    }

    #[test]
    fn correspondence_counts_match_brute_force() {
        for m in 1..=4 {
            for mode in [Mode::Knowledge, Mode::Belief] {
                let listed = correspondences(m, mode);
                assert_eq!(listed.len(), brute_count(m, mode), "m={m} {mode}");
                assert_eq!(listed.len() as u128, count_correspondences(m, mode));
                let space = StateSpace::with_size(m).unwrap();
                for cells in &listed {
                    let cl = PossibilityCorrespondence::new(&space, cells.clone()).unwrap().classify();
                    assert!(cl.is_belief());
                    if mode == Mode::Knowledge {
                        assert!(cl.is_knowledge());
                    }
                }
                let mut dedup = listed.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), listed.len());
            }
        }
        assert_eq!(count_correspondences(4, Mode::Knowledge), 15);
        assert_eq!(count_correspondences(4, Mode::Belief), 89);
    }

    /// Slow path through the model API, also checking the two forms of K*.
    fn slow(game: &Game, m: usize, profile: &PropertyProfile, mode: Mode) -> Restriction {
        let space = StateSpace::with_size(m).unwrap();
        let corrs = correspondences(m, mode);
        let n = game.num_players();
        let sizes: Vec<usize> = (0..n).map(|i| game.num_strategies(i)).collect();
        let assignments: usize = sizes.iter().map(|&s| s.pow(m as u32)).product();
        let mut acc = Restriction::bottom(game);
        for mut a in 0..assignments {
            let mut choices = vec![vec![0; m]; n];
            for i in 0..n {
                for w in 0..m {
                    choices[i][w] = a % sizes[i];
                    a /= sizes[i];
                }
            }
            let assignment = StrategyAssignment::new(game, &space, choices).unwrap();
            for c1 in &corrs {
                for c2 in &corrs {
                    let ps = vec![
                        PossibilityCorrespondence::new(&space, c1.clone()).unwrap(),
                        PossibilityCorrespondence::new(&space, c2.clone()).unwrap(),
                    ];
                    let model = EpistemicModel::new(game, space.clone(), assignment.clone(), ps).unwrap();
                    let states = match mode {
                        Mode::Knowledge => {
                            let rat = model.rational_states(game, profile).unwrap();
                            let a = model.common_knowledge_event(rat).unwrap();
                            assert_eq!(a, model.common_knowledge_event_via_k(rat).unwrap());
                            a
                        }
                        Mode::Belief => model.cb_states(game, profile).unwrap(),
                    };
                    acc = Restriction::join(&[acc, model.event_restriction(game, states)]).unwrap();
                }
            }
        }
        acc
    }

    #[test]
    fn fast_path_matches_model_api() {
        let limits = Limits::default();
        for game in [fixtures::prisoners_dilemma(), fixtures::matching_pennies(), fixtures::shrink()] {
            for spec in [PropertySpec::SD_G, PropertySpec::SD_L, PropertySpec::BR_G_PURE] {
                let profile = PropertyProfile::uniform(spec, 2);
                for mode in [Mode::Knowledge, Mode::Belief] {
                    let fast = enumerate_ck_cb(&game, 2, &profile, mode, &limits).unwrap();
                    assert_eq!(fast.restriction, slow(&game, 2, &profile, mode), "{} {spec} {mode}", game.name());
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let limits = Limits::default();
        let pd = fixtures::prisoners_dilemma();
        let sdg = PropertyProfile::uniform(PropertySpec::SD_G, 2);
        let r = enumerate_ck_cb(&pd, 4, &sdg, Mode::Knowledge, &limits).unwrap();
        assert_eq!(r.restriction.display(&pd), "({D},{D})");
        assert_eq!(r.models_enumerated, 256 * 15 * 15);
        let sdl = PropertyProfile::uniform(PropertySpec::SD_L, 2);
        let r = enumerate_ck_cb(&pd, 4, &sdl, Mode::Knowledge, &limits).unwrap();
        assert_eq!(r.restriction, Restriction::top(&pd));
        let mp = fixtures::matching_pennies();
        let br = PropertyProfile::uniform(PropertySpec::BR_G_PURE, 2);
        let r = enumerate_ck_cb(&mp, 4, &br, Mode::Belief, &limits).unwrap();
        assert_eq!(r.restriction, Restriction::top(&mp));
        assert_eq!(r.models_enumerated, 256 * 89 * 89);
    }

    #[test]
    fn preconditions_and_budget() {
        let pd = fixtures::prisoners_dilemma();
        let p = PropertyProfile::uniform(PropertySpec::SD_G, 2);
        let limits = Limits::default();
        assert!(matches!(
            enumerate_ck_cb(&pd, 1, &p, Mode::Knowledge, &limits),
            Err(Error::Precondition(_))
        ));
        let tight = Limits { models: 1000, ..Limits::default() };
        match enumerate_ck_cb(&pd, 4, &p, Mode::Belief, &tight) {
            Err(Error::Budget { attempted, .. }) => assert_eq!(attempted, 256 * 89 * 89),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn report_compares_with_the_right_target() {
        let limits = Limits::default();
        let pd = fixtures::prisoners_dilemma();
        let r = epistemic_report(&pd, 4, &PropertyProfile::uniform(PropertySpec::SD_G, 2), &limits).unwrap();
        assert_eq!(r.comparison, Comparison::OperatorOutcome);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = epistemic_report(&pd, 4, &PropertyProfile::uniform(PropertySpec::SD_L, 2), &limits).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(matches!(r.comparison, Comparison::FullGame | Comparison::OperatorOutcome));
    }
}
