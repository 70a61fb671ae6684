//! Operators on the restriction lattice, their iteration from `⊤`, and the
//! fixpoint verifiers built on full lattice enumeration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::limits::Limits;
use crate::ordinal::Ordinal;
use crate::restriction::{
    check_lattice_budget, sub_indices, NamedRestriction, Restriction,
};

/// A total function on the restrictions of one game.
pub trait Operator: Sync {
    fn apply(&self, g: &Restriction) -> Result<Restriction>;
}

impl<F> Operator for F
where
    F: Fn(&Restriction) -> Result<Restriction> + Sync,
{
    fn apply(&self, g: &Restriction) -> Result<Restriction> {
        self(g)
    }
}

/// `T(G) = G`.
pub struct Identity;

impl Operator for Identity {
    fn apply(&self, g: &Restriction) -> Result<Restriction> {
        Ok(g.clone())
    }
}

/// `T(G) = c` for a fixed restriction `c`.
pub struct Constant(pub Restriction);

impl Operator for Constant {
    fn apply(&self, _: &Restriction) -> Result<Restriction> {
        Ok(self.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<R> {
    pub ordinal: Ordinal,
    pub restriction: R,
}

/// `T^0 = ⊤, T^1, ...` up to the closure ordinal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace<R> {
    pub steps: Vec<TraceStep<R>>,
    pub closure_ordinal: Ordinal,
    pub outcome: R,
}

impl IterationTrace<Restriction> {
    pub fn to_json(&self, game: &Game) -> TraceJson {
        TraceJson {
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    ordinal: s.ordinal,
                    restriction: NamedRestriction::new(game, &s.restriction),
                })
                .collect(),
            closure_ordinal: self.closure_ordinal,
            outcome: NamedRestriction::new(game, &self.outcome),
        }
    }
}

/// Serialized trace: `{steps:[{ordinal, restriction}], closure_ordinal, outcome}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub steps: Vec<StepJson>,
    pub closure_ordinal: Ordinal,
    pub outcome: NamedRestriction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub ordinal: Ordinal,
    pub restriction: NamedRestriction,
}

/// Iterates `op` from `⊤` until `T^{k+1} = T^k`.
///
/// On a finite lattice every contracting operator stabilizes after at most
/// `Σ|T_i|` strict decreases, so no limit stage is ever reached. The budget
/// guards against operators that cycle.
pub fn iterate_operator(op: &dyn Operator, game: &Game, budget: usize) -> Result<IterationTrace<Restriction>> {
    let mut cur = Restriction::top(game);
    let mut steps = vec![TraceStep { ordinal: Ordinal::ZERO, restriction: cur.clone() }];
    for k in 0usize.. {
        let next = op.apply(&cur)?;
        if !next.same_shape(&cur) {
            return Err(Error::Shape("operator changed the restriction shape".into()));
        }
        if next == cur {
            return Ok(IterationTrace {
                steps,
                closure_ordinal: Ordinal::finite(k as u64),
                outcome: cur,
            });
        }
        if k + 1 > budget {
            return Err(Error::Budget {
                what: "operator iteration steps",
                attempted: (k + 1) as u128,
                limit: budget as u128,
            });
        }
        steps.push(TraceStep { ordinal: Ordinal::finite(k as u64 + 1), restriction: next.clone() });
        cur = next;
    }
    unreachable!()
}

pub fn is_fixpoint(op: &dyn Operator, g: &Restriction) -> Result<bool> {
    Ok(op.apply(g)? == *g)
}

pub fn is_post_fixpoint(op: &dyn Operator, g: &Restriction) -> Result<bool> {
    g.leq(&op.apply(g)?)
}

/// `T(G)` for every restriction `G`, indexed by lattice index.
pub fn image_table(op: &dyn Operator, game: &Game, limits: &Limits) -> Result<Vec<u64>> {
    check_lattice_budget(game, limits.lattice)?;
    let size = 1u64 << game.total_strategies();
    (0..size)
        .into_par_iter()
        .map(|idx| {
            let g = Restriction::from_lattice_index(game, idx);
            let img = op.apply(&g)?;
            if !img.same_shape(&g) {
                return Err(Error::Shape("operator changed the restriction shape".into()));
            }
            Ok(img.lattice_index())
        })
        .collect()
}

/// First pair `G1 ⊆ G2` with `T(G1) ⊄ T(G2)`, in lattice order.
pub fn monotonicity_violation(images: &[u64]) -> Option<(u64, u64)> {
    (0..images.len() as u64).into_par_iter().find_map_first(|big| {
        let img_big = images[big as usize];
        sub_indices(big)
            .find(|&small| images[small as usize] & !img_big != 0)
            .map(|small| (small, big))
    })
}

pub fn contraction_violation(images: &[u64]) -> Option<u64> {
    (0..images.len() as u64).find(|&idx| images[idx as usize] & !idx != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Counterexample,
    PreconditionViolation,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Counterexample => "counterexample",
            Verdict::PreconditionViolation => "precondition-violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionPair {
    pub smaller: NamedRestriction,
    pub larger: NamedRestriction,
}

impl RestrictionPair {
    fn new(game: &Game, small: u64, big: u64) -> Self {
        Self {
            smaller: NamedRestriction::new(game, &Restriction::from_lattice_index(game, small)),
            larger: NamedRestriction::new(game, &Restriction::from_lattice_index(game, big)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TarskiReport {
    pub game: String,
    pub restrictions_checked: u64,
    pub monotone: bool,
    pub monotonicity_violation: Option<RestrictionPair>,
    pub outcome: Option<NamedRestriction>,
    pub closure_ordinal: Option<Ordinal>,
    pub largest_fixpoint: Option<NamedRestriction>,
    pub post_fixpoint_join: Option<NamedRestriction>,
    pub fixpoints: u64,
    pub post_fixpoints: u64,
    pub verdict: Verdict,
}

/// Checks `T^∞ = νT = ⋃{G | G ⊆ T(G)}` by enumerating the whole lattice.
/// A non-monotonic operator yields a precondition-violation report.
pub fn verify_tarski(op: &dyn Operator, game: &Game, limits: &Limits) -> Result<TarskiReport> {
    let images = image_table(op, game, limits)?;
    let mut report = TarskiReport {
        game: game.name().to_string(),
        restrictions_checked: images.len() as u64,
        monotone: true,
        monotonicity_violation: None,
        outcome: None,
        closure_ordinal: None,
        largest_fixpoint: None,
        post_fixpoint_join: None,
        fixpoints: 0,
        post_fixpoints: 0,
        verdict: Verdict::Pass,
    };
    if let Some((small, big)) = monotonicity_violation(&images) {
        report.monotone = false;
        report.monotonicity_violation = Some(RestrictionPair::new(game, small, big));
        report.verdict = Verdict::PreconditionViolation;
        return Ok(report);
    }

    // Iterate through the table so the trace matches the operator exactly.
    let mut cur = images.len() as u64 - 1;
    let mut k = 0;
    while images[cur as usize] != cur {
        cur = images[cur as usize];
        k += 1;
        if k > images.len() {
            return Err(Error::Budget {
                what: "operator iteration steps",
                attempted: k as u128,
                limit: images.len() as u128,
            });
        }
    }
    let outcome = cur;

    let mut fix_join = 0u64;
    let mut post_join = 0u64;
    for (idx, &img) in images.iter().enumerate() {
        let idx = idx as u64;
        if img == idx {
            report.fixpoints += 1;
            fix_join |= idx;
        }
        if idx & !img == 0 {
            report.post_fixpoints += 1;
            post_join |= idx;
        }
    }
    let named = |idx| NamedRestriction::new(game, &Restriction::from_lattice_index(game, idx));
    report.outcome = Some(named(outcome));
    report.closure_ordinal = Some(Ordinal::finite(k as u64));
    // The join of all fixpoints is the largest fixpoint only if it is one.
    if images[fix_join as usize] == fix_join {
        report.largest_fixpoint = Some(named(fix_join));
    }
    report.post_fixpoint_join = Some(named(post_join));
    let ok = images[fix_join as usize] == fix_join && outcome == fix_join && fix_join == post_join;
    report.verdict = if ok { Verdict::Pass } else { Verdict::Counterexample };
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractingReport {
    pub game: String,
    /// Whether `T(G) ⊆ G` on the whole lattice; `None` when it is too large to enumerate.
    pub contracting_on_lattice: Option<bool>,
    /// First iterate `G` with `T(G) ⊄ G`.
    pub contraction_violation: Option<NamedRestriction>,
    pub outcome: Option<NamedRestriction>,
    pub closure_ordinal: Option<Ordinal>,
    pub ordinal_bound: u64,
    pub outcome_is_fixpoint: bool,
    pub verdict: Verdict,
}

/// Checks that iterating `op` from `⊤` descends strictly and reaches a
/// fixpoint within `Σ|T_i|` steps. Contraction is required along the
/// iteration; whether it also holds on the whole lattice is reported
/// separately.
pub fn verify_contracting_outcome(
    op: &dyn Operator,
    game: &Game,
    limits: &Limits,
) -> Result<ContractingReport> {
    let bound = game.total_strategies() as u64;
    let contracting_on_lattice = match image_table(op, game, limits) {
        Ok(images) => Some(contraction_violation(&images).is_none()),
        Err(Error::Budget { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut report = ContractingReport {
        game: game.name().to_string(),
        contracting_on_lattice,
        contraction_violation: None,
        outcome: None,
        closure_ordinal: None,
        ordinal_bound: bound,
        outcome_is_fixpoint: false,
        verdict: Verdict::Pass,
    };
    let mut cur = Restriction::top(game);
    let mut k = 0u64;
    loop {
        let next = op.apply(&cur)?;
        if !next.leq(&cur)? {
            report.contraction_violation = Some(NamedRestriction::new(game, &cur));
            report.verdict = Verdict::PreconditionViolation;
            return Ok(report);
        }
        if next == cur {
            break;
        }
        cur = next;
        k += 1;
        if k > bound {
            break;
        }
    }
    report.outcome_is_fixpoint = is_fixpoint(op, &cur)?;
    report.outcome = Some(NamedRestriction::new(game, &cur));
    report.closure_ordinal = Some(Ordinal::finite(k));
    let ok = report.outcome_is_fixpoint && k <= bound;
    report.verdict = if ok { Verdict::Pass } else { Verdict::Counterexample };
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub game: String,
    pub pointwise_inclusion: bool,
    pub pointwise_violation: Option<NamedRestriction>,
    pub first_monotone: bool,
    pub monotonicity_violation: Option<RestrictionPair>,
    pub second_contracting: bool,
    pub contraction_violation: Option<NamedRestriction>,
    pub first_outcome: NamedRestriction,
    pub second_outcome: NamedRestriction,
    pub outcome_inclusion: bool,
    pub verdict: Verdict,
}

impl InclusionReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.pointwise_inclusion && self.first_monotone && self.second_contracting
    }
}

/// If `T1(G) ⊆ T2(G)` for all `G`, `T1` is monotonic and `T2` contracting,
/// then `T1^∞ ⊆ T2^∞`. Checks each hypothesis on the full lattice and the
/// conclusion on the computed outcomes.
pub fn verify_inclusion_lemma(
    first: &dyn Operator,
    second: &dyn Operator,
    game: &Game,
    limits: &Limits,
) -> Result<InclusionReport> {
    let img1 = image_table(first, game, limits)?;
    let img2 = image_table(second, game, limits)?;
    let named = |idx| NamedRestriction::new(game, &Restriction::from_lattice_index(game, idx));
    let pointwise = (0..img1.len()).find(|&i| img1[i] & !img2[i] != 0);
    let mono = monotonicity_violation(&img1);
    let contr = contraction_violation(&img2);
    let budget = limits.iteration_budget(game);
    let out1 = iterate_operator(first, game, budget)?.outcome;
    let out2 = iterate_operator(second, game, budget)?.outcome;
    let outcome_inclusion = out1.is_subset_unchecked(&out2);
    let mut report = InclusionReport {
        game: game.name().to_string(),
        pointwise_inclusion: pointwise.is_none(),
        pointwise_violation: pointwise.map(|i| named(i as u64)),
        first_monotone: mono.is_none(),
        monotonicity_violation: mono.map(|(a, b)| RestrictionPair::new(game, a, b)),
        second_contracting: contr.is_none(),
        contraction_violation: contr.map(named),
        first_outcome: NamedRestriction::new(game, &out1),
        second_outcome: NamedRestriction::new(game, &out2),
        outcome_inclusion,
        verdict: Verdict::Pass,
    };
    report.verdict = if !report.hypotheses_hold() {
        Verdict::PreconditionViolation
    } else if !outcome_inclusion {
        Verdict::Counterexample
    } else {
        Verdict::Pass
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_stops_at_zero() {
        for game in fixtures::standard() {
            let trace = iterate_operator(&Identity, &game, 100).unwrap();
            assert_eq!(trace.closure_ordinal, Ordinal::ZERO);
            assert_eq!(trace.outcome, Restriction::top(&game));
            assert_eq!(trace.steps.len(), 1);
        }
    }

    #[test]
    fn cycling_operator_hits_budget() {
        let game = fixtures::prisoners_dilemma();
        let top = Restriction::top(&game);
        let bottom = Restriction::bottom(&game);
        let flip = move |g: &Restriction| -> Result<Restriction> {
            Ok(if *g == top { bottom.clone() } else { top.clone() })
        };
        assert!(matches!(iterate_operator(&flip, &game, 40), Err(Error::Budget { .. })));
    }

    #[test]
    fn constant_top_outcome_is_top() {
        let game = fixtures::elimination_chain();
        let op = Constant(Restriction::top(&game));
        let report = verify_contracting_outcome(&op, &game, &Limits::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.closure_ordinal, Some(Ordinal::ZERO));
        // ⊤ is a fixpoint, but the operator is not contracting below it.
        assert_eq!(report.contracting_on_lattice, Some(false));
    }

    #[test]
    fn expanding_operator_flagged() {
        let game = fixtures::prisoners_dilemma();
        let dd = Restriction::from_names(&game, &[vec!["D"], vec!["D"]]).unwrap();
        let top = Restriction::top(&game);
        let op = move |g: &Restriction| -> Result<Restriction> {
            Ok(if *g == top { dd.clone() } else { top.clone() })
        };
        let report = verify_contracting_outcome(&op, &game, &Limits::default()).unwrap();
        assert_eq!(report.verdict, Verdict::PreconditionViolation);
        assert_eq!(report.contraction_violation.unwrap().0, vec![vec!["D"], vec!["D"]]);
    }

    #[test]
    fn identity_inclusion_trivial() {
        let game = fixtures::matching_pennies();
        let r = verify_inclusion_lemma(&Identity, &Identity, &game, &Limits::default()).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn lattice_budget_enforced() {
        let game = fixtures::elimination_chain();
        let limits = Limits { lattice: 10, ..Limits::default() };
        assert!(matches!(verify_tarski(&Identity, &game, &limits), Err(Error::Budget { .. })));
    }
}
