//! Ordinal-indexed iteration for games with infinite strategy sets.
//!
//! A [`SymbolicGame`] supplies its elimination step in closed form, together
//! with a rule for the meet of an ω-chain of iterates.

pub mod set;
pub mod witnesses;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::rational::{format_rational, Rational};

pub use set::{level, level_start, Bound, Interval, SymbolicSet};
pub use witnesses::{by_name, registry, EmbeddedGame, WITNESS_NAMES};

/// One [`SymbolicSet`] per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymRestriction(pub Vec<SymbolicSet>);

impl SymRestriction {
    pub fn num_players(&self) -> usize {
        self.0.len()
    }

    pub fn component(&self, player: usize) -> &SymbolicSet {
        &self.0[player]
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(b))
    }

    /// Componentwise `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.difference(b)).collect())
    }
}

impl fmt::Display for SymRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub trait SymbolicGame: Sync {
    fn name(&self) -> &str;

    /// The property the step function eliminates by, e.g. `sd:g`.
    fn encodes(&self) -> &str;

    fn description(&self) -> &str;

    fn initial(&self) -> SymRestriction;

    fn step(&self, g: &SymRestriction) -> Result<SymRestriction>;

    /// The meet of the ω-chain of iterates starting at `start`, or `None`
    /// when that chain reaches a fixpoint after finitely many steps.
    fn limit(&self, start: &SymRestriction) -> Option<SymRestriction>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Successor steps taken in each ω-block before jumping to its limit.
    pub horizon: u64,
    /// Largest `a` accepted in a bound `ω·a + b`.
    pub omega_cap: u64,
    /// Total successor steps before giving up.
    pub max_steps: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { horizon: 8, omega_cap: 3, max_steps: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Fixpoint,
    UnresolvedAtBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymStep {
    pub ordinal: Ordinal,
    pub restriction: SymRestriction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTrace {
    pub game: String,
    pub encodes: String,
    pub bound: Ordinal,
    pub status: Status,
    pub closure_ordinal: Option<Ordinal>,
    pub steps: Vec<SymStep>,
}

impl SymTrace {
    pub fn at(&self, ordinal: Ordinal) -> Option<&SymRestriction> {
        self.steps.iter().find(|s| s.ordinal == ordinal).map(|s| &s.restriction)
    }

    pub fn last(&self) -> &SymRestriction {
        &self.steps.last().expect("trace starts at 0").restriction
    }
}

fn first_extra_point(bigger: &SymRestriction, smaller: &SymRestriction) -> Option<(usize, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let diff = bigger.difference(smaller);
    diff.0.iter().enumerate().find_map(|(i, s)| s.probe_points(1, &mut rng).into_iter().next().map(|x| (i, x)))
}

/// Iterates from the initial restriction up to `bound`, applying the step at
/// successors and the limit rule at multiples of ω.
pub fn iterate_symbolic(game: &dyn SymbolicGame, bound: Ordinal, config: &EngineConfig) -> Result<SymTrace> {
    run(game, bound, config, true)
}

pub(crate) fn run(game: &dyn SymbolicGame, bound: Ordinal, config: &EngineConfig, strict: bool) -> Result<SymTrace> {
    if bound.omegas > config.omega_cap {
        return Err(Error::Argument(format!(
            "bound {bound} exceeds the cap of {} multiples of ω",
            config.omega_cap
        )));
    }
    let mut cur = game.initial();
    let mut ordinal = Ordinal::ZERO;
    let mut steps = vec![SymStep { ordinal, restriction: cur.clone() }];
    let mut block_start = cur.clone();
    let mut in_block = 0u64;
    let mut total = 0u64;
    let finish = |steps: Vec<SymStep>, status, closure| SymTrace {
        game: game.name().to_string(),
        encodes: game.encodes().to_string(),
        bound,
        status,
        closure_ordinal: closure,
        steps,
    };
    loop {
        let next = game.step(&cur)?;
        if strict {
            if let Some((player, x)) = first_extra_point(&next, &cur) {
                return Err(Error::Validation(format!(
                    "step at {ordinal} is not contracting: player {} gains {}",
                    player + 1,
                    format_rational(&x)
                )));
            }
        }
        if next == cur {
            return Ok(finish(steps, Status::Fixpoint, Some(ordinal)));
        }
        let succ = ordinal.successor();
        if succ > bound {
            return Ok(finish(steps, Status::UnresolvedAtBound, None));
        }
        total += 1;
        if total > config.max_steps {
            return Err(Error::Budget {
                what: "symbolic successor steps",
                attempted: total as u128,
                limit: config.max_steps as u128,
            });
        }
        steps.push(SymStep { ordinal: succ, restriction: next.clone() });
        cur = next;
        ordinal = succ;
        in_block += 1;
        if in_block < config.horizon {
            continue;
        }
        let lambda = ordinal.next_limit();
        if lambda > bound {
            continue;
        }
        if let Some(lim) = game.limit(&block_start) {
            if strict {
                if let Some((player, x)) = first_extra_point(&lim, &cur) {
                    return Err(Error::Validation(format!(
                        "limit at {lambda} is not below the iterate at {ordinal}: player {} keeps {}",
                        player + 1,
                        format_rational(&x)
                    )));
                }
            }
            steps.push(SymStep { ordinal: lambda, restriction: lim.clone() });
            cur = lim.clone();
            ordinal = lambda;
            block_start = lim;
            in_block = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeFailure {
    pub check: String,
    pub ordinal: Ordinal,
    pub player: usize,
    pub point: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub game: String,
    pub encodes: String,
    pub samples: usize,
    pub steps_checked: usize,
    pub probes_checked: usize,
    pub limit_exercised: bool,
    /// `T^ω ≠ T^{ω+1}`, when a limit stage was reached.
    pub omega_differs: Option<bool>,
    pub status: Status,
    pub closure_ordinal: Option<Ordinal>,
    pub failure_count: usize,
    /// The first failures (at most [`MAX_LISTED_FAILURES`]).
    pub failures: Vec<ProbeFailure>,
    pub passed: bool,
}

pub const MAX_LISTED_FAILURES: usize = 16;

/// Extra successor steps used to test a limit against later iterates.
pub const LIMIT_PROBE_DEPTH: usize = 64;

/// Probe-point validation of the step and limit rules.
///
/// Successor pairs are checked for contraction exactly and on probe points.
/// Each limit is checked against the iterates of its block extended by
/// [`LIMIT_PROBE_DEPTH`] further steps; probe points of the last iterate
/// missing from the limit must disappear within those steps.
pub fn validate_witness(game: &dyn SymbolicGame, samples: usize, seed: u64) -> Result<WitnessReport> {
    let config = EngineConfig::default();
    let bound = Ordinal::new(config.omega_cap, 10_000);
    let trace = run(game, bound, &config, false)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut probes = 0usize;
    let fail = |check: &str, ordinal: Ordinal, player: usize, x: &Rational| ProbeFailure {
        check: check.to_string(),
        ordinal,
        player: player + 1,
        point: format_rational(x),
    };

    let mut block: Vec<&SymRestriction> = vec![&trace.steps[0].restriction];
    for pair in trace.steps.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        if !next.ordinal.is_limit() {
            if !next.restriction.leq(&prev.restriction) {
                if let Some((i, x)) = first_extra_point(&next.restriction, &prev.restriction) {
                    failures.push(fail("contraction", next.ordinal, i, &x));
                }
            }
            for (i, s) in next.restriction.0.iter().enumerate() {
                for x in s.probe_points(samples, &mut rng) {
                    probes += 1;
                    if !prev.restriction.component(i).contains(&x) {
                        failures.push(fail("contraction-probe", next.ordinal, i, &x));
                    }
                }
            }
            block.push(&next.restriction);
            continue;
        }
        let lim = &next.restriction;
        let mut extended: Vec<SymRestriction> = block.iter().map(|r| (*r).clone()).collect();
        for _ in 0..LIMIT_PROBE_DEPTH {
            let after = game.step(extended.last().unwrap())?;
            extended.push(after);
        }
        let lim_probes: Vec<(usize, Rational)> = lim
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.probe_points(samples, &mut rng).into_iter().map(move |x| (i, x)))
            .collect();
        for (i, x) in &lim_probes {
            probes += 1;
            if extended.iter().any(|r| !r.component(*i).contains(x)) {
                failures.push(fail("limit-containment", next.ordinal, *i, x));
            }
        }
        let last = &prev.restriction;
        let deepest = extended.last().unwrap();
        for (i, s) in last.difference(lim).0.iter().enumerate() {
            for x in s.probe_points(samples, &mut rng) {
                probes += 1;
                if deepest.component(i).contains(&x) {
                    failures.push(fail("limit-tightness", next.ordinal, i, &x));
                }
            }
        }
        block = vec![lim];
    }

    let limit_exercised = trace.steps.iter().any(|s| s.ordinal == Ordinal::OMEGA);
    let omega_differs = if limit_exercised {
        let at_omega = trace.at(Ordinal::OMEGA);
        let after = trace.at(Ordinal::OMEGA.successor());
        Some(match (at_omega, after) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
    } else {
        None
    };
    let closure_ok = match (limit_exercised, trace.closure_ordinal) {
        (true, Some(c)) => c > Ordinal::OMEGA,
        (false, Some(_)) => true,
        _ => false,
    };
    let passed = failures.is_empty()
        && trace.status == Status::Fixpoint
        && omega_differs != Some(false)
        && closure_ok;
    Ok(WitnessReport {
        game: game.name().to_string(),
        encodes: game.encodes().to_string(),
        samples,
        steps_checked: trace.steps.len(),
        probes_checked: probes,
        limit_exercised,
        omega_differs,
        status: trace.status,
        closure_ordinal: trace.closure_ordinal,
        failure_count: failures.len(),
        failures: failures.into_iter().take(MAX_LISTED_FAILURES).collect(),
        passed,
    })
}
