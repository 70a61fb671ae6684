//! The `gamefix` command line.
//!
//! Exit codes: 0 when every check passes, 1 on a counterexample, a failed
//! precondition or an unresolved bound, 2 on input and budget errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::epistemic::enumerate::{enumerate_ck_cb, epistemic_report, Mode};
use crate::epistemic::{witness_model_thm1, witness_model_thm2};
use crate::error::{Error, Result};
use crate::format::{parse_game, write_game};
use crate::game::{Game, JointStrategy};
use crate::iteration::{verify_contracting_outcome, verify_inclusion_lemma, verify_tarski, TraceJson, Verdict};
use crate::limits::Limits;
use crate::ordinal::Ordinal;
use crate::property::{outcome, PropertyProfile, PropertySpec, ProfileOperator};
use crate::random::{random_game, rng};
use crate::restriction::NamedRestriction;
use crate::transfinite::{self, iterate_symbolic, validate_witness, EngineConfig, Status};
use crate::verify::{
    check_property_monotone, check_singleton_condition, pearce_over_lattice, verify_theorem_just,
    verify_theorem_just1,
};

#[derive(Debug, Parser)]
#[command(name = "gamefix", version, about = "Iterated elimination of strategies as operator fixpoints")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest restriction lattice to enumerate (overrides GAMEFIX_LATTICE_BUDGET).
    #[arg(long, global = true, value_name = "N")]
    pub lattice_budget: Option<u64>,
    /// Largest number of epistemic models to enumerate (overrides GAMEFIX_MODEL_BUDGET).
    #[arg(long, global = true, value_name = "N")]
    pub model_budget: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct ProfileArgs {
    /// Property for every player: sd:l, sd:g, msd:l, msd:g or br:<l|g>:<pure|corr|ind>.
    #[arg(long)]
    pub prop: Option<String>,
    /// Property for one player, e.g. `--player 2=br:g:pure` (1-based).
    #[arg(long = "player", value_name = "I=SPEC")]
    pub players: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the elimination operator from the full game to its outcome.
    Eliminate {
        #[command(flatten)]
        profile: ProfileArgs,
        game: PathBuf,
    },
    /// Run an exhaustive verifier.
    Check {
        #[arg(value_enum)]
        target: CheckTarget,
        #[command(flatten)]
        profile: ProfileArgs,
        /// Second property for `inclusion`.
        #[arg(long)]
        second: Option<String>,
        game: PathBuf,
    },
    /// Common knowledge and common belief of rationality.
    Epistemic {
        #[command(subcommand)]
        command: EpistemicCommand,
    },
    /// Iteration beyond ω on symbolic games.
    Transfinite {
        #[command(subcommand)]
        command: TransfiniteCommand,
    },
    /// Print a seeded random two-player game in the game file format.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        #[arg(long, default_value = "random")]
        name: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckTarget {
    Tarski,
    Monotone,
    Singleton,
    Pearce,
    Just,
    Just1,
    Inclusion,
    Contracting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Knowledge,
    Belief,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum EpistemicCommand {
    /// Enumerate every model over Ω of the given size.
    Enumerate {
        #[arg(long)]
        omega: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[command(flatten)]
        profile: ProfileArgs,
        game: PathBuf,
    },
    /// Build and check a witness model.
    Witness {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        /// Joint strategy for theorem 2, e.g. `C,D`; all of them when omitted.
        #[arg(long)]
        joint: Option<String>,
        #[command(flatten)]
        profile: ProfileArgs,
        game: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum TransfiniteCommand {
    /// Validate a registered game, then iterate it up to the bound.
    Run {
        /// Ordinal bound such as `2w+5`, `w` or `7`.
        #[arg(long, default_value = "3w+0")]
        bound: Ordinal,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        name: String,
    },
    /// Check step and limit rules on probe points.
    Validate {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        name: String,
    },
    /// List registered games.
    List,
}

/// Parses and runs a command line, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::from_env();
    if let Some(v) = cli.lattice_budget {
        l.lattice = v;
    }
    if let Some(v) = cli.model_budget {
        l.models = v;
    }
    l
}

fn load(path: &Path) -> Result<Game> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
    parse_game(&text)
}

/// Builds a profile from `--prop` and `--player` flags.
pub fn build_profile(args: &ProfileArgs, game: &Game) -> Result<PropertyProfile> {
    let n = game.num_players();
    let base: Option<PropertySpec> = args.prop.as_deref().map(str::parse).transpose()?;
    let mut specs = vec![base; n];
    for entry in &args.players {
        let (i, spec) = entry
            .split_once('=')
            .ok_or_else(|| Error::Argument(format!("expected I=SPEC, got `{entry}`")))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("bad player number in `{entry}`")))?;
        if i == 0 || i > n {
            return Err(Error::Argument(format!("player {i} out of range 1..={n}")));
        }
        specs[i - 1] = Some(spec.trim().parse()?);
    }
    let specs = specs
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::Argument(format!("no property given for player {}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let profile = PropertyProfile(specs);
    profile.check(game)?;
    Ok(profile)
}

fn single_spec(args: &ProfileArgs) -> Result<PropertySpec> {
    if !args.players.is_empty() {
        return Err(Error::Argument("this check takes a single --prop".into()));
    }
    args.prop
        .as_deref()
        .ok_or_else(|| Error::Argument("--prop is required".into()))?
        .parse()
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let body = if json {
        serde_json::to_string_pretty(value).map_err(|e| Error::Argument(format!("serialization failed: {e}")))?
    } else {
        text()
    };
    writeln!(out, "{body}").map_err(|e| Error::Argument(format!("write failed: {e}")))
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn verdict_code(v: Verdict) -> i32 {
    code(v.passed())
}

fn show(r: &NamedRestriction) -> String {
    let parts: Vec<String> = r.0.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
    format!("({})", parts.join(","))
}

#[derive(Serialize)]
struct EliminateJson<'a> {
    game: &'a str,
    profile: &'a PropertyProfile,
    #[serde(flatten)]
    trace: TraceJson,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = limits(cli);
    let json = cli.json;
    match &cli.command {
        Command::Eliminate { profile, game } => {
            let game = load(game)?;
            let profile = build_profile(profile, &game)?;
            let trace = outcome(&profile, &game)?;
            let tj = trace.to_json(&game);
            let value = EliminateJson { game: game.name(), profile: &profile, trace: tj.clone() };
            emit(out, json, &value, || {
                let mut s = format!("game {} under {profile}\n", game.name());
                for step in &tj.steps {
                    s += &format!("  T^{} = {}\n", step.ordinal, show(&step.restriction));
                }
                s + &format!("closure ordinal {}, outcome {}", tj.closure_ordinal, show(&tj.outcome))
            })?;
            Ok(0)
        }
        Command::Check { target, profile, second, game } => {
            let game = load(game)?;
            check(*target, profile, second.as_deref(), &game, &limits, json, out)
        }
        Command::Epistemic { command } => epistemic(command, &limits, json, out),
        Command::Transfinite { command } => transfinite_cmd(command, json, out),
        Command::Random { seed, rows, cols, name } => {
            if *rows == 0 || *cols == 0 {
                return Err(Error::Argument("rows and cols must be positive".into()));
            }
            let game = random_game(&mut rng(*seed), name, *rows, *cols);
            write!(out, "{}", write_game(&game)?).map_err(|e| Error::Argument(e.to_string()))?;
            Ok(0)
        }
    }
}

fn check(
    target: CheckTarget,
    profile: &ProfileArgs,
    second: Option<&str>,
    game: &Game,
    limits: &Limits,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    match target {
        CheckTarget::Tarski => {
            let p = build_profile(profile, game)?;
            let op = ProfileOperator::new(p.clone(), game)?;
            let r = verify_tarski(&op, game, limits)?;
            emit(out, json, &r, || {
                let mut s = format!("tarski {} under {p}: {}\n", game.name(), r.verdict);
                if let Some(v) = &r.monotonicity_violation {
                    s += &format!("  not monotonic: T({}) ⊄ T({})\n", show(&v.smaller), show(&v.larger));
                }
                if let Some(o) = &r.outcome {
                    s += &format!("  outcome {}\n", show(o));
                }
                if let Some(o) = &r.largest_fixpoint {
                    s += &format!("  largest fixpoint {}\n", show(o));
                }
                if let Some(o) = &r.post_fixpoint_join {
                    s += &format!("  join of post-fixpoints {}\n", show(o));
                }
                s + &format!("  {} restrictions, {} fixpoints", r.restrictions_checked, r.fixpoints)
            })?;
            Ok(verdict_code(r.verdict))
        }
        CheckTarget::Monotone => {
            let spec = single_spec(profile)?;
            let r = check_property_monotone(spec, game, limits)?;
            emit(out, json, &r, || {
                let mut s = format!(
                    "monotone {} for {spec}: {} ({} pairs, {} violations)",
                    game.name(),
                    if r.passed { "pass" } else { "fail" },
                    r.pairs_checked,
                    r.violation_count
                );
                for v in &r.violations {
                    s += &format!(
                        "\n  player {} strategy {} holds in {} but not in {}",
                        v.player,
                        v.strategy,
                        show(&v.smaller),
                        show(&v.larger)
                    );
                }
                s
            })?;
            Ok(code(r.passed))
        }
        CheckTarget::Singleton => {
            let spec = single_spec(profile)?;
            let r = check_singleton_condition(spec, game)?;
            emit(out, json, &r, || {
                let mut s = format!(
                    "singleton {} for {spec}: {} ({} joint strategies)",
                    game.name(),
                    if r.passed { "pass" } else { "fail" },
                    r.joint_strategies_checked
                );
                for f in &r.failures {
                    s += &format!("\n  fails for player {} at ({})", f.player, f.joint.join(","));
                }
                s
            })?;
            Ok(code(r.passed))
        }
        CheckTarget::Pearce => {
            let r = pearce_over_lattice(game, limits)?;
            emit(out, json, &r, || {
                let mut s = format!(
                    "pearce {}: {} ({} restrictions, {} mismatches)",
                    game.name(),
                    if r.passed { "pass" } else { "fail" },
                    r.restrictions_checked,
                    r.mismatch_count
                );
                for m in &r.mismatches {
                    s += &format!(
                        "\n  at {}: best responses {} vs undominated {}",
                        show(&m.restriction),
                        show(&m.best_response_image),
                        show(&m.undominated_image)
                    );
                }
                s
            })?;
            Ok(code(r.passed))
        }
        CheckTarget::Just | CheckTarget::Just1 => {
            let r = if target == CheckTarget::Just {
                verify_theorem_just(game, limits)?
            } else {
                verify_theorem_just1(game, limits)?
            };
            emit(out, json, &r, || {
                let mut s = format!("{} {}: {}", r.theorem, game.name(), if r.passed { "pass" } else { "fail" });
                for l in &r.chain {
                    let rel = match l.relation {
                        crate::verify::Relation::Subset => "⊆",
                        crate::verify::Relation::Equal => "=",
                    };
                    s += &format!("\n  T_{} {rel} T_{}: {}", l.lhs, l.rhs, if l.holds { "holds" } else { "fails" });
                    if let Some(v) = &l.violation {
                        s += &format!(" at {}", show(v));
                    }
                }
                s + &format!(
                    "\n  outcomes {} ⊆ {}: {}",
                    show(&r.first_outcome),
                    show(&r.second_outcome),
                    r.outcome_inclusion
                )
            })?;
            Ok(code(r.passed))
        }
        CheckTarget::Inclusion => {
            let p = build_profile(profile, game)?;
            let second: PropertySpec =
                second.ok_or_else(|| Error::Argument("--second is required".into()))?.parse()?;
            let op1 = ProfileOperator::new(p.clone(), game)?;
            let op2 = ProfileOperator::uniform(second, game);
            let r = verify_inclusion_lemma(&op1, &op2, game, limits)?;
            emit(out, json, &r, || {
                format!(
                    "inclusion {} of {p} in {second}: {}\n  pointwise {}, first monotonic {}, second contracting {}\n  outcomes {} ⊆ {}: {}",
                    game.name(),
                    r.verdict,
                    r.pointwise_inclusion,
                    r.first_monotone,
                    r.second_contracting,
                    show(&r.first_outcome),
                    show(&r.second_outcome),
                    r.outcome_inclusion
                )
            })?;
            Ok(verdict_code(r.verdict))
        }
        CheckTarget::Contracting => {
            let p = build_profile(profile, game)?;
            let op = ProfileOperator::new(p.clone(), game)?;
            let r = verify_contracting_outcome(&op, game, limits)?;
            emit(out, json, &r, || {
                let mut s = format!("contracting {} under {p}: {}", game.name(), r.verdict);
                if let (Some(o), Some(a)) = (&r.outcome, r.closure_ordinal) {
                    s += &format!("\n  outcome {} at ordinal {a} (bound {})", show(o), r.ordinal_bound);
                }
                s
            })?;
            Ok(verdict_code(r.verdict))
        }
    }
}

#[derive(Serialize)]
struct EnumerationJson<'a> {
    game: &'a str,
    profile: &'a PropertyProfile,
    omega_size: usize,
    mode: Mode,
    models_enumerated: u64,
    models_with_states: u64,
    restriction: NamedRestriction,
}

fn parse_joint(game: &Game, text: &str) -> Result<JointStrategy> {
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    if names.len() != game.num_players() {
        return Err(Error::Argument(format!("`{text}` does not name one strategy per player")));
    }
    let ids = names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            game.strategy_index(i, n)
                .ok_or_else(|| Error::Argument(format!("player {} has no strategy `{n}`", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointStrategy(ids))
}

fn epistemic(command: &EpistemicCommand, limits: &Limits, json: bool, out: &mut dyn Write) -> Result<i32> {
    match command {
        EpistemicCommand::Enumerate { omega, mode, profile, game } => {
            let game = load(game)?;
            let p = build_profile(profile, &game)?;
            let single = match mode {
                ModeArg::Knowledge => Some(Mode::Knowledge),
                ModeArg::Belief => Some(Mode::Belief),
                ModeArg::Both => None,
            };
            if let Some(m) = single {
                let r = enumerate_ck_cb(&game, *omega, &p, m, limits)?;
                let value = EnumerationJson {
                    game: game.name(),
                    profile: &p,
                    omega_size: *omega,
                    mode: m,
                    models_enumerated: r.models_enumerated,
                    models_with_states: r.models_with_states,
                    restriction: NamedRestriction::new(&game, &r.restriction),
                };
                emit(out, json, &value, || {
                    format!(
                        "{m} models over {omega} states: {} enumerated, restriction {}",
                        r.models_enumerated,
                        r.restriction.display(&game)
                    )
                })?;
                return Ok(0);
            }
            let r = epistemic_report(&game, *omega, &p, limits)?;
            emit(out, json, &r, || {
                let mut s = format!(
                    "epistemic {} under {p}, |Ω| = {omega}: {}\n  CK {} ({} models)\n  CB {} ({} models)\n  outcome {}",
                    game.name(),
                    r.verdict,
                    show(&r.ck_restriction),
                    r.models_enumerated.knowledge,
                    show(&r.cb_restriction),
                    r.models_enumerated.belief,
                    show(&r.operator_outcome)
                );
                if let Some(e) = &r.expected {
                    s += &format!("\n  expected {} ({})", show(e), r.comparison);
                }
                s
            })?;
            Ok(verdict_code(r.verdict))
        }
        EpistemicCommand::Witness { theorem, joint, profile, game } => {
            let game = load(game)?;
            let p = build_profile(profile, &game)?;
            if *theorem == 1 {
                if joint.is_some() {
                    return Err(Error::Argument("--joint applies to theorem 2 only".into()));
                }
                let w = witness_model_thm1(&game, &p, limits)?;
                let value = w.to_json(&game, &p);
                emit(out, json, &value, || {
                    format!(
                        "witness for {} under {p}: {}\n  E = {{{}}}\n  evident {}, G_E = outcome {}, E ⊆ RAT {}, E ⊆ K*RAT {}{}",
                        game.name(),
                        if value.passed { "pass" } else { "fail" },
                        value.event.join(","),
                        value.event_evident,
                        value.event_restriction_is_outcome,
                        value.event_within_rat,
                        value.event_within_ck,
                        if value.degenerate { " (empty outcome component)" } else { "" }
                    )
                })?;
                return Ok(code(value.passed));
            }
            let joints: Vec<JointStrategy> = match joint {
                Some(j) => vec![parse_joint(&game, j)?],
                None => game.joint_strategies().collect(),
            };
            let values = joints
                .iter()
                .map(|j| Ok(witness_model_thm2(&game, &p, j)?.to_json(&game, &p)))
                .collect::<Result<Vec<_>>>()?;
            let passed = values.iter().all(|v| v.passed);
            emit(out, json, &values, || {
                values
                    .iter()
                    .map(|v| {
                        format!(
                            "state {}: in RAT {}, in K*RAT {}",
                            v.state, v.state_in_rat, v.state_in_ck
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(code(passed))
        }
    }
}

#[derive(Serialize)]
struct ListEntry<'a> {
    name: &'a str,
    encodes: &'a str,
    description: &'a str,
}

#[derive(Serialize)]
struct RunJson {
    validation: transfinite::WitnessReport,
    trace: transfinite::SymTrace,
}

fn lookup(name: &str) -> Result<Box<dyn transfinite::SymbolicGame>> {
    transfinite::by_name(name).ok_or_else(|| {
        Error::Argument(format!(
            "unknown symbolic game `{name}` (known: {})",
            transfinite::WITNESS_NAMES.join(", ")
        ))
    })
}

fn transfinite_cmd(command: &TransfiniteCommand, json: bool, out: &mut dyn Write) -> Result<i32> {
    match command {
        TransfiniteCommand::List => {
            let games = transfinite::registry();
            let entries: Vec<ListEntry> = games
                .iter()
                .map(|g| ListEntry { name: g.name(), encodes: g.encodes(), description: g.description() })
                .collect();
            emit(out, json, &entries, || {
                entries
                    .iter()
                    .map(|e| format!("{:<20} {:<6} {}", e.name, e.encodes, e.description))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(0)
        }
        TransfiniteCommand::Validate { samples, seed, name } => {
            let game = lookup(name)?;
            let r = validate_witness(game.as_ref(), *samples, *seed)?;
            emit(out, json, &r, || validation_text(&r))?;
            Ok(code(r.passed))
        }
        TransfiniteCommand::Run { bound, samples, seed, name } => {
            let game = lookup(name)?;
            let config = EngineConfig::default();
            if bound.omegas > config.omega_cap {
                return Err(Error::Argument(format!(
                    "bound {bound} exceeds the cap of {} multiples of ω",
                    config.omega_cap
                )));
            }
            let validation = validate_witness(game.as_ref(), *samples, *seed)?;
            if !validation.passed {
                emit(out, json, &validation, || validation_text(&validation))?;
                return Ok(1);
            }
            let trace = iterate_symbolic(game.as_ref(), *bound, &config)?;
            let resolved = trace.status == Status::Fixpoint;
            let value = RunJson { validation, trace };
            emit(out, json, &value, || {
                let mut s = String::new();
                for step in &value.trace.steps {
                    s += &format!("T^{} = {}\n", step.ordinal, step.restriction);
                }
                s + &match value.trace.closure_ordinal {
                    Some(a) => format!("fixpoint at {a}"),
                    None => format!("unresolved at bound {bound}"),
                }
            })?;
            Ok(code(resolved))
        }
    }
}

fn validation_text(r: &transfinite::WitnessReport) -> String {
    let mut s = format!(
        "validate {} ({}): {} ({} steps, {} probes, {} failures)",
        r.game,
        r.encodes,
        if r.passed { "pass" } else { "fail" },
        r.steps_checked,
        r.probes_checked,
        r.failure_count
    );
    if let Some(d) = r.omega_differs {
        s += &format!("\n  T^w differs from T^(w+1): {d}");
    }
    if let Some(c) = r.closure_ordinal {
        s += &format!("\n  closure ordinal {c}");
    }
    for f in &r.failures {
        s += &format!("\n  {} at {} for player {}: point {}", f.check, f.ordinal, f.player, f.point);
    }
    s
}
