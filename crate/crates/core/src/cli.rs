//! The `vcsp` command line. Every invocation prints exactly one JSON
//! document on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success (infinite optima included), 1 internal error,
//! 2 usage, 3 invalid input, 4 instance outside the command's class,
//! 5 oracle budget exceeded.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::binary::{dispatch, DispatchOptions, SolverError, SolverOptions, DEFAULT_ORACLE_BUDGET};
use crate::cfc::{check_convexity, check_instance_family, solve_cfc, CfcError, FamilyKind};
use crate::format::{parse_instance, to_canonical_string, write_instance, Instance};
use crate::model::{BinaryInstance, CountInstance};
use crate::renaming::{recognize_renamable, solve_renamable, Renamability, RenamingError};
use crate::testkit::fixtures::{fixture, FIXTURE_NAMES};
use crate::testkit::generators::{
    gen_crossfree, gen_full_laminar, gen_laminar, gen_matching_encoding, gen_maxcut, gen_pairsets, gen_profile, gen_renamable,
    gen_soft_gcc, GenError,
};
use crate::testkit::oracle::{oracle_binary, oracle_count, search_space};
use crate::triangles::{check_jwp, has_soft_unaries, profile, report, verdict, Scheme, TypeSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CLASS: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "vcsp", version, about = "Tractability classification and exact solving of valued CSPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangle profile and dichotomy verdict under one scheme.
    Classify {
        file: String,
        #[arg(long)]
        scheme: Scheme,
    },
    /// Solve a binary instance through the tractable-class dispatcher, or a
    /// count instance through the cross-free flow solver.
    Solve {
        file: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u64,
        /// Skip the class solvers' own profile checks.
        #[arg(long)]
        no_validate: bool,
    },
    /// Solve a cross-free convex count instance.
    SolveCfc { file: String },
    /// Check a structural property.
    Check {
        file: String,
        #[arg(long)]
        property: Property,
    },
    /// Rename Boolean constraints into a cross-free family and solve.
    Rename { file: String },
    /// Generate an instance.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scheme for random-profile.
        #[arg(long, default_value = "maxcsp")]
        scheme: Scheme,
        /// Comma-separated triple-type symbols for random-profile.
        #[arg(long, default_value = "")]
        profile: String,
        /// Comma-separated `u-v` edges for maxcut and matching-encoding.
        #[arg(long, default_value = "")]
        edges: String,
        /// Comma-separated `lower:upper` bounds per value for soft-gcc.
        #[arg(long, default_value = "")]
        bounds: String,
        /// Fixture name for `fixture`.
        #[arg(long)]
        name: Option<String>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive optimum.
    Oracle {
        file: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Property {
    Laminar,
    Crossfree,
    Convex,
    Jwp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    RandomProfile,
    Maxcut,
    MatchingEncoding,
    SoftGcc,
    NestedGcc,
    Laminar,
    Crossfree,
    Renamable,
    Pairsets,
    Fixture,
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: i32, kind: &'static str, message: impl ToString) -> Failure {
        Failure { code, kind, message: message.to_string() }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Failure {
        match e {
            SolverError::NotCrisp { .. } | SolverError::ProfileViolation { .. } => Failure::new(EXIT_CLASS, "class", e),
            SolverError::Model(_) => Failure::new(EXIT_INPUT, "input", e),
            _ => Failure::new(EXIT_INTERNAL, "internal", e),
        }
    }
}

impl From<CfcError> for Failure {
    fn from(e: CfcError) -> Failure {
        match e {
            CfcError::NotCrossFree { .. } | CfcError::NotLaminar { .. } | CfcError::NonConvex { .. } | CfcError::SetTooLarge { .. } => {
                Failure::new(EXIT_CLASS, "class", e)
            }
            CfcError::Model(_) => Failure::new(EXIT_INPUT, "input", e),
            _ => Failure::new(EXIT_INTERNAL, "internal", e),
        }
    }
}

impl From<RenamingError> for Failure {
    fn from(e: RenamingError) -> Failure {
        match e {
            RenamingError::Cfc(inner) => inner.into(),
            RenamingError::Invariant(_) => Failure::new(EXIT_INTERNAL, "internal", e),
            RenamingError::Model(_) => Failure::new(EXIT_INPUT, "input", e),
            _ => Failure::new(EXIT_CLASS, "class", e),
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Failure {
        Failure::new(EXIT_INPUT, "generator", e)
    }
}

fn read_instance(file: &str) -> Result<Instance, Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::new(EXIT_INPUT, "io", e))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::new(EXIT_INPUT, "io", format!("{file}: {e}")))?
    };
    parse_instance(&text).map_err(|e| Failure::new(EXIT_INPUT, "input", e))
}

fn binary(inst: Instance) -> Result<BinaryInstance, Failure> {
    match inst {
        Instance::Binary(b) => Ok(b),
        Instance::Count(_) => Err(Failure::new(EXIT_INPUT, "input", "this command needs a binary instance")),
    }
}

fn count(inst: Instance) -> Result<CountInstance, Failure> {
    match inst {
        Instance::Count(c) => Ok(c),
        Instance::Binary(_) => Err(Failure::new(EXIT_INPUT, "input", "this command needs a count instance")),
    }
}

fn classify(file: &str, scheme: Scheme) -> Result<Value, Failure> {
    let inst = binary(read_instance(file)?)?;
    let p = profile(&inst, scheme).map_err(|e| Failure::new(EXIT_CLASS, "class", e))?;
    let ruling = verdict(&p, inst.domain_max(), has_soft_unaries(&inst));
    Ok(report(&p, ruling, inst.n()))
}

fn solve_count(inst: &CountInstance, budget: u64) -> Result<(i32, Value), Failure> {
    match solve_cfc(inst) {
        Ok(r) => return Ok((EXIT_OK, r.to_value())),
        Err(CfcError::NotCrossFree { .. } | CfcError::NonConvex { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    if inst.domain_sizes().iter().all(|&k| k == 2) {
        if let Ok(r) = solve_renamable(inst) {
            return Ok((EXIT_OK, r.to_value()));
        }
    }
    let space = search_space(&inst.domain_sizes());
    match oracle_count(inst, budget) {
        Ok(r) => Ok((EXIT_OK, r.note("search_space", space).to_value())),
        Err(e) => Ok((EXIT_BUDGET, json!({"status": "NOT_SOLVED", "reason": e.to_string()}))),
    }
}

fn solve(file: &str, budget: u64, no_validate: bool) -> Result<(i32, Value), Failure> {
    match read_instance(file)? {
        Instance::Binary(inst) => {
            let opts = DispatchOptions { oracle_budget: budget, solver: SolverOptions { check_profile: !no_validate } };
            let outcome = dispatch(&inst, opts)?;
            let code = if outcome.result.is_some() { EXIT_OK } else { EXIT_BUDGET };
            Ok((code, outcome.to_value()))
        }
        Instance::Count(inst) => solve_count(&inst, budget),
    }
}

fn check(file: &str, property: Property) -> Result<Value, Failure> {
    let inst = read_instance(file)?;
    let (name, holds, witness) = match property {
        Property::Laminar | Property::Crossfree => {
            let inst = count(inst)?;
            let r = check_instance_family(&inst);
            let wanted = matches!(property, Property::Laminar);
            let holds = if wanted { r.kind == FamilyKind::Laminar } else { r.kind != FamilyKind::Neither };
            let witness = if holds { Value::Null } else { json!(r.witness.map(|(a, b)| [a, b])) };
            let name = if wanted { "laminar" } else { "crossfree" };
            return Ok(json!({"property": name, "holds": holds, "family": r.kind.label(), "witness": witness}));
        }
        Property::Convex => {
            let inst = count(inst)?;
            let bad = inst.sets().iter().enumerate().find_map(|(k, s)| check_convexity(s.g()).violation.map(|m| (k, m)));
            ("convex", bad.is_none(), bad.map_or(Value::Null, |(set, index)| json!({"set": set, "index": index})))
        }
        Property::Jwp => {
            let r = check_jwp(&binary(inst)?);
            ("jwp", r.holds, r.violation.map_or(Value::Null, |t| t.to_value()))
        }
    };
    Ok(json!({"property": name, "holds": holds, "witness": witness}))
}

fn rename(file: &str) -> Result<Value, Failure> {
    let inst = count(read_instance(file)?)?;
    match recognize_renamable(&inst)? {
        Renamability::NotRenamable { reason } => Ok(json!({"status": "NOT_RENAMABLE", "reason": reason})),
        Renamability::Renamable { .. } => Ok(solve_renamable(&inst)?.to_value()),
    }
}

fn oracle(file: &str, budget: u64) -> Result<(i32, Value), Failure> {
    let result = match read_instance(file)? {
        Instance::Binary(b) => oracle_binary(&b, budget),
        Instance::Count(c) => oracle_count(&c, budget),
    };
    match result {
        Ok(r) => Ok((EXIT_OK, r.to_value())),
        Err(e) => Err(Failure::new(EXIT_BUDGET, "budget", e)),
    }
}

fn parse_list<T>(text: &str, item: impl Fn(&str) -> Option<T>, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(s).ok_or_else(|| Failure::new(EXIT_USAGE, "usage", format!("bad {what} {s:?}"))))
        .collect()
}

fn pair(s: &str, sep: char) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(sep)?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn generate(cmd: &Command) -> Result<Value, Failure> {
    let Command::Gen { kind, n, d, seed, scheme, profile: types, edges, bounds, name, output } = cmd else {
        unreachable!("generate takes the gen command");
    };
    let (n, d, seed) = (*n, *d, *seed);
    let edge_list = || parse_list(edges, |s| pair(s, '-'), "edge");
    let inst = match kind {
        GenKind::RandomProfile => {
            let target = parse_list(types, |s| scheme.parse_type(s), "triple type")?;
            Instance::Binary(gen_profile(n, d, TypeSet::of(&target), *scheme, seed)?)
        }
        GenKind::Maxcut => Instance::Binary(gen_maxcut(n, &edge_list()?)?),
        GenKind::MatchingEncoding => Instance::Binary(gen_matching_encoding(n, &edge_list()?)?),
        GenKind::SoftGcc => Instance::Count(gen_soft_gcc(n, d, &parse_list(bounds, |s| pair(s, ':'), "bound")?)?),
        GenKind::NestedGcc => Instance::Count(gen_full_laminar(n, d, seed)?),
        GenKind::Laminar => Instance::Count(gen_laminar(n, d, seed)?),
        GenKind::Crossfree => Instance::Count(gen_crossfree(n, d, seed)?),
        GenKind::Renamable => Instance::Count(gen_renamable(n, seed)?),
        GenKind::Pairsets => Instance::Count(gen_pairsets(n, d, seed)?),
        GenKind::Fixture => {
            let name = name.as_deref().ok_or_else(|| Failure::new(EXIT_USAGE, "usage", "fixture needs --name"))?;
            let inst = fixture(name).ok_or_else(|| {
                Failure::new(EXIT_USAGE, "usage", format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))
            })?;
            Instance::Count(inst)
        }
    };
    let text = write_instance(&inst);
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::new(EXIT_INPUT, "io", format!("{}: {e}", path.display())))?;
            Ok(json!({"written": path.display().to_string()}))
        }
        None => Ok(serde_json::from_str(&text).expect("writer emits JSON")),
    }
}

fn execute(cmd: &Command) -> Result<(i32, Value), Failure> {
    match cmd {
        Command::Classify { file, scheme } => classify(file, *scheme).map(|v| (EXIT_OK, v)),
        Command::Solve { file, oracle_budget, no_validate } => solve(file, *oracle_budget, *no_validate),
        Command::SolveCfc { file } => Ok((EXIT_OK, solve_cfc(&count(read_instance(file)?)?)?.to_value())),
        Command::Check { file, property } => check(file, *property).map(|v| (EXIT_OK, v)),
        Command::Rename { file } => rename(file).map(|v| (EXIT_OK, v)),
        Command::Gen { .. } => generate(cmd).map(|v| (EXIT_OK, v)),
        Command::Oracle { file, budget } => oracle(file, *budget),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.to_string();
            return match e.kind() {
                ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: to_canonical_string(&json!({"name": "vcsp", "version": env!("CARGO_PKG_VERSION")})),
                    stderr: String::new(),
                },
                ErrorKind::DisplayHelp | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Output { code: EXIT_OK, stdout: to_canonical_string(&json!({"help": text})), stderr: text }
                }
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: to_canonical_string(&json!({"error": {"kind": "usage", "message": text}})),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, value)) => Output { code, stdout: to_canonical_string(&value), stderr: String::new() },
        Err(f) => Output {
            code: f.code,
            stdout: to_canonical_string(&json!({"error": {"kind": f.kind, "message": f.message}})),
            stderr: format!("vcsp: {}\n", f.message),
        },
    }
}
