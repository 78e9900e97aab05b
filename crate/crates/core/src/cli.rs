//! Batch command-line interface. [`run_command`] does all the work and returns
//! the exit status with the payload; `main` only prints.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::action::{generator_element, Context, Engine, GeneratorToken, ModuleElement, Side};
use crate::decorated::{dimension_count, enumerate_decorated, Convention};
use crate::error::{Error, Result};
use crate::field::{Oracle, DEFAULT_MAX_WORK, MAX_WORK_ENV};
use crate::verify::{
    calibrate_normalization, centralizer_report, default_calibration_grid, default_samples, desk_profile, run_criterion,
    verify_bimodule, verify_dimensions, verify_presentation, CheckResult, Criterion, OracleRun, ProfileReport,
};

/// Largest module on which operator-matrix checks are run.
pub const DESK_DIMENSION: u64 = 700;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mirabolic", version, about = "Mirabolic q-Schur algebra actions, finite-field oracle, and checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub output: OutputFormat,

    /// Abort oracle runs that would touch more than this many triples.
    #[arg(long, env = MAX_WORK_ENV, default_value_t = DEFAULT_MAX_WORK, global = true)]
    pub max_work: u64,

    /// Basis normalization: blm (default), or-ordered, or-unordered, and-ordered,
    /// optionally suffixed with -flipped.
    #[arg(long, global = true)]
    pub convention: Option<Convention>,

    #[command(subcommand)]
    pub command: Command,
}

/// Shape and total of the decorated matrices.
#[derive(Clone, Copy, Debug, Args)]
pub struct ContextArgs {
    /// Rows, 1..=8.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub n: u8,
    /// Columns, 1..=8.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub m: u8,
    /// Entry total, 0..=12.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12))]
    pub d: u32,
}

impl ContextArgs {
    fn context(&self) -> Context {
        Context::new(self.n as usize, self.m as usize, self.d)
    }
}

fn parse_q(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(q @ (2 | 3 | 5)) => Ok(q),
        _ => Err(format!("q must be 2, 3 or 5, got {s:?}")),
    }
}

fn parse_side(s: &str) -> std::result::Result<Side, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    s.parse().map_err(|_| format!("not a rational number: {s:?}"))
}

fn parse_context_list(s: &str) -> std::result::Result<Context, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [n, m, d] => Ok(Context::new(
            n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?,
            m.trim().parse().map_err(|_| format!("bad m in {s:?}"))?,
            d.trim().parse().map_err(|_| format!("bad d in {s:?}"))?,
        )),
        _ => Err(format!("expected n,m,d, got {s:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Desk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    DimensionFormula,
    OrbitBijection,
    PresentationRelations,
    TransposeDuality,
    OracleAgreement,
    BimoduleCommutation,
    DoubleCentralizer,
    NegativeControl,
}

impl From<CheckName> for Criterion {
    fn from(c: CheckName) -> Self {
        match c {
            CheckName::DimensionFormula => Criterion::DimensionFormula,
            CheckName::OrbitBijection => Criterion::OrbitBijection,
            CheckName::PresentationRelations => Criterion::PresentationRelations,
            CheckName::TransposeDuality => Criterion::TransposeDuality,
            CheckName::OracleAgreement => Criterion::OracleAgreement,
            CheckName::BimoduleCommutation => Criterion::BimoduleCommutation,
            CheckName::DoubleCentralizer => Criterion::DoubleCentralizer,
            CheckName::NegativeControl => Criterion::NegativeControl,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the basis of MV_{n|m} in canonical order.
    Basis(#[command(flatten)] ContextArgs),

    /// Act by a token or a word on a basis element or an element.
    Act {
        #[command(flatten)]
        ctx: ContextArgs,
        /// left (MS_{n,d}) or right (MS_{m,d}).
        #[arg(long, value_parser = parse_side)]
        side: Side,
        /// E<i>, F<i>, H+<a>, H-<a> or L; 1 <= i < size, 1 <= a <= size.
        #[arg(long, conflicts_with = "word")]
        token: Option<GeneratorToken>,
        /// Space-separated tokens, the algebra word a_1 ... a_k.
        #[arg(long)]
        word: Option<String>,
        /// Index into the canonical basis (see `basis`).
        #[arg(long, conflicts_with = "element")]
        basis_index: Option<usize>,
        /// Element in text form, e.g. "(v^-2)*[[1]]{} + [[1]]{(1,1)}".
        #[arg(long)]
        element: Option<String>,
        /// Use the printed right-hand case formulas instead of the transpose route.
        #[arg(long)]
        printed: bool,
    },

    /// Expand a generator of MS_{n,d} in the [A] basis.
    Generator {
        #[arg(long)]
        token: GeneratorToken,
        /// Size of the algebra, 1..=8.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        n: u8,
        /// Entry total, 0..=12.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=12))]
        d: u32,
    },

    /// Orbit table of X_{n,d} x X_{m,d} x F_q^d with sizes and representatives.
    OracleOrbits {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Field size: 2, 3 or 5.
        #[arg(long, value_parser = parse_q)]
        q: u64,
    },

    /// Compare every generator action with the oracle, both sides.
    OracleCheck {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Field size: 2, 3 or 5.
        #[arg(long, value_parser = parse_q)]
        q: u64,
        /// Also test GL_d(F_q)-invariance of orbit classification with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Random triples for the invariance test.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },

    /// Run the acceptance bundle or one check of it.
    Verify {
        #[arg(long, value_enum)]
        profile: Option<Profile>,
        #[arg(long, value_enum, conflicts_with = "profile")]
        check: Option<CheckName>,
        /// Omit wall times so that the report is reproducible byte for byte.
        #[arg(long)]
        no_timings: bool,
    },

    /// Choose the basis normalization by comparison with the oracle.
    Calibrate {
        /// Contexts as n,m,d; repeatable. Defaults to 1,1,1 2,1,1 2,2,2.
        #[arg(long = "context", value_parser = parse_context_list)]
        contexts: Vec<Context>,
        /// Field sizes, at least two of 2, 3, 5.
        #[arg(long, value_parser = parse_q, value_delimiter = ',', default_values_t = [2u64, 3])]
        q: Vec<u64>,
    },

    /// Dimension formula, enumeration and oracle orbit counts.
    Dims {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Field sizes for the orbit count; none skips the oracle.
        #[arg(long, value_parser = parse_q, value_delimiter = ',')]
        q: Vec<u64>,
    },

    /// Presentation relations for one context and side.
    Relations {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_parser = parse_side)]
        side: Side,
    },

    /// Commutation of left and right tokens at one context.
    Bimodule(#[command(flatten)] ContextArgs),

    /// Double centralizer dimensions at rational values of v (requires n >= m >= d
    /// for the equalities to be expected).
    Centralizer {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Rational samples of v other than 0, 1, -1. Defaults to 2,3,5/2.
        #[arg(long, value_parser = parse_rational, value_delimiter = ',')]
        v: Vec<BigRational>,
    },
}

/// Exit status, what goes to standard output, and an optional message for
/// standard error.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub payload: String,
    pub diagnostic: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ScaleExceeded(_) => EXIT_SCALE,
        Error::NoConsistentConvention | Error::SampleDegenerate(_) | Error::Internal(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn render<T: Serialize>(format: OutputFormat, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(value).expect("payload serializes") + "\n",
        OutputFormat::Text => text(value),
    }
}

fn check_desk(ctx: Context) -> Result<()> {
    let dim = dimension_count(ctx.n, ctx.m, ctx.d);
    if dim > DESK_DIMENSION.into() {
        return Err(Error::ScaleExceeded(format!(
            "module dimension {dim} at {ctx} is above {DESK_DIMENSION}"
        )));
    }
    Ok(())
}

fn profile_text(r: &ProfileReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        check_line(&mut s, c);
    }
    let _ = writeln!(s, "{}", if r.passed { "all checks passed" } else { "some checks failed" });
    s
}

fn check_line(s: &mut String, c: &CheckResult) {
    let _ = writeln!(
        s,
        "{} {}: {} ({:.2}s)",
        if c.passed { "PASS" } else { "FAIL" },
        c.id,
        c.summary,
        c.wall_seconds
    );
}

/// Runs one request.
pub fn run_command(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            status: exit_code(&e),
            payload: match cli.output {
                OutputFormat::Json => serde_json::json!({ "error": e.to_string() }).to_string() + "\n",
                OutputFormat::Text => String::new(),
            },
            diagnostic: Some(format!("error: {e}")),
        },
    }
}

fn ok(payload: String) -> Outcome {
    Outcome {
        status: EXIT_OK,
        payload,
        diagnostic: None,
    }
}

fn verdict(passed: bool, payload: String) -> Outcome {
    Outcome {
        status: if passed { EXIT_OK } else { EXIT_FAILED },
        payload,
        diagnostic: None,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let engine = cli.convention.map(Engine::new).unwrap_or_default();
    let fmt = cli.output;
    let max_work = cli.max_work;
    match &cli.command {
        Command::Basis(c) => {
            let ctx = c.context();
            let elements = enumerate_decorated(ctx.n, ctx.m, ctx.d);
            #[derive(Serialize)]
            struct Out {
                context: Context,
                dimension: usize,
                elements: Vec<String>,
            }
            let out = Out {
                context: ctx,
                dimension: elements.len(),
                elements: elements.iter().map(|x| x.to_string()).collect(),
            };
            Ok(ok(render(fmt, &out, |o| {
                o.elements.iter().enumerate().map(|(k, x)| format!("{k}\t{x}\n")).collect()
            })))
        }
        Command::Act {
            ctx,
            side,
            token,
            word,
            basis_index,
            element,
            printed,
        } => {
            let ctx = ctx.context();
            let x = match (basis_index, element) {
                (Some(k), None) => {
                    let basis = enumerate_decorated(ctx.n, ctx.m, ctx.d);
                    let b = basis.get(*k).ok_or_else(|| {
                        Error::InvalidArgument(format!("basis index {k} out of range 0..{}", basis.len()))
                    })?;
                    ModuleElement::basis(ctx, b.clone())?
                }
                (None, Some(s)) => ModuleElement::parse_text(ctx, s)?,
                _ => return Err(Error::InvalidArgument("give exactly one of --basis-index, --element".into())),
            };
            let tokens: Vec<GeneratorToken> = match (token, word) {
                (Some(t), None) => vec![*t],
                (None, Some(w)) => w.split_whitespace().map(str::parse).collect::<Result<_>>()?,
                _ => return Err(Error::InvalidArgument("give exactly one of --token, --word".into())),
            };
            let act = |t: &GeneratorToken, y: &ModuleElement| match (side, printed) {
                (Side::Right, true) => engine.act_right_printed(y, t),
                _ => engine.act(*side, t, y),
            };
            // Left: a_1 ... a_k x, a_k first. Right: x a_1 ... a_k, a_1 first.
            let mut y = x.clone();
            match side {
                Side::Left => {
                    for t in tokens.iter().rev() {
                        y = act(t, &y)?;
                    }
                }
                Side::Right => {
                    for t in &tokens {
                        y = act(t, &y)?;
                    }
                }
            }
            #[derive(Serialize)]
            struct Out {
                side: Side,
                word: Vec<String>,
                input: ModuleElement,
                output: ModuleElement,
                text: String,
            }
            let out = Out {
                side: *side,
                word: tokens.iter().map(|t| t.to_string()).collect(),
                input: x,
                text: y.to_string(),
                output: y,
            };
            Ok(ok(render(fmt, &out, |o| format!("{}\n", o.text))))
        }
        Command::Generator { token, n, d } => {
            let g = generator_element(token, *n as usize, *d)?;
            Ok(ok(render(fmt, &g, |g| format!("{g}\n"))))
        }
        Command::OracleOrbits { ctx, q } => {
            let oracle = Oracle::new(ctx.context(), *q, max_work)?;
            let table = oracle.orbit_table();
            let json = table.to_json(&oracle);
            Ok(ok(render(fmt, &json, |_| {
                let mut s = String::new();
                for (x, e) in &table.entries {
                    let _ = writeln!(s, "{x}\t{}", e.size);
                }
                let _ = writeln!(s, "{} orbits, {} triples", table.entries.len(), table.total_triples);
                s
            })))
        }
        Command::OracleCheck { ctx, q, seed, samples } => {
            let ctx = ctx.context();
            let (left, right) = OracleRun::new(ctx, *q, max_work)?.compare(&engine)?;
            let invariance = match seed {
                Some(s) => Some(Oracle::new(ctx, *q, max_work)?.gl_invariance(*s, *samples)),
                None => None,
            };
            let passed = left.passed() && right.passed() && invariance.as_ref().is_none_or(|r| r.violations == 0);
            let out = serde_json::json!({
                "passed": passed,
                "left": left,
                "right": right,
                "invariance": invariance,
            });
            Ok(verdict(
                passed,
                render(fmt, &out, |_| {
                    let mut s = String::new();
                    for (side, r) in [("left", &left), ("right", &right)] {
                        let _ = writeln!(
                            s,
                            "{} {side} {ctx} q={}: {} coefficients, {} mismatches, {} parity failures",
                            if r.passed() { "PASS" } else { "FAIL" },
                            r.q,
                            r.checked,
                            r.mismatches,
                            r.parity_failures
                        );
                    }
                    if let Some(r) = &invariance {
                        let _ = writeln!(s, "GL invariance: {} of {} samples violated (seed {})", r.violations, r.samples, r.seed);
                    }
                    s
                }),
            ))
        }
        Command::Verify {
            profile,
            check,
            no_timings,
        } => {
            let mut report = match (profile, check) {
                (_, Some(c)) => {
                    let r = run_criterion((*c).into(), &engine, max_work)?;
                    ProfileReport {
                        profile: "single",
                        convention: engine.convention().name(),
                        passed: r.passed,
                        checks: vec![r],
                    }
                }
                (Some(Profile::Desk), None) | (None, None) => desk_profile(&engine, max_work)?,
            };
            if *no_timings {
                report.checks.iter_mut().for_each(|c| c.wall_seconds = 0.0);
            }
            Ok(verdict(report.passed, render(fmt, &report, profile_text)))
        }
        Command::Calibrate { contexts, q } => {
            let contexts = if contexts.is_empty() {
                default_calibration_grid()
            } else {
                contexts.clone()
            };
            let r = calibrate_normalization(&contexts, q, max_work)?;
            Ok(ok(render(fmt, &r, |r| {
                let mut s = String::new();
                for c in &r.candidates {
                    let _ = writeln!(
                        s,
                        "{:<20} {} mismatches, {} parity failures in {} coefficients{}",
                        c.convention,
                        c.mismatches,
                        c.parity_failures,
                        c.checked,
                        if c.matches { "  match" } else { "" }
                    );
                }
                let _ = writeln!(s, "chosen: {}{}", r.chosen, if r.ambiguous { " (several candidates match)" } else { "" });
                s
            })))
        }
        Command::Dims { ctx, q } => {
            let r = verify_dimensions(ctx.context(), q, max_work)?;
            Ok(verdict(
                r.passed,
                render(fmt, &r, |r| {
                    let mut s = format!("{}: formula {}, enumerated {}\n", r.context, r.formula, r.enumerated);
                    for o in &r.oracle {
                        let _ = writeln!(s, "q={}: {} orbits, {} of {} triples", o.q, o.orbits, o.triples, o.expected_triples);
                    }
                    s
                }),
            ))
        }
        Command::Relations { ctx, side } => {
            let ctx = ctx.context();
            check_desk(ctx)?;
            let reports = verify_presentation(&engine, ctx, *side)?;
            let passed = reports.iter().all(|r| r.passed);
            Ok(verdict(
                passed,
                render(fmt, &reports, |rs| {
                    rs.iter()
                        .map(|r| format!("{} {}\n", if r.passed { "PASS" } else { "FAIL" }, r.id))
                        .collect()
                }),
            ))
        }
        Command::Bimodule(c) => {
            let ctx = c.context();
            check_desk(ctx)?;
            let reports = verify_bimodule(&engine, ctx)?;
            let passed = reports.iter().all(|r| r.passed);
            Ok(verdict(
                passed,
                render(fmt, &reports, |rs| {
                    let bad = rs.iter().filter(|r| !r.passed).count();
                    let mut s = format!("{bad} of {} token pairs fail to commute\n", rs.len());
                    for r in rs.iter().filter(|r| !r.passed) {
                        let _ = writeln!(s, "FAIL {}", r.id);
                    }
                    s
                }),
            ))
        }
        Command::Centralizer { ctx, v } => {
            let ctx = ctx.context();
            check_desk(ctx)?;
            let samples = if v.is_empty() { default_samples() } else { v.clone() };
            let r = centralizer_report(&engine, ctx, &samples)?;
            Ok(verdict(
                r.passed,
                render(fmt, &r, |r| {
                    let mut s = format!(
                        "{} (dimension {}){}\n",
                        r.context,
                        r.module_dimension,
                        if r.within_hypothesis { "" } else { ", outside n >= m >= d" }
                    );
                    for x in &r.samples {
                        let _ = writeln!(
                            s,
                            "v={}: left algebra {} / right commutant {}, right algebra {} / left commutant {}",
                            x.v, x.left.algebra, x.left.commutant, x.right.algebra, x.right.commutant
                        );
                    }
                    s
                }),
            ))
        }
    }
}
