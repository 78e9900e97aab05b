//! The desk profile: a fixed grid of contexts and `q` values for every check,
//! run as one bundle by `mirabolic verify --profile desk` and by the
//! acceptance test target.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{Context, Engine, Side};
use crate::decorated::Convention;
use crate::error::Result;

use super::{
    calibrate_normalization, centralizer_report, default_samples, verify_bimodule, verify_dimensions,
    verify_presentation, verify_transpose_duality, OracleRun,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    DimensionFormula,
    OrbitBijection,
    PresentationRelations,
    TransposeDuality,
    OracleAgreement,
    BimoduleCommutation,
    DoubleCentralizer,
    NegativeControl,
}

impl Criterion {
    pub const ALL: [Criterion; 8] = [
        Criterion::DimensionFormula,
        Criterion::OrbitBijection,
        Criterion::PresentationRelations,
        Criterion::TransposeDuality,
        Criterion::OracleAgreement,
        Criterion::BimoduleCommutation,
        Criterion::DoubleCentralizer,
        Criterion::NegativeControl,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::DimensionFormula => "dimension-formula",
            Criterion::OrbitBijection => "orbit-bijection",
            Criterion::PresentationRelations => "presentation-relations",
            Criterion::TransposeDuality => "transpose-duality",
            Criterion::OracleAgreement => "oracle-agreement",
            Criterion::BimoduleCommutation => "bimodule-commutation",
            Criterion::DoubleCentralizer => "double-centralizer",
            Criterion::NegativeControl => "negative-control",
        }
    }
}

/// One line of the profile report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub passed: bool,
    /// Number of individual comparisons or reports that make up the check.
    pub cases: usize,
    pub summary: String,
    pub wall_seconds: f64,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    pub profile: &'static str,
    pub convention: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

pub const DESK_Q: [u64; 2] = [2, 3];

pub const RELATION_CONTEXTS: [(usize, usize, u32); 4] = [(1, 1, 1), (2, 2, 2), (3, 2, 2), (3, 3, 3)];
pub const TRANSPOSE_CONTEXTS: [(usize, usize, u32); 3] = [(2, 2, 2), (3, 2, 2), (2, 3, 3)];
pub const BIMODULE_CONTEXTS: [(usize, usize, u32); 2] = [(2, 2, 2), (3, 2, 2)];
pub const CENTRALIZER_CONTEXT: (usize, usize, u32) = (2, 2, 2);

fn ctx((n, m, d): (usize, usize, u32)) -> Context {
    Context::new(n, m, d)
}

/// `n, m <= 3` and `d <= 3`.
pub fn oracle_grid() -> Vec<Context> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            for d in 0..=3 {
                out.push(Context::new(n, m, d));
            }
        }
    }
    out
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

pub fn run_criterion(c: Criterion, engine: &Engine, max_work: u64) -> Result<CheckResult> {
    let start = Instant::now();
    let (passed, cases, summary, detail) = match c {
        Criterion::DimensionFormula => {
            let mut bad = Vec::new();
            let mut cases = 0;
            for n in 1..=4 {
                for m in 1..=4 {
                    for d in 0..=5 {
                        cases += 1;
                        let f = crate::decorated::dimension_count(n, m, d);
                        let e = crate::decorated::enumerate_decorated(n, m, d).len();
                        if f != e.into() {
                            bad.push(json!({"context": Context::new(n, m, d), "formula": f.to_string(), "enumerated": e}));
                        }
                    }
                }
            }
            let spot = crate::decorated::dimension_count(2, 2, 2);
            let line = (1..=5).all(|d| crate::decorated::dimension_count(1, 1, d) == 2u32.into());
            let passed = bad.is_empty() && spot == 27u32.into() && line;
            (
                passed,
                cases,
                format!("{} of {cases} contexts disagree; (2,2,2) has {spot}; (1,1,d>=1) has 2: {line}", bad.len()),
                json!({"failures": bad}),
            )
        }
        Criterion::OrbitBijection => {
            let mut reports = Vec::new();
            for c in oracle_grid() {
                reports.push(verify_dimensions(c, &DESK_Q, max_work)?);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            (
                failed == 0,
                reports.len() * DESK_Q.len(),
                format!("{failed} of {} contexts fail at q in {{2,3}}", reports.len()),
                json!({"failures": reports.iter().filter(|r| !r.passed).map(to_json).collect::<Vec<_>>()}),
            )
        }
        Criterion::PresentationRelations => {
            let mut all = Vec::new();
            for c in RELATION_CONTEXTS.map(ctx) {
                all.extend(verify_presentation(engine, c, Side::Left)?);
                all.extend(verify_presentation(engine, c.transposed(), Side::Right)?);
            }
            let failed: Vec<_> = all.iter().filter(|r| !r.passed).collect();
            (
                failed.is_empty(),
                all.len(),
                format!("{} of {} relation instances fail", failed.len(), all.len()),
                json!({"failures": failed.iter().map(to_json).collect::<Vec<_>>(), "corrections": super::RELATION_CORRECTIONS}),
            )
        }
        Criterion::TransposeDuality => {
            let mut reports = Vec::new();
            for c in TRANSPOSE_CONTEXTS.map(ctx) {
                reports.push(verify_transpose_duality(engine, c)?);
            }
            let checked: usize = reports.iter().map(|r| r.checked).sum();
            let bad: usize = reports.iter().map(|r| r.mismatches).sum();
            (
                bad == 0,
                checked,
                format!("{bad} of {checked} right actions differ from the transpose route"),
                json!({"reports": reports.iter().map(to_json).collect::<Vec<_>>()}),
            )
        }
        Criterion::OracleAgreement => {
            let mut checked = 0;
            let mut bad = 0;
            let mut parity = 0;
            let mut first = None;
            for c in oracle_grid() {
                for q in DESK_Q {
                    let (l, r) = OracleRun::new(c, q, max_work)?.compare(engine)?;
                    for rep in [l, r] {
                        checked += rep.checked;
                        bad += rep.mismatches;
                        parity += rep.parity_failures;
                        if first.is_none() && !rep.passed() {
                            first = Some(to_json(&rep));
                        }
                    }
                }
            }
            (
                bad == 0 && parity == 0,
                checked,
                format!("{bad} mismatches and {parity} parity failures in {checked} coefficients"),
                json!({"first_failure": first}),
            )
        }
        Criterion::BimoduleCommutation => {
            let mut all = Vec::new();
            for c in BIMODULE_CONTEXTS.map(ctx) {
                all.extend(verify_bimodule(engine, c)?);
            }
            let failed: Vec<_> = all.iter().filter(|r| !r.passed).collect();
            (
                failed.is_empty(),
                all.len(),
                format!("{} of {} token pairs fail to commute", failed.len(), all.len()),
                json!({"failures": failed.iter().map(to_json).collect::<Vec<_>>()}),
            )
        }
        Criterion::DoubleCentralizer => {
            let r = centralizer_report(engine, ctx(CENTRALIZER_CONTEXT), &default_samples())?;
            let s = &r.samples[0];
            (
                r.passed && r.within_hypothesis && r.samples.len() >= 3,
                r.samples.len(),
                format!(
                    "left algebra {} vs right commutant {}, right algebra {} vs left commutant {} at {} samples",
                    s.left.algebra,
                    s.left.commutant,
                    s.right.algebra,
                    s.right.commutant,
                    r.samples.len()
                ),
                to_json(&r),
            )
        }
        Criterion::NegativeControl => {
            let at = Context::new(2, 1, 1);
            let r = calibrate_normalization(&[at], &DESK_Q, max_work)?;
            // Calibration wants two values of q; the rejection itself must
            // already show at q = 2 alone.
            let run = OracleRun::new(at, 2, max_work)?;
            let mut rejected_at_two = Vec::new();
            for conv in Convention::with_controls() {
                let (l, rt) = run.compare(&Engine::new(conv))?;
                if !(l.passed() && rt.passed()) {
                    rejected_at_two.push(conv.name());
                }
            }
            let flipped = rejected_at_two.iter().any(|c| c.ends_with("-flipped"));
            (
                flipped && !r.rejected.is_empty(),
                r.candidates.len(),
                format!(
                    "{} of {} candidates rejected at (2,1,1), q = 2; {} with q in {{2,3}}",
                    rejected_at_two.len(),
                    r.candidates.len(),
                    r.rejected.len()
                ),
                json!({"rejected_at_q2": rejected_at_two, "calibration": to_json(&r)}),
            )
        }
    };
    Ok(CheckResult {
        id: c.id(),
        passed,
        cases,
        summary,
        wall_seconds: start.elapsed().as_secs_f64(),
        detail,
    })
}

pub fn desk_profile(engine: &Engine, max_work: u64) -> Result<ProfileReport> {
    let checks = Criterion::ALL
        .iter()
        .map(|&c| run_criterion(c, engine, max_work))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileReport {
        profile: "desk",
        convention: engine.convention().name(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
