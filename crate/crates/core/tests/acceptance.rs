//! One PASS/FAIL line per acceptance criterion. Every comparison is exact
//! (zero tolerance); the only slack is the wall-clock budget per criterion.

use std::process::ExitCode;

use mirabolic::verify::{run_criterion, Criterion};
use mirabolic::field::DEFAULT_MAX_WORK;
use mirabolic::Engine;

/// Exact match required: no mismatching coefficient, residual or dimension.
const TOLERANCE: usize = 0;

fn budget_seconds(c: Criterion) -> f64 {
    match c {
        Criterion::DimensionFormula => 10.0,
        Criterion::OrbitBijection => 300.0,
        Criterion::PresentationRelations => 600.0,
        Criterion::OracleAgreement => 900.0,
        Criterion::DoubleCentralizer => 600.0,
        Criterion::TransposeDuality | Criterion::BimoduleCommutation | Criterion::NegativeControl => 60.0,
    }
}

fn main() -> ExitCode {
    let engine = Engine::default();
    println!("acceptance: convention {}, tolerance {TOLERANCE} (exact)", engine.convention().name());
    let mut failed = 0;
    for c in Criterion::ALL {
        let budget = budget_seconds(c);
        match run_criterion(c, &engine, DEFAULT_MAX_WORK) {
            Ok(r) => {
                let in_time = r.wall_seconds <= budget;
                let ok = r.passed && in_time;
                failed += usize::from(!ok);
                println!(
                    "{} {}: {} [{} cases, {:.2}s of {budget:.0}s]",
                    if ok { "PASS" } else { "FAIL" },
                    r.id,
                    r.summary,
                    r.cases,
                    r.wall_seconds
                );
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {e}", c.id());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", Criterion::ALL.len() - failed, Criterion::ALL.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
