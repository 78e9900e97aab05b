//! Choosing the `[A]_Delta` normalization by comparison with the oracle.

use serde::Serialize;

use crate::action::{Context, Engine, PINNED_CONVENTION};
use crate::decorated::Convention;
use crate::error::{Error, Result};

use super::agreement::OracleRun;

#[derive(Clone, Debug, Serialize)]
pub struct CandidateResult {
    pub convention: String,
    pub checked: usize,
    pub mismatches: usize,
    pub parity_failures: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationReport {
    pub contexts: Vec<Context>,
    pub q_list: Vec<u64>,
    pub candidates: Vec<CandidateResult>,
    /// The selected convention. When several candidates match, this is the
    /// pinned default if it is among them.
    pub chosen: String,
    pub ambiguous: bool,
    pub rejected: Vec<String>,
}

/// Compares every candidate (and its sign-flipped control) with the oracle at
/// every context and `q`, counting mismatching coefficients.
pub fn calibrate_normalization(contexts: &[Context], q_list: &[u64], max_work: u64) -> Result<CalibrationReport> {
    if q_list.len() < 2 {
        return Err(Error::InvalidArgument("calibration needs at least two values of q".into()));
    }
    let conventions = Convention::with_controls();
    let mut totals = vec![(0usize, 0usize, 0usize); conventions.len()];
    for &ctx in contexts {
        for &q in q_list {
            let run = OracleRun::new(ctx, q, max_work)?;
            for (conv, tot) in conventions.iter().zip(totals.iter_mut()) {
                let (l, r) = run.compare(&Engine::new(*conv))?;
                tot.0 += l.checked + r.checked;
                tot.1 += l.mismatches + r.mismatches;
                tot.2 += l.parity_failures + r.parity_failures;
            }
        }
    }
    let candidates: Vec<CandidateResult> = conventions
        .iter()
        .zip(&totals)
        .map(|(c, &(checked, mismatches, parity_failures))| CandidateResult {
            convention: c.name(),
            checked,
            mismatches,
            parity_failures,
            matches: mismatches == 0 && parity_failures == 0,
        })
        .collect();
    let matching: Vec<&Convention> = conventions.iter().zip(&candidates).filter(|(_, r)| r.matches).map(|(c, _)| c).collect();
    let chosen = match matching.as_slice() {
        [] => return Err(Error::NoConsistentConvention),
        [one] => **one,
        many if many.contains(&&PINNED_CONVENTION) => PINNED_CONVENTION,
        many => *many[0],
    };
    Ok(CalibrationReport {
        contexts: contexts.to_vec(),
        q_list: q_list.to_vec(),
        ambiguous: matching.len() > 1,
        rejected: candidates.iter().filter(|r| !r.matches).map(|r| r.convention.clone()).collect(),
        chosen: chosen.name(),
        candidates,
    })
}

/// The grid on which the pinned convention is the unique match.
pub fn default_calibration_grid() -> Vec<Context> {
    vec![Context::new(1, 1, 1), Context::new(2, 1, 1), Context::new(2, 2, 2)]
}
