//! Three independent counts of the basis of `MV_{n|m}`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::action::Context;
use crate::decorated::{dimension_count, enumerate_decorated};
use crate::error::Result;
use crate::field::Oracle;

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCount {
    pub q: u64,
    pub orbits: usize,
    /// Sum of orbit sizes.
    pub triples: u64,
    /// `|X_{n,d}| |X_{m,d}| q^d`, counted from q-multinomials.
    pub expected_triples: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub context: Context,
    pub formula: String,
    pub enumerated: usize,
    pub oracle: Vec<OrbitCount>,
    pub passed: bool,
}

fn q_int(k: u64, q: u64) -> BigUint {
    (0..k).map(|i| BigUint::from(q).pow(i as u32)).sum()
}

fn q_factorial(k: u64, q: u64) -> BigUint {
    (1..=k).map(|i| q_int(i, q)).product()
}

/// Number of `n`-step flags `0 = V_0 ⊆ ... ⊆ V_n = F_q^d`.
pub fn flag_count(n: usize, d: u32, q: u64) -> BigUint {
    fn rec(parts: usize, left: u32, q: u64, denom: BigUint, total: &BigUint, acc: &mut BigUint) {
        if parts == 1 {
            *acc += total / (denom * q_factorial(left as u64, q));
            return;
        }
        for a in 0..=left {
            rec(parts - 1, left - a, q, &denom * q_factorial(a as u64, q), total, acc);
        }
    }
    if n == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let total = q_factorial(d as u64, q);
    let mut acc = BigUint::zero();
    rec(n, d, q, BigUint::one(), &total, &mut acc);
    acc
}

/// `dimension_count`, the enumeration, and the oracle orbit count at each `q`.
pub fn verify_dimensions(context: Context, q_list: &[u64], max_work: u64) -> Result<DimensionReport> {
    let formula = dimension_count(context.n, context.m, context.d);
    let enumerated = enumerate_decorated(context.n, context.m, context.d).len();
    let mut oracle = Vec::new();
    for &q in q_list {
        let table = Oracle::new(context, q, max_work)?.orbit_table();
        let expected = flag_count(context.n, context.d, q) * flag_count(context.m, context.d, q) * BigUint::from(q).pow(context.d);
        oracle.push(OrbitCount {
            q,
            orbits: table.entries.len(),
            triples: table.entries.values().map(|e| e.size).sum(),
            expected_triples: expected.to_u64().unwrap_or(u64::MAX),
        });
    }
    let passed = formula == BigUint::from(enumerated)
        && oracle.iter().all(|o| o.orbits == enumerated && o.triples == o.expected_triples);
    Ok(DimensionReport {
        context,
        formula: formula.to_string(),
        enumerated,
        oracle,
        passed,
    })
}
