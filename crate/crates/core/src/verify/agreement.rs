//! Symbolic actions against the finite-field oracle.
//!
//! For a generator `g = sum_x g_x [x]` and an input `[z]`, the symbolic side
//! gives `g * [z] = sum_y c_y [y]`. Passing to the `e`-basis with
//! `[x] = v^{w(x)} e_x`, the oracle side is
//! `v^{w(z)} sum_x g_x v^{w(x)} sum_y #(y; x, z) e_y`, so we compare
//! `c_y v^{w(y) - w(z)}` with `sum_x g_x v^{w(x)} #(y; x, z)` at `v = sqrt(q)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::{generator_coefficient, Context, Engine, GeneratorToken, ModuleElement, Side};
use crate::decorated::{Convention, DecoratedMatrix};
use crate::error::{Error, Result};
use crate::field::{GeneratorCounts, Oracle};
use crate::laurent::{specialize_v2, LaurentPolynomial, SpecializedValue};

/// One disagreement between the symbolic action and the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct Divergence {
    pub side: Side,
    pub token: GeneratorToken,
    pub input: DecoratedMatrix,
    pub output: DecoratedMatrix,
    /// `c_y v^{w(y) - w(z)}` as computed symbolically.
    pub symbolic: String,
    /// Specialized symbolic value, or the parity failure.
    pub symbolic_value: String,
    pub oracle_value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub context: Context,
    pub q: u64,
    pub convention: String,
    pub checked: usize,
    pub mismatches: usize,
    pub parity_failures: usize,
    pub first_divergence: Option<Divergence>,
    /// Up to [`MAX_LISTED`] divergences, in check order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub divergences: Vec<Divergence>,
}

pub const MAX_LISTED: usize = 32;

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.parity_failures == 0
    }
}

/// Parity of the `e`-basis exponents of the generator summands that can
/// multiply `z`; they all share it.
fn generator_parity(t: &GeneratorToken, side: Side, z: &DecoratedMatrix, algebra_basis: &[DecoratedMatrix], convention: Convention) -> Result<i64> {
    let (ro, co) = z.marginals();
    let mut parity = None;
    for x in algebra_basis {
        let (xro, xco) = x.marginals();
        let meets = match side {
            Side::Left => xco == ro,
            Side::Right => xro == co,
        };
        if !meets {
            continue;
        }
        if let Some(g) = generator_coefficient(t, x) {
            let e = g.min_exponent().unwrap_or(0) as i64 + x.weight_exponent(convention);
            let p = e.rem_euclid(2);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => {
                    return Err(Error::Internal(format!("generator {t} mixes exponent parities")));
                }
                _ => {}
            }
        }
    }
    Ok(parity.unwrap_or(0))
}

/// Compares every token on `side` against precomputed oracle counts.
pub fn compare_with_counts(engine: &Engine, counts: &GeneratorCounts) -> Result<AgreementReport> {
    let ctx = counts.context;
    let side = counts.side;
    let size = match side {
        Side::Left => ctx.n,
        Side::Right => ctx.m,
    };
    let conv = engine.convention();
    let w = |x: &DecoratedMatrix| x.weight_exponent(conv);
    let q = counts.q;
    let mut report = AgreementReport {
        context: ctx,
        q,
        convention: conv.name(),
        checked: 0,
        mismatches: 0,
        parity_failures: 0,
        first_divergence: None,
        divergences: Vec::new(),
    };
    for t in GeneratorToken::all(size) {
        for (zi, z) in counts.basis.iter().enumerate() {
            let gamma = generator_parity(&t, side, z, &counts.algebra_basis, conv)?;
            let image = engine.act(side, &t, &ModuleElement::basis(ctx, z.clone())?)?;
            let expansion = counts.expansion(&t, zi);
            let mut outputs: BTreeMap<usize, ()> = expansion.keys().map(|&y| (y, ())).collect();
            let mut symbolic: BTreeMap<usize, LaurentPolynomial> = BTreeMap::new();
            for (y, c) in image.terms() {
                let yi = counts
                    .basis
                    .binary_search(y)
                    .map_err(|_| Error::Internal(format!("{y} missing from the basis")))?;
                symbolic.insert(yi, c.shift((w(y) - w(z) - gamma) as i32));
                outputs.insert(yi, ());
            }
            for &yi in outputs.keys() {
                report.checked += 1;
                let lhs = symbolic.get(&yi).cloned().unwrap_or_default();
                let mut rhs = SpecializedValue::zero(q);
                if let Some(xs) = expansion.get(&yi) {
                    for (&xi, &count) in xs {
                        let x = &counts.algebra_basis[xi];
                        let g = generator_coefficient(&t, x).expect("oracle orbit outside generator support");
                        let term = g.shift((w(x) - gamma) as i32);
                        rhs = &rhs + &(&specialize_v2(&term, q) * &SpecializedValue::from_integer(count, q));
                    }
                }
                let parity_ok = lhs.has_only_even_exponents();
                let lhs_value = specialize_v2(&lhs, q);
                if !parity_ok || lhs_value != rhs {
                    if parity_ok {
                        report.mismatches += 1;
                    } else {
                        report.parity_failures += 1;
                    }
                    if report.divergences.len() < MAX_LISTED {
                        report.divergences.push(Divergence {
                            side,
                            token: t,
                            input: z.clone(),
                            output: counts.basis[yi].clone(),
                            symbolic: lhs.to_string(),
                            symbolic_value: if parity_ok {
                                lhs_value.to_string()
                            } else {
                                format!("odd exponents in {lhs}")
                            },
                            oracle_value: rhs.to_string(),
                        });
                        report.first_divergence = report.divergences.first().cloned();
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Oracle counts for both sides of one `(n, m, d, q)`.
pub struct OracleRun {
    pub left: GeneratorCounts,
    pub right: GeneratorCounts,
}

impl OracleRun {
    pub fn new(context: Context, q: u64, max_work: u64) -> Result<Self> {
        let oracle = Oracle::new(context, q, max_work)?;
        Ok(Self {
            left: oracle.generator_counts(Side::Left)?,
            right: oracle.generator_counts(Side::Right)?,
        })
    }

    pub fn compare(&self, engine: &Engine) -> Result<(AgreementReport, AgreementReport)> {
        Ok((compare_with_counts(engine, &self.left)?, compare_with_counts(engine, &self.right)?))
    }
}

/// Full agreement check at one `(n, m, d, q)`, both sides.
pub fn verify_oracle_agreement(engine: &Engine, context: Context, q: u64, max_work: u64) -> Result<(AgreementReport, AgreementReport)> {
    OracleRun::new(context, q, max_work)?.compare(engine)
}
