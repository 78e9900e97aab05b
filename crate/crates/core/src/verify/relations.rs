//! Defining relations of the mirabolic quantum group and bimodule
//! commutation, checked as operator identities on every basis vector.
//!
//! The generator `H_a` of the relations acts as the token `H_a^-`
//! (`v^{+row sum}` on the left) and `H_a^{-1}` as `H_a^+`; with this
//! matching the relations `H_a E_i = v^{δ_{a,i} - δ_{a,i+1}} E_i H_a` hold.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{Context, Engine, GeneratorToken, Side};
use crate::error::Result;
use crate::laurent::LaurentPolynomial;

use super::operator::{add_scaled, Basis, OperatorSet, SparseVec};

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub basis: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub context: Context,
    pub side: Side,
    pub passed: bool,
    /// Basis vectors on which the residual is nonzero.
    pub failing_columns: usize,
    pub counterexample: Option<Counterexample>,
}

/// Relations that hold only in a corrected form. The printed `L F_i = L F_i L`
/// fails on every tested context, while its image `F_i L = L F_i L` under the
/// transpose anti-involution (which swaps `E_i` and `F_i` and fixes `L`) holds.
pub const CORRECTIONS: &[&str] = &["L F_i = L F_i L is checked as F_i L = L F_i L"];

/// `sum_k c_k w_k`, a linear combination of algebra words.
struct Relation {
    id: String,
    terms: Vec<(LaurentPolynomial, Vec<GeneratorToken>)>,
    /// `E_i F_i - F_i E_i` is compared with the H-part divided by `v - v^-1`.
    divided: Vec<(LaurentPolynomial, Vec<GeneratorToken>)>,
}

fn lp(e: i32) -> LaurentPolynomial {
    LaurentPolynomial::v_pow(e)
}

fn one() -> LaurentPolynomial {
    LaurentPolynomial::one()
}

fn neg(e: i32) -> LaurentPolynomial {
    -LaurentPolynomial::v_pow(e)
}

/// `v + v^-1`, which is `(v^2 - v^-2) / (v - v^-1)`.
fn quantum_two() -> LaurentPolynomial {
    lp(1) + lp(-1)
}

fn rel(id: String, terms: Vec<(LaurentPolynomial, Vec<GeneratorToken>)>) -> Relation {
    Relation {
        id,
        terms,
        divided: Vec::new(),
    }
}

/// Every relation instance for `MU_size`.
fn relations(size: usize) -> Vec<Relation> {
    use GeneratorToken as G;
    let h = G::h_minus;
    let hinv = G::h_plus;
    let (e, f, l) = (G::e, G::f, G::L);
    let mut out = Vec::new();
    for a in 1..=size {
        out.push(rel(format!("H{a}*H{a}^-1=1"), vec![(one(), vec![h(a), hinv(a)]), (neg(0), vec![])]));
        out.push(rel(format!("H{a}^-1*H{a}=1"), vec![(one(), vec![hinv(a), h(a)]), (neg(0), vec![])]));
        for b in (a + 1)..=size {
            out.push(rel(format!("H{a}*H{b}=H{b}*H{a}"), vec![(one(), vec![h(a), h(b)]), (neg(0), vec![h(b), h(a)])]));
        }
    }
    for i in 1..size {
        for j in 1..size {
            if i.abs_diff(j) == 1 {
                for (name, g) in [("E", e as fn(usize) -> G), ("F", f)] {
                    out.push(rel(
                        format!("{name}{i}^2{name}{j}+{name}{j}{name}{i}^2=[2]{name}{i}{name}{j}{name}{i}"),
                        vec![
                            (one(), vec![g(i), g(i), g(j)]),
                            (one(), vec![g(j), g(i), g(i)]),
                            (-quantum_two(), vec![g(i), g(j), g(i)]),
                        ],
                    ));
                }
            }
            if i < j && i.abs_diff(j) > 1 {
                for (name, g) in [("E", e as fn(usize) -> G), ("F", f)] {
                    out.push(rel(
                        format!("{name}{i}{name}{j}={name}{j}{name}{i}"),
                        vec![(one(), vec![g(i), g(j)]), (neg(0), vec![g(j), g(i)])],
                    ));
                }
            }
            let mut comm = rel(format!("E{i}F{j}-F{j}E{i}"), vec![(one(), vec![e(i), f(j)]), (neg(0), vec![f(j), e(i)])]);
            if i == j {
                comm.divided = vec![(one(), vec![h(i), hinv(i + 1)]), (neg(0), vec![hinv(i), h(i + 1)])];
            }
            out.push(comm);
        }
    }
    for a in 1..=size {
        for i in 1..size {
            let s = (a == i) as i32 - (a == i + 1) as i32;
            out.push(rel(format!("H{a}E{i}=v^{s}E{i}H{a}"), vec![(one(), vec![h(a), e(i)]), (neg(s), vec![e(i), h(a)])]));
            out.push(rel(format!("H{a}F{i}=v^{}F{i}H{a}", -s), vec![(one(), vec![h(a), f(i)]), (neg(-s), vec![f(i), h(a)])]));
        }
        out.push(rel(format!("H{a}L=LH{a}"), vec![(one(), vec![h(a), l]), (neg(0), vec![l, h(a)])]));
    }
    out.push(rel("L^2=L".into(), vec![(one(), vec![l, l]), (neg(0), vec![l])]));
    for i in 1..size {
        out.push(rel(format!("LE{i}=LE{i}L"), vec![(one(), vec![l, e(i)]), (neg(0), vec![l, e(i), l])]));
        out.push(rel(format!("F{i}L=LF{i}L"), vec![(one(), vec![f(i), l]), (neg(0), vec![l, f(i), l])]));
        out.push(rel(
            format!("[2]E{i}LE{i}=v^-1E{i}^2L+vLE{i}^2"),
            vec![
                (quantum_two(), vec![e(i), l, e(i)]),
                (neg(-1), vec![e(i), e(i), l]),
                (neg(1), vec![l, e(i), e(i)]),
            ],
        ));
        out.push(rel(
            format!("[2]F{i}LF{i}=vF{i}^2L+v^-1LF{i}^2"),
            vec![
                (quantum_two(), vec![f(i), l, f(i)]),
                (neg(1), vec![f(i), f(i), l]),
                (neg(-1), vec![l, f(i), f(i)]),
            ],
        ));
    }
    out
}

fn combine(ops: &OperatorSet, terms: &[(LaurentPolynomial, Vec<GeneratorToken>)], x: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (c, word) in terms {
        add_scaled(&mut acc, &ops.apply_word(word, x), c);
    }
    acc
}

/// Residual of one relation on basis vector `j`, or a description of a
/// failed division.
fn residual(ops: &OperatorSet, r: &Relation, j: usize) -> std::result::Result<SparseVec, String> {
    let x: SparseVec = [(j, one())].into_iter().collect();
    let mut acc = combine(ops, &r.terms, &x);
    if !r.divided.is_empty() {
        let num = combine(ops, &r.divided, &x);
        let den = lp(1) - lp(-1);
        for (k, c) in num {
            let q = c.exact_div(&den).map_err(|e| e.to_string())?;
            super::operator::add_into(&mut acc, k, -q);
        }
    }
    Ok(acc)
}

fn check(ops: &OperatorSet, basis: &Basis, r: &Relation) -> RelationReport {
    let results: Vec<(usize, std::result::Result<SparseVec, String>)> =
        (0..basis.len()).into_par_iter().map(|j| (j, residual(ops, r, j))).collect();
    let mut failing = 0;
    let mut counterexample = None;
    for (j, res) in results {
        let text = match res {
            Ok(v) if v.is_empty() => continue,
            Ok(v) => basis.to_element(&v).to_string(),
            Err(e) => e,
        };
        failing += 1;
        if counterexample.is_none() {
            counterexample = Some(Counterexample {
                basis: basis.elements[j].to_string(),
                residual: text,
            });
        }
    }
    RelationReport {
        id: r.id.clone(),
        context: basis.context,
        side: ops.side,
        passed: failing == 0,
        failing_columns: failing,
        counterexample,
    }
}

/// Every relation instance as an operator identity on `MV_{n|m}`.
pub fn verify_presentation(engine: &Engine, context: Context, side: Side) -> Result<Vec<RelationReport>> {
    let basis = Basis::new(context);
    let ops = OperatorSet::build(engine, &basis, side)?;
    let size = match side {
        Side::Left => context.n,
        Side::Right => context.m,
    };
    Ok(relations(size).iter().map(|r| check(&ops, &basis, r)).collect())
}

/// `[Φ(x), Ψ(y)] = 0` for every left token `x` and right token `y`.
pub fn verify_bimodule(engine: &Engine, context: Context) -> Result<Vec<RelationReport>> {
    let basis = Basis::new(context);
    let left = OperatorSet::build(engine, &basis, Side::Left)?;
    let right = OperatorSet::build(engine, &basis, Side::Right)?;
    let mut out = Vec::new();
    for (lt, lop) in &left.ops {
        for (rt, rop) in &right.ops {
            let failures: Vec<(usize, SparseVec)> = (0..basis.len())
                .into_par_iter()
                .filter_map(|j| {
                    let x: SparseVec = [(j, one())].into_iter().collect();
                    let mut d = lop.apply(&rop.apply(&x));
                    add_scaled(&mut d, &rop.apply(&lop.apply(&x)), &neg(0));
                    (!d.is_empty()).then_some((j, d))
                })
                .collect();
            out.push(RelationReport {
                id: format!("[left {lt}, right {rt}]"),
                context,
                side: Side::Left,
                passed: failures.is_empty(),
                failing_columns: failures.len(),
                counterexample: failures.first().map(|(j, d)| Counterexample {
                    basis: basis.elements[*j].to_string(),
                    residual: basis.to_element(d).to_string(),
                }),
            });
        }
    }
    Ok(out)
}

/// Convenience timing wrapper used by the CLI and the acceptance profile.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}
