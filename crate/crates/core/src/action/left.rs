//! Left action of the generators of `MS_{n,d}` on the `[A]_Delta` basis of
//! `MV_{n|m}`, case by case on how the decoration meets rows `h`, `h+1`.

use crate::decorated::DecoratedMatrix;
use crate::error::{Error, Result};
use crate::laurent::{bracket1, LaurentPolynomial};

use super::token::{GeneratorToken, TokenKind};

/// Places where the printed left-action formulas were read or amended, one
/// line each. Every entry is backed by oracle agreement.
pub const CORRECTIONS: &[&str] = &[
    "F_h, row h decorated only: the range printed as `i_{l+1} < p <= i_l` is read as `j_{l+1} < p <= j_l`",
    "F_h, row h decorated only: the missing operator between the first two sums is read as `+`",
    "F_h, rows h and h+1 decorated: columns j_{l+1} < p <= j_l with the decoration kept take `beta'(p) - 1`, not `beta'(p)`",
    "all cases: a term whose target decoration sits on a zero entry is dropped",
];

pub(crate) type Terms = Vec<(DecoratedMatrix, LaurentPolynomial)>;

/// Which branch of the case analysis fired. Exposed so the dispatcher can be
/// audited for totality and exclusivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeftCase {
    /// `H` tokens.
    Diagonal,
    /// `L`, first decoration below row 1.
    LBelowFirstRow,
    /// `L`, a decoration in row 1.
    LFirstRow,
    /// `L`, no decoration.
    LUndecorated,
    /// `E`/`F`: no decoration in rows `h`, `h+1`.
    Free,
    /// `E`/`F`: a decoration in row `h` only.
    UpperOnly,
    /// `E`/`F`: a decoration in row `h+1` only.
    LowerOnly,
    /// `E`/`F`: decorations in both rows.
    Both,
}

/// The case that applies to `x` for token `t`.
pub fn left_case(t: &GeneratorToken, x: &DecoratedMatrix) -> Result<LeftCase> {
    Ok(match t.kind {
        TokenKind::HPlus | TokenKind::HMinus => LeftCase::Diagonal,
        TokenKind::L => {
            if x.delta().is_empty() {
                LeftCase::LUndecorated
            } else if x.i_at(1) == 1 {
                LeftCase::LFirstRow
            } else {
                LeftCase::LBelowFirstRow
            }
        }
        TokenKind::E | TokenKind::F => {
            let h = t.index;
            match (x.delta_index_of_row(h), x.delta_index_of_row(h + 1)) {
                (None, None) => LeftCase::Free,
                (Some(_), None) => LeftCase::UpperOnly,
                (None, Some(_)) => LeftCase::LowerOnly,
                (Some(l), Some(l1)) => {
                    if l1 != l + 1 {
                        return Err(Error::MalformedDelta(format!(
                            "rows {h} and {} decorated non-adjacently in {x}",
                            h + 1
                        )));
                    }
                    LeftCase::Both
                }
            }
        }
    })
}

fn v(e: i64) -> LaurentPolynomial {
    LaurentPolynomial::v_pow(e as i32)
}

/// `1 - v^{-2k}`.
fn one_minus(k: i64) -> LaurentPolynomial {
    LaurentPolynomial::one() - v(-2 * k)
}

/// Row-sum helper over a column range, clamped to the matrix.
fn rs(x: &DecoratedMatrix, i: i64, lo: i64, hi: i64) -> i64 {
    (lo.max(1)..=hi.min(x.cols() as i64)).map(|j| x.at(i, j)).sum()
}

/// Decoration list with positions `l..l+len` (1-based) replaced by `with`.
fn splice(x: &DecoratedMatrix, l: i64, len: usize, with: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let start = (l - 1) as usize;
    let mut out = x.delta()[..start].to_vec();
    out.extend_from_slice(with);
    out.extend_from_slice(&x.delta()[start + len..]);
    out
}

struct Sink<'a> {
    x: &'a DecoratedMatrix,
    out: Terms,
}

impl<'a> Sink<'a> {
    fn new(x: &'a DecoratedMatrix) -> Self {
        Self { x, out: Vec::new() }
    }

    /// Adds `c [A + E_plus - E_minus]_delta`; inadmissible results vanish.
    fn moved(&mut self, c: LaurentPolynomial, plus: (usize, usize), minus: (usize, usize), delta: Vec<(usize, usize)>) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if let Some(y) = self.x.moved(plus, minus, delta)? {
            self.out.push((y, c));
        }
        Ok(())
    }

    fn redecorated(&mut self, c: LaurentPolynomial, delta: Vec<(usize, usize)>) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if let Some(y) = self.x.with_delta(delta)? {
            self.out.push((y, c));
        }
        Ok(())
    }
}

/// `t * [x]` for a left token, as a list of (basis, coefficient) terms that
/// may repeat basis elements.
pub(crate) fn act_left_basis(t: &GeneratorToken, x: &DecoratedMatrix) -> Result<Terms> {
    let case = left_case(t, x)?;
    let mut sink = Sink::new(x);
    match t.kind {
        TokenKind::HPlus | TokenKind::HMinus => {
            let s = rs(x, t.index as i64, 1, x.cols() as i64);
            let e = if t.kind == TokenKind::HPlus { -s } else { s };
            sink.out.push((x.clone(), v(e)));
        }
        TokenKind::L => act_l(x, case, &mut sink)?,
        TokenKind::E => act_e(x, t.index, case, &mut sink)?,
        TokenKind::F => act_f(x, t.index, case, &mut sink)?,
    }
    Ok(sink.out)
}

fn act_l(x: &DecoratedMatrix, case: LeftCase, sink: &mut Sink<'_>) -> Result<()> {
    let m = x.cols() as i64;
    let a1 = |j: i64| x.at(1, j);
    match case {
        LeftCase::LBelowFirstRow => {
            let j1 = x.j_at(1);
            let pre = -2 * rs(x, 1, j1 + 1, m);
            sink.redecorated(v(pre), x.delta().to_vec())?;
            for t in (j1 + 1)..=m {
                if a1(t) > 0 {
                    let c = v(pre + rs(x, 1, j1 + 1, t));
                    sink.redecorated(c, splice(x, 1, 0, &[(1, t as usize)]))?;
                }
            }
        }
        LeftCase::LFirstRow => {
            let (j1, j2) = (x.j_at(1), x.j_at(2));
            let pre = -2 * rs(x, 1, j1 + 1, m);
            let drop = one_minus(a1(j1));
            for t in (j2 + 1)..=m {
                if a1(t) > 0 {
                    let c = &v(pre - rs(x, 1, 1, j1) + rs(x, 1, 1, t)) * &drop;
                    sink.redecorated(c, splice(x, 1, 1, &[(1, t as usize)]))?;
                }
            }
            let c = &v(pre - rs(x, 1, j2 + 1, j1)) * &drop;
            sink.redecorated(c, splice(x, 1, 1, &[]))?;
        }
        LeftCase::LUndecorated => {
            let row = rs(x, 1, 1, m);
            for t in 1..=m {
                if a1(t) > 0 {
                    sink.redecorated(v(-row - rs(x, 1, t + 1, m)), vec![(1, t as usize)])?;
                }
            }
            sink.redecorated(v(-2 * row), Vec::new())?;
        }
        _ => unreachable!("non-L case for L token"),
    }
    Ok(())
}

fn act_e(x: &DecoratedMatrix, h: usize, case: LeftCase, sink: &mut Sink<'_>) -> Result<()> {
    let m = x.cols() as i64;
    let hi = h as i64;
    let beta = |p: i64| rs(x, hi, p, m) - rs(x, hi + 1, p + 1, m);
    let up = |p: i64| x.at(hi, p);
    let low = |p: i64| x.at(hi + 1, p);
    let delta = || x.delta().to_vec();
    let mv = |p: i64| ((h, p as usize), (h + 1, p as usize));
    match case {
        LeftCase::Free => {
            for p in 1..=m {
                if low(p) >= 1 {
                    let (a, b) = mv(p);
                    sink.moved(&v(beta(p)) * &bracket1(up(p) + 1), a, b, delta())?;
                }
            }
        }
        LeftCase::UpperOnly => {
            let l = x.delta_index_of_row(h).unwrap() as i64;
            let (jl, jl1) = (x.j_at(l), x.j_at(l + 1));
            for p in 1..=m {
                if low(p) < 1 {
                    continue;
                }
                let c = if p > jl1 && p < jl {
                    &v(beta(p) - 1) * &bracket1(up(p) + 1)
                } else if p == jl {
                    &v(beta(p) - 1) * &bracket1(up(p))
                } else {
                    &v(beta(p)) * &bracket1(up(p) + 1)
                };
                let (a, b) = mv(p);
                sink.moved(c, a, b, delta())?;
            }
        }
        LeftCase::LowerOnly => {
            let l = x.delta_index_of_row(h + 1).unwrap() as i64;
            let (jl, jl1) = (x.j_at(l), x.j_at(l + 1));
            for p in 1..=m {
                if low(p) >= 1 {
                    let (a, b) = mv(p);
                    sink.moved(&v(beta(p)) * &bracket1(up(p) + 1), a, b, delta())?;
                }
            }
            let p = jl;
            let (a, b) = mv(p);
            let c = v(beta(p) - rs(x, hi + 1, jl1 + 1, p) + 1);
            sink.moved(c, a, b, splice(x, l, 1, &[(h, p as usize)]))?;
            for t in (jl1 + 1)..jl {
                let c = v(beta(p) - rs(x, hi + 1, t + 1, p) + 1);
                sink.moved(c, a, b, splice(x, l, 1, &[(h, p as usize), (h + 1, t as usize)]))?;
            }
        }
        LeftCase::Both => {
            let l = x.delta_index_of_row(h).unwrap() as i64;
            let (jl, jl1, jl2) = (x.j_at(l), x.j_at(l + 1), x.j_at(l + 2));
            for p in 1..=m {
                if low(p) < 1 {
                    continue;
                }
                let c = if p > jl1 && p < jl {
                    &v(beta(p) - 1) * &bracket1(up(p) + 1)
                } else if p == jl {
                    &v(beta(p) - 1) * &bracket1(up(p))
                } else {
                    &v(beta(p)) * &bracket1(up(p) + 1)
                };
                let (a, b) = mv(p);
                sink.moved(c, a, b, delta())?;
            }
            let p = jl1;
            let (a, b) = mv(p);
            let tail = &one_minus(1) * &bracket1(up(p) + 1);
            let c = &v(beta(p) - rs(x, hi + 1, jl2 + 1, p) + 1) * &tail;
            sink.moved(c, a, b, splice(x, l + 1, 1, &[]))?;
            for t in (jl2 + 1)..jl1 {
                let c = &v(beta(p) - rs(x, hi + 1, t + 1, p) + 1) * &tail;
                sink.moved(c, a, b, splice(x, l + 1, 1, &[(h + 1, t as usize)]))?;
            }
        }
        _ => unreachable!("non-E case for E token"),
    }
    Ok(())
}

fn act_f(x: &DecoratedMatrix, h: usize, case: LeftCase, sink: &mut Sink<'_>) -> Result<()> {
    let m = x.cols() as i64;
    let hi = h as i64;
    let beta_p = |p: i64| rs(x, hi + 1, 1, p) - rs(x, hi, 1, p - 1);
    let up = |p: i64| x.at(hi, p);
    let low = |p: i64| x.at(hi + 1, p);
    let delta = || x.delta().to_vec();
    let mv = |p: i64| ((h + 1, p as usize), (h, p as usize));
    match case {
        LeftCase::Free => {
            for p in 1..=m {
                if up(p) >= 1 {
                    let (a, b) = mv(p);
                    sink.moved(&v(beta_p(p)) * &bracket1(low(p) + 1), a, b, delta())?;
                }
            }
        }
        LeftCase::UpperOnly => {
            let l = x.delta_index_of_row(h).unwrap() as i64;
            let (jl, jl1) = (x.j_at(l), x.j_at(l + 1));
            for p in 1..=m {
                if up(p) < 1 {
                    continue;
                }
                let shift = if p > jl1 && p <= jl { -1 } else { 0 };
                let (a, b) = mv(p);
                sink.moved(&v(beta_p(p) + shift) * &bracket1(low(p) + 1), a, b, delta())?;
            }
            let base = rs(x, hi + 1, 1, jl1);
            let p = jl;
            let (a, b) = mv(p);
            sink.moved(v(base - rs(x, hi, 1, jl - 1)), a, b, splice(x, l, 1, &[(h + 1, jl as usize)]))?;
            for t in (jl1 + 1)..jl {
                if up(t) >= 1 {
                    let (a, b) = mv(t);
                    sink.moved(
                        v(base - rs(x, hi, 1, t - 1)),
                        a,
                        b,
                        splice(x, l, 1, &[(h, jl as usize), (h + 1, t as usize)]),
                    )?;
                }
            }
        }
        LeftCase::LowerOnly => {
            let l = x.delta_index_of_row(h + 1).unwrap() as i64;
            let jl = x.j_at(l);
            for p in 1..=m {
                if up(p) < 1 {
                    continue;
                }
                let br = if p == jl { bracket1(low(p)) } else { bracket1(low(p) + 1) };
                let (a, b) = mv(p);
                sink.moved(&v(beta_p(p)) * &br, a, b, delta())?;
            }
        }
        LeftCase::Both => {
            let l = x.delta_index_of_row(h).unwrap() as i64;
            let (jl, jl1) = (x.j_at(l), x.j_at(l + 1));
            for p in 1..=m {
                if up(p) < 1 {
                    continue;
                }
                let br = if p == jl1 { bracket1(low(p)) } else { bracket1(low(p) + 1) };
                // Columns strictly right of j_{l+1} up to j_l lose one power of v,
                // as in the single-decoration case; the oracle requires it.
                let shift = if p > jl1 && p <= jl { -1 } else { 0 };
                let (a, b) = mv(p);
                sink.moved(&v(beta_p(p) + shift) * &br, a, b, delta())?;
            }
            let tail = &one_minus(1) * &bracket1(low(jl1));
            let base = beta_p(jl1);
            let (a, b) = mv(jl);
            sink.moved(
                &v(base - rs(x, hi, jl1, jl - 1)) * &tail,
                a,
                b,
                splice(x, l, 2, &[(h + 1, jl as usize)]),
            )?;
            for t in (jl1 + 1)..jl {
                if up(t) >= 1 {
                    let (a, b) = mv(t);
                    sink.moved(
                        &v(base - rs(x, hi, jl1, t - 1)) * &tail,
                        a,
                        b,
                        splice(x, l, 2, &[(h, jl as usize), (h + 1, t as usize)]),
                    )?;
                }
            }
        }
        _ => unreachable!("non-F case for F token"),
    }
    Ok(())
}
