//! Right action of the generators of `MS_{m,d}` from the printed case
//! formulas, column by column on how the decoration meets columns `h`, `h+1`.
//!
//! The normative right action goes through the transpose; this module is a
//! cross-check. Terms whose printed form disagrees with the transpose route
//! are corrected here and listed in [`CORRECTIONS`].

use crate::decorated::DecoratedMatrix;
use crate::error::{Error, Result};
use crate::laurent::{bracket1, LaurentPolynomial};

use super::left::Terms;
use super::token::{GeneratorToken, TokenKind};

/// Printed right-action terms that were amended to agree with the transpose
/// route, one line each.
pub const CORRECTIONS: &[&str] = &[
    "L, decoration in column 1: the sum range printed as `i_{k-1} < <= i_k` is read as `i_{k-1} < i <= i_k`",
    "L, last decoration right of column 1: the exponent range printed as `i_k < t <= t` is read as `i_k < i <= t`",
    "E_h, both columns decorated: the exponent base printed as `xi(j_{l-1})` is `xi(i_{l-1})`",
    "E_h, both columns decorated: rows i_{l-1} < p <= i_l with the decoration kept take `xi(p) - 1`, not `xi(p)`",
    "F_h, column h+1 decorated only: the term re-decorated at (i_l, h) has exponent built on `xi'(p)`, not `xi(p)`",
    "F_h, both columns decorated: the term p = i_l with the decoration kept has exponent `xi'(p) - 1`, not `xi(p) - 1`",
    "F_h, both columns decorated: the terms re-decorated at (s, h+1) have exponent `xi'(p) - sum_{s<i<=p} a_{i,h+1} + 1`, not `xi(p) - ... - 1`",
];

/// Which branch of the right-hand case analysis fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RightCase {
    Diagonal,
    /// `L`, last decoration right of column 1.
    LRightOfFirstColumn,
    /// `L`, a decoration in column 1.
    LFirstColumn,
    LUndecorated,
    /// `E`/`F`: no decoration in columns `h`, `h+1`.
    Free,
    /// `E`/`F`: column `h` decorated, `h+1` not.
    LeftOnly,
    /// `E`/`F`: column `h+1` decorated, `h` not.
    RightOnly,
    /// `E`/`F`: both columns decorated.
    Both,
}

pub fn right_case(t: &GeneratorToken, x: &DecoratedMatrix) -> Result<RightCase> {
    Ok(match t.kind {
        TokenKind::HPlus | TokenKind::HMinus => RightCase::Diagonal,
        TokenKind::L => {
            let k = x.delta().len() as i64;
            if k == 0 {
                RightCase::LUndecorated
            } else if x.j_at(k) == 1 {
                RightCase::LFirstColumn
            } else {
                RightCase::LRightOfFirstColumn
            }
        }
        TokenKind::E | TokenKind::F => {
            let h = t.index;
            match (x.delta_index_of_col(h), x.delta_index_of_col(h + 1)) {
                (None, None) => RightCase::Free,
                (Some(_), None) => RightCase::LeftOnly,
                (None, Some(_)) => RightCase::RightOnly,
                (Some(l), Some(l1)) => {
                    if l1 + 1 != l {
                        return Err(Error::MalformedDelta(format!(
                            "columns {h} and {} decorated non-adjacently in {x}",
                            h + 1
                        )));
                    }
                    RightCase::Both
                }
            }
        }
    })
}

fn v(e: i64) -> LaurentPolynomial {
    LaurentPolynomial::v_pow(e as i32)
}

fn one_minus(k: i64) -> LaurentPolynomial {
    LaurentPolynomial::one() - v(-2 * k)
}

/// Column-sum helper over a row range, clamped to the matrix.
fn cs(x: &DecoratedMatrix, j: i64, lo: i64, hi: i64) -> i64 {
    (lo.max(1)..=hi.min(x.rows() as i64)).map(|i| x.at(i, j)).sum()
}

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

impl Sink<'_> {
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

pub(crate) fn act_right_basis(t: &GeneratorToken, x: &DecoratedMatrix) -> Result<Terms> {
    let case = right_case(t, x)?;
    let mut sink = Sink { x, out: Vec::new() };
    match t.kind {
        TokenKind::HPlus | TokenKind::HMinus => {
            let s = cs(x, t.index as i64, 1, x.rows() as i64);
            let e = if t.kind == TokenKind::HPlus { -s } else { s };
            sink.out.push((x.clone(), v(e)));
        }
        TokenKind::L => act_l(x, case, &mut sink)?,
        TokenKind::E => act_e(x, t.index, case, &mut sink)?,
        TokenKind::F => act_f(x, t.index, case, &mut sink)?,
    }
    Ok(sink.out)
}

fn act_l(x: &DecoratedMatrix, case: RightCase, sink: &mut Sink<'_>) -> Result<()> {
    let n = x.rows() as i64;
    let k = x.delta().len() as i64;
    let a1 = |i: i64| x.at(i, 1);
    match case {
        RightCase::LRightOfFirstColumn => {
            let ik = x.i_at(k);
            let pre = -2 * cs(x, 1, ik + 1, n);
            sink.redecorated(v(pre), x.delta().to_vec())?;
            for t in (ik + 1)..=n {
                if a1(t) > 0 {
                    let mut delta = x.delta().to_vec();
                    delta.push((t as usize, 1));
                    sink.redecorated(v(pre + cs(x, 1, ik + 1, t)), delta)?;
                }
            }
        }
        RightCase::LFirstColumn => {
            let (ik, ik1) = (x.i_at(k), x.i_at(k - 1));
            let pre = -2 * cs(x, 1, ik + 1, n);
            let drop = one_minus(a1(ik));
            for t in (ik1 + 1)..=n {
                if a1(t) > 0 {
                    let c = &v(pre - cs(x, 1, 1, ik) + cs(x, 1, 1, t)) * &drop;
                    sink.redecorated(c, splice(x, k, 1, &[(t as usize, 1)]))?;
                }
            }
            let c = &v(pre - cs(x, 1, ik1 + 1, ik)) * &drop;
            sink.redecorated(c, splice(x, k, 1, &[]))?;
        }
        RightCase::LUndecorated => {
            let col = cs(x, 1, 1, n);
            for t in 1..=n {
                if a1(t) > 0 {
                    sink.redecorated(v(-col - cs(x, 1, t + 1, n)), vec![(t as usize, 1)])?;
                }
            }
            sink.redecorated(v(-2 * col), Vec::new())?;
        }
        _ => unreachable!("non-L case for L token"),
    }
    Ok(())
}

fn act_e(x: &DecoratedMatrix, h: usize, case: RightCase, sink: &mut Sink<'_>) -> Result<()> {
    let n = x.rows() as i64;
    let hi = h as i64;
    let xi = |p: i64| cs(x, hi + 1, 1, p) - cs(x, hi, 1, p - 1);
    let left = |p: i64| x.at(p, hi);
    let right = |p: i64| x.at(p, hi + 1);
    let delta = || x.delta().to_vec();
    let mv = |p: i64| ((p as usize, h + 1), (p as usize, h));
    match case {
        RightCase::Free => {
            for p in 1..=n {
                if left(p) >= 1 {
                    let (a, b) = mv(p);
                    sink.moved(&v(xi(p)) * &bracket1(right(p) + 1), a, b, delta())?;
                }
            }
        }
        RightCase::LeftOnly => {
            let l = x.delta_index_of_col(h).unwrap() as i64;
            let (il, il1) = (x.i_at(l), x.i_at(l - 1));
            for p in 1..=n {
                if left(p) < 1 {
                    continue;
                }
                let shift = if p > il1 && p <= il { -1 } else { 0 };
                let (a, b) = mv(p);
                sink.moved(&v(xi(p) + shift) * &bracket1(right(p) + 1), a, b, delta())?;
            }
            let base = cs(x, hi + 1, 1, il1);
            let (a, b) = mv(il);
            sink.moved(v(base - cs(x, hi, 1, il - 1)), a, b, splice(x, l, 1, &[(il as usize, h + 1)]))?;
            for s in (il1 + 1)..il {
                if left(s) >= 1 {
                    let (a, b) = mv(s);
                    sink.moved(
                        v(base - cs(x, hi, 1, s - 1)),
                        a,
                        b,
                        splice(x, l, 1, &[(s as usize, h + 1), (il as usize, h)]),
                    )?;
                }
            }
        }
        RightCase::RightOnly => {
            let l = x.delta_index_of_col(h + 1).unwrap() as i64;
            let il = x.i_at(l);
            for p in 1..=n {
                if left(p) < 1 {
                    continue;
                }
                let br = if p == il { bracket1(right(p)) } else { bracket1(right(p) + 1) };
                let (a, b) = mv(p);
                sink.moved(&v(xi(p)) * &br, a, b, delta())?;
            }
        }
        RightCase::Both => {
            // (i_{l-1}, h+1) and (i_l, h) are consecutive decorations.
            let l = x.delta_index_of_col(h).unwrap() as i64;
            let (il, il1) = (x.i_at(l), x.i_at(l - 1));
            for p in 1..=n {
                if left(p) < 1 {
                    continue;
                }
                let br = if p == il1 { bracket1(right(p)) } else { bracket1(right(p) + 1) };
                let shift = if p > il1 && p <= il { -1 } else { 0 };
                let (a, b) = mv(p);
                sink.moved(&v(xi(p) + shift) * &br, a, b, delta())?;
            }
            let tail = &one_minus(1) * &bracket1(right(il1));
            let base = xi(il1);
            let (a, b) = mv(il);
            sink.moved(
                &v(base - cs(x, hi, il1, il - 1)) * &tail,
                a,
                b,
                splice(x, l - 1, 2, &[(il as usize, h + 1)]),
            )?;
            for s in (il1 + 1)..il {
                if left(s) >= 1 {
                    let (a, b) = mv(s);
                    sink.moved(
                        &v(base - cs(x, hi, il1, s - 1)) * &tail,
                        a,
                        b,
                        splice(x, l - 1, 2, &[(s as usize, h + 1), (il as usize, h)]),
                    )?;
                }
            }
        }
        _ => unreachable!("non-E case for E token"),
    }
    Ok(())
}

fn act_f(x: &DecoratedMatrix, h: usize, case: RightCase, sink: &mut Sink<'_>) -> Result<()> {
    let n = x.rows() as i64;
    let hi = h as i64;
    let xi_p = |p: i64| cs(x, hi, p, n) - cs(x, hi + 1, p + 1, n);
    let left = |p: i64| x.at(p, hi);
    let right = |p: i64| x.at(p, hi + 1);
    let delta = || x.delta().to_vec();
    let mv = |p: i64| ((p as usize, h), (p as usize, h + 1));
    match case {
        RightCase::Free => {
            for p in 1..=n {
                if right(p) >= 1 {
                    let (a, b) = mv(p);
                    sink.moved(&v(xi_p(p)) * &bracket1(left(p) + 1), a, b, delta())?;
                }
            }
        }
        RightCase::LeftOnly => {
            let l = x.delta_index_of_col(h).unwrap() as i64;
            let (il, il1) = (x.i_at(l), x.i_at(l - 1));
            for p in 1..=n {
                if right(p) < 1 {
                    continue;
                }
                let c = if p > il1 && p < il {
                    &v(xi_p(p) - 1) * &bracket1(left(p) + 1)
                } else if p == il {
                    &v(xi_p(p) - 1) * &bracket1(left(p))
                } else {
                    &v(xi_p(p)) * &bracket1(left(p) + 1)
                };
                let (a, b) = mv(p);
                sink.moved(c, a, b, delta())?;
            }
        }
        RightCase::RightOnly => {
            let l = x.delta_index_of_col(h + 1).unwrap() as i64;
            let (il, il1) = (x.i_at(l), x.i_at(l - 1));
            for p in 1..=n {
                if right(p) >= 1 {
                    let (a, b) = mv(p);
                    sink.moved(&v(xi_p(p)) * &bracket1(left(p) + 1), a, b, delta())?;
                }
            }
            let p = il;
            let (a, b) = mv(p);
            let c = v(xi_p(p) - cs(x, hi + 1, il1 + 1, p) + 1);
            sink.moved(c, a, b, splice(x, l, 1, &[(p as usize, h)]))?;
            for s in (il1 + 1)..il {
                let c = v(xi_p(p) - cs(x, hi + 1, s + 1, p) + 1);
                sink.moved(c, a, b, splice(x, l, 1, &[(s as usize, h + 1), (p as usize, h)]))?;
            }
        }
        RightCase::Both => {
            let l = x.delta_index_of_col(h).unwrap() as i64;
            let (il, il1, il2) = (x.i_at(l), x.i_at(l - 1), x.i_at(l - 2));
            for p in 1..=n {
                if right(p) < 1 {
                    continue;
                }
                let c = if p > il1 && p < il {
                    &v(xi_p(p) - 1) * &bracket1(left(p) + 1)
                } else if p == il {
                    &v(xi_p(p) - 1) * &bracket1(left(p))
                } else {
                    &v(xi_p(p)) * &bracket1(left(p) + 1)
                };
                let (a, b) = mv(p);
                sink.moved(c, a, b, delta())?;
            }
            let p = il1;
            let (a, b) = mv(p);
            let tail = &one_minus(1) * &bracket1(left(p) + 1);
            let c = &v(xi_p(p) - cs(x, hi + 1, il2 + 1, p) + 1) * &tail;
            sink.moved(c, a, b, splice(x, l - 1, 1, &[]))?;
            for s in (il2 + 1)..il1 {
                let c = &v(xi_p(p) - cs(x, hi + 1, s + 1, p) + 1) * &tail;
                sink.moved(c, a, b, splice(x, l - 1, 1, &[(s as usize, h + 1)]))?;
            }
        }
        _ => unreachable!("non-F case for F token"),
    }
    Ok(())
}
