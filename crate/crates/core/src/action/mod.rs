//! Generator actions on `MV_{n|m}`.
//!
//! Left tokens act through the explicit case formulas in [`left`]. The right
//! action is computed through the transpose anti-involution
//! `[A]_Delta * g = (g^t * [A]_Delta^t)^t`, with the printed right-hand case
//! formulas kept in [`right`] as an independent cross-check.

mod element;
mod left;
pub mod right;
mod token;

use rayon::prelude::*;

pub use element::{Context, ModuleElement};
pub use left::{left_case, LeftCase, CORRECTIONS as LEFT_CORRECTIONS};
pub use right::{right_case, RightCase, CORRECTIONS as RIGHT_CORRECTIONS};
pub use token::{GeneratorToken, Side, TokenKind};

use crate::decorated::{enumerate_decorated, Convention, DecoratedMatrix, PairRule};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

/// The normalization pinned by oracle calibration.
pub const PINNED_CONVENTION: Convention = Convention::new(PairRule::Blm);

/// Terms at or above this count are acted on in parallel.
const PAR_THRESHOLD: usize = 64;

/// Action engine parameterized by the basis normalization. The convention
/// only matters where the `e`-basis is involved: the transpose route and
/// comparisons with the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Engine {
    convention: Convention,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(PINNED_CONVENTION)
    }
}

impl Engine {
    pub fn new(convention: Convention) -> Self {
        Self { convention }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// `t * x` for a token of `MS_{n,d}`.
    pub fn act_left(&self, t: &GeneratorToken, x: &ModuleElement) -> Result<ModuleElement> {
        t.validate(x.context().n)?;
        map_terms(x, x.context(), |b| left::act_left_basis(t, b))
    }

    /// `x * t` for a token of `MS_{m,d}`, via the transpose.
    pub fn act_right(&self, x: &ModuleElement, t: &GeneratorToken) -> Result<ModuleElement> {
        self.act_right_by_transpose(x, t)
    }

    /// `x * t` from the printed right-hand case formulas.
    pub fn act_right_printed(&self, x: &ModuleElement, t: &GeneratorToken) -> Result<ModuleElement> {
        t.validate(x.context().m)?;
        map_terms(x, x.context(), |b| right::act_right_basis(t, b))
    }

    /// `x * t = (t^t * x^t)^t`.
    pub fn act_right_by_transpose(&self, x: &ModuleElement, t: &GeneratorToken) -> Result<ModuleElement> {
        let ctx = x.context();
        t.validate(ctx.m)?;
        map_terms(x, ctx, |a| self.right_basis_by_transpose(t, a))
    }

    fn right_basis_by_transpose(&self, t: &GeneratorToken, a: &DecoratedMatrix) -> Result<Vec<(DecoratedMatrix, LaurentPolynomial)>> {
        let w = |x: &DecoratedMatrix| x.weight_exponent(self.convention);
        let y = a.transpose();
        let into = w(a) - w(&y);
        // E_h^t and F_h^t are F_h and E_h up to a scalar fixed by ro(Y).
        let (left_token, gen_shift) = match t.kind {
            TokenKind::E => (GeneratorToken::f(t.index), self.generator_transpose_shift(&y, t)?),
            TokenKind::F => (GeneratorToken::e(t.index), self.generator_transpose_shift(&y, t)?),
            _ => (*t, 0),
        };
        let mut out = Vec::new();
        for (z, c) in left::act_left_basis(&left_token, &y)? {
            let back = z.transpose();
            let e = into + gen_shift + w(&z) - w(&back);
            out.push((back, c.shift(e as i32)));
        }
        Ok(out)
    }

    /// For `g = E_h` (resp. `F_h`) acting on `[Y]`, the only summand of `g`
    /// that meets `Y` is `[B]` with `B - E_{h,h+1}` (resp. `B - E_{h+1,h}`)
    /// diagonal, and its transpose pairs with `[Y]`: `co(B^t) = ro(Y)`.
    /// Returns `w(B) - w(B^t)`.
    fn generator_transpose_shift(&self, y: &DecoratedMatrix, t: &GeneratorToken) -> Result<i64> {
        let size = y.rows();
        let (ro, _) = y.marginals();
        let h = t.index;
        let mut entries = vec![0u32; size * size];
        let (r, c) = match t.kind {
            TokenKind::E => (h, h + 1),
            TokenKind::F => (h + 1, h),
            _ => unreachable!(),
        };
        for j in 1..=size {
            let dj = ro[j - 1] as i64 - if j == r { 1 } else { 0 };
            if dj < 0 {
                // No summand meets Y; the action below is zero anyway.
                return Ok(0);
            }
            entries[(j - 1) * size + (j - 1)] = dj as u32;
        }
        entries[(r - 1) * size + (c - 1)] += 1;
        let b = DecoratedMatrix::from_parts(size, size, entries, Vec::new())?;
        Ok(b.weight_exponent(self.convention) - b.transpose().weight_exponent(self.convention))
    }

    /// Applies a word as an operator product: the token nearest `x` (the last
    /// one) acts first. Left tokens multiply on the left, right tokens on the
    /// right.
    pub fn act_word(&self, word: &[(Side, GeneratorToken)], x: &ModuleElement) -> Result<ModuleElement> {
        let mut cur = x.clone();
        for (side, t) in word.iter().rev() {
            cur = match side {
                Side::Left => self.act_left(t, &cur)?,
                Side::Right => self.act_right(&cur, t)?,
            };
        }
        Ok(cur)
    }

    pub fn act(&self, side: Side, t: &GeneratorToken, x: &ModuleElement) -> Result<ModuleElement> {
        match side {
            Side::Left => self.act_left(t, x),
            Side::Right => self.act_right(x, t),
        }
    }
}

fn map_terms<F>(x: &ModuleElement, ctx: Context, f: F) -> Result<ModuleElement>
where
    F: Fn(&DecoratedMatrix) -> Result<Vec<(DecoratedMatrix, LaurentPolynomial)>> + Sync,
{
    let terms: Vec<(&DecoratedMatrix, &LaurentPolynomial)> = x.terms().collect();
    let images: Vec<Vec<(DecoratedMatrix, LaurentPolynomial)>> = if terms.len() >= PAR_THRESHOLD {
        terms.par_iter().map(|(b, _)| f(b)).collect::<Result<_>>()?
    } else {
        terms.iter().map(|(b, _)| f(b)).collect::<Result<_>>()?
    };
    let mut out = ModuleElement::zero(ctx);
    for ((_, c), image) in terms.iter().zip(images) {
        for (y, a) in image {
            if !ctx.contains(&y) {
                return Err(Error::Internal(format!("action left the context {ctx}: {y}")));
            }
            out.add_term_unchecked(y, &a * *c);
        }
    }
    Ok(out)
}

/// The element of `MS_{n,d}` named by `t`, in the `[A]_Delta` basis:
/// `E_i = sum [B]`, `F_i = sum [C]`, `H_a^± = sum v^{∓d_aa} [D]`,
/// `L = sum v^{-2 d_11} [D] + sum v^{-d'_11} [D']_{(1,1)}`.
pub fn generator_element(t: &GeneratorToken, n: usize, d: u32) -> Result<ModuleElement> {
    t.validate(n)?;
    let ctx = Context::new(n, n, d);
    let mut out = ModuleElement::zero(ctx);
    for x in enumerate_decorated(n, n, d) {
        if let Some(c) = generator_coefficient(t, &x) {
            out.add_term_unchecked(x, c);
        }
    }
    Ok(out)
}

/// Coefficient of `[x]` in the generator `t`, if `x` is in its support.
pub fn generator_coefficient(t: &GeneratorToken, x: &DecoratedMatrix) -> Option<LaurentPolynomial> {
    let n = x.rows();
    if x.cols() != n {
        return None;
    }
    let off: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && x.a(i, j) > 0)
        .collect();
    let undecorated = x.delta().is_empty();
    let v = |e: i64| LaurentPolynomial::v_pow(e as i32);
    match t.kind {
        TokenKind::E if undecorated && off == [(t.index, t.index + 1)] && x.a(t.index, t.index + 1) == 1 => Some(v(0)),
        TokenKind::F if undecorated && off == [(t.index + 1, t.index)] && x.a(t.index + 1, t.index) == 1 => Some(v(0)),
        TokenKind::HPlus if undecorated && off.is_empty() => Some(v(-(x.a(t.index, t.index) as i64))),
        TokenKind::HMinus if undecorated && off.is_empty() => Some(v(x.a(t.index, t.index) as i64)),
        TokenKind::L if off.is_empty() => {
            let d11 = x.a(1, 1) as i64;
            match x.delta() {
                [] => Some(v(-2 * d11)),
                [(1, 1)] => Some(v(-d11)),
                _ => None,
            }
        }
        _ => None,
    }
}
