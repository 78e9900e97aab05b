use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decorated::DecoratedMatrix;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

/// Shape `(n, m)` and total `d` of the decorated matrices indexing a module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Context {
    pub n: usize,
    pub m: usize,
    pub d: u32,
}

impl Context {
    pub fn new(n: usize, m: usize, d: u32) -> Self {
        Self { n, m, d }
    }

    pub fn transposed(&self) -> Self {
        Self::new(self.m, self.n, self.d)
    }

    pub fn contains(&self, x: &DecoratedMatrix) -> bool {
        x.rows() == self.n && x.cols() == self.m && x.total() == self.d
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.m, self.d)
    }
}

/// A finite `Z[v,v^-1]`-combination of basis elements `[A]_Delta` of `MV_{n|m}`
/// (or of `MS_{n,d}` when `n = m`).
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    context: Context,
    terms: BTreeMap<DecoratedMatrix, LaurentPolynomial>,
}

impl ModuleElement {
    pub fn zero(context: Context) -> Self {
        Self {
            context,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(context: Context, x: DecoratedMatrix) -> Result<Self> {
        let mut out = Self::zero(context);
        out.add_term(x, LaurentPolynomial::one())?;
        Ok(out)
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedMatrix, &LaurentPolynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &DecoratedMatrix) -> LaurentPolynomial {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: DecoratedMatrix, c: LaurentPolynomial) -> Result<()> {
        if !self.context.contains(&x) {
            return Err(Error::ContextMismatch(format!("{x} is not in context {}", self.context)));
        }
        self.add_term_unchecked(x, c);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, x: DecoratedMatrix, c: LaurentPolynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ModuleElement) -> Result<()> {
        if other.context != self.context {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.context, other.context)));
        }
        for (x, c) in &other.terms {
            self.add_term_unchecked(x.clone(), c.clone());
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &ModuleElement, c: &LaurentPolynomial) -> Result<()> {
        if other.context != self.context {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.context, other.context)));
        }
        for (x, a) in &other.terms {
            self.add_term_unchecked(x.clone(), a * c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> Self {
        let mut out = Self::zero(self.context);
        for (x, a) in &self.terms {
            out.add_term_unchecked(x.clone(), a * c);
        }
        out
    }

    pub fn sub(&self, other: &ModuleElement) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &-LaurentPolynomial::one())?;
        Ok(out)
    }

    /// Text form: `c1*[A]{..} + c2*[B]{..}`, or `0`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses [`ModuleElement::to_text`] output for a given context.
    pub fn parse_text(context: Context, s: &str) -> Result<Self> {
        let mut out = Self::zero(context);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for part in split_top_level(s) {
            let part = part.trim();
            let (c, basis) = match part.strip_prefix('(') {
                Some(rest) => {
                    let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed coefficient in {part:?}")))?;
                    let basis = rest[close + 1..]
                        .strip_prefix('*')
                        .ok_or_else(|| Error::Parse(format!("missing '*' in {part:?}")))?;
                    (rest[..close].parse::<LaurentPolynomial>()?, basis)
                }
                None => (LaurentPolynomial::one(), part),
            };
            out.add_term(basis.parse()?, c)?;
        }
        Ok(out)
    }
}

/// Splits on ` + ` that is not nested in brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth -= 1,
            b'+' if depth == 0 && i > 0 && bytes[i - 1] == b' ' => {
                parts.push(&s[start..i - 1]);
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for ModuleElement {
    /// Terms joined by ` + `, each `(coeff)*basis`; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (x, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{x}")?;
            } else {
                write!(f, "({c})*{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.context, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    basis: DecoratedMatrix,
    coeff: LaurentPolynomial,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    context: Context,
    terms: Vec<TermJson>,
}

impl Serialize for ModuleElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            context: self.context,
            terms: self
                .terms
                .iter()
                .map(|(x, c)| TermJson {
                    basis: x.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let mut out = ModuleElement::zero(raw.context);
        for t in raw.terms {
            if t.coeff.is_zero() {
                return Err(serde::de::Error::custom("zero coefficient stored"));
            }
            out.add_term(t.basis, t.coeff).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}
