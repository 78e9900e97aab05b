//! Sparse operator matrices of generator tokens on the `[A]_Delta` basis.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::action::{Context, Engine, GeneratorToken, ModuleElement, Side};
use crate::decorated::{enumerate_decorated, DecoratedMatrix};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

/// Sparse vector over `Z[v,v^-1]` in basis coordinates.
pub type SparseVec = BTreeMap<usize, LaurentPolynomial>;

/// Canonical basis of `MV_{n|m}` at total `d` with reverse lookup.
pub struct Basis {
    pub context: Context,
    pub elements: Vec<DecoratedMatrix>,
    index: HashMap<DecoratedMatrix, usize>,
}

impl Basis {
    pub fn new(context: Context) -> Self {
        let elements = enumerate_decorated(context.n, context.m, context.d);
        let index = elements.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
        Self {
            context,
            elements,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &DecoratedMatrix) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn to_sparse(&self, x: &ModuleElement) -> Result<SparseVec> {
        x.terms()
            .map(|(b, c)| {
                self.index_of(b)
                    .map(|k| (k, c.clone()))
                    .ok_or_else(|| Error::ContextMismatch(format!("{b} is not in {}", self.context)))
            })
            .collect()
    }

    pub fn to_element(&self, v: &SparseVec) -> ModuleElement {
        let mut out = ModuleElement::zero(self.context);
        for (&k, c) in v {
            out.add_term_unchecked(self.elements[k].clone(), c.clone());
        }
        out
    }
}

/// Column `j` is the image of basis element `j`.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub context: Context,
    pub side: Side,
    pub token: GeneratorToken,
    pub columns: Vec<Vec<(usize, LaurentPolynomial)>>,
}

impl OperatorMatrix {
    pub fn build(engine: &Engine, basis: &Basis, side: Side, token: GeneratorToken) -> Result<Self> {
        let columns = basis
            .elements
            .par_iter()
            .map(|x| {
                let image = engine.act(side, &token, &ModuleElement::basis(basis.context, x.clone())?)?;
                Ok(basis.to_sparse(&image)?.into_iter().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            context: basis.context,
            side,
            token,
            columns,
        })
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in x {
            for (i, a) in &self.columns[j] {
                add_into(&mut out, *i, a * c);
            }
        }
        out
    }

    /// Entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> LaurentPolynomial {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }
}

pub(crate) fn add_into(v: &mut SparseVec, i: usize, c: LaurentPolynomial) {
    if c.is_zero() {
        return;
    }
    match v.entry(i) {
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

pub(crate) fn add_scaled(v: &mut SparseVec, w: &SparseVec, c: &LaurentPolynomial) {
    for (&i, a) in w {
        add_into(v, i, a * c);
    }
}

/// All token operators for one side, keyed by token.
pub struct OperatorSet {
    pub side: Side,
    pub ops: BTreeMap<GeneratorToken, OperatorMatrix>,
}

impl OperatorSet {
    pub fn build(engine: &Engine, basis: &Basis, side: Side) -> Result<Self> {
        let size = match side {
            Side::Left => basis.context.n,
            Side::Right => basis.context.m,
        };
        let mut ops = BTreeMap::new();
        for t in GeneratorToken::all(size) {
            ops.insert(t, OperatorMatrix::build(engine, basis, side, t)?);
        }
        Ok(Self { side, ops })
    }

    pub fn get(&self, t: &GeneratorToken) -> &OperatorMatrix {
        &self.ops[t]
    }

    /// The action of the algebra word `a_1 a_2 ... a_k` on `x`. On the left
    /// `a_k` acts first; on the right `x * a_1` comes first.
    pub fn apply_word(&self, word: &[GeneratorToken], x: &SparseVec) -> SparseVec {
        let mut cur = x.clone();
        let mut step = |t: &GeneratorToken| cur = self.ops[t].apply(&cur);
        match self.side {
            Side::Left => word.iter().rev().for_each(&mut step),
            Side::Right => word.iter().for_each(&mut step),
        }
        cur
    }
}
