//! Double centralizer dimensions at rational specializations of `v`.
//!
//! For each sample the left algebra is built as the span of words in the
//! left token matrices (word length increasing until the dimension stops
//! growing) and compared with the commutant of the right tokens, and
//! symmetrically.
//!
//! Unknowns are restricted to one block structure without loss. The `H`
//! tokens of a side act diagonally, so anything commuting with them preserves
//! their joint eigenspaces (exact at every sample); and the tokens of the
//! other side commute with those `H` tokens, which is checked, so the algebra
//! they generate lives in the same blocks.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::{Context, Engine, Side, TokenKind};
use crate::error::{Error, Result};

use super::operator::{Basis, OperatorSet};

type Column = Vec<(usize, BigRational)>;

/// Sparse specialized matrix; column `j` is the image of basis element `j`.
#[derive(Clone, Debug)]
struct RationalMatrix {
    columns: Vec<Column>,
}

impl RationalMatrix {
    fn specialize(op: &super::operator::OperatorMatrix, v: &BigRational) -> Self {
        let columns = op
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(i, c)| (*i, c.eval_rational(v)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Self { columns }
    }

    fn diagonal(&self) -> Option<Vec<BigRational>> {
        self.columns
            .iter()
            .enumerate()
            .map(|(j, col)| match col.as_slice() {
                [] => Some(BigRational::zero()),
                [(i, c)] if *i == j => Some(c.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Block-diagonal coordinates: `(i, j)` with `class[i] == class[j]`.
struct Blocks {
    class: Vec<usize>,
    members: Vec<Vec<usize>>,
    pos: Vec<usize>,
    offset: Vec<usize>,
    len: usize,
}

impl Blocks {
    fn new(class: Vec<usize>) -> Self {
        let count = class.iter().max().map_or(0, |c| c + 1);
        let mut members = vec![Vec::new(); count];
        let mut pos = vec![0; class.len()];
        for (i, &c) in class.iter().enumerate() {
            pos[i] = members[c].len();
            members[c].push(i);
        }
        let mut offset = Vec::with_capacity(count);
        let mut len = 0;
        for m in &members {
            offset.push(len);
            len += m.len() * m.len();
        }
        Self {
            class,
            members,
            pos,
            offset,
            len,
        }
    }

    fn coord(&self, i: usize, j: usize) -> Option<usize> {
        let c = self.class[j];
        (self.class[i] == c).then(|| self.offset[c] + self.pos[i] * self.members[c].len() + self.pos[j])
    }

    fn identity(&self) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.len];
        for i in 0..self.class.len() {
            x[self.coord(i, i).unwrap()] = BigRational::one();
        }
        x
    }

    /// `G X` for `X` given in block coordinates; `None` if the product leaves
    /// the blocks.
    fn left_mul(&self, g: &RationalMatrix, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); self.len];
        for j in 0..self.class.len() {
            for &k in &self.members[self.class[j]] {
                let xkj = &x[self.coord(k, j).unwrap()];
                if xkj.is_zero() {
                    continue;
                }
                for (i, gik) in &g.columns[k] {
                    out[self.coord(*i, j)?] += gik * xkj;
                }
            }
        }
        Some(out)
    }
}

/// Incremental row echelon form over `Q`.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Column)>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `x` in place; returns whether it was independent (and, if so,
    /// stores it).
    fn insert(&mut self, mut x: Vec<BigRational>) -> bool {
        for (p, row) in &self.rows {
            if x[*p].is_zero() {
                continue;
            }
            let f = x[*p].clone();
            for (k, c) in row {
                x[*k] -= &f * c;
            }
        }
        let Some(p) = x.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = x[p].recip();
        let row: Column = x
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c * &inv))
            .collect();
        self.rows.push((p, row));
        true
    }

    fn insert_sparse(&mut self, row: &BTreeMap<usize, BigRational>, len: usize) -> bool {
        let mut x = vec![BigRational::zero(); len];
        for (k, c) in row {
            x[*k] = c.clone();
        }
        self.insert(x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SideDimensions {
    /// The side whose tokens generate the algebra.
    pub side: Side,
    pub algebra: usize,
    /// Commutant of the other side's tokens.
    pub commutant: usize,
    /// Span dimension after words of length `0, 1, 2, ...`.
    pub saturation: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerSample {
    pub v: String,
    pub left: SideDimensions,
    pub right: SideDimensions,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerReport {
    pub context: Context,
    pub module_dimension: usize,
    /// Whether `n >= m >= d`, the range where the equalities are expected.
    pub within_hypothesis: bool,
    pub samples: Vec<CentralizerSample>,
    pub passed: bool,
}

/// Joint eigenspace labels of the `H^+` tokens of `ops`.
fn h_classes(ops: &OperatorSet, v: &BigRational) -> Result<Vec<usize>> {
    let mut keys: Vec<Vec<BigRational>> = Vec::new();
    for (t, op) in &ops.ops {
        if t.kind != TokenKind::HPlus {
            continue;
        }
        let diag = RationalMatrix::specialize(op, v)
            .diagonal()
            .ok_or_else(|| Error::Internal(format!("{t} is not diagonal")))?;
        keys.push(diag);
    }
    let dim = ops.ops.values().next().map_or(0, |op| op.dim());
    let mut labels: HashMap<Vec<BigRational>, usize> = HashMap::new();
    Ok((0..dim)
        .map(|i| {
            let key: Vec<BigRational> = keys.iter().map(|d| d[i].clone()).collect();
            let next = labels.len();
            *labels.entry(key).or_insert(next)
        })
        .collect())
}

fn saturate(blocks: &Blocks, gens: &[RationalMatrix]) -> Result<(usize, Vec<usize>)> {
    let mut echelon = Echelon::default();
    let id = blocks.identity();
    echelon.insert(id.clone());
    let mut frontier = vec![id];
    let mut dims = vec![echelon.rank()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = blocks
                    .left_mul(g, x)
                    .ok_or_else(|| Error::Internal("generator leaves the commuting blocks".into()))?;
                if echelon.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        dims.push(echelon.rank());
        frontier = next;
    }
    Ok((echelon.rank(), dims))
}

/// Dimension of `{X in blocks : X R = R X for all R in gens}`.
fn commutant(blocks: &Blocks, gens: &[RationalMatrix]) -> usize {
    let mut echelon = Echelon::default();
    for r in gens {
        let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, BigRational>> = BTreeMap::new();
        let mut add = |i: usize, j: usize, k: usize, c: &BigRational| {
            let row = eqs.entry((i, j)).or_default();
            let e = row.entry(k).or_insert_with(BigRational::zero);
            *e += c;
        };
        for (j, col) in r.columns.iter().enumerate() {
            // (X R)_{ij} = sum_k X_{ik} R_{kj}
            for (k, rkj) in col {
                for &i in &blocks.members[blocks.class[*k]] {
                    add(i, j, blocks.coord(i, *k).unwrap(), rkj);
                }
            }
        }
        for j in 0..r.columns.len() {
            // (R X)_{ij} = sum_k R_{ik} X_{kj}
            for &k in &blocks.members[blocks.class[j]] {
                for (i, rik) in &r.columns[k] {
                    add(*i, j, blocks.coord(k, j).unwrap(), &-rik);
                }
            }
        }
        for row in eqs.values_mut() {
            row.retain(|_, c| !c.is_zero());
        }
        for row in eqs.values().filter(|r| !r.is_empty()) {
            echelon.insert_sparse(row, blocks.len);
        }
    }
    blocks.len - echelon.rank()
}

fn side_dimensions(
    acting: &OperatorSet,
    other: &OperatorSet,
    v: &BigRational,
) -> Result<SideDimensions> {
    let blocks = Blocks::new(h_classes(other, v)?);
    let gens: Vec<RationalMatrix> = acting.ops.values().map(|op| RationalMatrix::specialize(op, v)).collect();
    let others: Vec<RationalMatrix> = other.ops.values().map(|op| RationalMatrix::specialize(op, v)).collect();
    let (algebra, saturation) = saturate(&blocks, &gens)?;
    Ok(SideDimensions {
        side: acting.side,
        algebra,
        commutant: commutant(&blocks, &others),
        saturation,
    })
}

/// The left algebra against the right commutant and vice versa, at each
/// sample value of `v`. Dimensions must agree across samples; otherwise the
/// samples are treated as degenerate.
pub fn centralizer_report(engine: &Engine, context: Context, samples: &[BigRational]) -> Result<CentralizerReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("at least one sample of v is required".into()));
    }
    if let Some(bad) = samples.iter().find(|v| v.is_zero() || v.is_one() || **v == -BigRational::one()) {
        return Err(Error::InvalidArgument(format!("sample v = {bad} is not generic")));
    }
    let basis = Basis::new(context);
    let left = OperatorSet::build(engine, &basis, Side::Left)?;
    let right = OperatorSet::build(engine, &basis, Side::Right)?;
    let mut out = Vec::new();
    for v in samples {
        let l = side_dimensions(&left, &right, v)?;
        let r = side_dimensions(&right, &left, v)?;
        let passed = l.algebra == l.commutant && r.algebra == r.commutant;
        out.push(CentralizerSample {
            v: v.to_string(),
            left: l,
            right: r,
            passed,
        });
    }
    let dims = |s: &CentralizerSample| (s.left.algebra, s.left.commutant, s.right.algebra, s.right.commutant);
    if let Some(s) = out.iter().find(|s| dims(s) != dims(&out[0])) {
        return Err(Error::SampleDegenerate(format!(
            "v = {} gives {:?}, v = {} gives {:?}",
            out[0].v,
            dims(&out[0]),
            s.v,
            dims(s)
        )));
    }
    Ok(CentralizerReport {
        context,
        module_dimension: basis.len(),
        within_hypothesis: context.n >= context.m && context.m as u32 >= context.d,
        passed: out.iter().all(|s| s.passed),
        samples: out,
    })
}

/// `2, 3, 5/2`.
pub fn default_samples() -> Vec<BigRational> {
    vec![
        BigRational::from_integer(2.into()),
        BigRational::from_integer(3.into()),
        BigRational::new(5.into(), 2.into()),
    ]
}
