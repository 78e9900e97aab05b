//! Partial flags and the classification of `(flag, flag, vector)` triples.

use std::cell::RefCell;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::decorated::DecoratedMatrix;

use super::space::{Ambient, Members, SubspaceRref};

/// `0 = V_0 ⊆ V_1 ⊆ ... ⊆ V_n = V`; `steps` holds `V_1..V_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FlagRep {
    steps: Vec<SubspaceRref>,
}

impl FlagRep {
    pub fn new(amb: &Ambient, steps: Vec<SubspaceRref>) -> crate::Result<Self> {
        let ok = !steps.is_empty()
            && steps.windows(2).all(|w| w[1].contains(&w[0]))
            && steps.last().is_some_and(|s| s.dim() == amb.dim())
            && steps.iter().all(|s| s.ambient_dim() == amb.dim() && s.q() as u64 == amb.q());
        if !ok {
            return Err(crate::Error::InvalidArgument("not an ascending flag ending at V".into()));
        }
        Ok(Self { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `V_i` for `1 <= i <= n`.
    pub fn step(&self, i: usize) -> &SubspaceRref {
        &self.steps[i - 1]
    }

    pub fn steps(&self) -> &[SubspaceRref] {
        &self.steps
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(SubspaceRref::dim).collect()
    }

    pub fn apply(&self, amb: &Ambient, g: &[Vec<u8>]) -> FlagRep {
        FlagRep {
            steps: self.steps.iter().map(|s| amb.apply_subspace(g, s)).collect(),
        }
    }
}

#[derive(Serialize)]
pub(crate) struct FlagJson {
    steps: Vec<Vec<Vec<u8>>>,
}

impl From<&FlagRep> for FlagJson {
    fn from(f: &FlagRep) -> Self {
        FlagJson {
            steps: f.steps.iter().map(|s| s.rows().to_vec()).collect(),
        }
    }
}

/// All `n`-step flags in deterministic order.
pub fn enumerate_flags(amb: &Ambient, n: usize) -> Vec<FlagRep> {
    let subspaces = amb.all_subspaces();
    let full = amb.full_space();
    let mut out = Vec::new();
    fn rec(subs: &[SubspaceRref], full: &SubspaceRref, n: usize, cur: &mut Vec<SubspaceRref>, out: &mut Vec<FlagRep>) {
        if cur.len() + 1 == n {
            cur.push(full.clone());
            out.push(FlagRep { steps: cur.clone() });
            cur.pop();
            return;
        }
        for s in subs {
            if cur.last().is_none_or(|prev| s.contains(prev)) {
                cur.push(s.clone());
                rec(subs, full, n, cur, out);
                cur.pop();
            }
        }
    }
    if n >= 1 {
        rec(&subspaces, &full, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Intersection data for one ordered pair of flags, reused across vectors.
pub struct PairTable<'a> {
    amb: &'a Ambient,
    n: usize,
    m: usize,
    /// `V_i ∩ V'_j` for `0 <= i <= n`, `0 <= j <= m`.
    cells: Vec<SubspaceRref>,
    matrix: Vec<u32>,
    spans: RefCell<Vec<Option<Members>>>,
}

impl<'a> PairTable<'a> {
    pub fn new(amb: &'a Ambient, f: &FlagRep, g: &FlagRep) -> Self {
        let (n, m) = (f.len(), g.len());
        let zero = amb.zero_space();
        let mut cells = Vec::with_capacity((n + 1) * (m + 1));
        for i in 0..=n {
            for j in 0..=m {
                cells.push(if i == 0 || j == 0 {
                    zero.clone()
                } else {
                    amb.intersect_unchecked(f.step(i), g.step(j))
                });
            }
        }
        let dim = |i: usize, j: usize| cells[i * (m + 1) + j].dim() as i64;
        let mut matrix = Vec::with_capacity(n * m);
        for i in 1..=n {
            for j in 1..=m {
                let a = dim(i, j) - dim(i - 1, j) - dim(i, j - 1) + dim(i - 1, j - 1);
                debug_assert!(a >= 0);
                matrix.push(a as u32);
            }
        }
        let codes = (m + 1).pow(n as u32);
        Self {
            amb,
            n,
            m,
            cells,
            matrix,
            spans: RefCell::new(vec![None; codes]),
        }
    }

    fn cell(&self, i: usize, j: usize) -> &SubspaceRref {
        &self.cells[i * (self.m + 1) + j]
    }

    /// The matrix `A` of the pair: `a_{ij}` by inclusion-exclusion on
    /// `dim(V_i ∩ V'_j)`.
    pub fn matrix(&self) -> &[u32] {
        &self.matrix
    }

    fn code(&self, rows: &[usize]) -> usize {
        rows.iter().rev().fold(0, |acc, &c| acc * (self.m + 1) + c)
    }

    /// Members of `sum_{(i,j) in L} V_i ∩ V'_j` for the lower set with row
    /// lengths `rows`.
    fn span(&self, rows: &[usize]) -> Members {
        let code = self.code(rows);
        if let Some(m) = self.spans.borrow()[code] {
            return m;
        }
        let mut acc = self.amb.zero_space();
        for i in 1..=self.n {
            let c = rows[i - 1];
            let next = if i < self.n { rows[i] } else { 0 };
            if c > 0 && c > next {
                acc = self.amb.sum_unchecked(&acc, self.cell(i, c));
            }
        }
        let members = *acc.members();
        self.spans.borrow_mut()[code] = Some(members);
        members
    }

    fn removable(&self, rows: &[usize], i: usize) -> bool {
        let next = if i + 1 < self.n { rows[i + 1] } else { 0 };
        rows[i] > 0 && rows[i] > next
    }

    /// Minimal lower set containing `w` in its span: delete removable corners
    /// until none can go.
    fn minimal_lower_set(&self, w: usize) -> Vec<usize> {
        let mut rows = vec![self.m; self.n];
        loop {
            let mut changed = false;
            for i in 0..self.n {
                if self.removable(&rows, i) {
                    rows[i] -= 1;
                    if self.span(&rows).contains(w) {
                        changed = true;
                    } else {
                        rows[i] += 1;
                    }
                }
            }
            if !changed {
                return rows;
            }
        }
    }

    /// All fixed points reachable by deleting removable corners in every
    /// possible order. A singleton when the lower set is well defined.
    pub fn all_removal_fixed_points(&self, w: usize) -> BTreeSet<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut fixed = BTreeSet::new();
        let mut stack = vec![vec![self.m; self.n]];
        while let Some(rows) = stack.pop() {
            if !seen.insert(rows.clone()) {
                continue;
            }
            let mut any = false;
            for i in 0..self.n {
                if self.removable(&rows, i) {
                    let mut next = rows.clone();
                    next[i] -= 1;
                    if self.span(&next).contains(w) {
                        any = true;
                        stack.push(next);
                    }
                }
            }
            if !any {
                fixed.insert(rows);
            }
        }
        fixed
    }

    /// Decoration of the orbit through `(f, f', w)`: the corners of the
    /// minimal lower set.
    pub fn delta(&self, w: usize) -> Vec<(usize, usize)> {
        let rows = self.minimal_lower_set(w);
        corners(&rows)
    }

    pub fn classify(&self, w: usize) -> DecoratedMatrix {
        DecoratedMatrix::from_parts(self.n, self.m, self.matrix.clone(), self.delta(w))
            .expect("orbit classification produced an invalid decorated matrix")
    }
}

pub(crate) fn corners(rows: &[usize]) -> Vec<(usize, usize)> {
    let n = rows.len();
    (0..n)
        .filter(|&i| rows[i] > 0 && rows[i] > if i + 1 < n { rows[i + 1] } else { 0 })
        .map(|i| (i + 1, rows[i]))
        .collect()
}

/// The decorated matrix of the `G`-orbit through `(f, f', w)`.
pub fn classify_triple(amb: &Ambient, f: &FlagRep, g: &FlagRep, w: usize) -> DecoratedMatrix {
    PairTable::new(amb, f, g).classify(w)
}
