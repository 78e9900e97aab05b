//! Brute-force convolution over `F_q`: orbit tables and structure constants
//! computed straight from the definition
//! `(h * g)(f, f', v) = sum_{(f'', w)} h(f, f'', w) g(f'', f', v - w)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{Context, GeneratorToken, Side, TokenKind};
use crate::decorated::{enumerate_decorated, DecoratedMatrix};
use crate::error::{Error, Result};

use super::flags::{enumerate_flags, FlagJson, FlagRep, PairTable};
use super::space::Ambient;

/// Structure-constant key: (target module orbit, algebra orbit, source module orbit).
type Triple = (usize, usize, usize);
/// Default cap on the number of triples an oracle run may touch.
pub const DEFAULT_MAX_WORK: u64 = 50_000_000;

/// Environment override for [`DEFAULT_MAX_WORK`].
pub const MAX_WORK_ENV: &str = "MIRABOLIC_MAX_WORK";

pub fn max_work_from_env() -> u64 {
    std::env::var(MAX_WORK_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_WORK)
}

/// Flags on both sides of `X_{n,d} x X_{m,d} x V` for one `(n, m, d, q)`.
pub struct Oracle {
    amb: Ambient,
    context: Context,
    left_flags: Vec<FlagRep>,
    right_flags: Vec<FlagRep>,
    max_work: u64,
}

#[derive(Clone, Debug)]
pub struct OrbitEntry {
    pub size: u64,
    /// Indices into the left flags, right flags, and the vector code.
    pub representative: (usize, usize, usize),
}

/// Orbit sizes and representatives keyed by decorated matrix.
pub struct OrbitTable {
    pub context: Context,
    pub q: u64,
    pub entries: BTreeMap<DecoratedMatrix, OrbitEntry>,
    pub total_triples: u64,
}

impl Oracle {
    pub fn new(context: Context, q: u64, max_work: u64) -> Result<Self> {
        let amb = Ambient::new(context.d as usize, q)?;
        if context.n == 0 || context.m == 0 {
            return Err(Error::InvalidArgument("flags need at least one step".into()));
        }
        let left_flags = enumerate_flags(&amb, context.n);
        let right_flags = enumerate_flags(&amb, context.m);
        let triples = left_flags.len() as u64 * right_flags.len() as u64 * amb.size() as u64;
        if triples > max_work {
            return Err(Error::ScaleExceeded(format!(
                "{triples} triples at {context}, q = {q} exceed the work budget {max_work}"
            )));
        }
        Ok(Self {
            amb,
            context,
            left_flags,
            right_flags,
            max_work,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn q(&self) -> u64 {
        self.amb.q()
    }

    pub fn left_flags(&self) -> &[FlagRep] {
        &self.left_flags
    }

    pub fn right_flags(&self) -> &[FlagRep] {
        &self.right_flags
    }

    /// Enumerates every triple once. The first triple seen in each orbit is its
    /// representative.
    pub fn orbit_table(&self) -> OrbitTable {
        let per_f: Vec<BTreeMap<DecoratedMatrix, OrbitEntry>> = self
            .left_flags
            .par_iter()
            .enumerate()
            .map(|(fi, f)| {
                let mut local: BTreeMap<DecoratedMatrix, OrbitEntry> = BTreeMap::new();
                for (gi, g) in self.right_flags.iter().enumerate() {
                    let table = PairTable::new(&self.amb, f, g);
                    for w in 0..self.amb.size() {
                        local
                            .entry(table.classify(w))
                            .and_modify(|e| e.size += 1)
                            .or_insert(OrbitEntry {
                                size: 1,
                                representative: (fi, gi, w),
                            });
                    }
                }
                local
            })
            .collect();
        let mut entries: BTreeMap<DecoratedMatrix, OrbitEntry> = BTreeMap::new();
        // Merge in flag order so that representatives stay the first ones found.
        for local in per_f {
            for (x, e) in local {
                entries.entry(x).and_modify(|acc| acc.size += e.size).or_insert(e);
            }
        }
        OrbitTable {
            context: self.context,
            q: self.q(),
            entries,
            total_triples: self.left_flags.len() as u64 * self.right_flags.len() as u64 * self.amb.size() as u64,
        }
    }

    /// First triple of the orbit `z` in enumeration order.
    pub fn representative(&self, z: &DecoratedMatrix) -> Result<(usize, usize, usize)> {
        if !self.context.contains(z) {
            return Err(Error::ContextMismatch(format!("{z} is not in {}", self.context)));
        }
        for (fi, f) in self.left_flags.iter().enumerate() {
            for (gi, g) in self.right_flags.iter().enumerate() {
                let table = PairTable::new(&self.amb, f, g);
                if table.matrix() != z.entries() {
                    continue;
                }
                for w in 0..self.amb.size() {
                    if table.classify(w) == *z {
                        return Ok((fi, gi, w));
                    }
                }
            }
        }
        Err(Error::Internal(format!("no triple in orbit {z}")))
    }

    /// `#{(f'', w) : (f, f'', w) in O_x, (f'', f', v - w) in O_y}` for the
    /// representative `(f, f', v)` of `O_z`: the coefficient of `e_z` in
    /// `e_x * e_y`.
    pub fn structure_constant(&self, x: &DecoratedMatrix, y: &DecoratedMatrix, z: &DecoratedMatrix) -> Result<u64> {
        let rep = self.representative(z)?;
        self.structure_constant_at(x, y, rep)
    }

    /// As [`Oracle::structure_constant`] at an explicit triple of `O_z`.
    pub fn structure_constant_at(&self, x: &DecoratedMatrix, y: &DecoratedMatrix, rep: (usize, usize, usize)) -> Result<u64> {
        let (n, m) = (self.context.n, self.context.m);
        if x.rows() != n || y.cols() != m || x.cols() != y.rows() {
            return Err(Error::ContextMismatch(format!("{x} * {y} does not land in {}", self.context)));
        }
        if x.total() != self.context.d || y.total() != self.context.d {
            return Ok(0);
        }
        let middle = enumerate_flags(&self.amb, x.cols());
        let work = middle.len() as u64 * self.amb.size() as u64;
        if work > self.max_work {
            return Err(Error::ScaleExceeded(format!("{work} intermediate pairs exceed the work budget")));
        }
        let (f, g, v) = (&self.left_flags[rep.0], &self.right_flags[rep.1], rep.2);
        let mut count = 0;
        for h in &middle {
            let first = PairTable::new(&self.amb, f, h);
            if first.matrix() != x.entries() {
                continue;
            }
            let second = PairTable::new(&self.amb, h, g);
            if second.matrix() != y.entries() {
                continue;
            }
            for w in 0..self.amb.size() {
                if first.classify(w) == *x && second.classify(self.amb.sub(v, w)) == *y {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Counts for every generator-support orbit `x` at once:
    /// `counts[(y, x, z)] = #{(f'', w) : ...}` with `y` the output orbit.
    /// Left side: `e_x * e_z`; right side: `e_z * e_x`.
    pub fn generator_counts(&self, side: Side) -> Result<GeneratorCounts> {
        let table = self.orbit_table();
        let ctx = self.context;
        let size = match side {
            Side::Left => ctx.n,
            Side::Right => ctx.m,
        };
        let basis = enumerate_decorated(ctx.n, ctx.m, ctx.d);
        let index: HashMap<&DecoratedMatrix, usize> = basis.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let alg_basis = enumerate_decorated(size, size, ctx.d);
        let alg_index: HashMap<&DecoratedMatrix, usize> = alg_basis.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let middle = match side {
            Side::Left => &self.left_flags,
            Side::Right => &self.right_flags,
        };
        let reps: Vec<(usize, (usize, usize, usize))> = table
            .entries
            .iter()
            .map(|(y, e)| (index[y], e.representative))
            .collect();
        let chunks: Vec<Vec<(Triple, u64)>> = reps
            .par_iter()
            .map(|&(yi, (fi, gi, v))| {
                let (f, g) = (&self.left_flags[fi], &self.right_flags[gi]);
                let mut local: BTreeMap<Triple, u64> = BTreeMap::new();
                for h in middle {
                    // The generator factor is the pair (f, h) on the left and
                    // (h, g) on the right; the other factor is the orbit z.
                    let gen_pair = match side {
                        Side::Left => PairTable::new(&self.amb, f, h),
                        Side::Right => PairTable::new(&self.amb, h, g),
                    };
                    if !support_matrix(gen_pair.matrix(), size) {
                        continue;
                    }
                    let other = match side {
                        Side::Left => PairTable::new(&self.amb, h, g),
                        Side::Right => PairTable::new(&self.amb, f, h),
                    };
                    for w in 0..self.amb.size() {
                        // Left: x = (f, h, w), z = (h, g, v - w).
                        // Right: z = (f, h, w), x = (h, g, v - w).
                        let (xw, zw) = match side {
                            Side::Left => (w, self.amb.sub(v, w)),
                            Side::Right => (self.amb.sub(v, w), w),
                        };
                        let x = gen_pair.classify(xw);
                        let Some(&xi) = alg_index.get(&x) else { continue };
                        if !is_generator_support(&x) {
                            continue;
                        }
                        let z = other.classify(zw);
                        *local.entry((yi, xi, index[&z])).or_default() += 1;
                    }
                }
                local.into_iter().collect()
            })
            .collect();
        let mut counts = HashMap::new();
        for chunk in chunks {
            for (k, c) in chunk {
                *counts.entry(k).or_insert(0) += c;
            }
        }
        Ok(GeneratorCounts {
            context: ctx,
            side,
            q: self.q(),
            basis,
            algebra_basis: alg_basis,
            counts,
        })
    }
}

/// `A` is diagonal, or diagonal plus one unit at `(i, i+1)` or `(i+1, i)`.
fn support_matrix(entries: &[u32], size: usize) -> bool {
    let mut off = 0;
    for i in 0..size {
        for j in 0..size {
            let a = entries[i * size + j];
            if i != j && a > 0 {
                if a > 1 || i.abs_diff(j) != 1 {
                    return false;
                }
                off += 1;
            }
        }
    }
    off <= 1
}

/// Orbits on which some generator `E_i, F_i, H_a, L` is supported.
pub fn is_generator_support(x: &DecoratedMatrix) -> bool {
    let size = x.rows();
    if x.cols() != size || !support_matrix(x.entries(), size) {
        return false;
    }
    let diagonal = (0..size).all(|i| (0..size).all(|j| i == j || x.entries()[i * size + j] == 0));
    match x.delta() {
        [] => true,
        [(1, 1)] => diagonal,
        _ => false,
    }
}

/// Generator-support orbits that pair with `token`: `D` diagonal for `H`;
/// `D` or `(D', {(1,1)})` for `L`; `D + E_{i,i+1}` for `E_i`; `D + E_{i+1,i}` for `F_i`.
pub fn token_support(token: &GeneratorToken, x: &DecoratedMatrix) -> bool {
    let size = x.rows();
    if !is_generator_support(x) {
        return false;
    }
    let e = x.entries();
    let off: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && e[i * size + j] > 0)
        .collect();
    match token.kind {
        TokenKind::HPlus | TokenKind::HMinus => off.is_empty() && x.delta().is_empty(),
        TokenKind::L => off.is_empty(),
        TokenKind::E => off == [(token.index - 1, token.index)],
        TokenKind::F => off == [(token.index, token.index - 1)],
    }
}

/// Raw orbit counts for all generator-support orbits on one side.
pub struct GeneratorCounts {
    pub context: Context,
    pub side: Side,
    pub q: u64,
    /// Basis of `MV_{n|m}` in canonical order; indices below refer to it.
    pub basis: Vec<DecoratedMatrix>,
    /// Basis of the acting Schur algebra.
    pub algebra_basis: Vec<DecoratedMatrix>,
    /// `(y, x, z) -> count`.
    pub counts: HashMap<(usize, usize, usize), u64>,
}

impl GeneratorCounts {
    /// For input orbit `z`: output orbit `y` -> (generator orbit `x` -> count).
    pub fn expansion(&self, token: &GeneratorToken, z: usize) -> BTreeMap<usize, BTreeMap<usize, u64>> {
        let mut out: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
        for (&(y, x, zz), &c) in &self.counts {
            if zz == z && token_support(token, &self.algebra_basis[x]) {
                *out.entry(y).or_default().entry(x).or_default() += c;
            }
        }
        out
    }
}

#[derive(Serialize)]
struct OrbitJson {
    basis: DecoratedMatrix,
    size: u64,
    representative: RepJson,
}

#[derive(Serialize)]
struct RepJson {
    left: FlagJson,
    right: FlagJson,
    vector: Vec<u8>,
}

#[derive(Serialize)]
struct OrbitTableJson {
    context: Context,
    q: u64,
    total_triples: u64,
    orbits: Vec<OrbitJson>,
}

impl OrbitTable {
    /// JSON export: orbit size and representative per decorated matrix, flags
    /// as lists of RREF rows over `0..q`.
    pub fn to_json(&self, oracle: &Oracle) -> serde_json::Value {
        let orbits = self
            .entries
            .iter()
            .map(|(x, e)| {
                let (fi, gi, w) = e.representative;
                OrbitJson {
                    basis: x.clone(),
                    size: e.size,
                    representative: RepJson {
                        left: (&oracle.left_flags[fi]).into(),
                        right: (&oracle.right_flags[gi]).into(),
                        vector: oracle.amb.coords(w).to_vec(),
                    },
                }
            })
            .collect();
        serde_json::to_value(OrbitTableJson {
            context: self.context,
            q: self.q,
            total_triples: self.total_triples,
            orbits,
        })
        .expect("orbit table serializes")
    }
}

/// Outcome of applying random elements of `GL_d(F_q)` to random triples.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub context: Context,
    pub q: u64,
    pub seed: u64,
    pub samples: usize,
    pub violations: usize,
}

impl Oracle {
    /// `classify(g f, g f', g w) == classify(f, f', w)` on `samples` random
    /// triples, each moved by a fresh random `g`.
    pub fn gl_invariance(&self, seed: u64, samples: usize) -> InvarianceReport {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut violations = 0;
        for _ in 0..samples {
            let f = &self.left_flags[rng.gen_range(0..self.left_flags.len())];
            let h = &self.right_flags[rng.gen_range(0..self.right_flags.len())];
            let w = rng.gen_range(0..self.amb.size());
            let g = self.amb.random_gl(&mut rng);
            let before = classify(&self.amb, f, h, w);
            let after = classify(&self.amb, &f.apply(&self.amb, &g), &h.apply(&self.amb, &g), self.amb.apply_code(&g, w));
            if before != after {
                violations += 1;
            }
        }
        InvarianceReport {
            context: self.context,
            q: self.q(),
            seed,
            samples,
            violations,
        }
    }
}

/// The `G`-orbit key for a triple given by explicit data.
pub fn classify(amb: &Ambient, f: &FlagRep, g: &FlagRep, w: usize) -> DecoratedMatrix {
    super::flags::classify_triple(amb, f, g, w)
}
