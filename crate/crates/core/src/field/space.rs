//! `F_q^d` for small prime `q`, with subspaces in canonical reduced row echelon
//! form. Every vector has an integer code in `0..q^d`, and each subspace keeps
//! the bitset of its members so that intersection and membership are bit ops.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;
pub const SUPPORTED_Q: [u64; 3] = [2, 3, 5];
const WORDS: usize = 10; // 5^4 = 625 bits

/// Bitset over vector codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Members([u64; WORDS]);

impl Members {
    #[inline]
    pub fn contains(&self, code: usize) -> bool {
        self.0[code >> 6] >> (code & 63) & 1 == 1
    }

    #[inline]
    fn insert(&mut self, code: usize) {
        self.0[code >> 6] |= 1 << (code & 63);
    }

    #[inline]
    pub fn and(&self, other: &Members) -> Members {
        let mut out = [0u64; WORDS];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.0[k] & other.0[k];
        }
        Members(out)
    }

    #[inline]
    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn is_subset_of(&self, other: &Members) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b)
        })
    }
}

/// A subspace of `F_q^d`, canonically represented by its RREF basis.
#[derive(Clone)]
pub struct SubspaceRref {
    d: usize,
    q: u8,
    rows: Vec<Vec<u8>>,
    members: Members,
}

impl PartialEq for SubspaceRref {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.q == other.q && self.rows == other.rows
    }
}

impl Eq for SubspaceRref {}

impl std::hash::Hash for SubspaceRref {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.q.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for SubspaceRref {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubspaceRref {
    /// By dimension, then rows.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.d, self.q, self.rows.len(), &self.rows).cmp(&(other.d, other.q, other.rows.len(), &other.rows))
    }
}

impl SubspaceRref {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Basis rows in RREF, entries in `0..q`.
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    pub fn contains_code(&self, code: usize) -> bool {
        self.members.contains(code)
    }

    pub fn contains(&self, other: &SubspaceRref) -> bool {
        other.members.is_subset_of(&self.members)
    }
}

impl fmt::Debug for SubspaceRref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            for x in r {
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

/// The ambient space `F_q^d` with precomputed arithmetic tables.
#[derive(Clone, Debug)]
pub struct Ambient {
    d: usize,
    q: u8,
    size: usize,
    coords: Vec<[u8; MAX_DIM]>,
    inv: Vec<u8>,
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|k| k * k <= q).all(|k| !q.is_multiple_of(k))
}

impl Ambient {
    /// Fails with `ScaleExceeded` beyond `d <= 4`, `q <= 5`, and with
    /// `UnsupportedField` for prime powers that are not primes.
    pub fn new(d: usize, q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::UnsupportedField(q));
        }
        if d > MAX_DIM || q > 5 {
            return Err(Error::ScaleExceeded(format!(
                "finite-field oracle supports d <= {MAX_DIM} and q <= 5 (got d = {d}, q = {q})"
            )));
        }
        let q8 = q as u8;
        let size = (q as usize).pow(d as u32);
        let coords = (0..size)
            .map(|mut c| {
                let mut x = [0u8; MAX_DIM];
                for slot in x.iter_mut().take(d) {
                    *slot = (c % q as usize) as u8;
                    c /= q as usize;
                }
                x
            })
            .collect();
        let inv = (0..q8)
            .map(|a| if a == 0 { 0 } else { (1..q8).find(|b| (a as u16 * *b as u16) % q as u16 == 1).unwrap() })
            .collect();
        Ok(Self { d, q: q8, size, coords, inv })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Number of vectors, `q^d`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coords(&self, code: usize) -> &[u8] {
        &self.coords[code][..self.d]
    }

    pub fn code(&self, x: &[u8]) -> usize {
        x.iter().rev().fold(0, |acc, &c| acc * self.q as usize + c as usize)
    }

    /// `a - b` on codes.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let q = self.q;
        let (ca, cb) = (&self.coords[a], &self.coords[b]);
        let mut out = [0u8; MAX_DIM];
        for k in 0..self.d {
            out[k] = (ca[k] + q - cb[k]) % q;
        }
        self.code(&out[..self.d])
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let q = self.q;
        let (ca, cb) = (&self.coords[a], &self.coords[b]);
        let mut out = [0u8; MAX_DIM];
        for k in 0..self.d {
            out[k] = (ca[k] + cb[k]) % q;
        }
        self.code(&out[..self.d])
    }

    pub fn zero_space(&self) -> SubspaceRref {
        self.subspace_of_rref(Vec::new())
    }

    pub fn full_space(&self) -> SubspaceRref {
        let rows = (0..self.d)
            .map(|k| {
                let mut r = vec![0u8; self.d];
                r[k] = 1;
                r
            })
            .collect();
        self.subspace_of_rref(rows)
    }

    fn subspace_of_rref(&self, rows: Vec<Vec<u8>>) -> SubspaceRref {
        let q = self.q as usize;
        let k = rows.len();
        let mut members = Members::default();
        let mut digits = vec![0usize; k];
        loop {
            let mut v = [0u8; MAX_DIM];
            for (r, &c) in rows.iter().zip(digits.iter()) {
                for t in 0..self.d {
                    v[t] = ((v[t] as usize + c * r[t] as usize) % q) as u8;
                }
            }
            members.insert(self.code(&v[..self.d]));
            let mut pos = 0;
            loop {
                if pos == k {
                    return SubspaceRref {
                        d: self.d,
                        q: self.q,
                        rows,
                        members,
                    };
                }
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Row-reduces arbitrary generators (coordinate rows) to canonical RREF.
    fn rref(&self, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
        let q = self.q as u16;
        let mut rank = 0;
        for col in 0..self.d {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv[rows[rank][col] as usize] as u16;
            for x in rows[rank].iter_mut() {
                *x = ((*x as u16 * inv) % q) as u8;
            }
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col] as u16;
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        let sub = (f * *p as u16) % q;
                        *x = ((*x as u16 + q - sub) % q) as u8;
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows
    }

    pub fn span_coords(&self, gens: Vec<Vec<u8>>) -> Result<SubspaceRref> {
        if gens.iter().any(|g| g.len() != self.d || g.iter().any(|&c| c >= self.q)) {
            return Err(Error::DimensionMismatch(format!("generators do not live in F_{}^{}", self.q, self.d)));
        }
        Ok(self.subspace_of_rref(self.rref(gens)))
    }

    pub fn span_codes(&self, codes: &[usize]) -> SubspaceRref {
        let gens = codes.iter().map(|&c| self.coords(c).to_vec()).collect();
        self.subspace_of_rref(self.rref(gens))
    }

    fn check(&self, s: &SubspaceRref) -> Result<()> {
        if s.d != self.d || s.q != self.q {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F_{}^{} used in F_{}^{}",
                s.q, s.d, self.q, self.d
            )));
        }
        Ok(())
    }

    pub fn sum(&self, a: &SubspaceRref, b: &SubspaceRref) -> Result<SubspaceRref> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sum_unchecked(a, b))
    }

    pub(crate) fn sum_unchecked(&self, a: &SubspaceRref, b: &SubspaceRref) -> SubspaceRref {
        if a.contains(b) {
            return a.clone();
        }
        if b.contains(a) {
            return b.clone();
        }
        let gens = a.rows.iter().chain(b.rows.iter()).cloned().collect();
        self.subspace_of_rref(self.rref(gens))
    }

    pub fn intersect(&self, a: &SubspaceRref, b: &SubspaceRref) -> Result<SubspaceRref> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.intersect_unchecked(a, b))
    }

    pub(crate) fn intersect_unchecked(&self, a: &SubspaceRref, b: &SubspaceRref) -> SubspaceRref {
        self.subspace_of_members(a.members.and(&b.members))
    }

    /// The subspace whose member set is `bits` (which must be a subspace).
    fn subspace_of_members(&self, bits: Members) -> SubspaceRref {
        let mut basis: Vec<usize> = Vec::new();
        let mut span = self.zero_space();
        for code in bits.iter() {
            if !span.contains_code(code) {
                basis.push(code);
                span = self.span_codes(&basis);
                if span.members == bits {
                    break;
                }
            }
        }
        span
    }

    pub fn contains(&self, outer: &SubspaceRref, inner: &SubspaceRref) -> Result<bool> {
        self.check(outer)?;
        self.check(inner)?;
        Ok(outer.contains(inner))
    }

    /// `q^k` without overflow concerns at desk scale.
    pub fn pow_q(&self, k: usize) -> usize {
        (self.q as usize).pow(k as u32)
    }

    /// Every subspace, ordered by dimension then RREF rows.
    pub fn all_subspaces(&self) -> Vec<SubspaceRref> {
        let mut out = Vec::new();
        for k in 0..=self.d {
            let mut pivots = Vec::new();
            self.pivot_sets(k, 0, &mut pivots, &mut out);
        }
        out.sort();
        out
    }

    fn pivot_sets(&self, k: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<SubspaceRref>) {
        if pivots.len() == k {
            // Free entries: row r, columns after its pivot that are not pivots.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| ((p + 1)..self.d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = self.pow_q(free.len());
            for mut idx in 0..total {
                let mut rows = vec![vec![0u8; self.d]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                for &(r, c) in &free {
                    rows[r][c] = (idx % self.q as usize) as u8;
                    idx /= self.q as usize;
                }
                out.push(self.subspace_of_rref(rows));
            }
            return;
        }
        for p in start..self.d {
            pivots.push(p);
            self.pivot_sets(k, p + 1, pivots, out);
            pivots.pop();
        }
    }

    /// A uniformly random invertible matrix, rows as coordinate vectors.
    pub fn random_gl<R: Rng>(&self, rng: &mut R) -> Vec<Vec<u8>> {
        loop {
            let g: Vec<Vec<u8>> = (0..self.d)
                .map(|_| (0..self.d).map(|_| rng.gen_range(0..self.q)).collect())
                .collect();
            if self.rref(g.clone()).len() == self.d {
                return g;
            }
        }
    }

    /// Applies `x -> x g` (row vector times matrix) to a code.
    pub fn apply_code(&self, g: &[Vec<u8>], code: usize) -> usize {
        let x = self.coords(code);
        let q = self.q as usize;
        let mut out = [0u8; MAX_DIM];
        for (t, o) in out.iter_mut().enumerate().take(self.d) {
            *o = ((0..self.d).map(|k| x[k] as usize * g[k][t] as usize).sum::<usize>() % q) as u8;
        }
        self.code(&out[..self.d])
    }

    pub fn apply_subspace(&self, g: &[Vec<u8>], s: &SubspaceRref) -> SubspaceRref {
        let images: Vec<usize> = s.rows.iter().map(|r| self.apply_code(g, self.code(r))).collect();
        self.span_codes(&images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: F_2^3 has 1 + 7 + 7 + 1 subspaces; F_3^2 has 1 + 4 + 1.
        assert_eq!(Ambient::new(3, 2).unwrap().all_subspaces().len(), 16);
        assert_eq!(Ambient::new(2, 3).unwrap().all_subspaces().len(), 6);
        assert_eq!(Ambient::new(4, 2).unwrap().all_subspaces().len(), 1 + 15 + 35 + 15 + 1);
    }

    #[test]
    fn bounds() {
        assert!(matches!(Ambient::new(5, 2), Err(Error::ScaleExceeded(_))));
        assert!(matches!(Ambient::new(2, 4), Err(Error::UnsupportedField(4))));
        assert!(matches!(Ambient::new(2, 7), Err(Error::ScaleExceeded(_))));
    }

    #[test]
    fn lattice_identities() {
        let amb = Ambient::new(3, 3).unwrap();
        let all = amb.all_subspaces();
        let zero = amb.zero_space();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let u = &all[rng.gen_range(0..all.len())];
            let w = &all[rng.gen_range(0..all.len())];
            assert_eq!(&amb.intersect(u, u).unwrap(), u);
            assert_eq!(&amb.sum(u, &zero).unwrap(), u);
            let i = amb.intersect(u, w).unwrap();
            let s = amb.sum(u, w).unwrap();
            assert_eq!(i.dim() + s.dim(), u.dim() + w.dim());
            assert!(amb.contains(&s, u).unwrap() && amb.contains(u, &i).unwrap());
        }
    }

    #[test]
    fn mismatched_ambient() {
        let a = Ambient::new(2, 2).unwrap();
        let b = Ambient::new(3, 2).unwrap();
        assert!(matches!(
            a.sum(&a.full_space(), &b.full_space()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn canonical_form() {
        let amb = Ambient::new(3, 3).unwrap();
        let a = amb.span_coords(vec![vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = amb.span_coords(vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a, b);
        assert_eq!(a.rows(), b.rows());
    }
}
