//! Decorated matrices `(A, Delta)`: the index set of orbits and basis elements.
//!
//! `A` is an `n x m` matrix of nonnegative integers; `Delta` is a staircase of
//! positions `(i_1, j_1), ..., (i_k, j_k)` with rows strictly increasing and
//! columns strictly decreasing, each sitting on a positive entry of `A`.
//! Positions are 1-based throughout, matching the JSON form.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A decorated matrix. Ordering is lexicographic on the flattened matrix, then
/// on the decoration list, which is the canonical basis order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedMatrix {
    n: usize,
    m: usize,
    entries: Vec<u32>,
    delta: Vec<(usize, usize)>,
}

impl DecoratedMatrix {
    /// Validates and builds. `delta` may be given in any order; it is stored
    /// sorted by row.
    pub fn new(n: usize, m: usize, entries: Vec<u32>, mut delta: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument("matrix shape must be at least 1x1".into()));
        }
        if entries.len() != n * m {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for a {n}x{m} matrix, got {}",
                n * m,
                entries.len()
            )));
        }
        delta.sort_unstable();
        let x = Self { n, m, entries, delta };
        x.check_delta()?;
        Ok(x)
    }

    pub fn from_rows(rows: &[Vec<u32>], delta: Vec<(usize, usize)>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Self::new(n, m, rows.concat(), delta)
    }

    /// Builds without sorting; the caller promises `delta` is already row-sorted.
    /// Still validated, so transcription mistakes surface as `MalformedDelta`.
    pub(crate) fn from_parts(n: usize, m: usize, entries: Vec<u32>, delta: Vec<(usize, usize)>) -> Result<Self> {
        let x = Self { n, m, entries, delta };
        x.check_delta()?;
        Ok(x)
    }

    fn check_delta(&self) -> Result<()> {
        for (t, &(i, j)) in self.delta.iter().enumerate() {
            if i == 0 || i > self.n || j == 0 || j > self.m {
                return Err(Error::MalformedDelta(format!("position ({i},{j}) out of range in {self}")));
            }
            if self.a(i, j) == 0 {
                return Err(Error::MalformedDelta(format!("decorated entry ({i},{j}) is zero in {self}")));
            }
            if t > 0 {
                let (pi, pj) = self.delta[t - 1];
                if !(pi < i && pj > j) {
                    return Err(Error::MalformedDelta(format!("staircase violated at ({i},{j}) in {self}")));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    /// Entry `a_{ij}`, 1-based.
    pub fn a(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.m + (j - 1)]
    }

    /// Entry as a signed value; zero outside the matrix. Convenient for sums
    /// whose ranges run past the border.
    pub(crate) fn at(&self, i: i64, j: i64) -> i64 {
        if i < 1 || j < 1 || i as usize > self.n || j as usize > self.m {
            0
        } else {
            self.a(i as usize, j as usize) as i64
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn delta(&self) -> &[(usize, usize)] {
        &self.delta
    }

    /// Total `d = sum a_{ij}`.
    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn row_vec(&self, i: usize) -> &[u32] {
        &self.entries[(i - 1) * self.m..i * self.m]
    }

    /// `i_t` with the sentinels `i_0 = 0`, `i_{k+1} = n + 1`.
    pub fn i_at(&self, t: i64) -> i64 {
        let k = self.delta.len() as i64;
        if t <= 0 {
            0
        } else if t > k {
            self.n as i64 + 1
        } else {
            self.delta[t as usize - 1].0 as i64
        }
    }

    /// `j_t` with the sentinels `j_0 = m + 1`, `j_{k+1} = 0`.
    pub fn j_at(&self, t: i64) -> i64 {
        let k = self.delta.len() as i64;
        if t <= 0 {
            self.m as i64 + 1
        } else if t > k {
            0
        } else {
            self.delta[t as usize - 1].1 as i64
        }
    }

    /// 1-based position `t` in the decoration list whose row is `i`.
    pub fn delta_index_of_row(&self, i: usize) -> Option<usize> {
        self.delta.iter().position(|&(r, _)| r == i).map(|t| t + 1)
    }

    /// 1-based position `t` in the decoration list whose column is `j`.
    pub fn delta_index_of_col(&self, j: usize) -> Option<usize> {
        self.delta.iter().position(|&(_, c)| c == j).map(|t| t + 1)
    }

    /// `{(i,j)} <= Delta`: some `(k,l)` in `Delta` has `i <= k` and `j <= l`.
    pub fn is_dominated(&self, i: usize, j: usize) -> bool {
        self.delta.iter().any(|&(k, l)| i <= k && j <= l)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![0; self.n * self.m];
        for i in 0..self.n {
            for j in 0..self.m {
                entries[j * self.n + i] = self.entries[i * self.m + j];
            }
        }
        let delta = self.delta.iter().rev().map(|&(i, j)| (j, i)).collect();
        Self {
            n: self.m,
            m: self.n,
            entries,
            delta,
        }
    }

    /// Row sums and column sums.
    pub fn marginals(&self) -> (Vec<u32>, Vec<u32>) {
        let ro = (1..=self.n).map(|i| self.row_vec(i).iter().sum()).collect();
        let co = (1..=self.m).map(|j| (1..=self.n).map(|i| self.a(i, j)).sum()).collect();
        (ro, co)
    }

    /// Exponent `e` with `[A]_Delta = v^e e_{A,Delta}` under `convention`.
    pub fn weight_exponent(&self, convention: Convention) -> i64 {
        let mut pairs: i64 = 0;
        let cells: Vec<(usize, usize, i64)> = (1..=self.n)
            .flat_map(|i| (1..=self.m).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.a(i, j) as i64))
            .filter(|c| c.2 > 0)
            .collect();
        for (x, &(i, j, a)) in cells.iter().enumerate() {
            for (y, &(k, l, b)) in cells.iter().enumerate() {
                if x == y {
                    continue;
                }
                let counted = match convention.rule {
                    PairRule::OrOrdered => i < k || j < l,
                    PairRule::OrUnordered => x < y,
                    PairRule::AndOrdered => i < k && j < l,
                    PairRule::Blm => i >= k && j < l,
                };
                if counted {
                    pairs += a * b;
                }
            }
        }
        let dominated: i64 = cells
            .iter()
            .filter(|&&(i, j, _)| self.is_dominated(i, j))
            .map(|c| c.2)
            .sum();
        let e = -pairs - dominated;
        if convention.flipped {
            -e
        } else {
            e
        }
    }

    /// `A + E_{r1,c1} - E_{r2,c2}` with a new decoration; `None` when an entry
    /// would go negative or the decoration is not admissible.
    pub(crate) fn moved(&self, plus: (usize, usize), minus: (usize, usize), delta: Vec<(usize, usize)>) -> Result<Option<Self>> {
        let mut entries = self.entries.clone();
        let mi = (minus.0 - 1) * self.m + (minus.1 - 1);
        if entries[mi] == 0 {
            return Ok(None);
        }
        entries[mi] -= 1;
        entries[(plus.0 - 1) * self.m + (plus.1 - 1)] += 1;
        for w in delta.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                return Err(Error::MalformedDelta(format!("produced non-staircase decoration {delta:?} from {self}")));
            }
        }
        // A decoration on an entry that the move emptied is not a basis element.
        if delta.iter().any(|&(i, j)| entries[(i - 1) * self.m + (j - 1)] == 0) {
            return Ok(None);
        }
        Self::from_parts(self.n, self.m, entries, delta).map(Some)
    }

    pub(crate) fn with_delta(&self, delta: Vec<(usize, usize)>) -> Result<Option<Self>> {
        for w in delta.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                return Err(Error::MalformedDelta(format!("produced non-staircase decoration {delta:?} from {self}")));
            }
        }
        if delta.iter().any(|&(i, j)| self.a(i, j) == 0) {
            return Ok(None);
        }
        Self::from_parts(self.n, self.m, self.entries.clone(), delta).map(Some)
    }
}

impl fmt::Display for DecoratedMatrix {
    /// `[[1,0],[0,1]]{(1,1)}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 1..=self.n {
            if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, a) in self.row_vec(i).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]{{")?;
        for (t, (i, j)) in self.delta.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for DecoratedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for DecoratedMatrix {
    type Err = Error;

    /// Parses the display form `[[a,b],[c,d]]{(i,j),...}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid decorated matrix: {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let brace = s.find('{').ok_or_else(bad)?;
        let (mat, dec) = s.split_at(brace);
        let inner = mat.strip_prefix("[[").and_then(|x| x.strip_suffix("]]")).ok_or_else(bad)?;
        let rows = inner
            .split("],[")
            .map(|r| r.split(',').map(|x| x.parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let dec = dec.strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(bad)?;
        let mut delta = Vec::new();
        if !dec.is_empty() {
            let body = dec.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
            for pair in body.split("),(") {
                let (i, j) = pair.split_once(',').ok_or_else(bad)?;
                delta.push((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?));
            }
        }
        Self::from_rows(&rows, delta)
    }
}

#[derive(Serialize, Deserialize)]
struct DecoratedJson {
    n: usize,
    m: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<u32>>,
    delta: Vec<[usize; 2]>,
}

impl Serialize for DecoratedMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecoratedJson {
            n: self.n,
            m: self.m,
            a: (1..=self.n).map(|i| self.row_vec(i).to_vec()).collect(),
            delta: self.delta.iter().map(|&(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecoratedMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DecoratedJson::deserialize(d)?;
        if raw.a.len() != raw.n {
            return Err(serde::de::Error::custom("row count does not match n"));
        }
        let x = Self::from_rows(&raw.a, raw.delta.into_iter().map(|[i, j]| (i, j)).collect())
            .map_err(serde::de::Error::custom)?;
        if x.m != raw.m {
            return Err(serde::de::Error::custom("column count does not match m"));
        }
        Ok(x)
    }
}

/// Which ordered pairs of positions contribute `a_{ij} a_{kl}` to the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairRule {
    /// Ordered pairs with `i < k or j < l`.
    OrOrdered,
    /// Every unordered pair of distinct positions, once.
    OrUnordered,
    /// Ordered pairs with `i < k and j < l`.
    AndOrdered,
    /// Ordered pairs with `i >= k and j < l`.
    Blm,
}

impl PairRule {
    pub const ALL: [PairRule; 4] = [PairRule::OrOrdered, PairRule::OrUnordered, PairRule::AndOrdered, PairRule::Blm];

    pub fn name(self) -> &'static str {
        match self {
            PairRule::OrOrdered => "or-ordered",
            PairRule::OrUnordered => "or-unordered",
            PairRule::AndOrdered => "and-ordered",
            PairRule::Blm => "blm",
        }
    }
}

/// Normalization of the `[A]_Delta` basis. `flipped` negates the exponent and
/// exists only as a negative control for calibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub rule: PairRule,
    pub flipped: bool,
}

impl Convention {
    pub const fn new(rule: PairRule) -> Self {
        Self { rule, flipped: false }
    }

    pub fn candidates() -> Vec<Convention> {
        PairRule::ALL.iter().map(|&r| Convention::new(r)).collect()
    }

    /// The candidates followed by their sign-flipped controls.
    pub fn with_controls() -> Vec<Convention> {
        let mut out = Self::candidates();
        out.extend(PairRule::ALL.iter().map(|&rule| Convention { rule, flipped: true }));
        out
    }

    pub fn name(&self) -> String {
        if self.flipped {
            format!("{}-flipped", self.rule.name())
        } else {
            self.rule.name().to_string()
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (base, flipped) = match s.strip_suffix("-flipped") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let rule = PairRule::ALL
            .into_iter()
            .find(|r| r.name() == base)
            .ok_or_else(|| Error::Parse(format!("unknown convention {s:?}")))?;
        Ok(Convention { rule, flipped })
    }
}

/// All staircases inside the support of `entries` (an `n x m` matrix),
/// lexicographically sorted.
fn staircases(n: usize, m: usize, entries: &[u32]) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        n: usize,
        m: usize,
        entries: &[u32],
        row: usize,
        col_bound: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        out.push(cur.clone());
        for i in row..=n {
            for j in 1..col_bound {
                if entries[(i - 1) * m + (j - 1)] > 0 {
                    cur.push((i, j));
                    rec(n, m, entries, i + 1, j, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(n, m, entries, 1, m + 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Weak compositions of `d` into `parts` parts, lexicographic.
pub(crate) fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(left - x, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, parts, &mut Vec::new(), &mut out);
    out
}

/// Every decorated `n x m` matrix with entry total `d`, in canonical order.
pub fn enumerate_decorated(n: usize, m: usize, d: u32) -> Vec<DecoratedMatrix> {
    let mut out = Vec::new();
    for entries in compositions(d, n * m) {
        for delta in staircases(n, m, &entries) {
            out.push(DecoratedMatrix {
                n,
                m,
                entries: entries.clone(),
                delta,
            });
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `sum_{l=0}^{min(m,d)} C(m,l) C(n,l) C(nm+d-1-l, d-l)`.
pub fn dimension_count(n: usize, m: usize, d: u32) -> BigUint {
    let (n64, m64, d64) = (n as u64, m as u64, d as u64);
    if n == 0 || m == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    (0..=m64.min(d64))
        .map(|l| binomial(m64, l) * binomial(n64, l) * binomial(n64 * m64 + d64 - 1 - l, d64 - l))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(s: &str) -> DecoratedMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        let xs = enumerate_decorated(1, 1, 1);
        assert_eq!(xs, vec![dm("[[1]]{}"), dm("[[1]]{(1,1)}")]);
        assert_eq!(enumerate_decorated(1, 1, 0), vec![dm("[[0]]{}")]);
        assert_eq!(enumerate_decorated(2, 2, 2).len(), 27);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let xs = enumerate_decorated(3, 2, 3);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    /// Independent count: all matrices, then all subsets of positive cells
    /// filtered by the staircase condition.
    fn brute_count(n: usize, m: usize, d: u32) -> usize {
        let mut count = 0;
        for entries in compositions(d, n * m) {
            let cells: Vec<(usize, usize)> = (0..n * m)
                .filter(|&c| entries[c] > 0)
                .map(|c| (c / m + 1, c % m + 1))
                .collect();
            for mask in 0u32..(1 << cells.len()) {
                let mut chosen: Vec<_> = (0..cells.len()).filter(|b| mask >> b & 1 == 1).map(|b| cells[b]).collect();
                chosen.sort();
                if chosen.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn dimension_formula_examples() {
        for d in 1..6 {
            assert_eq!(dimension_count(1, 1, d), BigUint::from(2u32));
        }
        for n in 1..4 {
            for m in 1..4 {
                assert_eq!(dimension_count(n, m, 0), BigUint::one());
            }
        }
        assert_eq!(dimension_count(2, 2, 2), BigUint::from(27u32));
        assert_eq!(dimension_count(3, 3, 3), BigUint::from(652u32));
        for (n, m, d) in [(2, 2, 2), (3, 2, 2), (2, 3, 3), (3, 3, 2)] {
            assert_eq!(BigUint::from(brute_count(n, m, d)), dimension_count(n, m, d));
        }
    }

    #[test]
    fn weight_examples() {
        for c in Convention::candidates() {
            assert_eq!(dm("[[1]]{(1,1)}").weight_exponent(c), -1);
            assert_eq!(dm("[[4]]{}").weight_exponent(c), 0);
        }
        let x = dm("[[1,0],[0,1]]{}");
        assert_eq!(x.weight_exponent(Convention::new(PairRule::OrOrdered)), -1);
        assert_eq!(x.weight_exponent(Convention::new(PairRule::OrUnordered)), -1);
        assert_eq!(x.weight_exponent(Convention::new(PairRule::AndOrdered)), -1);
        assert_eq!(x.weight_exponent(Convention::new(PairRule::Blm)), 0);
        let y = dm("[[0,1],[1,0]]{}");
        assert_eq!(y.weight_exponent(Convention::new(PairRule::OrOrdered)), -2);
        assert_eq!(y.weight_exponent(Convention::new(PairRule::AndOrdered)), 0);
        assert_eq!(y.weight_exponent(Convention::new(PairRule::Blm)), -1);
    }

    #[test]
    fn weights_nonpositive() {
        for c in Convention::candidates() {
            for x in enumerate_decorated(3, 2, 3) {
                assert!(x.weight_exponent(c) <= 0, "{x} under {c:?}");
            }
        }
    }

    #[test]
    fn transpose_examples() {
        let x = dm("[[1]]{(1,1)}");
        assert_eq!(x.transpose(), x);
        assert_eq!(dm("[[0],[1]]{(2,1)}").transpose(), dm("[[0,1]]{(1,2)}"));
        for x in enumerate_decorated(3, 2, 3) {
            let t = x.transpose();
            assert_eq!(t.rows(), 2);
            t.check_delta().unwrap();
            assert_eq!(t.transpose(), x);
        }
    }

    #[test]
    fn marginals_examples() {
        assert_eq!(dm("[[1,0],[0,1]]{}").marginals(), (vec![1, 1], vec![1, 1]));
        assert_eq!(dm("[[2,1]]{}").marginals(), (vec![3], vec![2, 1]));
        for x in enumerate_decorated(2, 3, 3) {
            assert_eq!(x.transpose().marginals().0, x.marginals().1);
        }
    }

    #[test]
    fn rejects_bad_decorations() {
        assert!(matches!(
            DecoratedMatrix::from_rows(&[vec![0, 1]], vec![(1, 1)]),
            Err(Error::MalformedDelta(_))
        ));
        assert!(matches!(
            DecoratedMatrix::from_rows(&[vec![1, 1], vec![1, 1]], vec![(1, 1), (2, 2)]),
            Err(Error::MalformedDelta(_))
        ));
        assert!(DecoratedMatrix::from_rows(&[vec![1, 1], vec![1, 1]], vec![(2, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn sentinels() {
        let x = dm("[[1,1],[1,1]]{(1,2),(2,1)}");
        assert_eq!((x.i_at(0), x.i_at(1), x.i_at(2), x.i_at(3)), (0, 1, 2, 3));
        assert_eq!((x.j_at(0), x.j_at(1), x.j_at(2), x.j_at(3)), (3, 2, 1, 0));
    }

    #[test]
    fn json_shape() {
        let x = dm("[[0],[1]]{(2,1)}");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":2,"m":1,"A":[[0],[1]],"delta":[[2,1]]}"#);
        assert_eq!(serde_json::from_str::<DecoratedMatrix>(&s).unwrap(), x);
    }
}
