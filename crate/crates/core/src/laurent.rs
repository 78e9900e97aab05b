//! Exact arithmetic in `Z[v, v^-1]`.
//!
//! Every coefficient that appears in the generator actions lives in this ring.
//! Quotients that are known to be polynomial (the quantum brackets, the `E`/`F`
//! commutator) go through [`LaurentPolynomial::exact_div`], which fails loudly
//! instead of silently leaving the ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z[v, v^-1]`, stored as exponent -> nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Multiplies by `v^e`.
    pub fn shift(&self, e: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// True when every exponent is even, i.e. the element lies in `Z[q, q^-1]`
    /// under `q = v^2`.
    pub fn has_only_even_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Exact division. Fails with [`Error::NotDivisible`] unless `divisor * c == self`
    /// for some `c` in `Z[v, v^-1]`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (dlo, dhi) = match (divisor.min_exponent(), divisor.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::DivisionByZero),
        };
        let lead = &divisor.terms[&dhi];
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_exponent() {
            let rlo = rem.min_exponent().unwrap_or(rhi);
            // The remainder must keep a span at least as wide as the divisor.
            if rhi - rlo < dhi - dlo {
                return Err(Error::NotDivisible {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let (q, r) = rem.terms[&rhi].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let shift = rhi - dhi;
            for (e, c) in &divisor.terms {
                rem.add_term(e + shift, -(c * &q));
            }
            quot.add_term(shift, q);
        }
        Ok(quot)
    }

    /// Evaluates at a rational value of `v`.
    pub fn eval_rational(&self, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * pow_rational(v, *e);
        }
        acc
    }

    /// Substitutes `v = sqrt(q)` exactly.
    pub fn specialize_sqrt(&self, q: u64) -> SpecializedValue {
        specialize_v2(self, q)
    }
}

fn pow_rational(v: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(v.clone(), e as usize)
    } else {
        num_traits::pow(v.recip(), (-e) as usize)
    }
}

/// The quantum bracket `prod_{i=1..t} (v^{-2(N-i+1)} - 1) / (v^{-2i} - 1)`.
///
/// Each factor is divided exactly, so a non-polynomial result surfaces as an
/// error rather than being rounded away.
pub fn gauss_bracket(big_n: u32, t: u32) -> Result<LaurentPolynomial> {
    if t == 0 {
        return Err(Error::InvalidArgument(
            "gauss_bracket requires t >= 1".into(),
        ));
    }
    let mut num = LaurentPolynomial::one();
    let mut den = LaurentPolynomial::one();
    for i in 1..=t {
        let top = -2 * (big_n as i32 - i as i32 + 1);
        num = &num * &(LaurentPolynomial::v_pow(top) - LaurentPolynomial::one());
        den = &den * &(LaurentPolynomial::v_pow(-2 * i as i32) - LaurentPolynomial::one());
    }
    num.exact_div(&den).map_err(|e| match e {
        Error::NotDivisible { dividend, divisor } => Error::Internal(format!(
            "bracket [[{big_n},{t}]] left Z[v,v^-1]: {dividend} / {divisor}"
        )),
        other => other,
    })
}

/// `[[N, 1]] = 1 + v^-2 + ... + v^{-2(N-1)}`; zero for `N = 0`.
pub(crate) fn bracket1(big_n: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms((0..big_n.max(0)).map(|i| (-2 * i as i32, 1)))
}

/// An element `rational + surd * sqrt(q)` of `Q(sqrt q)`.
///
/// When `q` is a perfect square the surd is folded into the rational part so
/// that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecializedValue {
    pub rational: BigRational,
    pub surd: BigRational,
    pub q: u64,
}

impl SpecializedValue {
    pub fn zero(q: u64) -> Self {
        Self {
            rational: BigRational::zero(),
            surd: BigRational::zero(),
            q,
        }
    }

    pub fn from_integer(c: impl Into<BigInt>, q: u64) -> Self {
        Self {
            rational: BigRational::from_integer(c.into()),
            surd: BigRational::zero(),
            q,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    fn normalized(mut self) -> Self {
        if let Some(r) = exact_sqrt(self.q) {
            let s = std::mem::replace(&mut self.surd, BigRational::zero());
            self.rational += s * BigRational::from_integer(r.into());
        }
        self
    }

    /// The integer value, if the element is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.surd.is_zero() && self.rational.is_integer()).then(|| self.rational.to_integer())
    }
}

impl Add for &SpecializedValue {
    type Output = SpecializedValue;
    fn add(self, rhs: &SpecializedValue) -> SpecializedValue {
        assert_eq!(self.q, rhs.q, "mismatched specialization");
        SpecializedValue {
            rational: &self.rational + &rhs.rational,
            surd: &self.surd + &rhs.surd,
            q: self.q,
        }
    }
}

impl Mul for &SpecializedValue {
    type Output = SpecializedValue;
    fn mul(self, rhs: &SpecializedValue) -> SpecializedValue {
        assert_eq!(self.q, rhs.q, "mismatched specialization");
        let q = BigRational::from_integer(self.q.into());
        SpecializedValue {
            rational: &self.rational * &rhs.rational + &self.surd * &rhs.surd * q,
            surd: &self.rational * &rhs.surd + &self.surd * &rhs.rational,
            q: self.q,
        }
        .normalized()
    }
}

impl fmt::Display for SpecializedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rational, self.surd, self.q)
        }
    }
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r * r == q).then_some(r)
}

/// Substitutes `v = sqrt(q)`: even exponents land in the rational part, odd
/// exponents in the coefficient of `sqrt(q)`.
pub fn specialize_v2(p: &LaurentPolynomial, q: u64) -> SpecializedValue {
    assert!(q >= 2, "specialization requires q >= 2");
    let qr = BigRational::from_integer(q.into());
    let mut out = SpecializedValue::zero(q);
    for (e, c) in &p.terms {
        // v^e = q^{floor(e/2)} * sqrt(q)^{e mod 2}
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let scale = pow_rational(&qr, half) * BigRational::from_integer(c.clone());
        if odd {
            out.surd += scale;
        } else {
            out.rational += scale;
        }
    }
    out.normalized()
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Highest power first, e.g. `v^2 - 1 + 3v^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{mag}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = Error;

    /// Parses the [`fmt::Display`] form: signed terms `c`, `cv`, `cv^e`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Laurent polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (coeff, exp) = match body.find('v') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        body[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i32>()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            out.add_term(exp, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// JSON form: `{"<exponent>": "<coefficient>", ...}`, exponents ascending.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut out = LaurentPolynomial::zero();
        for (e, c) in raw {
            let e: i32 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient stored"));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(lp("v + v^-1") * lp("v - v^-1"), lp("v^2 - v^-2"));
        let p = lp("3v^4 - 2 + v^-7");
        assert_eq!(LaurentPolynomial::one() * p.clone(), p);
        assert_eq!(lp("v^-2 - 1") * lp("1 + v^-2"), lp("v^-4 - 1"));
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(lp("v^-4 - 1").exact_div(&lp("v^-2 - 1")).unwrap(), lp("1 + v^-2"));
        let p = lp("5v^3 - v + 2v^-9");
        assert_eq!(p.exact_div(&LaurentPolynomial::one()).unwrap(), p);
        assert!(matches!(
            lp("v^-2 - 1").exact_div(&lp("v^-4 - 1")),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            lp("v^2 + 1").exact_div(&lp("v - 1")),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            lp("v").exact_div(&LaurentPolynomial::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(gauss_bracket(2, 1).unwrap(), lp("1 + v^-2"));
        assert_eq!(gauss_bracket(1, 1).unwrap(), LaurentPolynomial::one());
        assert_eq!(gauss_bracket(3, 2).unwrap(), lp("1 + v^-2 + v^-4"));
        assert_eq!(gauss_bracket(4, 4).unwrap(), LaurentPolynomial::one());
        for n in 0..6 {
            assert_eq!(bracket1(n), if n == 0 { LaurentPolynomial::zero() } else { gauss_bracket(n as u32, 1).unwrap() });
        }
    }

    #[test]
    fn specialize_examples() {
        let s = specialize_v2(&lp("v^-2 + 1"), 2);
        assert_eq!(s.rational, BigRational::new(3.into(), 2.into()));
        assert!(s.surd.is_zero());
        let s = specialize_v2(&lp("v^-1"), 4);
        assert_eq!(s.rational, BigRational::new(1.into(), 2.into()));
        assert!(s.surd.is_zero());
        assert!(specialize_v2(&LaurentPolynomial::zero(), 3).is_zero());
        let s = specialize_v2(&lp("v^3"), 3);
        assert_eq!(s.surd, BigRational::from_integer(3.into()));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "1", "-1", "v", "-v^-2 + 3", "v^2 - 2v + 7v^-11"] {
            assert_eq!(lp(s).to_string().parse::<LaurentPolynomial>().unwrap(), lp(s));
        }
        assert_eq!(lp("v^-2 + 1").to_string(), "1 + v^-2");
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&lp("v^2 - 3v^-1")).unwrap();
        assert_eq!(json, r#"{"-1":"-3","2":"1"}"#);
        let back: LaurentPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lp("v^2 - 3v^-1"));
        assert!(serde_json::from_str::<LaurentPolynomial>(r#"{"1":"0"}"#).is_err());
    }
}
