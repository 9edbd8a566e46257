//! Exact sums of square roots of rationals.
//!
//! Arc lengths of rational polygons are sums `sum c_i sqrt(r_i)` with `c_i`
//! rational and `r_i` squarefree integers. Distinct squarefree radicands are
//! linearly independent over the rationals, so the canonical form (terms
//! keyed by radicand, no zero coefficients) decides equality, and a nonzero
//! sum has a sign computable by refining rational interval bounds on each
//! root.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial-division bound for extracting square factors. Radicands here come
/// from squared edge lengths of small rational polygons, so any square factor
/// has a prime well below this.
const SQUARE_EXTRACTION_BOUND: u64 = 1_000_000;

/// Splits `m = s^2 * r` with `r` squarefree (up to the extraction bound).
fn extract_square(mut m: BigUint) -> (BigUint, BigUint) {
    let mut outside = BigUint::one();
    let mut radicand = BigUint::one();
    if m.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut d = BigUint::from(2u32);
    let bound = BigUint::from(SQUARE_EXTRACTION_BOUND);
    while &d * &d <= m && d <= bound {
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            outside *= d.pow(e / 2);
            if e % 2 == 1 {
                radicand *= &d;
            }
        }
        d += 1u32;
    }
    // remainder has no prime factor below the bound; it is either a perfect
    // square or squarefree for inputs of the size we handle
    if !m.is_one() {
        let root = m.sqrt();
        if &root * &root == m {
            outside *= root;
        } else {
            radicand *= m;
        }
    }
    (outside, radicand)
}

/// An exact value `sum coeff * sqrt(radicand)`, radicands squarefree and
/// distinct, radicand 1 holding the rational part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtSum {
    terms: BTreeMap<BigUint, BigRational>,
}

impl SqrtSum {
    pub fn zero() -> Self {
        SqrtSum { terms: BTreeMap::new() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = SqrtSum::zero();
        s.add_term(BigUint::one(), q);
        s
    }

    pub fn from_integer(n: i64) -> Self {
        SqrtSum::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(q)` for a nonnegative rational `q`, as `c * sqrt(r)` exactly:
    /// `sqrt(p/q) = sqrt(p q) / q`.
    pub fn sqrt_of_rational(q: &BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return SqrtSum::zero();
        }
        let p = q.numer().magnitude() * q.denom().magnitude();
        let (outside, radicand) = extract_square(p);
        let coeff = BigRational::new(BigInt::from(outside), q.denom().clone());
        let mut s = SqrtSum::zero();
        s.add_term(radicand, coeff);
        s
    }

    fn add_term(&mut self, radicand: BigUint, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&radicand) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&radicand);
                }
            }
            None => {
                self.terms.insert(radicand, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The exact rational value, when the sum has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&BigUint::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SqrtSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return SqrtSum::zero();
        }
        SqrtSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SqrtSum::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &other.terms {
                // sqrt(r1) sqrt(r2) = s sqrt(r) with r1 r2 = s^2 r
                let (s, r) = extract_square(r1 * r2);
                out.add_term(r, c1 * c2 * BigRational::from_integer(BigInt::from(s)));
            }
        }
        out
    }

    /// Exact division by a single-term value `c * sqrt(r)`.
    pub fn div_single(&self, other: &Self) -> Option<Self> {
        if other.terms.len() != 1 {
            return None;
        }
        let (r, c) = other.terms.iter().next().unwrap();
        // 1 / (c sqrt(r)) = sqrt(r) / (c r)
        let mut inv = SqrtSum::zero();
        let denom = c * BigRational::from_integer(BigInt::from(r.clone()));
        inv.add_term(r.clone(), denom.recip());
        Some(self.mul(&inv))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| {
                c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt()
            })
            .sum()
    }

    /// Exact sign: 0 for the empty sum, otherwise decided by rational
    /// interval refinement (terminates because a nonempty canonical sum of
    /// distinct square roots is never zero).
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        let mut precision = 8u32;
        loop {
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (r, c) in &self.terms {
                let (rlo, rhi) = sqrt_bounds(r, precision);
                if c.is_positive() {
                    lo += c * &rlo;
                    hi += c * &rhi;
                } else {
                    lo += c * &rhi;
                    hi += c * &rlo;
                }
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            precision *= 2;
            assert!(precision <= 1 << 16, "sign refinement failed to converge");
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Rational bounds `lo <= sqrt(r) <= hi` via Newton iteration from above.
fn sqrt_bounds(r: &BigUint, iterations: u32) -> (BigRational, BigRational) {
    let rq = BigRational::from_integer(BigInt::from(r.clone()));
    if rq.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // integer sqrt gives a decent start; x0 >= sqrt(r)
    let mut hi = BigRational::from_integer(BigInt::from(r.sqrt() + BigUint::one()));
    for _ in 0..iterations {
        hi = (&hi + &rq / &hi) / BigRational::from_integer(BigInt::from(2));
    }
    let lo = &rq / &hi;
    (lo, hi)
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if r.is_one() {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*sqrt({})", c, r)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_extraction() {
        let (s, r) = extract_square(BigUint::from(72u32)); // 36 * 2
        assert_eq!(s, BigUint::from(6u32));
        assert_eq!(r, BigUint::from(2u32));
        let (s, r) = extract_square(BigUint::from(49u32));
        assert_eq!(s, BigUint::from(7u32));
        assert_eq!(r, BigUint::one());
    }

    #[test]
    fn sqrt_of_perfect_square_is_rational() {
        let s = SqrtSum::sqrt_of_rational(&rat(9, 4));
        assert_eq!(s.as_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn sqrt_two_plus_sqrt_eight_combines() {
        let a = SqrtSum::sqrt_of_rational(&rat(2, 1));
        let b = SqrtSum::sqrt_of_rational(&rat(8, 1));
        let sum = a.add(&b); // sqrt2 + 2 sqrt2 = 3 sqrt2
        assert_eq!(sum, SqrtSum::sqrt_of_rational(&rat(18, 1)));
        assert!(sum.sub(&sum).is_zero());
    }

    #[test]
    fn sign_of_mixed_sums() {
        // sqrt(2) + sqrt(3) - sqrt(10) < 0 (3.146... - 3.162...)
        let s = SqrtSum::sqrt_of_rational(&rat(2, 1))
            .add(&SqrtSum::sqrt_of_rational(&rat(3, 1)))
            .sub(&SqrtSum::sqrt_of_rational(&rat(10, 1)));
        assert_eq!(s.sign(), -1);
        // sqrt(2) + sqrt(3) - sqrt(9) > 0
        let s = SqrtSum::sqrt_of_rational(&rat(2, 1))
            .add(&SqrtSum::sqrt_of_rational(&rat(3, 1)))
            .sub(&SqrtSum::from_integer(3));
        assert_eq!(s.sign(), 1);
    }

    #[test]
    fn multiplication_squares_a_length() {
        // (1 + sqrt2)^2 = 3 + 2 sqrt2
        let s = SqrtSum::from_integer(1).add(&SqrtSum::sqrt_of_rational(&rat(2, 1)));
        let sq = s.mul(&s);
        let expected = SqrtSum::from_integer(3)
            .add(&SqrtSum::sqrt_of_rational(&rat(2, 1)).scale(&rat(2, 1)));
        assert_eq!(sq, expected);
    }

    #[test]
    fn division_by_single_radical() {
        let num = SqrtSum::sqrt_of_rational(&rat(8, 1)); // 2 sqrt2
        let den = SqrtSum::sqrt_of_rational(&rat(2, 1));
        let q = num.div_single(&den).unwrap();
        assert_eq!(q.as_rational(), Some(rat(2, 1)));
    }
}
