//! Exact values of the form Σ q_e · π^e with rational q_e.
//!
//! Every main-term coefficient and every ball/sphere integral of a rational
//! polynomial in this library is a rational multiple of an integer power of π
//! (via Vol(S^{n−1}) = 2π^{n/2}/Γ(n/2) with half-integer Γ values), so a
//! sparse map from π-exponent to rational is closed under the arithmetic the
//! pipeline needs and stays exact until a final decimal evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::precision::BigFixed;

/// Exact rational scalar used throughout the library.
pub type Rational = BigRational;

/// Finite formal sum Σ q_e · π^e (nonnegative integer e, rational q_e).
///
/// Zero coefficients are never stored, so structural equality is canonical
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactValue {
    terms: BTreeMap<u32, Rational>,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// q · π^0.
    pub fn from_rational(q: Rational) -> Self {
        Self::pi_power(0, q)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// q · π^e.
    pub fn pi_power(e: u32, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(e, q);
        }
        ExactValue { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate (π-exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, q)| (*e, q))
    }

    /// The coefficient of π^e (zero if absent).
    pub fn coeff(&self, e: u32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, q) in &rhs.terms {
            let entry = terms.entry(*e).or_insert_with(Rational::zero);
            *entry += q;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        ExactValue { terms }
    }

    pub fn neg(&self) -> Self {
        ExactValue {
            terms: self.terms.iter().map(|(e, q)| (*e, -q)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = ExactValue::zero();
        for (ea, qa) in &self.terms {
            for (eb, qb) in &rhs.terms {
                let entry = out.terms.entry(ea + eb).or_insert_with(Rational::zero);
                *entry += qa * qb;
                if entry.is_zero() {
                    out.terms.remove(&(ea + eb));
                }
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    /// Decimal evaluation, correct to within 10^(1−digits) relative error.
    ///
    /// π is computed with guard digits; if the value is small in magnitude the
    /// working scale is deepened so the *relative* precision target holds.
    pub fn eval(&self, digits: u32) -> BigFixed {
        let v = self.eval_at_scale(digits + 15);
        if v.is_zero() {
            return v;
        }
        // Count leading zeros after the decimal point; deepen if the value is
        // too small for the absolute scale to deliver relative precision.
        let mag = v.abs().to_f64().log10();
        if mag < -1.0 && mag.is_finite() {
            let extra = (-mag).ceil() as u32;
            self.eval_at_scale(digits + 15 + extra).with_scale(digits + 15 + extra)
        } else {
            v
        }
    }

    /// Evaluation at a fixed absolute decimal scale.
    pub fn eval_at_scale(&self, scale: u32) -> BigFixed {
        let mut acc = BigFixed::zero(scale);
        if self.terms.is_empty() {
            return acc;
        }
        let max_e = *self.terms.keys().last().unwrap();
        let pi = if max_e > 0 { BigFixed::pi(scale + 10) } else { BigFixed::zero(scale) };
        let mut pi_pow = BigFixed::from_i64(1, scale + 10);
        let mut cur_e = 0u32;
        for (e, q) in &self.terms {
            while cur_e < *e {
                pi_pow = pi_pow.mul(&pi);
                cur_e += 1;
            }
            let term = BigFixed::from_rational(q, scale + 10).mul(&pi_pow);
            acc = acc.add(&term.with_scale(scale));
        }
        acc.with_scale(scale)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, q) in &self.terms {
            if !first {
                write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
            } else {
                if q.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = q.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "pi")?,
                (1, false) => write!(f, "{a}*pi")?,
                (_, true) => write!(f, "pi^{e}")?,
                (_, false) => write!(f, "{a}*pi^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_combines_like_terms() {
        let half = ExactValue::from_rational(q(1, 2));
        assert_eq!(half.add(&half), ExactValue::from_integer(1));

        let a = ExactValue::pi_power(1, q(1, 6));
        let b = ExactValue::pi_power(1, q(1, 3));
        assert_eq!(a.add(&b), ExactValue::pi_power(1, q(1, 2)));

        let pi = ExactValue::pi_power(1, q(1, 1));
        assert_eq!(pi.add(&ExactValue::zero()), pi);
    }

    #[test]
    fn mul_adds_exponents() {
        let a = ExactValue::pi_power(1, q(1, 2));
        let b = ExactValue::pi_power(1, q(2, 1));
        assert_eq!(a.mul(&b), ExactValue::pi_power(2, q(1, 1)));

        let x = ExactValue::pi_power(3, q(-7, 5));
        assert_eq!(x.mul(&ExactValue::one()), x);

        let c = ExactValue::pi_power(1, q(1, 24));
        assert_eq!(c.mul(&ExactValue::from_integer(24)), ExactValue::pi_power(1, q(1, 1)));
    }

    #[test]
    fn cancellation_removes_entries() {
        let a = ExactValue::pi_power(2, q(3, 4));
        let sum = a.add(&a.neg());
        assert!(sum.is_zero());
        // Mixed multiply producing a cancelling cross term.
        let p = ExactValue::from_integer(1).add(&ExactValue::pi_power(1, q(1, 1)));
        let m = ExactValue::from_integer(1).add(&ExactValue::pi_power(1, q(-1, 1)));
        let prod = p.mul(&m); // 1 − π²
        assert_eq!(prod.coeff(0), q(1, 1));
        assert_eq!(prod.coeff(1), q(0, 1));
        assert_eq!(prod.coeff(2), q(-1, 1));
    }

    #[test]
    fn distributivity_is_exact() {
        let a = ExactValue::pi_power(1, q(2, 3)).add(&ExactValue::from_rational(q(1, 7)));
        let b = ExactValue::pi_power(2, q(-5, 4));
        let c = ExactValue::from_rational(q(9, 2)).add(&ExactValue::pi_power(1, q(1, 11)));
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_matches_reference_strings() {
        let half = ExactValue::from_rational(q(1, 2));
        assert_eq!(half.eval(10).to_sig_string(10), "0.5000000000");
        let pi = ExactValue::pi_power(1, q(1, 1));
        assert_eq!(pi.eval(15).to_sig_string(15), "3.14159265358979");
        let pi24 = ExactValue::pi_power(1, q(1, 24));
        assert_eq!(pi24.eval(10).to_sig_string(10), "0.1308996939");
    }

    #[test]
    fn eval_round_trip_of_addition() {
        let a = ExactValue::pi_power(2, q(355, 113)).add(&ExactValue::from_rational(q(-22, 7)));
        let b = ExactValue::pi_power(1, q(1, 3));
        let d = 40;
        let sum = a.add(&b).eval(d).to_f64();
        let parts = a.eval(d + 5).to_f64() + b.eval(d + 5).to_f64();
        assert!(((sum - parts) / parts).abs() < 1e-12);
    }

    #[test]
    fn eval_small_magnitude_keeps_relative_precision() {
        // ~1.17e−31: needs deepened scale for 40 relative digits.
        let tiny = ExactValue::pi_power(2, q(1, 1)).scale(&Rational::new(
            BigInt::from(1),
            BigInt::parse_bytes(b"84272853405531928041669741659", 10).unwrap(),
        ));
        let s = tiny.eval(40).to_sci_string(5);
        assert!(s.starts_with("1.171") && s.ends_with("e-28"), "{s}");
    }

    #[test]
    fn display_format() {
        let v = ExactValue::from_rational(q(1, 2))
            .add(&ExactValue::pi_power(1, q(-1, 6)))
            .add(&ExactValue::pi_power(2, q(1, 1)));
        assert_eq!(v.to_string(), "1/2 - 1/6*pi + pi^2");
    }
}
