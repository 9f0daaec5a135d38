//! Arbitrary-precision fixed-point decimals.
//!
//! [`BigFixed`] stores a value as `units · 10^(−scale)` with a big-integer
//! `units`. All arithmetic rounds half-to-even at the result scale, so a
//! computation carried out with a handful of guard digits beyond the target
//! precision is accurate to well under one target ulp. π and logarithms are
//! computed from scratch (Machin's formula, atanh series); the two constants
//! the library cannot derive cheaply at precision — Euler's γ and e^γ — are
//! embedded as 120-digit literals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Decimal digits of γ and e^γ available from the embedded literals.
pub const MAX_CONST_SCALE: u32 = 118;

const GAMMA_DIGITS: &str = "0577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063291746749514631447249807082481";
const EXP_GAMMA_DIGITS: &str = "1781072417990197985236504103107179549169645214303430205357665876512841076813588293707574216488418280334822245225145742001";

/// Fixed-point decimal: value = `units / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFixed {
    units: BigInt,
    scale: u32,
}

/// 10^k as a `BigInt`.
pub fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Nearest-integer division with ties to even, `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_mod_floor(d); // 0 <= r < d
    let twice: BigInt = &r * 2;
    match twice.cmp(d) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

impl BigFixed {
    pub fn zero(scale: u32) -> Self {
        BigFixed {
            units: BigInt::zero(),
            scale,
        }
    }

    /// The integer `v` at the given scale (exact).
    pub fn from_bigint(v: &BigInt, scale: u32) -> Self {
        BigFixed {
            units: v * pow10(scale),
            scale,
        }
    }

    pub fn from_i64(v: i64, scale: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), scale)
    }

    /// Nearest fixed-point value of an exact rational.
    pub fn from_rational(q: &BigRational, scale: u32) -> Self {
        let n = q.numer() * pow10(scale);
        let d = q.denom().clone();
        let units = if d.is_positive() {
            round_div(&n, &d)
        } else {
            round_div(&(-n), &(-d))
        };
        BigFixed { units, scale }
    }

    /// Raw constructor for embedded digit strings: `digits` is the decimal
    /// expansion with an implied point after the first digit.
    fn from_digit_literal(digits: &str, int_digits: u32, scale: u32) -> Self {
        assert!(scale <= digits.len() as u32 - int_digits, "literal too short");
        let keep = (int_digits + scale) as usize;
        let units: BigInt = digits[..keep].parse().expect("bad embedded literal");
        BigFixed { units, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn units(&self) -> &BigInt {
        &self.units
    }

    pub fn is_zero(&self) -> bool {
        self.units.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.units.is_negative()
    }

    /// Re-scale, rounding half-to-even when digits are dropped.
    pub fn with_scale(&self, scale: u32) -> Self {
        use std::cmp::Ordering::*;
        match scale.cmp(&self.scale) {
            Equal => self.clone(),
            Greater => BigFixed {
                units: &self.units * pow10(scale - self.scale),
                scale,
            },
            Less => BigFixed {
                units: round_div(&self.units, &pow10(self.scale - scale)),
                scale,
            },
        }
    }

    fn aligned(&self, rhs: &Self) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(rhs.scale);
        let a = &self.units * pow10(scale - self.scale);
        let b = &rhs.units * pow10(scale - rhs.scale);
        (a, b, scale)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b, scale) = self.aligned(rhs);
        BigFixed { units: a + b, scale }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (a, b, scale) = self.aligned(rhs);
        BigFixed { units: a - b, scale }
    }

    pub fn neg(&self) -> Self {
        BigFixed {
            units: -&self.units,
            scale: self.scale,
        }
    }

    pub fn abs(&self) -> Self {
        BigFixed {
            units: self.units.abs(),
            scale: self.scale,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let scale = self.scale.max(rhs.scale);
        let drop = self.scale + rhs.scale - scale;
        BigFixed {
            units: round_div(&(&self.units * &rhs.units), &pow10(drop)),
            scale,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFixed {
            units: &self.units * k,
            scale: self.scale,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.units.is_zero(), "division by zero");
        let scale = self.scale.max(rhs.scale);
        // value = (a·10^{s2}) / b · 10^{-s}  with everything in units.
        let num = &self.units * pow10(rhs.scale + scale - self.scale);
        let units = if rhs.units.is_positive() {
            round_div(&num, &rhs.units)
        } else {
            round_div(&(-num), &(-&rhs.units))
        };
        BigFixed { units, scale }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let (n, d) = if k > 0 {
            (self.units.clone(), BigInt::from(k))
        } else {
            (-&self.units, BigInt::from(-k))
        };
        BigFixed {
            units: round_div(&n, &d),
            scale: self.scale,
        }
    }

    /// Floor square root at the same scale; panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.units.is_negative(), "sqrt of negative value");
        BigFixed {
            units: (&self.units * pow10(self.scale)).sqrt(),
            scale: self.scale,
        }
    }

    /// ⌊value⌋ as a big integer (floor toward −∞).
    pub fn floor_int(&self) -> BigInt {
        self.units.div_floor(&pow10(self.scale))
    }

    /// value − ⌊value⌋, in [0, 1).
    pub fn fract(&self) -> Self {
        let f = self.floor_int();
        BigFixed {
            units: &self.units - f * pow10(self.scale),
            scale: self.scale,
        }
    }

    pub fn cmp_value(&self, rhs: &Self) -> std::cmp::Ordering {
        let (a, b, _) = self.aligned(rhs);
        a.cmp(&b)
    }

    pub fn to_f64(&self) -> f64 {
        // Shift so the units fit comfortably in f64 range, then scale back.
        let digits = self.units.magnitude().to_string().len() as i64;
        let drop = (digits - 30).max(0) as u32;
        let reduced = if drop > 0 {
            (&self.units / pow10(drop)).to_f64().unwrap_or(f64::NAN)
        } else {
            self.units.to_f64().unwrap_or(f64::NAN)
        };
        reduced * 10f64.powi(drop as i32 - self.scale as i32)
    }

    /// π at the given scale (Machin's formula, computed with guard digits).
    pub fn pi(scale: u32) -> Self {
        let work = scale + 10;
        let a5 = atan_inv_units(5, work);
        let a239 = atan_inv_units(239, work);
        let units = a5 * 16 - a239 * 4;
        (BigFixed { units, scale: work }).with_scale(scale)
    }

    /// ln 2 at the given scale (2·atanh(1/3)).
    pub fn ln2(scale: u32) -> Self {
        let work = scale + 10;
        let units = atanh_inv_units(3, work) * 2;
        (BigFixed { units, scale: work }).with_scale(scale)
    }

    /// Euler's constant γ from the embedded literal (`scale ≤ MAX_CONST_SCALE`).
    pub fn euler_gamma(scale: u32) -> Self {
        assert!(scale <= MAX_CONST_SCALE, "γ literal holds {MAX_CONST_SCALE} digits");
        Self::from_digit_literal(GAMMA_DIGITS, 1, scale)
    }

    /// e^γ from the embedded literal (`scale ≤ MAX_CONST_SCALE`).
    pub fn exp_gamma(scale: u32) -> Self {
        assert!(scale <= MAX_CONST_SCALE, "e^γ literal holds {MAX_CONST_SCALE} digits");
        Self::from_digit_literal(EXP_GAMMA_DIGITS, 1, scale)
    }

    /// Natural logarithm; panics on values ≤ 0.
    pub fn ln(&self) -> Self {
        assert!(self.units.is_positive(), "ln of non-positive value");
        let scale = self.scale;
        let work = scale + 10;
        let mut m = self.with_scale(work);
        // Normalize m into [2/3, 4/3) by powers of two.
        let lo = BigFixed::from_rational(&BigRational::new(2.into(), 3.into()), work);
        let hi = BigFixed::from_rational(&BigRational::new(4.into(), 3.into()), work);
        let mut e: i64 = 0;
        while m.cmp_value(&hi) != std::cmp::Ordering::Less {
            m = m.div_i64(2);
            e += 1;
        }
        while m.cmp_value(&lo) == std::cmp::Ordering::Less {
            m = m.mul_i64(2);
            e -= 1;
        }
        // ln m = 2 atanh(u), u = (m−1)/(m+1) ∈ [−1/5, 1/7].
        let one = BigFixed::from_i64(1, work);
        let u = m.sub(&one).div(&m.add(&one));
        let u2 = u.mul(&u);
        let mut term = u.clone();
        let mut acc = u;
        let mut k = 1i64;
        while !term.is_zero() {
            term = term.mul(&u2);
            if term.is_zero() {
                break;
            }
            k += 2;
            acc = acc.add(&term.div_i64(k));
        }
        let ln_m = acc.mul_i64(2);
        let result = if e == 0 {
            ln_m
        } else {
            ln_m.add(&Self::ln2(work).mul_i64(e))
        };
        result.with_scale(scale)
    }

    /// sin x by Taylor series; intended for |x| ≤ 2 (no range reduction).
    pub fn sin(&self) -> Self {
        debug_assert!(self.abs().to_f64() <= 2.5, "sin: argument outside reduced range");
        let scale = self.scale;
        let work = scale + 10;
        let x = self.with_scale(work);
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut acc = x;
        let mut k = 1i64;
        loop {
            term = term.mul(&x2).div_i64((k + 1) * (k + 2)).neg();
            k += 2;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc.with_scale(scale)
    }

    /// cos x by Taylor series; intended for |x| ≤ 2 (no range reduction).
    pub fn cos(&self) -> Self {
        debug_assert!(self.abs().to_f64() <= 2.5, "cos: argument outside reduced range");
        let scale = self.scale;
        let work = scale + 10;
        let x = self.with_scale(work);
        let x2 = x.mul(&x);
        let mut term = BigFixed::from_i64(1, work);
        let mut acc = term.clone();
        let mut k = 0i64;
        loop {
            term = term.mul(&x2).div_i64((k + 1) * (k + 2)).neg();
            k += 2;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc.with_scale(scale)
    }

    /// cot(π t) for rational t with 0 < t < 1, t ≠ 1/2 handled via reflection.
    pub fn cot_pi(t: &BigRational, scale: u32) -> Self {
        let one = BigRational::one();
        let half = BigRational::new(1.into(), 2.into());
        assert!(t > &BigRational::zero() && t < &one, "cot_pi domain");
        if t > &half {
            return Self::cot_pi(&(one - t), scale).neg();
        }
        let work = scale + 10;
        let x = Self::pi(work).mul(&Self::from_rational(t, work));
        x.cos().div(&x.sin()).with_scale(scale)
    }

    /// Round to `sig` significant digits and render in plain decimal.
    pub fn to_sig_string(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.units.is_zero() {
            return "0".to_string();
        }
        let neg = self.units.is_negative();
        let v = self.units.abs();
        let len = v.to_string().len() as i64;
        let drop = len - sig as i64;
        let (q, frac_digits) = if drop > 0 {
            (round_div(&v, &pow10(drop as u32)), self.scale as i64 - drop)
        } else {
            (v, self.scale as i64)
        };
        render_plain(&q, frac_digits, neg)
    }

    /// Render with a fixed number of digits after the decimal point.
    pub fn to_fixed_string(&self, frac: u32) -> String {
        let neg = self.units.is_negative();
        let v = self.units.abs();
        let q = if frac >= self.scale {
            v * pow10(frac - self.scale)
        } else {
            round_div(&v, &pow10(self.scale - frac))
        };
        render_plain(&q, frac as i64, neg && !q.is_zero())
    }

    /// Scientific notation with `sig` significant digits, e.g. `-1.2345e-7`.
    pub fn to_sci_string(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.units.is_zero() {
            return "0e0".to_string();
        }
        let neg = self.units.is_negative();
        let v = self.units.abs();
        let len = v.to_string().len() as i64;
        let drop = len - sig as i64;
        let q = if drop > 0 {
            round_div(&v, &pow10(drop as u32))
        } else {
            v * pow10((-drop) as u32)
        };
        let mut digits = q.to_string();
        // Rounding may carry to one extra digit (e.g. 999.. → 1000..).
        let exp10 = if digits.len() as u32 > sig {
            digits.truncate(sig as usize);
            len - self.scale as i64
        } else {
            len - 1 - self.scale as i64
        };
        let mantissa = if digits.len() > 1 {
            format!("{}.{}", &digits[..1], &digits[1..])
        } else {
            digits
        };
        format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, exp10)
    }
}

/// Plain decimal rendering of `q · 10^(−frac_digits)`.
fn render_plain(q: &BigInt, frac_digits: i64, neg: bool) -> String {
    let sign = if neg { "-" } else { "" };
    if frac_digits <= 0 {
        return format!("{}{}{}", sign, q, "0".repeat((-frac_digits) as usize));
    }
    let s = q.to_string();
    let f = frac_digits as usize;
    if s.len() > f {
        format!("{}{}.{}", sign, &s[..s.len() - f], &s[s.len() - f..])
    } else {
        format!("{}0.{}{}", sign, "0".repeat(f - s.len()), s)
    }
}

/// Units of atan(1/x) at scale `s` (alternating Gregory series).
fn atan_inv_units(x: i64, s: u32) -> BigInt {
    let num = pow10(s);
    let x2 = BigInt::from(x) * x;
    let mut p = BigInt::from(x);
    let mut k = 0i64;
    let mut acc = BigInt::zero();
    loop {
        let t = &num / (&p * (2 * k + 1));
        if t.is_zero() {
            break;
        }
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
        p *= &x2;
        k += 1;
    }
    acc
}

/// Units of atanh(1/x) at scale `s`.
fn atanh_inv_units(x: i64, s: u32) -> BigInt {
    let num = pow10(s);
    let x2 = BigInt::from(x) * x;
    let mut p = BigInt::from(x);
    let mut k = 0i64;
    let mut acc = BigInt::zero();
    loop {
        let t = &num / (&p * (2 * k + 1));
        if t.is_zero() {
            break;
        }
        acc += t;
        p *= &x2;
        k += 1;
    }
    acc
}
