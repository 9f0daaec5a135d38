//! Theta-series coefficient sequences a_k = S_n(k, P) for harmonic P and the
//! two empirical cusp-form statistics: normalized partial sums and normalized
//! mean squares over dyadic ranges.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::MultiPoly;
use crate::precision::BigFixed;
use crate::shells::{shell_sums, Parity};

/// Exact coefficients of the theta series attached to a harmonic polynomial.
#[derive(Debug, Clone)]
pub struct ThetaCoefficients {
    pub n: usize,
    pub p: MultiPoly,
    /// Degree ν of P.
    pub nu: u32,
    /// Modular weight r = ν + n/2 (half-integer allowed).
    pub weight: Rational,
    pub k_max: i64,
    /// a_k for k = 0..=k_max; a_0 = 0.
    pub a: Vec<Rational>,
    /// True when every coefficient vanishes (symmetric kill); such sequences
    /// are excluded from band assertions.
    pub degenerate: bool,
}

/// Build the coefficient table. P must be homogeneous harmonic of degree ≥ 1.
pub fn theta_coeffs(n: usize, p: &MultiPoly, k_max: i64) -> Result<ThetaCoefficients> {
    let nu = match p.homogeneous_degree()? {
        None | Some(0) => return Err(Error::ConstantPoly),
        Some(g) => g,
    };
    if !p.is_harmonic() {
        return Err(Error::NonHarmonic);
    }
    let a = shell_sums(n, k_max, Parity::All, p);
    debug_assert!(a[0].is_zero());
    let degenerate = a.iter().all(|v| v.is_zero());
    Ok(ThetaCoefficients {
        n,
        p: p.clone(),
        nu,
        weight: Rational::new(BigInt::from(2 * nu as i64 + n as i64), BigInt::from(2)),
        k_max,
        a,
        degenerate,
    })
}

/// One normalized statistic value at cutoff K.
#[derive(Debug, Clone)]
pub struct StatRow {
    pub cap: i64,
    pub value: BigFixed,
}

/// Dyadic cutoffs 4, 8, …, ≤ k_max, with k_max itself appended when it is
/// not a power of two.
pub fn dyadic_caps(k_max: i64) -> Vec<i64> {
    let mut caps = Vec::new();
    let mut k = 4i64;
    while k <= k_max {
        caps.push(k);
        k *= 2;
    }
    if caps.last() != Some(&k_max) && k_max >= 4 {
        caps.push(k_max);
    }
    caps
}

/// K^{r/2} where r = (2ν+n)/2: computed as the fourth root of K^{2ν+n},
/// i.e. two exact fixed-point square roots — no general exponential needed.
fn cap_power_half_weight(c: &ThetaCoefficients, cap: i64, scale: u32) -> BigFixed {
    let e = (2 * c.nu as i64 + c.n as i64) as u32;
    let base = BigInt::from(cap).pow(e);
    BigFixed::from_bigint(&base, 0).with_scale(scale).sqrt().sqrt()
}

/// K^r, as the square root of K^{2ν+n}.
fn cap_power_weight(c: &ThetaCoefficients, cap: i64, scale: u32) -> BigFixed {
    let e = (2 * c.nu as i64 + c.n as i64) as u32;
    let base = BigInt::from(cap).pow(e);
    BigFixed::from_bigint(&base, 0).with_scale(scale).sqrt()
}

/// |Σ_{k≤K} a_k| / (K^{r/2} · ln K) at a single cutoff.
pub fn partial_sum_stat_at(c: &ThetaCoefficients, cap: i64, digits: u32) -> BigFixed {
    assert!(cap >= 2 && cap <= c.k_max);
    let scale = digits + 10;
    let mut s = Rational::zero();
    for k in 0..=cap as usize {
        s += &c.a[k];
    }
    let num = BigFixed::from_rational(&s.abs(), scale);
    let lnk = BigFixed::from_i64(cap, scale).ln();
    num.div(&cap_power_half_weight(c, cap, scale).mul(&lnk))
        .with_scale(digits)
}

/// K^{−r} · Σ_{k≤K} a_k² at a single cutoff.
pub fn mean_square_stat_at(c: &ThetaCoefficients, cap: i64, digits: u32) -> BigFixed {
    assert!(cap >= 1 && cap <= c.k_max);
    let scale = digits + 10;
    let mut s = Rational::zero();
    for k in 0..=cap as usize {
        s += &c.a[k] * &c.a[k];
    }
    BigFixed::from_rational(&s, scale)
        .div(&cap_power_weight(c, cap, scale))
        .with_scale(digits)
}

/// Partial-sum statistic over all dyadic cutoffs (single pass over a).
pub fn partial_sum_stat(c: &ThetaCoefficients, digits: u32) -> Vec<StatRow> {
    assert!(c.k_max >= 4);
    let scale = digits + 10;
    let caps = dyadic_caps(c.k_max);
    let mut rows = Vec::with_capacity(caps.len());
    let mut s = Rational::zero();
    let mut next = 0usize;
    for (k, ak) in c.a.iter().enumerate() {
        s += ak;
        while next < caps.len() && caps[next] == k as i64 {
            let num = BigFixed::from_rational(&s.abs(), scale);
            let lnk = BigFixed::from_i64(caps[next], scale).ln();
            let value = num
                .div(&cap_power_half_weight(c, caps[next], scale).mul(&lnk))
                .with_scale(digits);
            rows.push(StatRow {
                cap: caps[next],
                value,
            });
            next += 1;
        }
    }
    rows
}

/// Mean-square statistic over all dyadic cutoffs (single pass over a).
pub fn mean_square_stat(c: &ThetaCoefficients, digits: u32) -> Vec<StatRow> {
    assert!(c.k_max >= 4);
    let scale = digits + 10;
    let caps = dyadic_caps(c.k_max);
    let mut rows = Vec::with_capacity(caps.len());
    let mut s = Rational::zero();
    let mut next = 0usize;
    for (k, ak) in c.a.iter().enumerate() {
        s += ak * ak;
        while next < caps.len() && caps[next] == k as i64 {
            let value = BigFixed::from_rational(&s, scale)
                .div(&cap_power_weight(c, caps[next], scale))
                .with_scale(digits);
            rows.push(StatRow {
                cap: caps[next],
                value,
            });
            next += 1;
        }
    }
    rows
}
