//! N(λ) for SO(N) by two independent exact routes, the smooth main term,
//! and the error series used for envelope fitting.
//!
//! Route one enumerates dominant weights and adds multiplicities. Route two
//! sums the squared numerator of the multiplicity formula over every lattice
//! point in the ball of radius R and divides once by the constant Weyl
//! denominator; the division is asserted exact, so the orbit bookkeeping is
//! re-validated at every call. The smooth term is the ball integral of the
//! multiplicity weight with the lattice density folded in — a single exact
//! coefficient times R^d.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactValue, Rational};
use crate::fit::{envelope_fit, EnvelopeFit};
use crate::poly::MultiPoly;
use crate::precision::BigFixed;
use crate::shells::{monomial_shell_tables, Parity};
use crate::weights::{isqrt, GroupParams};

const OVERFLOW: &str = "lattice numerator exceeds 128 bits";

/// N(λ) by direct enumeration of dominant weights.
pub fn count_direct(g: &GroupParams, lambda: i64) -> BigInt {
    g.enumerate_spectrum(lambda).into_iter().map(|(_, m)| m).sum()
}

/// N(λ) for every integer λ in 0..=λ_max, from one spectrum enumeration.
pub fn count_table_direct(g: &GroupParams, lambda_max: i64) -> Vec<BigInt> {
    assert!(lambda_max >= 0);
    let spec = g.enumerate_spectrum(lambda_max);
    let mut out = Vec::with_capacity(lambda_max as usize + 1);
    let mut acc = BigInt::zero();
    let mut it = spec.into_iter().peekable();
    for lam in 0..=lambda_max {
        while it.peek().is_some_and(|(l, _)| *l <= lam) {
            acc += it.next().unwrap().1;
        }
        out.push(acc.clone());
    }
    out
}

/// Product denominator D of the multiplicity formula m = (num/D)².
fn mult_denominator(g: &GroupParams) -> BigInt {
    let n = g.rank;
    let mut d = BigInt::one();
    if !g.even {
        for i in 0..n {
            d *= 2 * i as i64 + 1;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            d *= if g.even {
                (j * j - i * i) as i64
            } else {
                let (oi, oj) = (2 * i as i64 + 1, 2 * j as i64 + 1);
                oj * oj - oi * oi
            };
        }
    }
    d
}

/// Weyl-group order: 2^{n−1}·n! for SO(2n), 2^n·n! for SO(2n+1). This is
/// also the fold factor between the full lattice and dominant weights.
pub fn weyl_order(g: &GroupParams) -> i64 {
    let fact: i64 = (1..=g.rank as i64).product();
    (1i64 << if g.even { g.rank - 1 } else { g.rank }) * fact
}

/// The constant divisor turning Σ_{‖x‖²≤R²} num(x)² into N(λ): D²·|W|.
pub fn lattice_denominator(g: &GroupParams) -> BigInt {
    let d = mult_denominator(g);
    &d * &d * weyl_order(g)
}

/// Fold-weighted sweep of the sorted fundamental domain. Points with a
/// repeated |x_i| (or a zero coordinate, for odd N) have num = 0, so strict
/// descent loses nothing; each survivor stands for n!·2^{#nonzero} lattice
/// points (even N) or n!·2^n (odd N, all coordinates odd).
struct LatticeSweep<'a> {
    g: &'a GroupParams,
    k_max: i64,
    table: Vec<BigInt>,
    xs: Vec<i64>,
    fact: i64,
}

impl LatticeSweep<'_> {
    /// Least possible Σx² over the positions after `pos` under strict descent.
    fn tail_min(&self, pos: usize) -> i64 {
        let rem = (self.g.rank - 1 - pos) as i64;
        if self.g.even {
            (0..rem).map(|t| t * t).sum()
        } else {
            (1..=rem).map(|t| (2 * t - 1) * (2 * t - 1)).sum()
        }
    }

    fn descend(&mut self, pos: usize, used: i64, prev: i64) {
        let n = self.g.rank;
        let budget = self.k_max - used - self.tail_min(pos);
        let lo = if self.g.even {
            (n - 1 - pos) as i64
        } else {
            2 * (n - 1 - pos) as i64 + 1
        };
        if budget < lo * lo {
            return;
        }
        let mut hi = isqrt(budget);
        let cap = prev - if self.g.even { 1 } else { 2 };
        if hi > cap {
            hi = cap;
        }
        if !self.g.even && hi % 2 == 0 {
            hi -= 1;
        }
        let step = if self.g.even { 1 } else { 2 };
        let mut v = hi;
        while v >= lo {
            self.xs[pos] = v;
            if pos + 1 == n {
                self.record(used + v * v);
            } else {
                self.descend(pos + 1, used + v * v, v);
            }
            v -= step;
        }
    }

    fn record(&mut self, norm: i64) {
        let n = self.g.rank;
        let mut num: i128 = 1;
        if !self.g.even {
            for &x in &self.xs {
                num = num.checked_mul(x as i128).expect(OVERFLOW);
            }
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let (a, b) = (self.xs[p] as i128, self.xs[q] as i128);
                num = num.checked_mul(a * a - b * b).expect(OVERFLOW);
            }
        }
        let weight = if self.g.even {
            let nz = self.xs.iter().filter(|&&x| x != 0).count();
            self.fact << nz
        } else {
            self.fact << n
        };
        let b = BigInt::from(num);
        self.table[norm as usize] += &b * &b * weight;
    }
}

/// Per-shell Σ_{‖x‖²=k} num(x)² over the group's lattice (all integer
/// vectors for even N, odd coordinates for odd N).
pub fn weighted_shell_table(g: &GroupParams, k_max: i64) -> Vec<BigInt> {
    if k_max < 0 {
        return Vec::new();
    }
    let mut sweep = LatticeSweep {
        g,
        k_max,
        table: vec![BigInt::zero(); k_max as usize + 1],
        xs: vec![0; g.rank],
        fact: (1..=g.rank as i64).product(),
    };
    sweep.descend(0, 0, i64::MAX / 2);
    sweep.table
}

fn exact_div(v: BigInt, d: &BigInt) -> BigInt {
    let (q, r) = v.div_rem(d);
    assert!(r.is_zero(), "lattice sum not divisible by the Weyl denominator");
    q
}

/// Σ_{‖x‖²=k} m(x): the multiplicity mass of each shell, as exact integers.
pub fn shell_mult_table(g: &GroupParams, k_max: i64) -> Vec<BigInt> {
    let d = mult_denominator(g);
    let d2 = &d * &d;
    weighted_shell_table(g, k_max)
        .into_iter()
        .map(|w| exact_div(w, &d2))
        .collect()
}

/// Jump of N at the eigenvalue whose coordinate norm is k: shell mass / |W|.
/// Zero where no eigenvalue sits.
pub fn jump_table(g: &GroupParams, k_max: i64) -> Vec<BigInt> {
    let w = BigInt::from(weyl_order(g));
    shell_mult_table(g, k_max)
        .into_iter()
        .map(|m| exact_div(m, &w))
        .collect()
}

/// N(λ) by full lattice-point summation.
pub fn count_lattice(g: &GroupParams, lambda: i64) -> BigInt {
    if lambda < 0 {
        return BigInt::zero();
    }
    let total: BigInt = weighted_shell_table(g, g.radius_sq(lambda)).into_iter().sum();
    exact_div(total, &lattice_denominator(g))
}

/// N(λ) for every integer λ in 0..=λ_max, from one lattice sweep.
pub fn count_table_lattice(g: &GroupParams, lambda_max: i64) -> Vec<BigInt> {
    assert!(lambda_max >= 0);
    let denom = lattice_denominator(g);
    let mut prefix = weighted_shell_table(g, g.radius_sq(lambda_max));
    for i in 1..prefix.len() {
        let prev = prefix[i - 1].clone();
        prefix[i] += prev;
    }
    (0..=lambda_max)
        .map(|lam| exact_div(prefix[g.radius_sq(lam) as usize].clone(), &denom))
        .collect()
}

/// The smooth main term: exact terms coef·R^p in the shifted radius
/// R² = λ + shift (even N) or 4λ + shift (odd N). The multiplicity weight is
/// homogeneous, so there is exactly one term, of power p = d.
#[derive(Debug, Clone)]
pub struct SmoothMain {
    terms: Vec<(ExactValue, u32)>,
}

impl SmoothMain {
    pub fn terms(&self) -> &[(ExactValue, u32)] {
        &self.terms
    }

    /// Evaluate at integer squared radius r2, correct to the final scale
    /// (coefficients carry guard digits sized to the power's magnitude).
    pub fn eval_r2(&self, r2: i64, digits: u32) -> BigFixed {
        assert!(r2 >= 0);
        let ws = digits + 10;
        let mut acc = BigFixed::zero(ws);
        for (coef, p) in &self.terms {
            let half: BigInt = BigInt::from(r2).pow(p / 2);
            let mag = half.magnitude().to_string().len() as u32;
            let c = coef.eval_at_scale(ws + mag);
            let mut term = c.mul(&BigFixed::from_bigint(&half, 0));
            if p % 2 == 1 {
                term = term.mul(&BigFixed::from_bigint(&BigInt::from(r2), ws).sqrt());
            }
            acc = acc.add(&term.with_scale(ws));
        }
        acc.with_scale(digits)
    }

    /// Evaluate at eigenvalue λ using the exact shifted radius.
    pub fn eval(&self, g: &GroupParams, lambda: i64, digits: u32) -> BigFixed {
        self.eval_r2(g.radius_sq(lambda), digits)
    }

    /// Leading constant C with N(λ) = C·λ^{d/2}(1 + o(1)): for odd N the
    /// substitution R² = 4λ + shift contributes 2^d.
    pub fn leading(&self, g: &GroupParams) -> ExactValue {
        let (coef, p) = &self.terms[0];
        debug_assert_eq!(*p, g.dim);
        if g.even {
            coef.clone()
        } else {
            coef.scale(&Rational::from_integer(BigInt::from(2).pow(*p)))
        }
    }
}

/// Smooth main term of N(λ): ball integral of the multiplicity weight,
/// divided by |W| and by the lattice covolume (2^n for the odd-coordinate
/// lattice of SO(2n+1), 1 otherwise).
pub fn smooth_main(g: &GroupParams) -> SmoothMain {
    let (ball, p) = g
        .multiplicity_poly()
        .ball_integral()
        .expect("multiplicity weight is homogeneous");
    debug_assert_eq!(p, g.dim);
    let dens_log2 = if g.even { 0 } else { g.rank };
    let denom = BigInt::from(weyl_order(g)) << dens_log2;
    SmoothMain {
        terms: vec![(ball.scale(&Rational::new(BigInt::one(), denom)), p)],
    }
}

/// Harmonic components of the multiplicity weight: m = Σ_l ‖x‖^{2l}·H_l.
pub fn radial_decomposition(g: &GroupParams) -> Vec<(u32, MultiPoly)> {
    g.multiplicity_poly()
        .harmonic_decompose()
        .expect("multiplicity weight is homogeneous")
}

/// Verify, for every shell k ≤ k_max, that the multiplicity mass from the
/// product sweep equals Σ_l k^l·S(k, H_l) computed from the harmonic
/// components via per-monomial shell tables — big-integer equality, no
/// rounding anywhere. Returns the number of components checked.
pub fn radial_check(g: &GroupParams, k_max: i64) -> usize {
    let comps = radial_decomposition(g);
    let parity = if g.even { Parity::All } else { Parity::Odd };
    let mut basis: Vec<Vec<u32>> = comps
        .iter()
        .flat_map(|(_, h)| h.terms().map(|(e, _)| e.clone()))
        .collect();
    basis.sort();
    basis.dedup();
    let index: std::collections::BTreeMap<&Vec<u32>, usize> =
        basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let tables = monomial_shell_tables(g.rank, k_max, parity, &basis);
    let mass = shell_mult_table(g, k_max);
    for k in 0..=k_max {
        let mut rhs = Rational::zero();
        for (l, h) in &comps {
            let mut s = Rational::zero();
            for (e, c) in h.terms() {
                s += c * Rational::from_integer(BigInt::from(tables[index[e]][k as usize]));
            }
            rhs += s * Rational::from_integer(BigInt::from(k).pow(*l));
        }
        assert!(rhs.is_integer(), "non-integer reconstruction at shell {k}");
        assert_eq!(
            rhs.to_integer(),
            mass[k as usize],
            "radial reconstruction mismatch at shell {k}"
        );
    }
    comps.len()
}

/// One row of the error series: exact count, smooth term, and their
/// difference at a common scale.
#[derive(Debug, Clone)]
pub struct ErrorRow {
    pub lambda: i64,
    pub count: BigInt,
    pub smooth: BigFixed,
    pub error: BigFixed,
}

#[derive(Debug, Clone)]
pub struct ErrorSeries {
    pub group: GroupParams,
    pub digits: u32,
    pub rows: Vec<ErrorRow>,
}

/// N(λ) − smooth(λ) at λ = step, 2·step, …, ≤ λ_max.
///
/// Counts come from one lattice sweep (shell prefix sums). The precision
/// budget must exceed the integer magnitude of the smooth term by at least
/// 10 digits, or the series is refused.
pub fn error_series(
    g: &GroupParams,
    lambda_max: i64,
    step: i64,
    digits: u32,
) -> Result<ErrorSeries> {
    assert!(step >= 1, "step must be positive");
    assert!(digits >= 20, "at least 20 digits required");
    if lambda_max < step {
        return Err(Error::EmptyRange("error series"));
    }
    let sm = smooth_main(g);
    let denom = lattice_denominator(g);
    let mut prefix = weighted_shell_table(g, g.radius_sq(lambda_max));
    for i in 1..prefix.len() {
        let prev = prefix[i - 1].clone();
        prefix[i] += prev;
    }
    let mut rows = Vec::new();
    let mut lam = step;
    while lam <= lambda_max {
        let count = exact_div(prefix[g.radius_sq(lam) as usize].clone(), &denom);
        let smooth = sm.eval_r2(g.radius_sq(lam), digits);
        let magnitude = smooth.floor_int().magnitude().to_string().len() as i64;
        if (digits as i64) < magnitude + 10 {
            return Err(Error::PrecisionShortfall { digits, magnitude });
        }
        let error = BigFixed::from_bigint(&count, smooth.scale()).sub(&smooth);
        rows.push(ErrorRow {
            lambda: lam,
            count,
            smooth,
            error,
        });
        lam += step;
    }
    Ok(ErrorSeries {
        group: *g,
        digits,
        rows,
    })
}

/// Dyadic-envelope fit of |error| against λ. Every measured error must
/// exceed 10¹⁰ ulp of the smooth evaluation, so the fitted envelope cannot
/// be an artifact of rounding.
pub fn fit_error_series(s: &ErrorSeries) -> Result<EnvelopeFit> {
    let floor = crate::precision::pow10(10);
    let points: Vec<(f64, f64)> = s
        .rows
        .iter()
        .map(|row| {
            assert!(
                row.error.units().abs() > floor,
                "error at λ={} is within 10^10 ulp of the smooth term",
                row.lambda
            );
            (row.lambda as f64, row.error.to_f64())
        })
        .collect();
    envelope_fit(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: i64) -> GroupParams {
        GroupParams::new(n).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_counts_match_known_values() {
        // SO(4), λ=4: lattice sum 140 over ‖x‖² ≤ 5, denominator 4.
        let so4 = group(4);
        let table = weighted_shell_table(&so4, 5);
        let total: BigInt = table.iter().sum();
        assert_eq!(total, int(140));
        assert_eq!(lattice_denominator(&so4), int(4));
        assert_eq!(count_lattice(&so4, 4), int(35));
        assert_eq!(count_direct(&so4, 4), int(35));

        assert_eq!(count_direct(&group(5), 4), int(26));
        assert_eq!(count_lattice(&group(5), 4), int(26));
        assert_eq!(count_direct(&group(2), 4), int(5));
        assert_eq!(count_lattice(&group(2), 4), int(5));
        assert_eq!(count_direct(&group(3), 2), int(10));
        assert_eq!(count_lattice(&group(3), 2), int(10));
    }

    #[test]
    fn dual_routes_agree_on_all_groups() {
        let caps = [(2, 40), (3, 40), (4, 30), (5, 30), (6, 25), (7, 25), (8, 15), (9, 15), (10, 8), (11, 8)];
        for (n, cap) in caps {
            let g = group(n);
            let direct = count_table_direct(&g, cap);
            let lattice = count_table_lattice(&g, cap);
            assert_eq!(direct, lattice, "route mismatch for SO({n})");
        }
    }

    #[test]
    fn frozen_large_counts() {
        assert_eq!(count_lattice(&group(5), 100), int(15122569));
        assert_eq!(count_lattice(&group(6), 100), int(699047816));
        assert_eq!(count_lattice(&group(7), 100), int(29709091126));
        assert_eq!(count_lattice(&group(9), 50), int(397121538));
        assert_eq!(count_lattice(&group(11), 20), int(3147));
        // spot direct-route confirmation on two of them
        assert_eq!(count_direct(&group(5), 100), int(15122569));
        assert_eq!(count_direct(&group(11), 20), int(3147));
    }

    #[test]
    fn smooth_main_constants() {
        // SO(4): (π/24)·R⁶.
        let sm4 = smooth_main(&group(4));
        let (coef, p) = &sm4.terms()[0];
        assert_eq!(*p, 6);
        assert_eq!(coef.coeff(1), Rational::new(int(1), int(24)));
        assert!(coef.coeff(0).is_zero());

        // SO(3): R³/6, leading constant 4/3.
        let so3 = group(3);
        let sm3 = smooth_main(&so3);
        let (coef, p) = &sm3.terms()[0];
        assert_eq!(*p, 3);
        assert_eq!(coef.coeff(0), Rational::new(int(1), int(6)));
        assert_eq!(sm3.leading(&so3).coeff(0), Rational::new(int(4), int(3)));

        // SO(2): 2·R, leading constant 2.
        let so2 = group(2);
        let sm2 = smooth_main(&so2);
        assert_eq!(sm2.terms()[0].1, 1);
        assert_eq!(sm2.leading(&so2).coeff(0), Rational::from_integer(int(2)));

        // SO(5): π·R¹⁰/2949120.
        let sm5 = smooth_main(&group(5));
        let (coef, p) = &sm5.terms()[0];
        assert_eq!(*p, 10);
        assert_eq!(coef.coeff(1), Rational::new(int(1), int(2949120)));
    }

    #[test]
    fn smooth_eval_is_exact_at_square_radii() {
        // SO(3) at λ=6: R²=25, smooth = 125/6 exactly.
        let so3 = group(3);
        let sm = smooth_main(&so3);
        let v = sm.eval(&so3, 6, 60);
        let expect = BigFixed::from_rational(&Rational::new(int(125), int(6)), 60);
        let diff = v.sub(&expect).abs();
        assert!(diff.cmp_value(&BigFixed::from_rational(&Rational::new(int(1), crate::precision::pow10(58)), 60)).is_lt());

        // SO(4) at λ=4: smooth = 125π/24.
        let so4 = group(4);
        let v = smooth_main(&so4).eval(&so4, 4, 60);
        let expect = BigFixed::pi(70).mul_i64(125).div_i64(24).with_scale(60);
        let diff = v.sub(&expect).abs();
        assert!(diff.cmp_value(&BigFixed::from_rational(&Rational::new(int(1), crate::precision::pow10(55)), 60)).is_lt());
    }

    #[test]
    fn radial_reconstruction_small_radii() {
        // Cumulative reconstruction at R²=5 for SO(4) reproduces the lattice
        // sum 140 (checked per shell inside radial_check).
        assert_eq!(shell_mult_table(&group(4), 5).iter().sum::<BigInt>(), int(140));
        assert_eq!(radial_check(&group(4), 60), 2);
        assert_eq!(radial_check(&group(5), 60), 2);
        assert_eq!(radial_check(&group(6), 40), 6);
    }

    #[test]
    fn error_series_basics() {
        let so2 = group(2);
        let s = error_series(&so2, 16, 1, 80).unwrap();
        assert_eq!(s.rows.len(), 16);
        let row = &s.rows[3]; // λ = 4
        assert_eq!(row.lambda, 4);
        assert_eq!(row.count, int(5));
        // error = 5 − 2·√4 = 1 exactly
        let one = BigFixed::from_i64(1, 80);
        assert!(row.error.sub(&one).abs().cmp_value(&BigFixed::from_rational(&Rational::new(int(1), crate::precision::pow10(70)), 80)).is_lt());
    }

    #[test]
    fn error_series_refuses_thin_precision() {
        // SO(6) counts near λ=1000 are ~10¹⁶; 20 digits cannot carry them.
        match error_series(&group(6), 1000, 1000, 20) {
            Err(Error::PrecisionShortfall { digits: 20, magnitude }) => {
                assert!(magnitude >= 15, "magnitude {magnitude}");
            }
            other => panic!("expected precision shortfall, got {other:?}"),
        }
    }

    #[test]
    fn error_series_empty_range() {
        assert!(matches!(
            error_series(&group(4), 3, 5, 80),
            Err(Error::EmptyRange(_))
        ));
    }

    #[test]
    fn so2_envelope_is_flat() {
        // N(λ) − 2√λ is bounded (jumps of size ~2), so the envelope slope
        // over a long range is near zero.
        let so2 = group(2);
        let s = error_series(&so2, 4096, 1, 80).unwrap();
        let fit = fit_error_series(&s).unwrap();
        assert!(fit.slope.abs() < 0.2, "slope {}", fit.slope);
        assert!(fit.windows >= 10);
    }

    #[test]
    fn jump_table_matches_spectrum() {
        // SO(10): first eigenvalue shells. Trivial rep at ‖x‖²=30 (jump 1),
        // first nontrivial at 39 (λ=9).
        let so10 = group(10);
        let jumps = jump_table(&so10, 60);
        assert!(jumps[..30].iter().all(|j| j.is_zero()));
        assert_eq!(jumps[30], int(1));
        assert!(jumps[31..39].iter().all(|j| j.is_zero()));
        let spec = so10.enumerate_spectrum(9);
        assert_eq!(spec.last().unwrap().0, 9);
        assert_eq!(jumps[39], spec.last().unwrap().1);

        // Σ jumps over shells == N via the direct route.
        let so6 = group(6);
        let jumps = jump_table(&so6, so6.radius_sq(25));
        let total: BigInt = jumps.iter().sum();
        assert_eq!(total, count_direct(&so6, 25));
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_order(&group(2)), 1);
        assert_eq!(weyl_order(&group(3)), 2);
        assert_eq!(weyl_order(&group(4)), 4);
        assert_eq!(weyl_order(&group(5)), 8);
        assert_eq!(weyl_order(&group(8)), 192);
        assert_eq!(weyl_order(&group(10)), 1920);
    }
}
