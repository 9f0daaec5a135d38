//! Acceptance panel: thirteen numbered checks at their stated tolerances.
//!
//! Each criterion is one test, named so the harness reports them in order;
//! the `ok`/`FAILED` line per test is the pass/fail verdict. Checks that miss
//! their stated tolerance fail loudly with the measured values in the panic
//! message rather than being weakened to pass.

use num_bigint::BigInt;
use weyl_lab::counting::{
    count_direct, count_lattice, count_table_direct, count_table_lattice, error_series,
    fit_error_series, radial_check,
};
use weyl_lab::exact::Rational;
use weyl_lab::fit::envelope_fit;
use weyl_lab::lowrank::{
    exponent_pair_calc, psi_f64, psi_majorants, r3_average_fit, sonin_sum, t_split,
    ExponentPair,
};
use weyl_lab::modular::{mean_square_stat, partial_sum_stat, theta_coeffs};
use weyl_lab::poly::MultiPoly;
use weyl_lab::precision::{pow10, BigFixed};
use weyl_lab::shells::{
    ball_constant, carlitz_r4_odd, jacobi_r4, r4_extremal_ratio, rep_table, Parity,
};
use weyl_lab::weights::GroupParams;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn group(big_n: i64) -> GroupParams {
    GroupParams::new(big_n).unwrap()
}

/// 1. Both counting routes produce identical tables on every group.
#[test]
fn criterion_01_dual_route_equality() {
    for (big_n, lam_max) in [
        (2i64, 1000i64),
        (3, 1000),
        (4, 1000),
        (5, 1000),
        (6, 1000),
        (7, 1000),
        (8, 300),
        (9, 300),
        (10, 100),
        (11, 100),
    ] {
        let g = group(big_n);
        let direct = count_table_direct(&g, lam_max);
        let lattice = count_table_lattice(&g, lam_max);
        assert_eq!(direct.len(), lattice.len());
        for lambda in 0..=lam_max as usize {
            assert_eq!(
                direct[lambda], lattice[lambda],
                "SO({big_n}) routes diverge at λ = {lambda}"
            );
        }
        println!("criterion 01: SO({big_n}) tables equal through λ = {lam_max}");
    }
}

/// 2. Hand-checked fixed points.
#[test]
fn criterion_02_fixed_points() {
    for (big_n, lambda, expect) in [
        (4i64, 3i64, 17i64),
        (4, 4, 35),
        (5, 4, 26),
        (3, 2, 10),
        (2, 4, 5),
    ] {
        let g = group(big_n);
        let want = BigInt::from(expect);
        assert_eq!(count_direct(&g, lambda), want, "SO({big_n}) N({lambda}) direct");
        assert_eq!(count_lattice(&g, lambda), want, "SO({big_n}) N({lambda}) lattice");
        println!("criterion 02: SO({big_n}) N({lambda}) = {expect} on both routes");
    }
}

/// 3. Error-term envelope slopes near d/2 − 1: SO(8) within [12.75, 13.25]
/// over λ ≤ 2000 and SO(10) within 21.5 ± 0.35 over λ ≤ 400.
#[test]
fn criterion_03_error_envelope_slopes() {
    let f8 = fit_error_series(&error_series(&group(8), 2000, 1, 80).unwrap()).unwrap();
    let f10 = fit_error_series(&error_series(&group(10), 400, 1, 80).unwrap()).unwrap();
    println!(
        "criterion 03: SO(8) slope {:.4} over {} windows, SO(10) slope {:.4} over {} windows",
        f8.slope, f8.windows, f10.slope, f10.windows
    );
    let ok8 = (12.75..=13.25).contains(&f8.slope);
    let ok10 = (f10.slope - 21.5).abs() <= 0.35;
    assert!(
        ok8 && ok10,
        "measured slopes SO(8) = {:.4} (required 12.75..13.25, {}), \
         SO(10) = {:.4} (required 21.15..21.85, {}); at these λ ranges the \
         envelope has not entered its asymptotic regime",
        f8.slope,
        if ok8 { "ok" } else { "MISS" },
        f10.slope,
        if ok10 { "ok" } else { "MISS" },
    );
}

/// 4. Closed four-square formulas against convolution tables: Jacobi for all
/// k ≤ 10⁵ and the odd-coordinate variant for all k ≤ 10⁴.
#[test]
fn criterion_04_four_square_formulas() {
    let all = rep_table(4, 100_000, Parity::All);
    for k in 1..=100_000i64 {
        assert_eq!(jacobi_r4(k as u64), all.value(k) as u64, "r4({k})");
    }
    let odd = rep_table(4, 10_000, Parity::Odd);
    for k in 1..=10_000i64 {
        assert_eq!(carlitz_r4_odd(k as u64), odd.value(k) as u64, "odd r4({k})");
    }
    println!("criterion 04: Jacobi ≤ 10^5 and odd-coordinate ≤ 10^4 both exact");
}

fn ball_error_slope(n: usize, r_max: i64) -> f64 {
    let cum = rep_table(n, r_max * r_max, Parity::All).prefix_counts();
    let vol = ball_constant(n, Parity::All).eval(30).to_f64();
    let points: Vec<(f64, f64)> = (1..=r_max)
        .map(|r| {
            let err = cum[(r * r) as usize] as f64 - vol * (r as f64).powi(n as i32);
            (r as f64, err.abs())
        })
        .collect();
    envelope_fit(&points).unwrap().slope
}

/// 5. Sphere-count cumulative errors: r₅ envelope slope ≤ 3.2 for R ≤ 300,
/// r₄ envelope slope ≤ 2.2 for R ≤ 500.
#[test]
fn criterion_05_ball_count_envelopes() {
    let s5 = ball_error_slope(5, 300);
    let s4 = ball_error_slope(4, 500);
    println!("criterion 05: r5 slope {s5:.4}, r4 slope {s4:.4}");
    let ok5 = s5 <= 3.2;
    let ok4 = s4 <= 2.2;
    assert!(
        ok5 && ok4,
        "measured slopes r5 = {s5:.4} (required ≤ 3.2, {}), r4 = {s4:.4} \
         (required ≤ 2.2, {})",
        if ok5 { "ok" } else { "MISS" },
        if ok4 { "ok" } else { "MISS" },
    );
}

/// 6. Radial decomposition of the multiplicity reconstructs every weighted
/// shell sum exactly for R² ≤ 500 on SO(4), SO(6), SO(8).
#[test]
fn criterion_06_radial_reconstruction() {
    let c4 = radial_check(&group(4), 500);
    let c6 = radial_check(&group(6), 500);
    let c8 = radial_check(&group(8), 500);
    println!("criterion 06: components SO(4) = {c4}, SO(6) = {c6}, SO(8) = {c8}");
    assert_eq!((c4, c6, c8), (2, 6, 10), "harmonic component counts");
}

/// 7. Theta-coefficient statistics for quartic harmonics in 2 and 4 variables
/// at k_max = 10⁵: mean-square flat within a factor 10 across dyadic caps
/// ≥ 2¹⁰, normalized partial sums not growing by more than 2× beyond 2¹⁰.
#[test]
fn criterion_07_theta_statistics() {
    let q2 = MultiPoly::parse("x1^4 - 6 x1^2 x2^2 + x2^4", 2).unwrap();
    let quart = MultiPoly::parse("x1^4 + x2^4 + x3^4 + x4^4", 4).unwrap();
    let norm = MultiPoly::norm_sq(4);
    let q4 = quart.add(&norm.mul(&norm).scale(&rat(-1, 2)));
    assert!(q2.is_harmonic() && q4.is_harmonic());

    for (n, poly) in [(2usize, &q2), (4usize, &q4)] {
        let coeffs = theta_coeffs(n, poly, 100_000).unwrap();
        let ms: Vec<f64> = mean_square_stat(&coeffs, 50)
            .into_iter()
            .filter(|row| row.cap >= 1024)
            .map(|row| row.value.to_f64())
            .collect();
        let ps: Vec<f64> = partial_sum_stat(&coeffs, 50)
            .into_iter()
            .filter(|row| row.cap >= 1024)
            .map(|row| row.value.to_f64())
            .collect();
        let ms_max = ms.iter().cloned().fold(f64::MIN, f64::max);
        let ms_min = ms.iter().cloned().fold(f64::MAX, f64::min);
        let ratio = ms_max / ms_min;
        let growth = ps[ps.len() - 1] / ps[0];
        println!(
            "criterion 07: n = {n} mean-square ratio {ratio:.4}, partial-sum growth {growth:.4}"
        );
        assert!(ratio <= 10.0, "n = {n} mean-square ratio {ratio:.4} exceeds 10");
        assert!(
            ps[ps.len() - 1] <= 2.0 * ps[0],
            "n = {n} partial sum grows {growth:.4}× past the 2^10 cap"
        );
    }
}

/// 8. The exponent-pair pipeline on (11/30, 16/30), exactly.
#[test]
fn criterion_08_exponent_pair() {
    let result = exponent_pair_calc(&ExponentPair {
        alpha: rat(11, 30),
        beta: rat(16, 30),
    });
    assert_eq!(result.m_exponent, rat(14, 41));
    assert_eq!(result.t2_exponent, rat(191, 41));
    assert_eq!(result.weyl_deficit, rat(55, 82));
    assert!(!result.degenerate);
    println!("criterion 08: (11/30, 16/30) → T2 exponent 191/41, deficit 55/82");
}

/// 9. Vaaler majorants: Q⁻ ≤ ψ ≤ Q⁺ with no violations on 10⁵-point grids
/// for M ∈ {10, 100}, and a₀⁺ − a₀⁻ = 1/(M+1) exactly.
#[test]
fn criterion_09_psi_majorants() {
    for m in [10usize, 100] {
        let (plus, minus) = psi_majorants(m, 40);
        let gap = plus.a0() - minus.a0();
        assert_eq!(gap, rat(1, m as i64 + 1), "a0 gap for M = {m}");
        let up = plus.eval_grid(100_000);
        let dn = minus.eval_grid(100_000);
        let mut violations = 0usize;
        for j in 0..100_000 {
            let psi = psi_f64(j as f64 / 100_000.0);
            if dn[j] > psi + 1e-9 || up[j] < psi - 1e-9 {
                violations += 1;
            }
        }
        assert_eq!(violations, 0, "sandwich violations for M = {m}");
        println!("criterion 09: M = {m} zero violations, a0 gap 1/{}", m + 1);
    }
}

/// 10. The T-split identity T1 + T2 + T3 = N(λ) to within 10⁻³⁰ at 80 digits
/// for λ ∈ {10², 10³, 10⁴}, with T3/R⁴ bounded.
#[test]
fn criterion_10_t_split_identity() {
    for (lambda, expect) in [
        (100i64, None),
        (1000, Some(132_073_208i64)),
        (10_000, Some(130_834_244_796)),
    ] {
        let s = t_split(lambda, 80);
        if let Some(n) = expect {
            assert_eq!(s.count, BigInt::from(n), "N({lambda})");
        }
        let sum = s.t1.add(&s.t2).add(&s.t3);
        let diff = sum.sub(&BigFixed::from_bigint(&s.count, 80)).abs();
        assert!(
            diff.units() <= &pow10(50),
            "identity residual at λ = {lambda}: {}",
            diff.to_sci_string(6)
        );
        let r4 = ((lambda + 1) as f64).powi(2);
        let ratio = s.t3.to_f64() / r4;
        assert!(ratio.abs() <= 1.0, "T3/R⁴ = {ratio:.5} at λ = {lambda}");
        println!("criterion 10: λ = {lambda} residual ≤ 1e-30, T3/R⁴ = {ratio:.5}");
    }
}

/// 11. Extremal r₄ ratios r₄(k)/(k ln ln k) at k = products of the first j
/// odd primes, j = 3…8: all in [5, 12], j = 3 near 9.51, and the reference
/// constant 48e^γ/π² reproducible to ≥ 30 digits.
#[test]
fn criterion_11_r4_extremal_ratios() {
    let mut first = None;
    for j in 3..=8 {
        let (k, r4, ratio, _) = r4_extremal_ratio(j, 40);
        let v = ratio.to_f64();
        println!("criterion 11: j = {j} k = {k} r4 = {r4} ratio {v:.4}");
        assert!((5.0..=12.0).contains(&v), "j = {j} ratio {v:.4} outside [5, 12]");
        if j == 3 {
            first = Some(v);
        }
    }
    assert!((first.unwrap() - 9.5132).abs() < 0.01, "j = 3 ratio {:.4}", first.unwrap());

    let (_, _, _, ref40) = r4_extremal_ratio(3, 40);
    let (_, _, _, ref60) = r4_extremal_ratio(3, 60);
    let drift = ref60.with_scale(40).sub(&ref40).abs();
    assert!(
        drift.units() <= &BigInt::from(100),
        "reference constant unstable between 40 and 60 digits"
    );
    assert!((ref40.to_f64() - 8.662097546087397).abs() < 1e-12);
    println!("criterion 11: reference 48e^γ/π² = {}", ref40.to_sig_string(31));
}

/// 12. Averaged r₃ errors: envelope slope ≤ 1.5 for R ≤ 10³, both parities.
#[test]
fn criterion_12_r3_average_slopes() {
    let fit = r3_average_fit(1000).unwrap();
    println!(
        "criterion 12: all-parity slope {:.4}, odd slope {:.4}",
        fit.all.slope, fit.odd.slope
    );
    assert!(fit.all.slope <= 1.5, "all-parity slope {:.4}", fit.all.slope);
    assert!(fit.odd.slope <= 1.5, "odd slope {:.4}", fit.odd.slope);
}

/// Deterministic xorshift generator so the 200 randomized cases are the same
/// on every run.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn pick(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

/// 13. The Sonin-style summation identity holds exactly on 200 randomized
/// polynomial/interval cases.
#[test]
fn criterion_13_sonin_randomized() {
    let mut rng = Rng(0x9e3779b97f4a7c15);
    for case in 0..200 {
        let degree = rng.pick(0, 6) as usize;
        let mut f = MultiPoly::zero(1);
        for e in 0..=degree {
            let c = rat(rng.pick(-40, 40), rng.pick(1, 6));
            f = f.add(&MultiPoly::monomial(1, &[e as u32], c));
        }
        let a = rat(rng.pick(-48, 48), rng.pick(1, 6));
        let b = &a + rat(rng.pick(0, 60), rng.pick(1, 6));
        let (lhs, rhs) = sonin_sum(&f, &a, &b);
        assert_eq!(lhs, rhs, "case {case} with a = {a}, b = {b}");
    }
    println!("criterion 13: 200 randomized identities exact");
}
