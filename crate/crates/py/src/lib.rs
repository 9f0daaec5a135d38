//! Python bindings: the Group class plus the free-standing number-theoretic
//! helpers. Big integers cross the boundary as Python ints; exact rationals
//! are rendered as "p/q" strings so no precision is ever lost.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use weyl_lab::counting::{count_direct, count_lattice, smooth_main};
use weyl_lab::exact::Rational;
use weyl_lab::lowrank::{exponent_pair_calc, ExponentPair};
use weyl_lab::poly::MultiPoly;
use weyl_lab::shells::Parity;
use weyl_lab::weights::GroupParams;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    let bad = || value_error(format!("expected a rational p/q or integer, got {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let p: i64 = num.trim().parse().map_err(|_| bad())?;
        let q: i64 = den.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(value_error("rational denominator must be nonzero"));
        }
        Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
    } else {
        let p: i64 = s.trim().parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(BigInt::from(p)))
    }
}

fn parse_parity(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::All
    }
}

/// Structural constants and counting routes for one SO(N).
#[pyclass(frozen)]
struct Group {
    inner: GroupParams,
}

#[pymethods]
impl Group {
    #[new]
    fn new(n: i64) -> PyResult<Self> {
        Ok(Group {
            inner: GroupParams::new(n).map_err(value_error)?,
        })
    }

    #[getter]
    fn big_n(&self) -> u32 {
        self.inner.big_n
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.inner.dim
    }

    #[getter]
    fn even(&self) -> bool {
        self.inner.even
    }

    #[getter]
    fn shift(&self) -> i64 {
        self.inner.shift
    }

    /// R² of the coordinate sphere containing eigenvalue λ.
    fn radius_sq(&self, lambda: i64) -> i64 {
        self.inner.radius_sq(lambda)
    }

    /// Laplace eigenvalue of the highest weight b.
    fn eigenvalue(&self, b: Vec<i64>) -> PyResult<i64> {
        self.inner.eigenvalue(&b).map_err(value_error)
    }

    /// Spectral multiplicity (squared Weyl dimension) of the weight b.
    fn multiplicity(&self, b: Vec<i64>) -> PyResult<BigInt> {
        self.inner.multiplicity(&b).map_err(value_error)
    }

    /// Eigenvalues ≤ lambda_max with multiplicities, sorted.
    fn spectrum(&self, lambda_max: i64) -> Vec<(i64, BigInt)> {
        self.inner.enumerate_spectrum(lambda_max)
    }

    /// N(λ) by highest-weight enumeration.
    fn count_direct(&self, lambda: i64) -> BigInt {
        count_direct(&self.inner, lambda)
    }

    /// N(λ) by the full lattice-point sum.
    fn count_lattice(&self, lambda: i64) -> BigInt {
        count_lattice(&self.inner, lambda)
    }

    /// The smooth Weyl main term at λ, in scientific notation.
    #[pyo3(signature = (lambda, digits = 80))]
    fn smooth(&self, lambda: i64, digits: u32) -> String {
        smooth_main(&self.inner)
            .eval(&self.inner, lambda, digits)
            .to_sci_string(digits)
    }

    fn __repr__(&self) -> String {
        format!("Group(SO{})", self.inner.big_n)
    }
}

/// N(λ) for SO(2) in closed form.
#[pyfunction]
fn so2_count(lambda: i64) -> BigInt {
    weyl_lab::lowrank::so2_count(lambda)
}

/// N(λ) for SO(3) in closed form.
#[pyfunction]
fn so3_count(lambda: i64) -> BigInt {
    weyl_lab::lowrank::so3_count(lambda)
}

/// r₄(k) by Jacobi's divisor formula.
#[pyfunction]
fn jacobi_r4(k: u64) -> u64 {
    weyl_lab::shells::jacobi_r4(k)
}

/// Number of odd-coordinate representations of k by four squares.
#[pyfunction]
fn carlitz_r4_odd(k: u64) -> u64 {
    weyl_lab::shells::carlitz_r4_odd(k)
}

/// Representation numbers r_n(k) for k = 0..=k_max.
#[pyfunction]
#[pyo3(signature = (n, k_max, odd = false))]
fn rep_table(n: usize, k_max: i64, odd: bool) -> Vec<i64> {
    let table = weyl_lab::shells::rep_table(n, k_max, parse_parity(odd));
    (0..=k_max).map(|k| table.value(k)).collect()
}

/// Exact shell sum S_n(k, P) as a "p/q" string.
#[pyfunction]
fn shell_sum(n: usize, k: i64, poly: &str) -> PyResult<String> {
    let p = MultiPoly::parse(poly, n).map_err(value_error)?;
    Ok(weyl_lab::shells::shell_sum(n, k, &p).to_string())
}

/// Theta-series coefficients a_k of a harmonic polynomial, as "p/q" strings.
#[pyfunction]
fn theta_coeffs(n: usize, poly: &str, k_max: i64) -> PyResult<Vec<String>> {
    let p = MultiPoly::parse(poly, n).map_err(value_error)?;
    let coeffs = weyl_lab::modular::theta_coeffs(n, &p, k_max).map_err(value_error)?;
    Ok(coeffs.a.iter().map(Rational::to_string).collect())
}

/// Harmonic decomposition P = Σ ‖x‖^{2l}·H_l as (l, H_l-string) pairs.
#[pyfunction]
fn harmonic_decompose(n: usize, poly: &str) -> PyResult<Vec<(u32, String)>> {
    let p = MultiPoly::parse(poly, n).map_err(value_error)?;
    Ok(p.harmonic_decompose()
        .map_err(value_error)?
        .into_iter()
        .map(|(power, component)| (power, component.to_string()))
        .collect())
}

/// Exponent-pair arithmetic: returns (M exponent, T2 exponent, Weyl deficit,
/// degenerate) with the exact fractions as strings.
#[pyfunction]
fn exponent_pair(alpha: &str, beta: &str) -> PyResult<(String, String, String, bool)> {
    let pair = ExponentPair {
        alpha: parse_rational(alpha)?,
        beta: parse_rational(beta)?,
    };
    let result = exponent_pair_calc(&pair);
    Ok((
        result.m_exponent.to_string(),
        result.t2_exponent.to_string(),
        result.weyl_deficit.to_string(),
        result.degenerate,
    ))
}

/// The SO(4) T-split at λ: (T1, T2, T3, N(λ)) with the pieces in scientific
/// notation at the requested precision.
#[pyfunction]
#[pyo3(signature = (lambda, digits = 80))]
fn t_split(lambda: i64, digits: u32) -> PyResult<(String, String, String, BigInt)> {
    if lambda < 0 {
        return Err(value_error("lambda must be nonnegative"));
    }
    if digits < 20 {
        return Err(value_error("digits must be at least 20"));
    }
    let split = weyl_lab::lowrank::t_split(lambda, digits);
    Ok((
        split.t1.to_sci_string(digits),
        split.t2.to_sci_string(digits),
        split.t3.to_sci_string(digits),
        split.count,
    ))
}

#[pymodule]
fn weyl_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(so2_count, m)?)?;
    m.add_function(wrap_pyfunction!(so3_count, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_r4, m)?)?;
    m.add_function(wrap_pyfunction!(carlitz_r4_odd, m)?)?;
    m.add_function(wrap_pyfunction!(rep_table, m)?)?;
    m.add_function(wrap_pyfunction!(shell_sum, m)?)?;
    m.add_function(wrap_pyfunction!(theta_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_pair, m)?)?;
    m.add_function(wrap_pyfunction!(t_split, m)?)?;
    Ok(())
}
