//! Highest-weight data for SO(N): coordinates, eigenvalues, multiplicities,
//! and exact spectrum enumeration.
//!
//! A dominant weight b = (b_1..b_n) maps to shifted coordinates x; the
//! Laplace eigenvalue and the L²-multiplicity (squared Weyl dimension) are
//! exact functions of x. Everything here is integer/rational arithmetic —
//! no floating point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::MultiPoly;

/// Structural constants of SO(N).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupParams {
    /// N in SO(N).
    pub big_n: u32,
    /// Rank n: N/2 for even N, (N−1)/2 for odd N.
    pub rank: usize,
    /// Manifold dimension d = N(N−1)/2.
    pub dim: u32,
    /// True for SO(2n), false for SO(2n+1).
    pub even: bool,
    /// ‖ρ‖²-type shift: Σx² at the trivial representation.
    pub shift: i64,
}

impl GroupParams {
    pub fn new(big_n: i64) -> Result<Self> {
        if big_n < 2 {
            return Err(Error::InvalidGroup(big_n));
        }
        let even = big_n % 2 == 0;
        let n = if even { big_n / 2 } else { (big_n - 1) / 2 } as i64;
        let shift = if even {
            n * (n - 1) * (2 * n - 1) / 6
        } else {
            n * (4 * n * n - 1) / 3
        };
        Ok(GroupParams {
            big_n: big_n as u32,
            rank: n as usize,
            dim: (big_n * (big_n - 1) / 2) as u32,
            even,
            shift,
        })
    }

    /// Squared lattice radius reaching eigenvalue λ:
    /// λ + shift for SO(2n), 4λ + shift for SO(2n+1).
    pub fn radius_sq(&self, lambda: i64) -> i64 {
        if self.even {
            lambda + self.shift
        } else {
            4 * lambda + self.shift
        }
    }

    /// Dominance: b_1 ≥ … ≥ b_{n−1} ≥ |b_n| (even; vacuous for n = 1),
    /// b_1 ≥ … ≥ b_n ≥ 0 (odd).
    pub fn is_dominant(&self, b: &[i64]) -> bool {
        if b.len() != self.rank {
            return false;
        }
        let n = self.rank;
        if self.even {
            if n == 1 {
                return true;
            }
            b.windows(2).take(n - 2).all(|w| w[0] >= w[1]) && b[n - 2] >= b[n - 1].abs()
        } else {
            b.windows(2).all(|w| w[0] >= w[1]) && b[n - 1] >= 0
        }
    }

    /// Shifted coordinates: x_j = b_j + n − j (even), 2b_j + 2(n−j) + 1 (odd).
    pub fn weight_to_coords(&self, b: &[i64]) -> Result<Vec<i64>> {
        if !self.is_dominant(b) {
            return Err(Error::NonDominantWeight(b.to_vec()));
        }
        let n = self.rank as i64;
        Ok(b.iter()
            .enumerate()
            .map(|(idx, &bj)| {
                let j = idx as i64 + 1;
                if self.even {
                    bj + n - j
                } else {
                    2 * bj + 2 * (n - j) + 1
                }
            })
            .collect())
    }

    /// Laplace eigenvalue of the representation with highest weight b.
    pub fn eigenvalue(&self, b: &[i64]) -> Result<i64> {
        let x = self.weight_to_coords(b)?;
        let s: i64 = x.iter().map(|v| v * v).sum();
        if self.even {
            Ok(s - self.shift)
        } else {
            debug_assert_eq!((s - self.shift) % 4, 0);
            Ok((s - self.shift) / 4)
        }
    }

    /// The Weyl-invariant multiplicity function m(x) on coordinate vectors,
    /// as an exact rational. Vanishes exactly when two |x_i| coincide
    /// (and, for odd N, also when some x_i = 0).
    pub fn mult_coords(&self, x: &[i64]) -> Rational {
        assert_eq!(x.len(), self.rank);
        let n = self.rank;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        if !self.even {
            for i in 0..n {
                num *= x[n - 1 - i];
                den *= 2 * i as i64 + 1;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (x[n - 1 - j], x[n - 1 - i]);
                num *= a * a - b * b;
                den *= if self.even {
                    (j * j - i * i) as i64
                } else {
                    let (oi, oj) = (2 * i as i64 + 1, 2 * j as i64 + 1);
                    oj * oj - oi * oi
                };
            }
        }
        let base = Rational::new(num, den);
        &base * &base
    }

    /// Multiplicity of the eigenvalue contribution of highest weight b;
    /// the exact rational is asserted to be a (positive) integer.
    pub fn multiplicity(&self, b: &[i64]) -> Result<BigInt> {
        let x = self.weight_to_coords(b)?;
        let m = self.mult_coords(&x);
        assert!(m.is_integer(), "multiplicity must be integral, got {m}");
        assert!(m.numer().is_positive(), "dominant weight with zero multiplicity");
        Ok(m.to_integer())
    }

    /// m(x) as a polynomial in x_1..x_n with rational coefficients.
    pub fn multiplicity_poly(&self) -> MultiPoly {
        let n = self.rank;
        let mut base = MultiPoly::constant(n, Rational::one());
        let mut den = BigInt::one();
        if !self.even {
            for i in 0..n {
                base = base.mul(&MultiPoly::var(n, n - i));
                den *= 2 * i as i64 + 1;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let xa = MultiPoly::var(n, n - j).pow(2);
                let xb = MultiPoly::var(n, n - i).pow(2);
                base = base.mul(&xa.sub(&xb));
                den *= if self.even {
                    (j * j - i * i) as i64
                } else {
                    let (oi, oj) = (2 * i as i64 + 1, 2 * j as i64 + 1);
                    oj * oj - oi * oi
                };
            }
        }
        let scaled = base.scale(&Rational::new(BigInt::one(), den));
        scaled.mul(&scaled)
    }

    /// All eigenvalues ≤ λ_max with aggregated multiplicities, sorted by λ.
    ///
    /// Direct enumeration of dominant weights, pruned by the coordinate-sphere
    /// bound Σx² ≤ R²(λ_max).
    pub fn enumerate_spectrum(&self, lambda_max: i64) -> Vec<(i64, BigInt)> {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        if lambda_max >= 0 {
            let r_sq = self.radius_sq(lambda_max);
            let mut coords = vec![0i64; self.rank];
            if self.even && self.rank == 1 {
                // SO(2): every integer b, multiplicity 1.
                let r = isqrt(r_sq);
                for x in -r..=r {
                    *acc.entry(x * x).or_insert_with(BigInt::zero) += 1;
                }
            } else if self.even {
                self.enum_even(0, r_sq, i64::MAX, &mut coords, &mut acc);
            } else {
                self.enum_odd(0, r_sq, i64::MAX, &mut coords, &mut acc);
            }
        }
        acc.into_iter().collect()
    }

    /// Even case, rank ≥ 2: x_1 > … > x_{n−1} > |x_n|, x_j ≥ n−j for j < n.
    fn enum_even(
        &self,
        pos: usize,
        budget: i64,
        prev: i64,
        coords: &mut Vec<i64>,
        acc: &mut BTreeMap<i64, BigInt>,
    ) {
        let n = self.rank;
        if pos == n - 1 {
            let hi = (prev - 1).min(isqrt(budget));
            for x in -hi..=hi {
                coords[pos] = x;
                self.record(coords, budget - x * x, acc);
            }
            return;
        }
        // Minimal squared tail: (n−1−pos−1 .. 1)² for the remaining strict
        // positions, plus 0 for the last coordinate.
        let tail: i64 = (1..(n - 1 - pos) as i64).map(|t| t * t).sum();
        let lo = (n - 1 - pos) as i64;
        let hi = (prev - 1).min(isqrt(budget - tail));
        for x in lo..=hi {
            coords[pos] = x;
            self.enum_even(pos + 1, budget - x * x, x, coords, acc);
        }
    }

    /// Odd case: odd coordinates x_1 > … > x_n ≥ 1, x_j ≥ 2(n−j)+1.
    fn enum_odd(
        &self,
        pos: usize,
        budget: i64,
        prev: i64,
        coords: &mut Vec<i64>,
        acc: &mut BTreeMap<i64, BigInt>,
    ) {
        let n = self.rank;
        let tail: i64 = (1..(n - pos) as i64).map(|t| (2 * t - 1) * (2 * t - 1)).sum();
        let lo = 2 * (n - pos) as i64 - 1;
        let mut hi = (prev - 2).min(isqrt(budget - tail));
        if hi >= 1 && hi % 2 == 0 {
            hi -= 1;
        }
        let mut x = lo;
        while x <= hi {
            coords[pos] = x;
            if pos + 1 == n {
                self.record(coords, budget - x * x, acc);
            } else {
                self.enum_odd(pos + 1, budget - x * x, x, coords, acc);
            }
            x += 2;
        }
    }

    fn record(&self, coords: &[i64], slack: i64, acc: &mut BTreeMap<i64, BigInt>) {
        if slack < 0 {
            return;
        }
        let s: i64 = coords.iter().map(|v| v * v).sum();
        let lambda = if self.even {
            s - self.shift
        } else {
            (s - self.shift) / 4
        };
        let m = self.mult_coords(coords);
        debug_assert!(m.is_integer());
        *acc.entry(lambda).or_insert_with(BigInt::zero) += m.to_integer();
    }
}

/// Floor of √v for v ≥ 0 (0 for negative inputs, which appear as exhausted
/// budgets during enumeration).
pub fn isqrt(v: i64) -> i64 {
    if v <= 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GroupParams {
        GroupParams::new(n).unwrap()
    }

    #[test]
    fn group_constants() {
        let so4 = g(4);
        assert_eq!((so4.rank, so4.dim, so4.shift, so4.even), (2, 6, 1, true));
        assert_eq!(g(3).radius_sq(5), 21);
        assert_eq!(g(8).shift, 14);
        assert_eq!(g(6).shift, 5);
        assert_eq!(g(10).shift, 30);
        assert_eq!(g(5).shift, 10);
        assert_eq!(g(7).shift, 35);
        assert_eq!(g(9).shift, 84);
        assert_eq!(g(11).shift, 165);
        assert_eq!(g(2).shift, 0);
        assert_eq!(g(2).radius_sq(4), 4);
    }

    #[test]
    fn invalid_groups_rejected() {
        for n in [1, 0, -3] {
            assert!(matches!(GroupParams::new(n), Err(Error::InvalidGroup(m)) if m == n));
        }
    }

    #[test]
    fn coordinates() {
        assert_eq!(g(4).weight_to_coords(&[1, 0]).unwrap(), vec![2, 0]);
        assert_eq!(g(5).weight_to_coords(&[0, 0]).unwrap(), vec![3, 1]);
        assert_eq!(g(8).weight_to_coords(&[0, 0, 0, 0]).unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(g(3).weight_to_coords(&[1]).unwrap(), vec![3]);
    }

    #[test]
    fn dominance() {
        assert!(g(4).is_dominant(&[1, -1]));
        assert!(!g(4).is_dominant(&[0, 1]));
        assert!(!g(5).is_dominant(&[0, -1]));
        assert!(g(2).is_dominant(&[-7]));
        assert!(!g(6).is_dominant(&[1, 2, 0]));
        assert!(g(6).is_dominant(&[2, 1, -1]));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(g(4).multiplicity(&[1, 0]).unwrap(), BigInt::from(16));
        assert_eq!(g(4).multiplicity(&[0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(g(5).multiplicity(&[1, 0]).unwrap(), BigInt::from(25));
        assert_eq!(g(3).multiplicity(&[1]).unwrap(), BigInt::from(9));
        assert_eq!(g(8).multiplicity(&[0, 0, 0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(g(2).multiplicity(&[-5]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(g(4).eigenvalue(&[1, 0]).unwrap(), 3);
        assert_eq!(g(5).eigenvalue(&[0, 0]).unwrap(), 0);
        assert_eq!(g(8).eigenvalue(&[0, 0, 0, 0]).unwrap(), 0);
        assert_eq!(g(3).eigenvalue(&[1]).unwrap(), 2);
        assert_eq!(g(5).eigenvalue(&[1, 0]).unwrap(), 4);
    }

    #[test]
    fn mult_vanishes_on_walls() {
        assert_eq!(g(4).mult_coords(&[2, 2]), Rational::zero());
        assert_eq!(g(4).mult_coords(&[2, -2]), Rational::zero());
        assert_eq!(g(5).mult_coords(&[5, 5]), Rational::zero());
        assert_eq!(g(5).mult_coords(&[5, -5]), Rational::zero());
    }

    #[test]
    fn spectra_low_eigenvalues() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(g(3).enumerate_spectrum(2), vec![(0, b(1)), (2, b(9))]);
        assert_eq!(
            g(4).enumerate_spectrum(4),
            vec![(0, b(1)), (3, b(16)), (4, b(18))]
        );
        assert_eq!(g(5).enumerate_spectrum(4), vec![(0, b(1)), (4, b(25))]);
        assert_eq!(
            g(2).enumerate_spectrum(4),
            vec![(0, b(1)), (1, b(2)), (4, b(2))]
        );
    }

    #[test]
    fn multiplicity_poly_matches_pointwise() {
        for n in [3i64, 4, 5, 6, 7, 8] {
            let gp = g(n);
            let poly = gp.multiplicity_poly();
            // Compare on a few coordinate vectors, degenerate ones included.
            let pts: Vec<Vec<i64>> = match gp.rank {
                1 => vec![vec![3], vec![-2], vec![0]],
                2 => vec![vec![5, 1], vec![2, 0], vec![3, 3], vec![4, -2]],
                3 => vec![vec![5, 3, 1], vec![7, 3, 1], vec![5, 5, 1]],
                _ => vec![vec![3, 2, 1, 0], vec![5, 3, 2, 1], vec![9, 5, 3, 1]],
            };
            for p in pts {
                let ints: Vec<BigInt> = p.iter().map(|&v| BigInt::from(v)).collect();
                assert_eq!(poly.eval_int(&ints), gp.mult_coords(&p), "SO({n}) at {p:?}");
            }
        }
    }

    #[test]
    fn isqrt_exact() {
        for v in 0..2000i64 {
            let r = isqrt(v);
            assert!(r * r <= v && (r + 1) * (r + 1) > v);
        }
        assert_eq!(isqrt(-5), 0);
    }
}
