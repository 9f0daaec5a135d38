//! Lattice shells: representation numbers, polynomial-weighted shell sums,
//! closed-form cross-checks (Jacobi, the odd-square analog), ball averages,
//! equidistribution errors, and extremal shell statistics.
//!
//! Representation tables are built by iterated 1-D convolution; weighted
//! shell sums by a single sweep over lattice points of norm ≤ k_max that
//! accumulates into shells, folding coordinate signs (and, for fully
//! symmetric weights, coordinate permutations) so only a fundamental domain
//! is enumerated. All results are exact.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ExactValue, Rational};
use crate::poly::{vol_sphere, MultiPoly};
use crate::precision::BigFixed;
use crate::weights::isqrt;

/// Which sublattice a table ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// All of Zⁿ.
    All,
    /// Vectors with every coordinate odd.
    Odd,
}

/// Exact r_n(k) (or r_n*(k)) for k = 0..=k_max.
#[derive(Debug, Clone)]
pub struct ShellTable {
    pub n: usize,
    pub parity: Parity,
    pub values: Vec<i64>,
}

impl ShellTable {
    pub fn k_max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn value(&self, k: i64) -> i64 {
        self.values[k as usize]
    }

    /// Ball counts: prefix sums Σ_{k≤K} r(k).
    pub fn prefix_counts(&self) -> Vec<i64> {
        let mut acc = 0i64;
        self.values
            .iter()
            .map(|&v| {
                acc = acc.checked_add(v).expect("ball count overflow");
                acc
            })
            .collect()
    }
}

/// Representation numbers by iterated convolution of the one-dimensional
/// (odd-)square indicator: O(n·k_max^{3/2}) additions.
pub fn rep_table(n: usize, k_max: i64, parity: Parity) -> ShellTable {
    assert!(n >= 1 && k_max >= 0);
    let len = k_max as usize + 1;
    let base = match parity {
        Parity::All => {
            let mut b = vec![0i64; len];
            b[0] = 1;
            let mut t = 1i64;
            while t * t <= k_max {
                b[(t * t) as usize] = 2;
                t += 1;
            }
            b
        }
        Parity::Odd => {
            let mut b = vec![0i64; len];
            let mut t = 1i64;
            while t * t <= k_max {
                b[(t * t) as usize] = 2;
                t += 2;
            }
            b
        }
    };
    let mut cur = base.clone();
    for _ in 1..n {
        let mut next = vec![0i64; len];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut acc = match parity {
                Parity::All => cur[k],
                Parity::Odd => 0,
            };
            let start = match parity {
                Parity::All => 1i64,
                Parity::Odd => 1i64,
            };
            let step = match parity {
                Parity::All => 1i64,
                Parity::Odd => 2i64,
            };
            let mut t = start;
            while (t * t) as usize <= k {
                acc = acc
                    .checked_add(2 * cur[k - (t * t) as usize])
                    .expect("representation count overflow");
                t += step;
            }
            *slot = acc;
        }
        cur = next;
    }
    ShellTable {
        n,
        parity,
        values: cur,
    }
}

// ---------------------------------------------------------------------------
// Weighted shell sums: single sweep over a fundamental domain.
// ---------------------------------------------------------------------------

enum Tables {
    /// One combined table: Σ over the shell of the integer-scaled polynomial.
    Combined(Vec<i128>),
    /// One table per monomial (coefficients applied afterwards, exactly).
    PerTerm(Vec<Vec<i128>>),
}

struct Sweep<'a> {
    n: usize,
    k_max: i64,
    odd: bool,
    /// Fold coordinate permutations (valid only for symmetric weights).
    sorted: bool,
    /// Exponent vectors; every entry even.
    exps: &'a [Vec<u32>],
    /// Half-exponent of the innermost coordinate, per term.
    last_h: Vec<usize>,
    max_h: usize,
    max_exp: u32,
    fact: i64,
}

struct ChunkState {
    /// partials[level][t] = (coefficient or 1) · Π_{i<level} x_i^{e_{t,i}}.
    partials: Vec<Vec<i128>>,
    a_buf: Vec<i128>,
    pow_buf: Vec<i128>,
}

fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("shell sum overflow: value exceeds 128 bits")
}

fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("shell sum overflow: value exceeds 128 bits")
}

impl Sweep<'_> {
    /// Iteration range for the coordinate at `level` given the remaining
    /// squared budget: (lo, hi, step), empty when hi < lo.
    fn bounds(&self, level: usize, budget: i64, prev: i64) -> (i64, i64, i64) {
        let tail = (self.n - 1 - level) as i64;
        let tail_min = if self.odd { tail } else { 0 };
        let hi_sq = budget - tail_min;
        let mut hi = isqrt(hi_sq);
        if hi_sq < 0 {
            return (1, 0, 1);
        }
        let (lo, step) = if self.odd { (1, 2) } else { (0, 1) };
        if self.odd && hi >= 1 && hi % 2 == 0 {
            hi -= 1;
        }
        if self.sorted && prev < hi {
            hi = prev;
        }
        (lo, hi, step)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &self,
        level: usize,
        sum_sq: i64,
        prev: i64,
        nz: u32,
        dprod: i64,
        last_cnt: i64,
        root: Option<(i64, i64)>,
        st: &mut ChunkState,
        out: &mut Tables,
    ) {
        let budget = self.k_max - sum_sq;
        if level == self.n - 1 {
            self.leaf(sum_sq, prev, nz, dprod, last_cnt, root, st, out);
            return;
        }
        let (mut lo, mut hi, step) = self.bounds(level, budget, prev);
        if let Some((rlo, rhi)) = root {
            lo = lo.max(rlo);
            hi = hi.min(rhi);
        }
        let mut x = lo;
        while x <= hi {
            // partials for the next level
            self.fill_pows(x, st);
            for t in 0..self.exps.len() {
                let e = self.exps[t][level] as usize;
                let base = st.partials[level][t];
                st.partials[level + 1][t] = if e == 0 { base } else { cmul(base, st.pow_buf[e]) };
            }
            let (nd, nc) = if self.sorted && x == prev {
                (dprod * (last_cnt + 1), last_cnt + 1)
            } else {
                (dprod, 1)
            };
            self.recurse(
                level + 1,
                sum_sq + x * x,
                x,
                nz + (x > 0) as u32,
                nd,
                nc,
                None,
                st,
                out,
            );
            x += step;
        }
    }

    fn fill_pows(&self, x: i64, st: &mut ChunkState) {
        st.pow_buf[0] = 1;
        for e in 1..=self.max_exp as usize {
            st.pow_buf[e] = st.pow_buf[e - 1] * x as i128;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn leaf(
        &self,
        sum_sq: i64,
        prev: i64,
        nz: u32,
        dprod: i64,
        last_cnt: i64,
        root: Option<(i64, i64)>,
        st: &mut ChunkState,
        out: &mut Tables,
    ) {
        let level = self.n - 1;
        let budget = self.k_max - sum_sq;
        let (mut lo, mut hi, step) = self.bounds(level, budget, prev);
        if let Some((rlo, rhi)) = root {
            lo = lo.max(rlo);
            hi = hi.min(rhi);
        }
        if hi < lo {
            return;
        }
        if let Tables::Combined(_) = out {
            let parts = &st.partials[level];
            for a in st.a_buf.iter_mut() {
                *a = 0;
            }
            for (t, &p) in parts.iter().enumerate() {
                st.a_buf[self.last_h[t]] += p;
            }
        }
        let mut x = lo;
        while x <= hi {
            let t2 = (x * x) as i128;
            let k = (sum_sq + x * x) as usize;
            let w = self.leaf_weight(x, prev, nz, dprod, last_cnt) as i128;
            match out {
                Tables::Combined(table) => {
                    let mut val = 0i128;
                    for &a in st.a_buf.iter().rev() {
                        val = val * t2 + a;
                    }
                    table[k] += w * val;
                }
                Tables::PerTerm(tables) => {
                    st.pow_buf[0] = 1;
                    for h in 1..=self.max_h {
                        st.pow_buf[h] = cmul(st.pow_buf[h - 1], t2);
                    }
                    for (t, table) in tables.iter_mut().enumerate() {
                        let v = cmul(st.partials[level][t], st.pow_buf[self.last_h[t]]);
                        table[k] = cadd(table[k], cmul(w, v));
                    }
                }
            }
            x += step;
        }
    }

    fn leaf_weight(&self, x: i64, prev: i64, nz: u32, dprod: i64, last_cnt: i64) -> i64 {
        let signs = 1i64 << (nz + (x > 0) as u32);
        if !self.sorted {
            return signs;
        }
        let denom = if x == prev { dprod * (last_cnt + 1) } else { dprod };
        (self.fact / denom) * signs
    }

    fn run(&self, coefs: &[i128], per_term: bool) -> Tables {
        let len = self.k_max as usize + 1;
        let make = || {
            if per_term {
                Tables::PerTerm(vec![vec![0i128; len]; self.exps.len()])
            } else {
                Tables::Combined(vec![0i128; len])
            }
        };
        let (lo, hi, step) = self.bounds(0, self.k_max, i64::MAX);
        if hi < lo {
            return make();
        }
        let root_vals: Vec<i64> = (lo..=hi).step_by(step as usize).collect();
        let chunk_size = root_vals.len().div_ceil(16).max(1);
        let chunks: Vec<&[i64]> = root_vals.chunks(chunk_size).collect();
        let locals: Vec<Tables> = chunks
            .into_par_iter()
            .map(|chunk| {
                let mut st = ChunkState {
                    partials: vec![vec![0i128; self.exps.len()]; self.n],
                    a_buf: vec![0i128; self.max_h + 1],
                    pow_buf: vec![0i128; (self.max_exp as usize).max(self.max_h) + 1],
                };
                st.partials[0].copy_from_slice(coefs);
                let mut local = make();
                let range = Some((chunk[0], *chunk.last().unwrap()));
                self.recurse(0, 0, i64::MAX, 0, 1, 0, range, &mut st, &mut local);
                local
            })
            .collect();
        // Exact integer addition: merge order cannot affect the result, but
        // keep it fixed anyway.
        let mut total = make();
        for local in locals {
            match (&mut total, local) {
                (Tables::Combined(t), Tables::Combined(l)) => {
                    for (a, b) in t.iter_mut().zip(l) {
                        *a += b;
                    }
                }
                (Tables::PerTerm(ts), Tables::PerTerm(ls)) => {
                    for (tv, lv) in ts.iter_mut().zip(ls) {
                        for (a, b) in tv.iter_mut().zip(lv) {
                            *a = cadd(*a, b);
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        total
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// True when the term list is invariant under every coordinate permutation.
fn is_perm_symmetric(terms: &[(Vec<u32>, Rational)], n: usize) -> bool {
    let mut groups: BTreeMap<Vec<u32>, (Rational, usize)> = BTreeMap::new();
    for (e, c) in terms {
        let mut key = e.clone();
        key.sort_unstable();
        match groups.get_mut(&key) {
            None => {
                groups.insert(key, (c.clone(), 1));
            }
            Some((c0, cnt)) => {
                if c0 != c {
                    return false;
                }
                *cnt += 1;
            }
        }
    }
    for (key, (_, cnt)) in groups {
        let mut mult: BTreeMap<u32, i64> = BTreeMap::new();
        for v in key {
            *mult.entry(v).or_insert(0) += 1;
        }
        let mut distinct = factorial(n);
        for (_, m) in mult {
            distinct /= factorial(m as usize);
        }
        if distinct != cnt as i64 {
            return false;
        }
    }
    true
}

/// S_n(k, P) for all k ≤ k_max in one sweep, exact.
///
/// Terms with any odd exponent contribute nothing (the shell is symmetric
/// under each sign flip) and are dropped before enumeration. The sweep runs
/// in i128 with a precomputed safety bound; weights whose values could
/// approach 2¹²⁷ fall back to per-monomial accumulation combined in exact
/// rational arithmetic.
pub fn shell_sums(n: usize, k_max: i64, parity: Parity, p: &MultiPoly) -> Vec<Rational> {
    assert_eq!(p.n(), n);
    assert!(k_max >= 0);
    let len = k_max as usize + 1;
    let even_terms: Vec<(Vec<u32>, Rational)> = p
        .terms()
        .filter(|(e, _)| e.iter().all(|&x| x % 2 == 0))
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    if even_terms.is_empty() {
        return vec![Rational::zero(); len];
    }
    let exps: Vec<Vec<u32>> = even_terms.iter().map(|(e, _)| e.clone()).collect();
    let last_h: Vec<usize> = exps.iter().map(|e| e[n - 1] as usize / 2).collect();
    let max_h = *last_h.iter().max().unwrap();
    let max_exp = exps.iter().flat_map(|e| e.iter().copied()).max().unwrap();
    let mut den = BigInt::one();
    for (_, c) in &even_terms {
        den = den.lcm(c.denom());
    }
    let int_coefs: Vec<BigInt> = even_terms
        .iter()
        .map(|(_, c)| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();

    // Safety bound for the combined i128 path: Σ|c|·s^{deg} per point, times
    // a crude count of enumerated points and the maximal fold weight.
    let s = BigInt::from(isqrt(k_max));
    let mut point_bound = BigInt::zero();
    for ((e, _), ic) in even_terms.iter().zip(&int_coefs) {
        let deg: u32 = e.iter().sum();
        point_bound += ic.abs() * s.pow(deg);
    }
    let points: BigInt = (BigInt::from(2) * &s + BigInt::one()).pow(n as u32);
    let weight = BigInt::from(factorial(n) * (1i64 << n));
    let feasible = &point_bound * &points * &weight < (BigInt::one() << 120);

    let sorted = is_perm_symmetric(&even_terms, n);
    let sweep = Sweep {
        n,
        k_max,
        odd: parity == Parity::Odd,
        sorted: sorted && feasible,
        exps: &exps,
        last_h,
        max_h,
        max_exp,
        fact: factorial(n),
    };
    if feasible {
        let coefs: Vec<i128> = int_coefs.iter().map(|c| c.to_i128().unwrap()).collect();
        match sweep.run(&coefs, false) {
            Tables::Combined(table) => table
                .into_iter()
                .map(|v| Rational::new(BigInt::from(v), den.clone()))
                .collect(),
            _ => unreachable!(),
        }
    } else {
        // Per-monomial tables (coefficient 1), combined exactly afterwards.
        let ones = vec![1i128; exps.len()];
        let sweep = Sweep { sorted: false, ..sweep };
        match sweep.run(&ones, true) {
            Tables::PerTerm(tables) => {
                let mut out = vec![Rational::zero(); len];
                for ((_, c), table) in even_terms.iter().zip(&tables) {
                    for (slot, &v) in out.iter_mut().zip(table) {
                        if v != 0 {
                            *slot += c * Rational::from_integer(BigInt::from(v));
                        }
                    }
                }
                out
            }
            _ => unreachable!(),
        }
    }
}

/// Per-monomial shell tables Σ_{‖x‖²=k} x^e for a shared list of all-even
/// exponent vectors, in one sweep. Used by the radial-decomposition checker,
/// where many component polynomials share a monomial basis.
pub fn monomial_shell_tables(
    n: usize,
    k_max: i64,
    parity: Parity,
    exps: &[Vec<u32>],
) -> Vec<Vec<i128>> {
    assert!(exps.iter().all(|e| e.len() == n && e.iter().all(|&x| x % 2 == 0)));
    if exps.is_empty() {
        return Vec::new();
    }
    let last_h: Vec<usize> = exps.iter().map(|e| e[n - 1] as usize / 2).collect();
    let max_h = *last_h.iter().max().unwrap();
    let max_exp = exps.iter().flat_map(|e| e.iter().copied()).max().unwrap();
    let sweep = Sweep {
        n,
        k_max,
        odd: parity == Parity::Odd,
        sorted: false,
        exps,
        last_h,
        max_h,
        max_exp,
        fact: factorial(n),
    };
    let ones = vec![1i128; exps.len()];
    match sweep.run(&ones, true) {
        Tables::PerTerm(tables) => tables,
        _ => unreachable!(),
    }
}

/// Single shell sum S_n(k, P). Sweeps up to k; prefer `shell_sums` when many
/// shells are needed.
pub fn shell_sum(n: usize, k: i64, p: &MultiPoly) -> Rational {
    shell_sums(n, k, Parity::All, p).pop().unwrap()
}

/// Σ_{Q(m)=k} P(m) over the diagonal quadric Q(x) = Σ a_i² x_i², exact
/// by direct enumeration (a cross-check device, not a bulk path).
pub fn shell_sum_form(a: &[i64], k: i64, p: &MultiPoly) -> Rational {
    assert_eq!(a.len(), p.n());
    assert!(a.iter().all(|&v| v > 0) && k >= 0);
    let mut point = vec![BigInt::zero(); a.len()];
    let mut acc = Rational::zero();
    form_recurse(a, k, p, 0, &mut point, &mut acc);
    acc
}

fn form_recurse(
    a: &[i64],
    residual: i64,
    p: &MultiPoly,
    level: usize,
    point: &mut Vec<BigInt>,
    acc: &mut Rational,
) {
    if level == a.len() {
        if residual == 0 {
            *acc += p.eval_int(point);
        }
        return;
    }
    let aa = a[level] * a[level];
    let hi = isqrt(residual / aa);
    for x in -hi..=hi {
        let used = aa * x * x;
        if used <= residual {
            point[level] = BigInt::from(x);
            form_recurse(a, residual - used, p, level + 1, point, acc);
        }
    }
}

// ---------------------------------------------------------------------------
// Closed forms and arithmetic helpers.
// ---------------------------------------------------------------------------

static SPF: OnceLock<Vec<u32>> = OnceLock::new();
const SIEVE_LIMIT: usize = 1_000_000;

fn spf_sieve() -> &'static Vec<u32> {
    SPF.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT + 1];
        for i in 2..=SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

/// Prime factorization (p, multiplicity), ascending; sieve for small values,
/// Pollard rho beyond the sieve range.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    assert!(k >= 1);
    let spf = spf_sieve();
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    while k > 1 && (k as usize) <= SIEVE_LIMIT {
        let p = spf[k as usize] as u64;
        *out.entry(p).or_insert(0) += 1;
        k /= p;
    }
    if k > 1 {
        // Strip sieve-range primes first, then split what remains.
        let mut p = 2u64;
        while p * p <= k && p <= SIEVE_LIMIT as u64 {
            while k % p == 0 {
                *out.entry(p).or_insert(0) += 1;
                k /= p;
            }
            p += if p == 2 { 1 } else { 2 };
            while (p as usize) <= SIEVE_LIMIT && p > 2 && spf[p as usize] as u64 != p {
                p += 2;
            }
        }
        if k > 1 {
            let mut stack = vec![k];
            while let Some(m) = stack.pop() {
                if m == 1 {
                    continue;
                }
                if is_prime_u64(m) {
                    *out.entry(m).or_insert(0) += 1;
                } else {
                    let d = pollard_rho(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// σ(k), the sum of divisors, via factorization.
pub fn sigma(k: u64) -> u64 {
    factorize(k)
        .into_iter()
        .map(|(p, e)| {
            let mut s = 1u64;
            let mut pw = 1u64;
            for _ in 0..e {
                pw = pw.checked_mul(p).expect("sigma overflow");
                s = s.checked_add(pw).expect("sigma overflow");
            }
            s
        })
        .fold(1u64, |acc, s| acc.checked_mul(s).expect("sigma overflow"))
}

/// Jacobi's closed form r_4(k) = 8 Σ_{d | k, 4∤d} d.
pub fn jacobi_r4(k: u64) -> u64 {
    assert!(k >= 1);
    let a = k.trailing_zeros();
    let m = k >> a;
    let factor = if a == 0 { 1 } else { 3 };
    8 * factor * sigma(m)
}

/// The Jacobi analog for sums of four odd squares:
/// r_4*(k) = 16 σ(k/4) when k ≡ 4 (mod 8), else 0. The formula is validated
/// against brute-force tables in the test suite before anything relies on it.
pub fn carlitz_r4_odd(k: u64) -> u64 {
    assert!(k >= 1);
    if k % 8 == 4 {
        16 * sigma(k / 4)
    } else {
        0
    }
}

/// One row of the ball-average comparison Σ_{k≤R²} r(k) vs C·Rⁿ.
#[derive(Debug, Clone)]
pub struct AverageRow {
    pub r: i64,
    pub count: i64,
    pub main: BigFixed,
    pub diff: BigFixed,
}

/// Exact lattice counts in balls of integer radius against the volume main
/// term; for odd parity the constant picks up the sublattice density 2^{−n}.
pub fn average_compare(n: usize, r_max: i64, parity: Parity, digits: u32) -> Vec<AverageRow> {
    assert!(n >= 1 && r_max >= 1);
    let table = rep_table(n, r_max * r_max, parity);
    let prefix = table.prefix_counts();
    let mut constant = vol_sphere(n).scale(&Rational::new(BigInt::one(), BigInt::from(n as i64)));
    if parity == Parity::Odd {
        constant = constant.scale(&Rational::new(BigInt::one(), BigInt::one() << n));
    }
    let c_val = constant.eval(digits);
    (1..=r_max)
        .map(|r| {
            let count = prefix[(r * r) as usize];
            let main = c_val.mul(&BigFixed::from_bigint(&BigInt::from(r).pow(n as u32), 0));
            let diff = BigFixed::from_i64(count, main.scale()).sub(&main);
            AverageRow {
                r,
                count,
                main,
                diff,
            }
        })
        .collect()
}

/// Equidistribution error E_n(k,P) = S_n(k,P)/(k^{ν/2} r_n(k)) − ∫_{S^{n−1}} P.
///
/// Exact: for odd ν both the shell sum and the sphere average vanish, so the
/// value is rational for every homogeneous P.
pub fn equidist_error(n: usize, k: i64, p: &MultiPoly) -> Result<Rational> {
    assert!(k >= 1);
    let nu = p.homogeneous_degree()?.unwrap_or(0);
    let r = rep_table(n, k, Parity::All).value(k);
    if r == 0 {
        return Err(Error::EmptyShell(k));
    }
    let s = shell_sum(n, k, p);
    let avg = p.sphere_integral();
    if nu % 2 == 1 {
        debug_assert!(s.is_zero() && avg.is_zero());
        return Ok(Rational::zero());
    }
    let scale = Rational::from_integer(BigInt::from(k).pow(nu / 2) * BigInt::from(r));
    Ok(s / scale - avg)
}

/// §3 extremal statistic at k = product of the first j odd primes:
/// (k, r_4(k), r_4(k)/(k ln ln k), reference constant 48 e^γ/π²).
pub fn r4_extremal_ratio(j: usize, digits: u32) -> (u64, u64, BigFixed, BigFixed) {
    assert!(j >= 3, "log log k needs k well above e");
    let mut k: u64 = 1;
    let mut count = 0;
    let mut p: u64 = 3;
    while count < j {
        if is_prime_u64(p) {
            k = k.checked_mul(p).expect("prime product overflow");
            count += 1;
        }
        p += 2;
    }
    let r4 = jacobi_r4(k);
    let scale = digits + 10;
    let lnlnk = BigFixed::from_i64(k as i64, scale).ln().ln();
    let ratio = BigFixed::from_i64(r4 as i64, scale)
        .div(&BigFixed::from_i64(k as i64, scale).mul(&lnlnk));
    let pi = BigFixed::pi(scale);
    let reference = BigFixed::exp_gamma(scale)
        .mul_i64(48)
        .div(&pi.mul(&pi));
    (k, r4, ratio.with_scale(digits), reference.with_scale(digits))
}

/// Minimum of r(k)/k^{n/2−1} over nonempty shells in [k_min, k_max]
/// (odd parity restricted to k ≡ n mod 8), with its argmin.
pub fn jump_check(n: usize, k_min: i64, k_max: i64, parity: Parity) -> Result<(f64, i64)> {
    assert!(n > 4, "normalized shell counts need n > 4");
    assert!(k_min >= 1 && k_min <= k_max);
    let table = rep_table(n, k_max, parity);
    let exponent = n as f64 / 2.0 - 1.0;
    let mut best: Option<(f64, i64)> = None;
    for k in k_min..=k_max {
        if parity == Parity::Odd && k % 8 != (n % 8) as i64 {
            continue;
        }
        let r = table.value(k);
        if r == 0 {
            continue;
        }
        let ratio = r as f64 / (k as f64).powf(exponent);
        if best.is_none() || ratio < best.unwrap().0 {
            best = Some((ratio, k));
        }
    }
    best.ok_or(Error::EmptyRange("no nonempty shells in range"))
}

/// Reference constant C·Rⁿ for exterior use (ball volume, odd density).
pub fn ball_constant(n: usize, parity: Parity) -> ExactValue {
    let mut c = vol_sphere(n).scale(&Rational::new(BigInt::one(), BigInt::from(n as i64)));
    if parity == Parity::Odd {
        c = c.scale(&Rational::new(BigInt::one(), BigInt::one() << n));
    }
    c
}
