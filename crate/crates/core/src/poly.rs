//! Sparse multivariate polynomials over exact rationals.
//!
//! Exponent-vector keyed, with the operations the spectral pipeline needs:
//! a small expression parser, the Laplacian, harmonic decomposition
//! P = Σ_l ‖x‖^{2l} H_{g−2l}, and exact sphere/ball integrals of monomials
//! (rational and rational-times-π^k respectively).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactValue, Rational};

/// Sparse polynomial in variables `x1..xn` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, q: Rational) -> Self {
        let mut p = Self::zero(n);
        if !q.is_zero() {
            p.terms.insert(vec![0; n], q);
        }
        p
    }

    /// Single monomial q · Πx_i^{e_i}; `exps.len()` must equal `n`.
    pub fn monomial(n: usize, exps: &[u32], q: Rational) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Self::zero(n);
        if !q.is_zero() {
            p.terms.insert(exps.to_vec(), q);
        }
        p
    }

    /// The variable x_i (1-based index).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n);
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::monomial(n, &e, Rational::one())
    }

    /// ‖x‖² = Σ x_i².
    pub fn norm_sq(n: usize) -> Self {
        let mut p = Self::zero(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 2;
            p.terms.insert(e, Rational::one());
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert_add(&mut self, exps: Vec<u32>, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (e, q) in &rhs.terms {
            out.insert_add(e.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, q)| (e.clone(), -q)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n);
        for (ea, qa) in &self.terms {
            for (eb, qb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(exps, qa * qb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.n, Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Total degree of the highest term, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree if homogeneous; None for zero; error if mixed degrees.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(g) if g != d => return Err(Error::NonHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Σ_i ∂²P/∂x_i².
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, q) in &self.terms {
            for i in 0..self.n {
                if e[i] >= 2 {
                    let mut f = e.clone();
                    f[i] -= 2;
                    let factor = Rational::from_integer(BigInt::from(e[i] as i64 * (e[i] as i64 - 1)));
                    out.insert_add(f, q * factor);
                }
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// ∂P/∂x_i (1-based).
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.n);
        let mut out = Self::zero(self.n);
        for (e, q) in &self.terms {
            if e[i - 1] >= 1 {
                let mut f = e.clone();
                f[i - 1] -= 1;
                out.insert_add(f, q * Rational::from_integer(BigInt::from(e[i - 1] as i64)));
            }
        }
        out
    }

    /// Antiderivative in x_i with zero constant (1-based).
    pub fn integrate(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.n);
        let mut out = Self::zero(self.n);
        for (e, q) in &self.terms {
            let mut f = e.clone();
            f[i - 1] += 1;
            let new_exp = f[i - 1] as i64;
            out.insert_add(f, q / Rational::from_integer(BigInt::from(new_exp)));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n);
        let mut acc = Rational::zero();
        for (e, q) in &self.terms {
            let mut m = q.clone();
            for (xi, &ei) in point.iter().zip(e) {
                for _ in 0..ei {
                    m *= xi;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Rational {
        let rat: Vec<Rational> = point.iter().map(|x| Rational::from_integer(x.clone())).collect();
        self.eval(&rat)
    }

    /// Harmonic decomposition P = Σ_l ‖x‖^{2l} H_{g−2l} of a homogeneous P.
    ///
    /// Returns the nonzero components as (l, H) pairs in increasing l; the
    /// zero polynomial decomposes to an empty list. Works by recursion on the
    /// Laplacian: if ΔP = Σ ‖x‖^{2l'} K_{l'}, then H_{g−2l} = K_{l−1}/μ_l
    /// with μ_l = 2l(2g−2l+n−2), and the degree-g component is the remainder
    /// (asserted harmonic). The decomposition is unique, so this agrees with
    /// a basis-level projection while avoiding dense linear algebra.
    pub fn harmonic_decompose(&self) -> Result<Vec<(u32, MultiPoly)>> {
        let g = match self.homogeneous_degree()? {
            None => return Ok(Vec::new()),
            Some(g) => g,
        };
        if g <= 1 {
            return Ok(vec![(0, self.clone())]);
        }
        let lap = self.laplacian();
        if lap.is_zero() {
            return Ok(vec![(0, self.clone())]);
        }
        let sub = lap.harmonic_decompose()?;
        let norm = Self::norm_sq(self.n);
        let mut comps: Vec<(u32, MultiPoly)> = Vec::new();
        let mut residual = self.clone();
        for (lp, k_comp) in sub {
            let l = lp + 1;
            let mu = 2 * l as i64 * (2 * g as i64 - 2 * l as i64 + self.n as i64 - 2);
            let h = k_comp.scale(&Rational::new(BigInt::one(), BigInt::from(mu)));
            residual = residual.sub(&norm.pow(l).mul(&h));
            comps.push((l, h));
        }
        if !residual.is_zero() {
            debug_assert!(residual.is_harmonic());
            comps.push((0, residual));
        }
        comps.sort_by_key(|(l, _)| *l);
        // Every component of a correct decomposition is harmonic.
        debug_assert!(comps.iter().all(|(_, h)| h.is_harmonic()));
        Ok(comps)
    }

    /// Average of P over the unit sphere S^{n−1} w.r.t. normalized measure.
    ///
    /// Monomial rule: zero unless every exponent is even, else
    /// Π(e_i−1)!! / Π_{j=0}^{h−1}(n+2j) with h = (Σe_i)/2.
    pub fn sphere_integral(&self) -> Rational {
        let mut acc = Rational::zero();
        'term: for (e, q) in &self.terms {
            let mut num = BigInt::one();
            let mut h = 0u32;
            for &ei in e {
                if ei % 2 != 0 {
                    continue 'term;
                }
                let mut k = ei as i64 - 1;
                while k >= 2 {
                    num *= k;
                    k -= 2;
                }
                h += ei / 2;
            }
            let mut den = BigInt::one();
            for j in 0..h {
                den *= self.n as i64 + 2 * j as i64;
            }
            acc += q * Rational::new(num, den);
        }
        acc
    }

    /// ∫_{B_R} P dx for homogeneous P of degree g, as (coefficient, power):
    /// the integral equals coefficient · R^{n+g}.
    pub fn ball_integral(&self) -> Result<(ExactValue, u32)> {
        let g = self.homogeneous_degree()?.unwrap_or(0);
        let power = self.n as u32 + g;
        if self.is_zero() {
            return Ok((ExactValue::zero(), power));
        }
        let avg = self.sphere_integral();
        let coef = vol_sphere(self.n)
            .scale(&(avg / Rational::from_integer(BigInt::from(power as i64))));
        Ok((coef, power))
    }

    /// Parse an expression in variables `x1..xn`.
    ///
    /// Grammar: `expr := term (('+'|'-') term)*`,
    /// `term := factor ('*'? factor)*`,
    /// `factor := rational | var ('^' uint)? | '(' expr ')'`,
    /// `var := 'x' uint`, `rational := int | '(' int '/' uint ')' | int '/' uint`.
    pub fn parse(input: &str, n: usize) -> Result<Self> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
            n,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first reads more naturally.
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<u32>(), (*e).clone())));
        for (idx, (e, q)) in items.iter().enumerate() {
            if idx > 0 {
                write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
            } else if q.is_negative() {
                write!(f, "-")?;
            }
            let a = q.abs();
            let is_const = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "x{}", i + 1)?;
                if ei > 1 {
                    write!(f, "^{ei}")?;
                }
            }
        }
        Ok(())
    }
}

/// Vol(S^{n−1}) = 2π^{n/2}/Γ(n/2) as an exact rational times π-power.
pub fn vol_sphere(n: usize) -> ExactValue {
    assert!(n >= 1);
    if n % 2 == 0 {
        // 2/( (n/2−1)! ) · π^{n/2}
        let mut fact = BigInt::one();
        for k in 2..=(n as i64 / 2 - 1).max(1) {
            fact *= k;
        }
        ExactValue::pi_power(n as u32 / 2, Rational::new(BigInt::from(2), fact))
    } else {
        // 2·2^{(n−1)/2}/(n−2)!! · π^{(n−1)/2}
        let mut dfact = BigInt::one();
        let mut k = n as i64 - 2;
        while k >= 2 {
            dfact *= k;
            k -= 2;
        }
        let num = BigInt::from(2) << ((n as u32 - 1) / 2);
        ExactValue::pi_power((n as u32 - 1) / 2, Rational::new(num, dfact))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor(true)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor(false)?);
                }
                // Implicit multiplication: a factor can start right away.
                Some(b'(') | Some(b'x') => {
                    acc = acc.mul(&self.factor(false)?);
                }
                Some(c) if c.is_ascii_digit() => {
                    acc = acc.mul(&self.factor(false)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// `leading` marks the first factor of a term, where a '-' introduces a
    /// negative integer literal rather than acting as the expr-level operator.
    fn factor(&mut self, leading: bool) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let var_pos = self.pos - 1;
                let idx_big = self.uint().map_err(|_| Error::Parse {
                    pos: var_pos,
                    msg: "variable needs an index, e.g. x1".into(),
                })?;
                let idx: usize = idx_big.to_string().parse().map_err(|_| Error::Parse {
                    pos: var_pos,
                    msg: "variable index too large".into(),
                })?;
                if idx < 1 || idx > self.n {
                    return Err(Error::VariableOutOfRange { var: idx, n: self.n });
                }
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.uint()?;
                    exp = e.to_string().parse().map_err(|_| self.err("exponent too large"))?;
                }
                let mut exps = vec![0u32; self.n];
                exps[idx - 1] = exp;
                Ok(MultiPoly::monomial(self.n, &exps, Rational::one()))
            }
            Some(c) if c.is_ascii_digit() || (leading && c == b'-') => {
                let neg = c == b'-';
                if neg {
                    self.pos += 1;
                }
                let num = self.uint()?;
                let num = if neg { -num } else { num };
                // Optional '/ uint' completes a rational literal.
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den_pos = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            pos: den_pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    Ok(MultiPoly::constant(self.n, Rational::new(num, den)))
                } else {
                    Ok(MultiPoly::constant(self.n, Rational::from_integer(num)))
                }
            }
            _ => Err(self.err("expected a factor (number, variable, or parenthesized expression)")),
        }
    }
}
