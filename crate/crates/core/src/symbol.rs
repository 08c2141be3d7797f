//! Trigonometric symbols, Mobius transforms and finite Blaschke products.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{fmt_c, Error, Result};
use crate::fourier::{circle_grid, coefficients, is_power_of_two, next_power_of_two, signed};
use crate::{poly, series, C64};

/// Tolerance on `| |xi| - 1 |` for arguments that must lie on the circle.
pub const UNIT_TOL: f64 = 1e-12;
/// Relative threshold below which FFT-derived coefficients are dropped.
pub const TRIM_TOL: f64 = 1e-13;
/// Largest admissible modulus of a Blaschke zero.
pub const MAX_ZERO_MODULUS: f64 = 0.95;
/// Tolerance for a coefficient to count as present in `NotAnalytic` checks.
pub const ANALYTIC_TOL: f64 = 1e-14;

const ZERO: C64 = C64::new(0.0, 0.0);

pub(crate) fn check_unit(z: C64) -> Result<()> {
    if (z.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitArgument {
            value: fmt_c(z),
            modulus: z.norm(),
        });
    }
    Ok(())
}

pub(crate) fn check_disk(z: C64, limit: f64) -> Result<()> {
    if z.norm() >= limit || !z.norm().is_finite() {
        return Err(Error::OutsideDisk {
            value: fmt_c(z),
            modulus: z.norm(),
            limit,
        });
    }
    Ok(())
}

/// Finite two-sided Fourier series `sum_{n=lo}^{hi} a_n z^n`.
///
/// Stored densely from the lowest nonzero index; both ends are trimmed of
/// exact zeros so equal symbols have equal representations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentSymbol {
    lo: i64,
    coeffs: Vec<C64>,
}

impl LaurentSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        Self::from_dense(0, vec![c])
    }

    pub fn monomial(n: i64, c: C64) -> Self {
        Self::from_dense(n, vec![c])
    }

    /// Coefficients `coeffs[k]` placed at index `lo + k`.
    pub fn from_dense(lo: i64, coeffs: Vec<C64>) -> Self {
        let mut s = Self { lo, coeffs };
        s.trim();
        s
    }

    /// Builds a symbol from `(index, coefficient)` pairs; repeated indices add.
    pub fn from_pairs<I: IntoIterator<Item = (i64, C64)>>(pairs: I) -> Self {
        let mut map: BTreeMap<i64, C64> = BTreeMap::new();
        for (n, c) in pairs {
            *map.entry(n).or_insert(ZERO) += c;
        }
        let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
            return Self::zero();
        };
        let mut coeffs = vec![ZERO; (hi - lo + 1) as usize];
        for (n, c) in map {
            coeffs[(n - lo) as usize] = c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Analytic symbol from Taylor coefficients.
    pub fn from_taylor(taylor: &[C64]) -> Self {
        Self::from_dense(0, taylor.to_vec())
    }

    fn trim(&mut self) {
        let Some(first) = self.coeffs.iter().position(|c| *c != ZERO) else {
            self.coeffs.clear();
            self.lo = 0;
            return;
        };
        let last = self.coeffs.iter().rposition(|c| *c != ZERO).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.lo += first as i64;
    }

    /// Zeroes every coefficient below `rel_tol * max|a_n|`, then trims.
    pub fn trimmed_relative(&self, rel_tol: f64) -> Self {
        let cut = rel_tol * self.max_abs();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c.norm() < cut { ZERO } else { c })
            .collect();
        Self::from_dense(self.lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: i64) -> C64 {
        let k = n - self.lo;
        if k < 0 || k >= self.coeffs.len() as i64 {
            ZERO
        } else {
            self.coeffs[k as usize]
        }
    }

    pub fn min_index(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    pub fn max_index(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    /// `max(|lowest index|, |highest index|)`, zero for constants.
    pub fn bandwidth(&self) -> usize {
        match (self.min_index(), self.max_index()) {
            (Some(lo), Some(hi)) => lo.unsigned_abs().max(hi.unsigned_abs()) as usize,
            _ => 0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Nonzero entries as `(index, coefficient)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(move |(k, c)| (self.lo + k as i64, *c))
    }

    pub fn is_analytic(&self) -> bool {
        self.iter().all(|(n, c)| n >= 0 || c.norm() <= ANALYTIC_TOL)
    }

    /// Taylor coefficients `a_0..a_{n-1}` of the analytic part.
    pub fn taylor(&self, n: usize) -> Vec<C64> {
        (0..n as i64).map(|k| self.coeff(k)).collect()
    }

    /// `sum a_n xi^n` for `|xi| = 1`.
    pub fn eval(&self, xi: C64) -> Result<C64> {
        check_unit(xi)?;
        Ok(self.eval_unchecked(xi))
    }

    pub(crate) fn eval_unchecked(&self, xi: C64) -> C64 {
        if self.is_zero() {
            return ZERO;
        }
        series::horner(&self.coeffs, xi) * xi.powi(self.lo as i32)
    }

    /// Symbol of the complex conjugate: coefficient `n` becomes `conj(a_{-n})`.
    pub fn conj_reflect(&self) -> Self {
        let hi = self.max_index().unwrap_or(0);
        let coeffs = self.coeffs.iter().rev().map(|c| c.conj()).collect();
        Self::from_dense(-hi, coeffs)
    }

    /// `z -> phi(lambda z)`: coefficient `n` becomes `a_n lambda^n`.
    pub fn rotate(&self, lambda: C64) -> Result<Self> {
        check_unit(lambda)?;
        Ok(Self::from_pairs(
            self.iter().map(|(n, c)| (n, c * lambda.powi(n as i32))),
        ))
    }

    /// `z -> phi(conj z)`: coefficient `n` becomes `a_{-n}`.
    pub fn bar_arg(&self) -> Self {
        let hi = self.max_index().unwrap_or(0);
        let coeffs = self.coeffs.iter().rev().copied().collect();
        Self::from_dense(-hi, coeffs)
    }

    /// `C_lambda h = conj(h(lambda conj z))`: coefficient `n` becomes
    /// `conj(a_n) conj(lambda)^n`, on the full Laurent range.
    pub fn clambda(&self, lambda: C64) -> Result<Self> {
        check_unit(lambda)?;
        let lc = lambda.conj();
        Ok(Self::from_pairs(
            self.iter().map(|(n, c)| (n, c.conj() * lc.powi(n as i32))),
        ))
    }

    /// `C_lambda` restricted to analytic symbols.
    pub fn clambda_on_analytic(&self, lambda: C64) -> Result<Self> {
        if let Some((n, c)) = self.iter().find(|(n, c)| *n < 0 && c.norm() > ANALYTIC_TOL) {
            return Err(Error::NotAnalytic {
                index: n,
                modulus: c.norm(),
            });
        }
        let analytic = Self::from_pairs(self.iter().filter(|(n, _)| *n >= 0));
        analytic.clambda(lambda)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_dense(self.lo, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Values on an `n`-point uniform grid.
    pub fn samples(&self, n: usize) -> Vec<C64> {
        circle_grid(n)
            .into_iter()
            .map(|xi| self.eval_unchecked(xi))
            .collect()
    }

    /// Reads coefficients with `|index| < size/4` from an FFT of `size`
    /// samples, failing if anything outside that band exceeds ten times the
    /// trim tolerance.
    pub fn from_samples(samples: &[C64]) -> Result<Self> {
        let size = samples.len();
        let c = coefficients(samples);
        let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(Self::zero());
        }
        let band = (size / 4) as i64;
        let dropped = (band..=(size as i64 - band))
            .map(|k| c[k as usize].norm())
            .fold(0.0, f64::max);
        if dropped > 10.0 * TRIM_TOL * scale {
            return Err(Error::InsufficientResolution {
                size,
                dropped: dropped / scale,
            });
        }
        let kept = (-band + 1..band).map(|n| (n, signed(&c, n)));
        Ok(Self::from_pairs(kept).trimmed_relative(TRIM_TOL))
    }
}

impl Add for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn add(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        LaurentSymbol::from_pairs(self.iter().chain(rhs.iter()))
    }
}

impl Sub for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn sub(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        LaurentSymbol::from_pairs(self.iter().chain(rhs.iter().map(|(n, c)| (n, -c))))
    }
}

impl Neg for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn neg(self) -> LaurentSymbol {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn mul(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        if self.is_zero() || rhs.is_zero() {
            return LaurentSymbol::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentSymbol::from_dense(self.lo + rhs.lo, out)
    }
}

/// Disk automorphism `phi_a(z) = (a - z) / (1 - conj(a) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    a: C64,
}

impl Mobius {
    pub fn new(a: C64) -> Result<Self> {
        check_disk(a, 1.0)?;
        Ok(Self { a })
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn eval(&self, z: C64) -> C64 {
        mobius(self.a, z)
    }
}

#[inline]
pub fn mobius(a: C64, z: C64) -> C64 {
    (a - z) / (1.0 - a.conj() * z)
}

/// `gamma * prod phi_{a_k}` with zeros kept in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    gamma: C64,
    zeros: Vec<C64>,
}

impl BlaschkeProduct {
    /// `gamma` must be unimodular to 1e-12 (it is renormalized); every zero
    /// must satisfy `|a| <= 0.95`.
    pub fn new(gamma: C64, zeros: Vec<C64>) -> Result<Self> {
        check_unit(gamma)?;
        for &a in &zeros {
            if a.norm() > MAX_ZERO_MODULUS || !a.norm().is_finite() {
                return Err(Error::OutsideDisk {
                    value: fmt_c(a),
                    modulus: a.norm(),
                    limit: MAX_ZERO_MODULUS,
                });
            }
        }
        Ok(Self {
            gamma: gamma / gamma.norm(),
            zeros,
        })
    }

    /// The single factor `phi_a`.
    pub fn mobius(a: C64) -> Result<Self> {
        Self::new(C64::new(1.0, 0.0), vec![a])
    }

    /// `z^d`, written as `(-1)^d phi_0^d`.
    pub fn monomial(d: usize) -> Self {
        let gamma = if d % 2 == 0 { 1.0 } else { -1.0 };
        Self {
            gamma: C64::new(gamma, 0.0),
            zeros: vec![ZERO; d],
        }
    }

    pub fn identity() -> Self {
        Self::monomial(1)
    }

    /// `phi_a(z^2) = -phi_s phi_{-s}` with `s^2 = a`.
    pub fn mobius_of_square(a: C64) -> Result<Self> {
        let s = a.sqrt();
        Self::new(C64::new(-1.0, 0.0), vec![s, -s])
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.zeros
            .iter()
            .fold(self.gamma, |acc, &a| acc * mobius(a, z))
    }

    pub fn scaled(&self, phase: C64) -> Result<Self> {
        Self::new(self.gamma * phase, self.zeros.clone())
    }

    /// Leading `n` Taylor coefficients.
    pub fn taylor(&self, n: usize) -> Vec<C64> {
        self.mul_series(&series::one(n))
    }

    /// `B * x` on truncated Taylor series.
    pub fn mul_series(&self, x: &[C64]) -> Vec<C64> {
        let mut y = x.to_vec();
        for &a in &self.zeros {
            y = series::mul_mobius(&y, a);
        }
        y.iter_mut().for_each(|c| *c *= self.gamma);
        y
    }

    /// Analytic symbol of `B`, truncated where coefficients fall below
    /// `1e-16` of the largest.
    pub fn to_symbol(&self) -> LaurentSymbol {
        let mut n = 64;
        loop {
            let t = self.taylor(n);
            let tail = t[n - n / 8..].iter().map(|c| c.norm()).fold(0.0, f64::max);
            if tail < 1e-17 || n >= 1 << 16 {
                return LaurentSymbol::from_taylor(&t).trimmed_relative(1e-16);
            }
            n *= 2;
        }
    }

    /// `phi_a o B`, a Blaschke product of the same order whose zeros solve
    /// `B(z) = a`.
    pub fn compose_mobius_left(&self, a: C64) -> Result<Self> {
        check_disk(a, 1.0)?;
        if self.zeros.is_empty() {
            return Err(Error::InvalidArgument("constant inner function".into()));
        }
        // gamma prod (a_k - z) - a prod (1 - conj(a_k) z) = 0
        let mut num = vec![self.gamma];
        let mut den = vec![C64::new(1.0, 0.0)];
        for &ak in &self.zeros {
            num = poly::mul(&num, &[ak, C64::new(-1.0, 0.0)]);
            den = poly::mul(&den, &[C64::new(1.0, 0.0), -ak.conj()]);
        }
        let p: Vec<C64> = num.iter().zip(&den).map(|(u, v)| u - a * v).collect();
        let zeros = poly::roots(&p)?;
        let probe = C64::new(1.0, 0.0);
        let target = mobius(a, self.eval(probe));
        let partial = zeros.iter().fold(C64::new(1.0, 0.0), |acc, &c| acc * mobius(c, probe));
        let gamma = target / partial;
        Self::new(gamma / gamma.norm(), zeros)
    }
}

/// `f o u` by sampling at `fft_size` circle points and reading off Fourier
/// coefficients.
pub fn compose_with_inner(
    f: &LaurentSymbol,
    u: &BlaschkeProduct,
    fft_size: usize,
) -> Result<LaurentSymbol> {
    let required = 4 * f.bandwidth() * u.order() + 64;
    if !is_power_of_two(fft_size) || fft_size < required {
        return Err(Error::InvalidArgument(format!(
            "fft size {fft_size} must be a power of two >= {required}"
        )));
    }
    let samples: Vec<C64> = circle_grid(fft_size)
        .into_iter()
        .map(|xi| {
            let w = u.eval(xi);
            f.eval_unchecked(w / w.norm())
        })
        .collect();
    LaurentSymbol::from_samples(&samples)
}

/// `compose_with_inner` at the smallest admissible size, doubling on
/// insufficient resolution.
pub fn compose_with_inner_auto(f: &LaurentSymbol, u: &BlaschkeProduct) -> Result<LaurentSymbol> {
    let target = f.bandwidth() * u.order().max(1);
    let mut size = next_power_of_two((8 * target).max(4 * target + 64).max(256));
    loop {
        match compose_with_inner(f, u, size) {
            Err(Error::InsufficientResolution { .. }) if size < 1 << 20 => size *= 2,
            other => return other,
        }
    }
}

/// Data of `conj(phi_a(lambda conj(phi_a))) = beta phi_b` and the phase
/// `gamma` with `C_{lambda,a} z^n = conj(gamma) (beta phi_b)^n e_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusConjugation {
    pub b: C64,
    pub beta: C64,
    pub gamma: C64,
}

/// Below this modulus `b` is snapped to zero.
const B_SNAP: f64 = 1e-13;

pub fn conjugate_mobius_data(a: C64, lambda: C64) -> Result<MobiusConjugation> {
    check_disk(a, 1.0)?;
    check_unit(lambda)?;
    let den = 1.0 - a * a * lambda.conj();
    if den.norm() < 1e-14 {
        return Err(Error::DegenerateDenominator(den.norm()));
    }
    let gamma = den / den.norm();
    let b = mobius(a, a.conj() * lambda);
    if b.norm() < B_SNAP {
        // phi_0 = -z, so beta phi_0(z) = conj(lambda) z needs beta = -conj(lambda)
        return Ok(MobiusConjugation {
            b: ZERO,
            beta: -lambda.conj(),
            gamma,
        });
    }
    Ok(MobiusConjugation {
        b,
        beta: b.conj() / b,
        gamma,
    })
}

/// Max over `n` circle samples of `|conj(phi_a(lambda conj(phi_a(xi)))) - beta phi_b(xi)|`.
pub fn mobius_identity_residual(a: C64, lambda: C64, data: &MobiusConjugation, n: usize) -> f64 {
    circle_grid(n)
        .into_iter()
        .map(|xi| {
            let lhs = mobius(a, lambda * mobius(a, xi).conj()).conj();
            (lhs - data.beta * mobius(data.b, xi)).norm()
        })
        .fold(0.0, f64::max)
}
