//! Truncated Taylor series arithmetic.
//!
//! Multiplication by a Mobius factor or a normalized kernel is a first-order
//! recurrence, so the leading `n` coefficients of products of rational inner
//! functions come out exact up to rounding with no aliasing.

use crate::C64;

/// `phi_a * x`, with `phi_a(z) = (a - z) / (1 - conj(a) z)`.
pub fn mul_mobius(x: &[C64], a: C64) -> Vec<C64> {
    let ac = a.conj();
    let mut y = Vec::with_capacity(x.len());
    let mut prev_y = C64::new(0.0, 0.0);
    let mut prev_x = C64::new(0.0, 0.0);
    for &xn in x {
        let yn = ac * prev_y + a * xn - prev_x;
        y.push(yn);
        prev_y = yn;
        prev_x = xn;
    }
    y
}

/// `(z - a) / (1 - conj(a) z) * x`, i.e. `-phi_a * x`.
pub fn mul_tm_factor(x: &[C64], a: C64) -> Vec<C64> {
    let ac = a.conj();
    let mut y = Vec::with_capacity(x.len());
    let mut prev_y = C64::new(0.0, 0.0);
    let mut prev_x = C64::new(0.0, 0.0);
    for &xn in x {
        let yn = ac * prev_y - a * xn + prev_x;
        y.push(yn);
        prev_y = yn;
        prev_x = xn;
    }
    y
}

/// `scale / (1 - conj(a) z) * x`.
pub fn mul_kernel(x: &[C64], a: C64, scale: C64) -> Vec<C64> {
    let ac = a.conj();
    let mut y = Vec::with_capacity(x.len());
    let mut prev = C64::new(0.0, 0.0);
    for &xn in x {
        let yn = ac * prev + scale * xn;
        y.push(yn);
        prev = yn;
    }
    y
}

/// Truncated Cauchy product, length `n`.
pub fn mul(x: &[C64], y: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (i, &xi) in x.iter().enumerate().take(n) {
        if xi == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &yj) in y.iter().enumerate().take(n - i) {
            out[i + j] += xi * yj;
        }
    }
    out
}

/// `x` padded with zeros or cut to length `n`.
pub fn resized(x: &[C64], n: usize) -> Vec<C64> {
    let mut v = x[..x.len().min(n)].to_vec();
    v.resize(n, C64::new(0.0, 0.0));
    v
}

/// Unit impulse of length `n`.
pub fn one(n: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    if n > 0 {
        v[0] = C64::new(1.0, 0.0);
    }
    v
}

/// Horner evaluation of `sum c_k z^k`.
pub fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs
        .iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum()
}
