//! Uniform boundary grids and Fourier coefficient extraction.

use std::f64::consts::PI;

use rustfft::FftPlanner;

use crate::C64;

/// `n` equally spaced points `exp(2 pi i k / n)` on the unit circle.
pub fn circle_grid(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Fourier coefficients `c_k = (1/n) sum_j x_j exp(-2 pi i j k / n)`.
///
/// Index `k` of the output holds `c_k` for `0 <= k < n/2` and `c_{k-n}` above.
pub fn coefficients(samples: &[C64]) -> Vec<C64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    if n == 0 {
        return buf;
    }
    let fft = FftPlanner::new().plan_fft_forward(n);
    fft.process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Reads the signed coefficient `c_index` from an FFT output of length `n`.
#[inline]
pub fn signed(coeffs: &[C64], index: i64) -> C64 {
    let n = coeffs.len() as i64;
    coeffs[index.rem_euclid(n) as usize]
}

pub fn is_power_of_two(n: usize) -> bool {
    n >= 1 && n & (n - 1) == 0
}

/// Smallest power of two that is at least `n`.
pub fn next_power_of_two(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_of_monomials() {
        let grid = circle_grid(16);
        let samples: Vec<C64> = grid.iter().map(|z| z.powi(3) + 2.0 * z.powi(-2)).collect();
        let c = coefficients(&samples);
        assert!((signed(&c, 3) - 1.0).norm() < 1e-14);
        assert!((signed(&c, -2) - 2.0).norm() < 1e-14);
        assert!(signed(&c, 0).norm() < 1e-14);
    }
}
