//! Random parameters for property sweeps.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::CMatrix;
use crate::symbol::{BlaschkeProduct, LaurentSymbol};
use crate::C64;

/// Default largest radius of random disk points.
pub const DISK_RADIUS: f64 = 0.9;

/// Radius uniform in `[0, max_radius]`, angle uniform.
pub fn disk_point<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> C64 {
    let r = rng.random::<f64>() * max_radius;
    C64::from_polar(r, unimodular_angle(rng))
}

pub fn unimodular<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, unimodular_angle(rng))
}

fn unimodular_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>() * std::f64::consts::TAU
}

/// Standard complex Gaussian.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Symbol with Gaussian coefficients at every index in `[-bandwidth, bandwidth]`.
pub fn laurent_symbol<R: Rng + ?Sized>(rng: &mut R, bandwidth: usize) -> LaurentSymbol {
    let b = bandwidth as i64;
    LaurentSymbol::from_pairs((-b..=b).map(|n| (n, gaussian(rng))))
}

/// Analytic polynomial with Gaussian coefficients of degrees `1..=degree`.
pub fn analytic_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> LaurentSymbol {
    LaurentSymbol::from_pairs((1..=degree as i64).map(|n| (n, gaussian(rng))))
}

/// Blaschke product of the given order with zeros from `disk_point`.
pub fn blaschke<R: Rng + ?Sized>(rng: &mut R, order: usize, max_radius: f64) -> BlaschkeProduct {
    let gamma = unimodular(rng);
    let zeros = (0..order).map(|_| disk_point(rng, max_radius)).collect();
    BlaschkeProduct::new(gamma, zeros).expect("zeros drawn inside the admissible disk")
}

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for (k, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            col *= d / d.norm();
        }
    }
    q
}

/// `Q Q^T` for a random unitary `Q`: a unitary complex-symmetric matrix.
pub fn symmetric_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let q = unitary(rng, n);
    &q * q.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::op_norm;
    use rand::SeedableRng;

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let u = unitary(&mut rng, 8);
        assert!(op_norm(&(&u * u.adjoint() - CMatrix::identity(8, 8))) < 1e-13);
        let s = symmetric_unitary(&mut rng, 8);
        assert!(op_norm(&(&s - s.transpose())) < 1e-13);
        assert!(op_norm(&(&s * s.adjoint() - CMatrix::identity(8, 8))) < 1e-13);
    }

    #[test]
    fn disk_points_respect_radius() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            assert!(disk_point(&mut rng, 0.9).norm() <= 0.9);
            assert!((unimodular(&mut rng).norm() - 1.0).abs() < 1e-15);
        }
    }
}
