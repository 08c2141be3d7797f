//! Dense complex polynomials in ascending coefficient order.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

pub fn mul(p: &[C64], q: &[C64]) -> Vec<C64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn eval(p: &[C64], z: C64) -> C64 {
    crate::series::horner(p, z)
}

pub fn derivative(p: &[C64]) -> Vec<C64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// All roots, from the eigenvalues of the companion matrix followed by a few
/// Newton steps.
pub fn roots(p: &[C64]) -> Result<Vec<C64>> {
    let deg = p
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    let mut companion = DMatrix::<C64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -p[i] / lead;
    }
    let eig = companion
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::InvalidArgument("eigenvalue iteration failed".into()))?;
    let dp = derivative(&p[..=deg]);
    Ok(eig
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..4 {
                let d = eval(&dp, z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = eval(&p[..=deg], z) / d;
                if !step.norm().is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect())
}
