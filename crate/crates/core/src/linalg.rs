//! Small dense-matrix helpers over `Complex64`.

use nalgebra::DMatrix;

use crate::C64;

pub type CMatrix = DMatrix<C64>;

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Entrywise complex conjugate.
pub fn conj(m: &CMatrix) -> CMatrix {
    m.map(|c| c.conj())
}

/// Top-left `rows x cols` block.
pub fn crop(m: &CMatrix, rows: usize, cols: usize) -> CMatrix {
    m.view((0, 0), (rows, cols)).into_owned()
}

/// `a * b` as four real products, which run through a blocked kernel.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ai) = (a.map(|c| c.re), a.map(|c| c.im));
    let (br, bi) = (b.map(|c| c.re), b.map(|c| c.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, C64::new)
}

/// Matrix whose columns are the given vectors, each padded or cut to `rows`.
pub fn from_columns(columns: &[Vec<C64>], rows: usize) -> CMatrix {
    CMatrix::from_fn(rows, columns.len(), |i, j| {
        columns[j].get(i).copied().unwrap_or_default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_norm_of_diagonal() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(0.0, 3.0),
            C64::new(1.0, 0.0),
        ]));
        assert!((op_norm(&m) - 3.0).abs() < 1e-14);
        assert_eq!(op_norm(&CMatrix::zeros(0, 0)), 0.0);
    }

    #[test]
    fn matmul_matches_generic_product() {
        let a = CMatrix::from_fn(5, 3, |i, j| C64::new(i as f64 - 1.5, (j * i) as f64 * 0.25));
        let b = CMatrix::from_fn(3, 4, |i, j| C64::new((i + j) as f64, 1.0 - j as f64));
        assert!(max_abs(&(matmul(&a, &b) - &a * &b)) < 1e-13);
    }
}
