//! Antilinear maps `x -> M conj(x)` and the conjugation families built on
//! Mobius maps and Wold bases.
//!
//! Most families have infinite matrices whose rows and columns decay but
//! are not banded.  A representation therefore keeps the leading `n` rows and
//! `n` columns out to a length `len` past which the entries are negligible,
//! so products against sections of size `len` are exact on the leading
//! `n x n` block.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hardy::{analytic_from_samples, AnalyticCoeffVector, ModelSpaceBasis, WoldTaylor};
use crate::linalg::{conj, crop, matmul, op_norm, CMatrix};
use crate::operators::{u_a_matrix, BasisTag};
use crate::symbol::{check_disk, check_unit, conjugate_mobius_data, MobiusConjugation};
use crate::{fourier, series, C64};

/// Entries below this size mark the end of a row or column band.
pub const BAND_TOL: f64 = 1e-15;
const MAX_BAND: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearRep {
    n: usize,
    basis: BasisTag,
    /// `M[0..n, 0..len]`.
    rows: CMatrix,
    /// `M[0..len, 0..n]`.
    cols: CMatrix,
    /// Largest entry discarded when the bands were cut.
    pub truncation: f64,
}

impl AntilinearRep {
    /// A map given exactly by a square matrix.
    pub fn from_matrix(m: CMatrix, basis: BasisTag) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch("matrix must be square".into()));
        }
        Ok(Self {
            n: m.nrows(),
            basis,
            rows: m.clone(),
            cols: m,
            truncation: 0.0,
        })
    }

    /// Builds the bands from `bands(len)`, which returns `M[0..n, 0..len]`
    /// and `M[0..len, 0..n]`, growing `len` until the far ends fall below
    /// `BAND_TOL` times the largest entry.
    pub fn from_blocks<F>(n: usize, basis: BasisTag, mut bands: F) -> Result<Self>
    where
        F: FnMut(usize) -> Result<(CMatrix, CMatrix)>,
    {
        let mut len = (2 * n).max(n + 64);
        loop {
            let (rows, cols) = bands(len)?;
            let scale = rows.iter().chain(cols.iter()).map(|c| c.norm()).fold(0.0, f64::max);
            let edge = len - len / 8;
            let tail_r = rows.columns(edge, len - edge).iter().map(|c| c.norm()).fold(0.0, f64::max);
            let tail_c = cols.rows(edge, len - edge).iter().map(|c| c.norm()).fold(0.0, f64::max);
            let tail = tail_r.max(tail_c);
            if tail <= BAND_TOL * scale.max(1.0) || len >= MAX_BAND {
                return Ok(Self {
                    n,
                    basis,
                    rows,
                    cols,
                    truncation: tail,
                });
            }
            len *= 2;
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn band_len(&self) -> usize {
        self.rows.ncols()
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    /// Leading `n x n` block of `M`.
    pub fn interior(&self) -> CMatrix {
        crop(&self.rows, self.n, self.n)
    }

    pub fn row_band(&self) -> &CMatrix {
        &self.rows
    }

    pub fn col_band(&self) -> &CMatrix {
        &self.cols
    }

    /// Multiplies every entry by `s`.
    pub fn scaled(&self, s: C64) -> Self {
        Self {
            rows: self.rows.map(|c| c * s),
            cols: self.cols.map(|c| c * s),
            ..self.clone()
        }
    }

    /// First `n` coordinates of `M conj(x)`, `x` padded with zeros.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let len = self.band_len();
        let v = nalgebra::DVector::from_fn(len, |i, _| x.get(i).map_or(C64::default(), |c| c.conj()));
        (&self.rows * v).iter().copied().collect()
    }

    /// `max(||R R^H - I||, ||C^H C - I||)` for the row band `R` and column
    /// band `C`.
    pub fn unitarity_residual(&self) -> f64 {
        let id = CMatrix::identity(self.n, self.n);
        let r = op_norm(&(matmul(&self.rows, &self.rows.adjoint()) - &id));
        let c = op_norm(&(matmul(&self.cols.adjoint(), &self.cols) - &id));
        r.max(c)
    }

    /// `||R - C^T||` over the bands.
    pub fn symmetry_residual(&self) -> f64 {
        op_norm(&(&self.rows - self.cols.transpose()))
    }

    /// `||M conj(M) - I||` on the leading block.
    pub fn involution_residual(&self) -> f64 {
        let id = CMatrix::identity(self.n, self.n);
        op_norm(&(matmul(&self.rows, &conj(&self.cols)) - id))
    }

    /// Largest off-diagonal entry in the bands.
    pub fn off_diagonal(&self) -> f64 {
        let r = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| i % self.n != i / self.n)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max);
        let len = self.band_len();
        let c = self
            .cols
            .iter()
            .enumerate()
            .filter(|(i, _)| i % len != i / len)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max);
        r.max(c)
    }
}

/// Unimodular sequence `alpha_0, alpha_1, ...`, either tabulated or
/// geometric.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSequence {
    Explicit(Vec<C64>),
    Geometric { first: C64, ratio: C64 },
}

const ALPHA_TOL: f64 = 1e-12;

impl AlphaSequence {
    pub fn explicit(entries: Vec<C64>) -> Result<Self> {
        let mut out = Vec::with_capacity(entries.len());
        for c in entries {
            check_alpha(c)?;
            out.push(c / c.norm());
        }
        Ok(Self::Explicit(out))
    }

    /// `first * ratio^m`.
    pub fn geometric(first: C64, ratio: C64) -> Result<Self> {
        check_alpha(first)?;
        check_alpha(ratio)?;
        Ok(Self::Geometric {
            first: first / first.norm(),
            ratio: ratio / ratio.norm(),
        })
    }

    /// The sequence `conj(lambda)^m` attached to `C_lambda`.
    pub fn from_lambda(lambda: C64) -> Result<Self> {
        check_unit(lambda)?;
        Self::geometric(C64::new(1.0, 0.0), lambda.conj())
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            Self::Explicit(v) => Some(v.len()),
            Self::Geometric { .. } => None,
        }
    }

    pub fn get(&self, m: usize) -> Option<C64> {
        match self {
            Self::Explicit(v) => v.get(m).copied(),
            Self::Geometric { first, ratio } => {
                let arg = ratio.arg() * m as f64;
                Some(first * C64::from_polar(1.0, arg))
            }
        }
    }

    /// The first `n` entries.
    pub fn take(&self, n: usize) -> Result<Vec<C64>> {
        if let Some(len) = self.len() {
            if len < n {
                return Err(Error::SequenceTooShort { len, required: n });
            }
        }
        Ok((0..n).map(|m| self.get(m).unwrap()).collect())
    }
}

fn check_alpha(c: C64) -> Result<()> {
    if (c.norm() - 1.0).abs() > ALPHA_TOL {
        return Err(Error::NonUnitArgument {
            value: crate::error::fmt_c(c),
            modulus: c.norm(),
        });
    }
    Ok(())
}

/// `C_lambda`: `M = diag(conj(lambda)^n)`.
pub fn c_lambda(lambda: C64, n: usize) -> Result<AntilinearRep> {
    c_alpha(&AlphaSequence::from_lambda(lambda)?, n)
}

/// `C_alpha`: `M = diag(alpha_n)`.
pub fn c_alpha(alpha: &AlphaSequence, n: usize) -> Result<AntilinearRep> {
    let d = alpha.take(n)?;
    let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d));
    AntilinearRep::from_matrix(m, BasisTag::Monomial)
}

/// `C_{alpha,u,E}` in the Wold basis of `basis`: `blockdiag(alpha_m I_d)`
/// over `blocks` levels.
pub fn c_alpha_u_e_wold(alpha: &AlphaSequence, basis: &ModelSpaceBasis, blocks: usize) -> Result<AntilinearRep> {
    let d = basis.dim();
    let a = alpha.take(blocks)?;
    let diag: Vec<C64> = (0..blocks * d).map(|i| a[i / d]).collect();
    let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    AntilinearRep::from_matrix(m, BasisTag::Wold { block_dim: d })
}

/// `C_{alpha,u,E}` transported to monomial coordinates, `M = W D W^T`,
/// where the columns of `W` are Taylor vectors of `u^m e_j`.  The
/// representation's `truncation` is the larger of the band cut and the
/// completeness defect of the truncated Wold family.
pub fn c_alpha_u_e(alpha: &AlphaSequence, basis: &ModelSpaceBasis, n: usize) -> Result<AntilinearRep> {
    let mut defect = 0.0f64;
    let mut rep = AntilinearRep::from_blocks(n, BasisTag::Monomial, |len| {
        // only levels that reach the first n coefficients touch M[0..n, ..]
        let w = WoldTaylor::until_negligible_in(basis, len, n, 1e-17, 1 << 16)?;
        defect = defect.max(w.leading_completeness(n));
        let d = w.block_dim;
        let a = alpha.take(w.levels())?;
        let head_t = CMatrix::from_fn(w.columns.len(), n, |c, j| w.columns[c][j] * a[c / d]);
        // W D W^T is symmetric, so the row band is the transposed column band
        let cols = matmul(&w.matrix(), &head_t);
        Ok((cols.transpose(), cols))
    })?;
    rep.truncation = rep.truncation.max(defect);
    Ok(rep)
}

/// Columns `prefactor * (beta phi_b)^k e_b`, `k < cols`, each with `rows`
/// Taylor coefficients.
fn mobius_power_block(prefactor: C64, beta: C64, b: C64, rows: usize, cols: usize) -> CMatrix {
    let s = prefactor * (1.0 - b.norm_sqr()).sqrt();
    let mut col = series::mul_kernel(&series::one(rows), b, s);
    let mut m = CMatrix::zeros(rows, cols);
    for k in 0..cols {
        m.column_mut(k).copy_from_slice(&col);
        if k + 1 < cols {
            col = series::mul_mobius(&col, b);
            col.iter_mut().for_each(|c| *c *= beta);
        }
    }
    m
}

/// `C_{lambda,a} = U_a C_lambda U_a` from its closed form
/// `C_{lambda,a} z^n = conj(gamma) (beta phi_b)^n e_b`.
pub fn c_lambda_a(lambda: C64, a: C64, n: usize) -> Result<AntilinearRep> {
    let data = conjugate_mobius_data(a, lambda)?;
    c_lambda_a_from_data(&data, n)
}

pub(crate) fn c_lambda_a_from_data(data: &MobiusConjugation, n: usize) -> Result<AntilinearRep> {
    let MobiusConjugation { b, beta, gamma } = *data;
    AntilinearRep::from_blocks(n, BasisTag::Monomial, |len| {
        let p = gamma.conj();
        Ok((mobius_power_block(p, beta, b, n, len), mobius_power_block(p, beta, b, len, n)))
    })
}

/// Leading `n x n` block of `U_a diag(conj(lambda)^k) conj(U_a)`, with the
/// inner sum extended until the `U_a` entries are negligible.
pub fn c_lambda_a_via_unitary(lambda: C64, a: C64, n: usize) -> Result<CMatrix> {
    check_unit(lambda)?;
    check_disk(a, 1.0)?;
    let mut p = (2 * n).max(n + 64);
    loop {
        let u_rows = u_a_matrix(a, n, p)?;
        let edge = p - p / 8;
        let tail = u_rows.columns(edge, p - edge).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if tail <= BAND_TOL || p >= MAX_BAND {
            let u_cols = u_a_matrix(a, p, n)?;
            let mut scaled = u_rows;
            let lc = lambda.conj();
            for (k, mut col) in scaled.column_iter_mut().enumerate() {
                col *= C64::from_polar(1.0, lc.arg() * k as f64);
            }
            return Ok(matmul(&scaled, &conj(&u_cols)));
        }
        p *= 2;
    }
}

/// Operator norm of the difference of the two constructions of
/// `C_{lambda,a}` on the leading `n x n` block.
pub fn c_lambda_a_dual_route_residual(lambda: C64, a: C64, n: usize) -> Result<f64> {
    let closed = c_lambda_a(lambda, a, n)?;
    let via = c_lambda_a_via_unitary(lambda, a, n)?;
    Ok(op_norm(&(closed.interior() - via)))
}

/// `A_{u,v} f = u conj(f(conj(v)))` on `grid` boundary samples.  `v` must map
/// the disk into its closure; this is checked at radii 0, 0.5, 0.9 and on
/// the circle.
pub fn a_uv_apply<U, V>(u: U, v: V, f: &AnalyticCoeffVector, grid: usize) -> Result<AnalyticCoeffVector>
where
    U: Fn(C64) -> C64,
    V: Fn(C64) -> C64,
{
    let pts = fourier::circle_grid(grid);
    for r in [0.0, 0.5, 0.9] {
        for xi in pts.iter().step_by((grid / 64).max(1)) {
            let m = v(xi * r).norm();
            if m >= 1.0 {
                return Err(Error::RangeViolation(m));
            }
        }
    }
    let mut samples = Vec::with_capacity(grid);
    for &xi in &pts {
        let w = v(xi);
        if w.norm() > 1.0 + 1e-12 {
            return Err(Error::RangeViolation(w.norm()));
        }
        samples.push(u(xi) * f.eval(w.conj()).conj());
    }
    analytic_from_samples(&samples)
}

/// `A_{u,v}` for `u = alpha e_b`, `v = beta phi_b`: column `k` is
/// `alpha (beta phi_b)^k e_b`.
pub fn a_uv_rep(alpha: C64, beta: C64, b: C64, n: usize) -> Result<AntilinearRep> {
    check_unit(alpha)?;
    check_unit(beta)?;
    check_disk(b, 1.0)?;
    AntilinearRep::from_blocks(n, BasisTag::Monomial, |len| {
        Ok((mobius_power_block(alpha, beta, b, n, len), mobius_power_block(alpha, beta, b, len, n)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugationReport {
    pub is_antiunitary: bool,
    pub is_conjugation: bool,
    pub is_canonical: bool,
    pub unitarity_residual: f64,
    pub symmetry_residual: f64,
}

pub fn check_conjugation(c: &AntilinearRep, tol: f64) -> ConjugationReport {
    let unitarity_residual = c.unitarity_residual();
    let symmetry_residual = c.symmetry_residual();
    let is_antiunitary = unitarity_residual < tol;
    let is_conjugation = is_antiunitary && symmetry_residual < tol;
    let is_canonical = is_conjugation
        && c.basis() == BasisTag::Monomial
        && c.off_diagonal() < tol
        && c
            .interior()
            .diagonal()
            .iter()
            .all(|d| (d.norm() - 1.0).abs() < tol);
    ConjugationReport {
        is_antiunitary,
        is_conjugation,
        is_canonical,
        unitarity_residual,
        symmetry_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::{normalized_kernel, tm_basis};
    use crate::sampling::unitary;
    use crate::symbol::{mobius, BlaschkeProduct};
    use crate::{c64, I};
    use rand::SeedableRng;

    fn one() -> C64 {
        c64(1.0, 0.0)
    }

    fn diag(c: &AntilinearRep) -> Vec<C64> {
        c.interior().diagonal().iter().copied().collect()
    }

    #[test]
    fn c_lambda_examples() {
        assert_eq!(c_lambda(one(), 5).unwrap().interior(), CMatrix::identity(5, 5));
        let c = c_lambda(I, 3).unwrap();
        let d = diag(&c);
        for (g, w) in d.iter().zip([one(), -I, -one()]) {
            assert!((g - w).norm() < 1e-15);
        }
        let r = check_conjugation(&c, 1e-12);
        assert!(r.is_conjugation && r.is_canonical);
        assert!(c_lambda(c64(1.0, 0.1), 3).is_err());
    }

    #[test]
    fn c_alpha_examples() {
        let lambda = C64::from_polar(1.0, 0.7);
        let g = c_alpha(&AlphaSequence::from_lambda(lambda).unwrap(), 12).unwrap();
        let l = c_lambda(lambda, 12).unwrap();
        assert!(crate::linalg::max_abs(&(g.interior() - l.interior())) < 1e-15);

        let ones = AlphaSequence::explicit(vec![one(); 6]).unwrap();
        assert_eq!(c_alpha(&ones, 6).unwrap().interior(), CMatrix::identity(6, 6));
        assert!(matches!(
            c_alpha(&ones, 7),
            Err(Error::SequenceTooShort { len: 6, required: 7 })
        ));

        // (1, eta, conj(lambda)^2, eta conj(lambda)^2, ...) with lambda = 1, eta = i
        let seq: Vec<C64> = (0..8).map(|k| if k % 2 == 0 { one() } else { I }).collect();
        let c = c_alpha(&AlphaSequence::explicit(seq.clone()).unwrap(), 8).unwrap();
        assert_eq!(diag(&c), seq);
        assert!(AlphaSequence::explicit(vec![c64(1.1, 0.0)]).is_err());
    }

    #[test]
    fn c_alpha_u_e_examples() {
        let alpha = AlphaSequence::geometric(one(), C64::from_polar(1.0, -0.9)).unwrap();
        let basis = tm_basis(&BlaschkeProduct::identity()).unwrap();
        let rep = c_alpha_u_e(&alpha, &basis, 10).unwrap();
        let direct = c_alpha(&alpha, 10).unwrap();
        assert!(crate::linalg::max_abs(&(rep.interior() - direct.interior())) < 1e-14);

        let lambda = C64::from_polar(1.0, 0.4);
        let basis = tm_basis(&BlaschkeProduct::monomial(2)).unwrap();
        let rep = c_alpha_u_e(&AlphaSequence::from_lambda(lambda).unwrap(), &basis, 8).unwrap();
        let d = diag(&rep);
        for (k, x) in d.iter().enumerate() {
            assert!((x - lambda.conj().powi((k / 2) as i32)).norm() < 1e-14);
        }
        assert!(rep.off_diagonal() < 1e-15);

        let basis = tm_basis(&BlaschkeProduct::mobius(c64(0.3, 0.0)).unwrap()).unwrap();
        let rep = c_alpha_u_e(&AlphaSequence::from_lambda(lambda).unwrap(), &basis, 24).unwrap();
        let r = check_conjugation(&rep, 1e-9);
        assert!(r.is_conjugation, "{r:?}");
        assert!(!r.is_canonical);

        let wold = c_alpha_u_e_wold(&alpha, &basis, 5).unwrap();
        assert!(check_conjugation(&wold, 1e-12).is_conjugation);
        assert_eq!(wold.basis(), BasisTag::Wold { block_dim: 1 });
    }

    #[test]
    fn c_lambda_a_examples() {
        // a = 0: diag(conj(lambda)^n) from both routes
        let lambda = C64::from_polar(1.0, 1.1);
        let c = c_lambda_a(lambda, C64::default(), 8).unwrap();
        let l = c_lambda(lambda, 8).unwrap();
        assert!(crate::linalg::max_abs(&(c.interior() - l.interior())) < 1e-14);
        assert!(c_lambda_a_dual_route_residual(lambda, C64::default(), 8).unwrap() < 1e-14);

        // lambda = a / conj(a): C_{lambda,a} z^n = (conj(lambda) z)^n
        let c = c_lambda_a(one(), c64(0.5, 0.0), 16).unwrap();
        assert!(crate::linalg::max_abs(&(c.interior() - CMatrix::identity(16, 16))) < 1e-14);

        assert!(c_lambda_a_dual_route_residual(I, c64(0.5, 0.0), 64).unwrap() < 1e-8);

        let c = c_lambda_a(I, c64(0.3, 0.0), 64).unwrap();
        let r = check_conjugation(&c, 1e-9);
        assert!(r.is_conjugation && !r.is_canonical, "{r:?}");
    }

    #[test]
    fn c_lambda_a_first_column_is_phased_kernel() {
        let (lambda, a) = (C64::from_polar(1.0, 2.0), c64(-0.2, 0.6));
        let data = conjugate_mobius_data(a, lambda).unwrap();
        let c = c_lambda_a(lambda, a, 8).unwrap();
        let e = normalized_kernel(data.b, 8).unwrap();
        for k in 0..8 {
            assert!((c.interior()[(k, 0)] - data.gamma.conj() * e.get(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn a_uv_examples() {
        let lambda = C64::from_polar(1.0, 0.8);
        let f = AnalyticCoeffVector::new(vec![c64(1.0, 2.0), c64(0.0, -1.0), c64(0.5, 0.5)]);
        let g = a_uv_apply(|_| one(), |z| lambda.conj() * z, &f, 64).unwrap();
        let want = c_lambda(lambda, 3).unwrap().apply(&f.taylor);
        for k in 0..3 {
            assert!((g.get(k) - want[k]).norm() < 1e-13);
        }

        let b = c64(0.4, 0.0);
        let rep = a_uv_rep(one(), one(), b, 32).unwrap();
        assert!(check_conjugation(&rep, 1e-9).is_conjugation);
        // the sampled action matches the matrix columns
        let h = a_uv_apply(
            |z| (1.0 - b.norm_sqr()).sqrt() / (1.0 - b.conj() * z),
            |z| mobius(b, z),
            &f,
            1024,
        )
        .unwrap();
        let want = rep.apply(&f.taylor);
        for k in 0..16 {
            assert!((h.get(k) - want[k]).norm() < 1e-12);
        }

        let bad = a_uv_rep(one(), one(), c64(0.0, 0.4), 32).unwrap();
        let r = check_conjugation(&bad, 1e-9);
        assert!(r.is_antiunitary && !r.is_conjugation);
        assert!(bad.involution_residual() > 1e-2);

        assert!(matches!(
            a_uv_apply(|_| one(), |z| 2.0 * z, &f, 64),
            Err(Error::RangeViolation(_))
        ));
    }

    #[test]
    fn generic_unitary_is_antiunitary_but_not_a_conjugation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let u = unitary(&mut rng, 6);
        let rep = AntilinearRep::from_matrix(u, BasisTag::Monomial).unwrap();
        let r = check_conjugation(&rep, 1e-9);
        assert!(r.is_antiunitary && !r.is_conjugation && !r.is_canonical);
    }
}
