//! Hardy space machinery: kernels, the unitaries `U_a`, the Riesz projection,
//! boundary quadrature, model-space bases and Wold coordinates.

use crate::error::{Error, Result};
use crate::fourier::{circle_grid, coefficients, is_power_of_two};
use crate::linalg::CMatrix;
use crate::symbol::{check_disk, mobius, BlaschkeProduct, LaurentSymbol, TRIM_TOL};
use crate::{series, C64};

/// Quadrature grid used when none is specified.
pub const DEFAULT_GRID: usize = 4096;
/// Starting Wold depth for automatic expansion.
pub const DEFAULT_WOLD_DEPTH: usize = 32;

/// Truncated Taylor data `c_0..c_{N-1}` of an element of the Hardy space.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticCoeffVector {
    pub taylor: Vec<C64>,
}

impl AnalyticCoeffVector {
    pub fn new(taylor: Vec<C64>) -> Self {
        Self { taylor }
    }

    pub fn len(&self) -> usize {
        self.taylor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taylor.is_empty()
    }

    pub fn get(&self, n: usize) -> C64 {
        self.taylor.get(n).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        series::norm_sqr(&self.taylor)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self, other> = sum c_n conj(d_n)`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.taylor
            .iter()
            .zip(&other.taylor)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn eval(&self, z: C64) -> C64 {
        series::horner(&self.taylor, z)
    }

    pub fn samples(&self, grid: usize) -> Vec<C64> {
        circle_grid(grid).into_iter().map(|xi| self.eval(xi)).collect()
    }

    pub fn resized(&self, n: usize) -> Self {
        Self::new(series::resized(&self.taylor, n))
    }

    pub fn to_symbol(&self) -> LaurentSymbol {
        LaurentSymbol::from_taylor(&self.taylor)
    }
}

/// Taylor coefficients `conj(a)^n` of the reproducing kernel `K_a`.
pub fn kernel_coeffs(a: C64, n: usize) -> Result<AnalyticCoeffVector> {
    check_disk(a, 1.0)?;
    Ok(AnalyticCoeffVector::new(series::mul_kernel(
        &series::one(n),
        a,
        C64::new(1.0, 0.0),
    )))
}

/// `e_a = sqrt(1 - |a|^2) K_a`.
pub fn normalized_kernel(a: C64, n: usize) -> Result<AnalyticCoeffVector> {
    let s = (1.0 - a.norm_sqr()).sqrt();
    let mut k = kernel_coeffs(a, n)?;
    k.taylor.iter_mut().for_each(|c| *c *= s);
    Ok(k)
}

#[inline]
pub(crate) fn normalized_kernel_at(a: C64, z: C64) -> C64 {
    (1.0 - a.norm_sqr()).sqrt() / (1.0 - a.conj() * z)
}

/// Taylor coefficients of an analytic function from boundary samples; the
/// upper three quarters of the spectrum (aliasing region and negative
/// frequencies) must be negligible.
pub(crate) fn analytic_from_samples(samples: &[C64]) -> Result<AnalyticCoeffVector> {
    let size = samples.len();
    let c = coefficients(samples);
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(AnalyticCoeffVector::new(vec![C64::default()]));
    }
    let keep = size / 4;
    let dropped = c[keep..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dropped > 10.0 * TRIM_TOL * scale {
        return Err(Error::InsufficientResolution {
            size,
            dropped: dropped / scale,
        });
    }
    let cut = TRIM_TOL * scale;
    let mut taylor: Vec<C64> = c[..keep]
        .iter()
        .map(|&z| if z.norm() < cut { C64::default() } else { z })
        .collect();
    let last = taylor.iter().rposition(|z| *z != C64::default()).unwrap_or(0);
    taylor.truncate(last + 1);
    Ok(AnalyticCoeffVector::new(taylor))
}

/// `U_a f = (f o phi_a) e_a` by sampling on `fft_size` points.
pub fn u_a_apply(a: C64, f: &AnalyticCoeffVector, fft_size: usize) -> Result<AnalyticCoeffVector> {
    check_disk(a, 1.0)?;
    if !is_power_of_two(fft_size) || fft_size < 4 * f.len().max(1) {
        return Err(Error::InvalidArgument(format!(
            "fft size {fft_size} must be a power of two >= {}",
            4 * f.len().max(1)
        )));
    }
    let samples: Vec<C64> = circle_grid(fft_size)
        .into_iter()
        .map(|xi| f.eval(mobius(a, xi)) * normalized_kernel_at(a, xi))
        .collect();
    analytic_from_samples(&samples)
}

/// Orthogonal projection of a symbol onto the Hardy space.
pub fn riesz_project(sym: &LaurentSymbol) -> AnalyticCoeffVector {
    let hi = sym.max_index().unwrap_or(0).max(0);
    AnalyticCoeffVector::new((0..=hi).map(|n| sym.coeff(n)).collect())
}

/// `<f, g> = mean of f conj(g)` over a uniform grid.
pub fn boundary_inner_product(f: &[C64], g: &[C64]) -> Result<C64> {
    if f.len() != g.len() || f.is_empty() {
        return Err(Error::GridMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let s: C64 = f.iter().zip(g).map(|(a, b)| a * b.conj()).sum();
    Ok(s / f.len() as f64)
}

/// `scale / (1 - conj(pole) z) * prod_j (z - a_j) / (1 - conj(a_j) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TmFunction {
    pub scale: C64,
    pub pole: C64,
    pub prefix: Vec<C64>,
}

impl TmFunction {
    pub fn eval(&self, z: C64) -> C64 {
        let head = self.scale / (1.0 - self.pole.conj() * z);
        self.prefix
            .iter()
            .fold(head, |acc, &a| acc * (z - a) / (1.0 - a.conj() * z))
    }

    pub fn taylor(&self, n: usize) -> Vec<C64> {
        self.mul_series(&series::one(n))
    }

    pub fn mul_series(&self, x: &[C64]) -> Vec<C64> {
        let mut y = x.to_vec();
        for &a in &self.prefix {
            y = series::mul_tm_factor(&y, a);
        }
        series::mul_kernel(&y, self.pole, self.scale)
    }
}

/// Ordered orthonormal basis of `H^2 (-) u H^2` for a finite Blaschke `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpaceBasis {
    inner: BlaschkeProduct,
    functions: Vec<TmFunction>,
}

impl ModelSpaceBasis {
    pub fn inner(&self) -> &BlaschkeProduct {
        &self.inner
    }

    pub fn functions(&self) -> &[TmFunction] {
        &self.functions
    }

    pub fn dim(&self) -> usize {
        self.functions.len()
    }

    /// Same basis with function `k` multiplied by the unimodular `phase`.
    pub fn with_phase(&self, k: usize, phase: C64) -> Result<Self> {
        crate::symbol::check_unit(phase)?;
        if k >= self.dim() {
            return Err(Error::InvalidArgument(format!("basis index {k} out of range")));
        }
        let mut out = self.clone();
        out.functions[k].scale *= phase;
        Ok(out)
    }
}

/// Takenaka-Malmquist basis following the stored zero order of `u`.
pub fn tm_basis(u: &BlaschkeProduct) -> Result<ModelSpaceBasis> {
    if u.order() == 0 {
        return Err(Error::InvalidArgument(
            "model space of a constant inner function is trivial".into(),
        ));
    }
    let zeros = u.zeros();
    let functions = zeros
        .iter()
        .enumerate()
        .map(|(k, &a)| TmFunction {
            scale: C64::new((1.0 - a.norm_sqr()).sqrt(), 0.0),
            pole: a,
            prefix: zeros[..k].to_vec(),
        })
        .collect();
    Ok(ModelSpaceBasis {
        inner: u.clone(),
        functions,
    })
}

/// Boundary samples of the Wold family `u^m e_j`, `m < depth`, ordered
/// level-major (`m * d + j`).
#[derive(Debug, Clone)]
pub struct WoldFrame {
    basis: ModelSpaceBasis,
    depth: usize,
    samples: Vec<Vec<C64>>,
}

impl WoldFrame {
    pub fn new(basis: &ModelSpaceBasis, depth: usize, grid: usize) -> Result<Self> {
        let d = basis.dim();
        if depth == 0 || depth * d > grid / 8 {
            return Err(Error::InvalidArgument(format!(
                "Wold depth {depth} x block {d} exceeds grid {grid} / 8"
            )));
        }
        let pts = circle_grid(grid);
        let u_vals: Vec<C64> = pts.iter().map(|&xi| basis.inner.eval(xi)).collect();
        let mut samples = Vec::with_capacity(depth * d);
        let mut levels: Vec<Vec<C64>> = basis
            .functions
            .iter()
            .map(|e| pts.iter().map(|&xi| e.eval(xi)).collect())
            .collect();
        for _ in 0..depth {
            samples.extend(levels.iter().cloned());
            for col in &mut levels {
                col.iter_mut().zip(&u_vals).for_each(|(v, u)| *v *= u);
            }
        }
        Ok(Self {
            basis: basis.clone(),
            depth,
            samples,
        })
    }

    pub fn basis(&self) -> &ModelSpaceBasis {
        &self.basis
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn block_dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn dim(&self) -> usize {
        self.samples.len()
    }

    pub fn grid(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    /// Samples of `u^m e_j`.
    pub fn sample(&self, m: usize, j: usize) -> &[C64] {
        &self.samples[m * self.block_dim() + j]
    }

    pub fn samples(&self) -> &[Vec<C64>] {
        &self.samples
    }

    /// Quadrature Gram matrix `<w_k, w_l>`.
    pub fn gram(&self) -> CMatrix {
        let n = self.dim();
        let mut g = CMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..=k {
                let v = boundary_inner_product(&self.samples[k], &self.samples[l]).unwrap();
                g[(k, l)] = v;
                g[(l, k)] = v.conj();
            }
        }
        g
    }

    /// `mu_{m,j} = <f, u^m e_j>` with reconstruction diagnostics.
    pub fn expand(&self, f: &[C64]) -> Result<WoldCoordinates> {
        if f.len() != self.grid() {
            return Err(Error::GridMismatch {
                left: f.len(),
                right: self.grid(),
            });
        }
        let mu: Vec<C64> = self
            .samples
            .iter()
            .map(|w| boundary_inner_product(f, w))
            .collect::<Result<_>>()?;
        let total = boundary_inner_product(f, f)?.re;
        let captured: f64 = mu.iter().map(|c| c.norm_sqr()).sum();
        let tail_fraction = if total > 0.0 {
            ((total - captured) / total).max(0.0)
        } else {
            0.0
        };
        let mut recon = vec![C64::default(); f.len()];
        for (c, w) in mu.iter().zip(&self.samples) {
            recon.iter_mut().zip(w).for_each(|(r, x)| *r += c * x);
        }
        let residual = (f
            .iter()
            .zip(&recon)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            / f.len() as f64)
            .sqrt();
        let coords = WoldCoordinates {
            depth: self.depth,
            block_dim: self.block_dim(),
            mu,
            residual,
            tail_fraction,
        };
        if tail_fraction > 1e-6 {
            return Err(Error::SlowDecay(tail_fraction));
        }
        Ok(coords)
    }
}

/// Coefficients of a function in the orthonormal family `u^m e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WoldCoordinates {
    pub depth: usize,
    pub block_dim: usize,
    /// Level-major table, `mu[m * block_dim + j]`.
    pub mu: Vec<C64>,
    /// RMS boundary error of the truncated reconstruction.
    pub residual: f64,
    /// Energy beyond the computed levels as a fraction of the total.
    pub tail_fraction: f64,
}

impl WoldCoordinates {
    pub fn get(&self, m: usize, j: usize) -> C64 {
        self.mu[m * self.block_dim + j]
    }

    pub fn level_energy(&self, m: usize) -> f64 {
        self.mu[m * self.block_dim..(m + 1) * self.block_dim]
            .iter()
            .map(|c| c.norm_sqr())
            .sum()
    }

    pub fn energy(&self) -> f64 {
        self.mu.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Wold coordinates of boundary samples `f` at the given depth.
pub fn wold_expand(f: &[C64], basis: &ModelSpaceBasis, depth: usize) -> Result<WoldCoordinates> {
    WoldFrame::new(basis, depth, f.len())?.expand(f)
}

/// Starts at depth 32 and doubles until the last level carries less than
/// `1e-10` of the energy or the grid limit is reached.
pub fn wold_expand_auto(f: &[C64], basis: &ModelSpaceBasis) -> Result<WoldCoordinates> {
    let limit = f.len() / 8 / basis.dim().max(1);
    let mut depth = DEFAULT_WOLD_DEPTH.min(limit);
    loop {
        let coords = wold_expand(f, basis, depth)?;
        let total = coords.energy();
        let last = coords.level_energy(depth - 1);
        if last <= 1e-10 * total || depth >= limit {
            return Ok(coords);
        }
        depth = (depth * 2).min(limit);
    }
}

/// Leading Taylor coefficients of the Wold family `u^m e_j`.
#[derive(Debug, Clone)]
pub struct WoldTaylor {
    pub rows: usize,
    pub block_dim: usize,
    /// Level-major columns, each of length `rows`.
    pub columns: Vec<Vec<C64>>,
}

impl WoldTaylor {
    pub fn levels(&self) -> usize {
        self.columns.len() / self.block_dim.max(1)
    }

    /// Exactly `levels` levels truncated to `rows` coefficients.
    pub fn fixed(basis: &ModelSpaceBasis, rows: usize, levels: usize) -> Self {
        let mut cur: Vec<Vec<C64>> = basis.functions.iter().map(|e| e.taylor(rows)).collect();
        let mut columns = Vec::with_capacity(levels * cur.len());
        for m in 0..levels {
            columns.extend(cur.iter().cloned());
            if m + 1 < levels {
                cur = cur.iter().map(|c| basis.inner.mul_series(c)).collect();
            }
        }
        Self {
            rows,
            block_dim: basis.dim(),
            columns,
        }
    }

    /// Levels are added until four consecutive levels have energy below
    /// `tol^2` in the first `rows` coefficients.
    pub fn until_negligible(basis: &ModelSpaceBasis, rows: usize, tol: f64, max_levels: usize) -> Result<Self> {
        Self::until_negligible_in(basis, rows, rows, tol, max_levels)
    }

    /// As `until_negligible`, but only the first `watch` coefficients decide
    /// when to stop.  Entries below `1e-150` are flushed to zero to keep the
    /// recurrences out of subnormal range.
    pub fn until_negligible_in(
        basis: &ModelSpaceBasis,
        rows: usize,
        watch: usize,
        tol: f64,
        max_levels: usize,
    ) -> Result<Self> {
        let watch = watch.min(rows);
        let mut cur: Vec<Vec<C64>> = basis.functions.iter().map(|e| e.taylor(rows)).collect();
        let mut columns = Vec::new();
        let mut quiet = 0;
        for _ in 0..max_levels {
            let energy: f64 = cur.iter().map(|c| series::norm_sqr(&c[..watch])).sum();
            columns.extend(cur.iter().cloned());
            quiet = if energy < tol * tol { quiet + 1 } else { 0 };
            if quiet >= 4 {
                return Ok(Self {
                    rows,
                    block_dim: basis.dim(),
                    columns,
                });
            }
            cur = cur
                .iter()
                .map(|c| {
                    let mut next = basis.inner.mul_series(c);
                    next.iter_mut().filter(|v| v.norm_sqr() < 1e-300).for_each(|v| *v = C64::default());
                    next
                })
                .collect();
        }
        let energy: f64 = cur.iter().map(|c| series::norm_sqr(&c[..watch])).sum();
        Err(Error::SlowDecay(energy))
    }

    /// `max_j |1 - sum_c |W[j, c]|^2|` over all rows: how far the truncated
    /// family is from resolving the identity on the first `rows` monomials.
    pub fn completeness_residual(&self) -> f64 {
        self.leading_completeness(self.rows)
    }

    /// `completeness_residual` restricted to the first `k` rows.
    pub fn leading_completeness(&self, k: usize) -> f64 {
        let k = k.min(self.rows);
        let mut acc = vec![0.0f64; k];
        for c in &self.columns {
            acc.iter_mut().zip(c).for_each(|(a, v)| *a += v.norm_sqr());
        }
        acc.iter().map(|s| (1.0 - s).abs()).fold(0.0, f64::max)
    }

    pub fn matrix(&self) -> CMatrix {
        crate::linalg::from_columns(&self.columns, self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn kernel_examples() {
        let k = kernel_coeffs(C64::default(), 8).unwrap();
        assert_eq!(k.get(0), c64(1.0, 0.0));
        assert!(k.taylor[1..].iter().all(|c| *c == C64::default()));
        let k = kernel_coeffs(c64(0.5, 0.0), 4).unwrap();
        for (c, w) in k.taylor.iter().zip([1.0, 0.5, 0.25, 0.125]) {
            assert!((c.re - w).abs() < 1e-15);
        }
        // partial sums of 0.25^n converge to 4/3
        let k = kernel_coeffs(c64(0.5, 0.0), 60).unwrap();
        assert!((k.norm_sqr() - 4.0 / 3.0).abs() < 1e-15);
        assert!(kernel_coeffs(c64(1.0, 0.0), 3).is_err());
    }

    #[test]
    fn normalized_kernel_examples() {
        let e = normalized_kernel(C64::default(), 4).unwrap();
        assert_eq!(e.get(0), c64(1.0, 0.0));
        let a = c64(0.5, 0.0);
        let e = normalized_kernel(a, 64).unwrap();
        assert!((e.norm() - 1.0).abs() < 1e-9);
        let k = kernel_coeffs(a, 64).unwrap();
        let want = 1.0 / (1.0 - a.norm_sqr()).sqrt();
        assert!((e.inner(&k) - want).norm() < 1e-9);
    }

    #[test]
    fn u_a_examples() {
        let f = AnalyticCoeffVector::new(vec![c64(1.0, 0.5), c64(-2.0, 0.0), c64(0.0, 3.0), c64(1.0, 1.0)]);
        let g = u_a_apply(C64::default(), &f, 64).unwrap();
        for n in 0..4 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((g.get(n) - sign * f.get(n)).norm() < 1e-14);
        }
        let a = c64(0.3, 0.2);
        let one = AnalyticCoeffVector::new(vec![c64(1.0, 0.0)]);
        let g = u_a_apply(a, &one, 256).unwrap();
        let e = normalized_kernel(a, g.len()).unwrap();
        assert!(g.taylor.iter().zip(&e.taylor).all(|(x, y)| (x - y).norm() < 1e-13));
        let back = u_a_apply(a, &u_a_apply(a, &f, 256).unwrap(), 512).unwrap();
        for n in 0..back.len().max(4) {
            assert!((back.get(n) - f.get(n)).norm() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn riesz_projection_examples() {
        let one = c64(1.0, 0.0);
        let s = LaurentSymbol::from_pairs([(-1, one), (0, one), (1, one)]);
        assert_eq!(riesz_project(&s).taylor, vec![one, one]);
        let co = LaurentSymbol::from_pairs([(-2, one), (0, c64(0.5, 0.0))]);
        assert_eq!(riesz_project(&co).taylor, vec![c64(0.5, 0.0)]);
    }

    #[test]
    fn riesz_projection_of_mobius_times_zbar_matches_fft() {
        let u = BlaschkeProduct::mobius(c64(0.5, 0.0)).unwrap();
        let phi = &u.to_symbol() * &LaurentSymbol::monomial(-1, c64(1.0, 0.0));
        let p = riesz_project(&phi);
        // (0.5 - z) / (z (1 - 0.5 z)) sampled, negative frequencies dropped
        let grid = circle_grid(512);
        let samples: Vec<C64> = grid.iter().map(|&z| mobius(c64(0.5, 0.0), z) / z).collect();
        let c = coefficients(&samples);
        for n in 0..40 {
            assert!((p.get(n) - c[n]).norm() < 1e-13);
        }
    }

    #[test]
    fn boundary_inner_product_examples() {
        let grid = circle_grid(64);
        let z3: Vec<C64> = grid.iter().map(|z| z.powi(3)).collect();
        let z5: Vec<C64> = grid.iter().map(|z| z.powi(5)).collect();
        assert!((boundary_inner_product(&z3, &z3).unwrap() - 1.0).norm() < 1e-14);
        assert!(boundary_inner_product(&z3, &z5).unwrap().norm() < 1e-14);
        assert!(matches!(
            boundary_inner_product(&z3, &z5[..10]),
            Err(Error::GridMismatch { .. })
        ));

        let a = c64(0.5, 0.0);
        let grid = circle_grid(1024);
        let k: Vec<C64> = grid.iter().map(|&z| 1.0 / (1.0 - a.conj() * z)).collect();
        assert!((boundary_inner_product(&k, &k).unwrap().re - 4.0 / 3.0).abs() < 1e-13);

        let a = c64(0.2, -0.6);
        let f = AnalyticCoeffVector::new(vec![c64(1.0, 2.0), c64(0.0, -1.0), c64(3.0, 0.5)]);
        let e: Vec<C64> = grid.iter().map(|&z| normalized_kernel_at(a, z)).collect();
        let got = boundary_inner_product(&e, &f.samples(1024)).unwrap();
        let want = (1.0 - a.norm_sqr()).sqrt() * f.eval(a).conj();
        assert!((got - want).norm() < 1e-13);
    }

    #[test]
    fn tm_basis_examples() {
        let a = c64(0.4, -0.3);
        let b = tm_basis(&BlaschkeProduct::mobius(a).unwrap()).unwrap();
        let e = normalized_kernel(a, 16).unwrap();
        let t = b.functions()[0].taylor(16);
        assert!(t.iter().zip(&e.taylor).all(|(x, y)| (x - y).norm() < 1e-15));

        let b = tm_basis(&BlaschkeProduct::monomial(3)).unwrap();
        for (k, f) in b.functions().iter().enumerate() {
            let t = f.taylor(5);
            for (n, c) in t.iter().enumerate() {
                let want = if n == k { 1.0 } else { 0.0 };
                assert!((c - want).norm() < 1e-15);
            }
        }
        assert!(tm_basis(&BlaschkeProduct::new(c64(1.0, 0.0), vec![]).unwrap()).is_err());
    }

    #[test]
    fn tm_basis_is_orthonormal_and_orthogonal_to_u_h2() {
        let u = BlaschkeProduct::new(
            c64(0.0, 1.0),
            vec![C64::default(), c64(0.5, 0.3), c64(-0.6, 0.2)],
        )
        .unwrap();
        let basis = tm_basis(&u).unwrap();
        let frame = WoldFrame::new(&basis, 1, 1024).unwrap();
        let g = frame.gram();
        assert!(crate::linalg::max_abs(&(g - CMatrix::identity(3, 3))) < 1e-10);
        let grid = circle_grid(1024);
        for n in 0..=6 {
            let uz: Vec<C64> = grid.iter().map(|&z| u.eval(z) * z.powi(n)).collect();
            for s in frame.samples() {
                assert!(boundary_inner_product(s, &uz).unwrap().norm() < 1e-10);
            }
        }
    }

    #[test]
    fn wold_expansion_examples() {
        let u = BlaschkeProduct::new(c64(1.0, 0.0), vec![c64(0.3, 0.1), c64(-0.2, 0.4)]).unwrap();
        let basis = tm_basis(&u).unwrap();
        let frame = WoldFrame::new(&basis, 8, 1024).unwrap();

        let c = frame.expand(frame.sample(0, 0)).unwrap();
        assert!((c.get(0, 0) - 1.0).norm() < 1e-12);
        assert!(c.mu.iter().skip(1).all(|m| m.norm() < 1e-12));

        let c = frame.expand(frame.sample(2, 1)).unwrap();
        assert!((c.get(2, 1) - 1.0).norm() < 1e-12);

        // K_b in the monomial Wold basis of z^2 splits into even and odd powers
        let b = c64(0.5, 0.2);
        let basis = tm_basis(&BlaschkeProduct::monomial(2)).unwrap();
        let k = kernel_coeffs(b, 200).unwrap().samples(2048);
        let c = wold_expand_auto(&k, &basis).unwrap();
        for m in 0..10 {
            assert!((c.get(m, 0) - b.conj().powi(2 * m as i32)).norm() < 1e-12);
            assert!((c.get(m, 1) - b.conj().powi(2 * m as i32 + 1)).norm() < 1e-12);
        }
    }

    #[test]
    fn wold_expansion_reports_slow_decay_and_bad_depth() {
        let basis = tm_basis(&BlaschkeProduct::monomial(1)).unwrap();
        let k = kernel_coeffs(c64(0.9, 0.0), 400).unwrap().samples(1024);
        assert!(matches!(wold_expand(&k, &basis, 4), Err(Error::SlowDecay(_))));
        assert!(wold_expand(&k, &basis, 1000).is_err());
    }

    #[test]
    fn wold_taylor_is_complete() {
        let u = BlaschkeProduct::mobius(c64(0.3, 0.0)).unwrap();
        let basis = tm_basis(&u).unwrap();
        let w = WoldTaylor::until_negligible(&basis, 16, 1e-16, 10_000).unwrap();
        assert!(w.completeness_residual() < 1e-13);
        let short = WoldTaylor::fixed(&basis, 16, 3);
        assert!(short.completeness_residual() > 1e-3);
    }
}
