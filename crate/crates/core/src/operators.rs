//! Finite sections of Toeplitz operators and related matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{boundary_inner_product, WoldFrame};
use crate::linalg::{crop, matmul, CMatrix};
use crate::symbol::{check_disk, LaurentSymbol};
use crate::{series, C64};

/// Coordinate system of a section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BasisTag {
    Monomial,
    /// Level-major Wold basis `u^m e_j` with `block_dim = order(u)`.
    Wold { block_dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSection {
    pub entries: CMatrix,
    pub basis: BasisTag,
}

impl FiniteSection {
    pub fn new(entries: CMatrix, basis: BasisTag) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "section must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self { entries, basis })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.entries[(j, k)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            basis: self.basis,
        }
    }

    /// Top-left `n x n` block.
    pub fn interior(&self, n: usize) -> Self {
        Self {
            entries: crop(&self.entries, n, n),
            basis: self.basis,
        }
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }
}

/// `(j, k) -> a_{j-k}` for `0 <= j < rows`, `0 <= k < cols`.
pub fn toeplitz_matrix(phi: &LaurentSymbol, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |j, k| phi.coeff(j as i64 - k as i64))
}

pub fn toeplitz_section(phi: &LaurentSymbol, n: usize) -> FiniteSection {
    FiniteSection {
        entries: toeplitz_matrix(phi, n, n),
        basis: BasisTag::Monomial,
    }
}

/// `T_phi x` restricted to the first `rows` outputs, for `x` with `x.nrows()`
/// leading coordinates; cost is proportional to the number of stored
/// coefficients of `phi`.
pub fn toeplitz_apply(phi: &LaurentSymbol, x: &CMatrix, rows: usize) -> CMatrix {
    let len = x.nrows() as i64;
    let mut out = CMatrix::zeros(rows, x.ncols());
    let terms: Vec<(i64, C64)> = phi.iter().filter(|(_, a)| *a != C64::default()).collect();
    for c in 0..x.ncols() {
        let src = x.column(c);
        let src = src.as_slice();
        let mut dst = out.column_mut(c);
        let dst = dst.as_mut_slice();
        for &(p, a) in &terms {
            // out[l] += a_p x[l - p]
            let lo = p.max(0);
            let hi = (len + p).min(rows as i64);
            if lo >= hi {
                continue;
            }
            let (lo, hi) = (lo as usize, hi as usize);
            let shift = (lo as i64 - p) as usize;
            dst[lo..hi]
                .iter_mut()
                .zip(&src[shift..shift + hi - lo])
                .for_each(|(o, v)| *o += a * v);
        }
    }
    out
}

/// Section of `T_phi` for `phi = sum_l a_l u^l` in the Wold basis of `u`:
/// block `(n, m)` equals `a_{n-m} I_d`.
pub fn toeplitz_in_wold_basis(coeffs_in_u: &LaurentSymbol, block_dim: usize, blocks: usize) -> FiniteSection {
    let d = block_dim;
    let entries = CMatrix::from_fn(blocks * d, blocks * d, |r, c| {
        if r % d == c % d {
            coeffs_in_u.coeff((r / d) as i64 - (c / d) as i64)
        } else {
            C64::default()
        }
    });
    FiniteSection {
        entries,
        basis: BasisTag::Wold { block_dim: d },
    }
}

/// Quadrature section `<phi w_m, w_n>` in the frame's Wold basis, for a
/// symbol given by boundary samples on the frame grid.  The second value is
/// the frame's Gram defect `max |<w_k, w_l> - delta_kl|`.
pub fn wold_section_from_samples(phi: &[C64], frame: &WoldFrame) -> Result<(FiniteSection, f64)> {
    if phi.len() != frame.grid() {
        return Err(Error::GridMismatch {
            left: phi.len(),
            right: frame.grid(),
        });
    }
    let n = frame.dim();
    let w = frame.samples();
    let products: Vec<Vec<C64>> = w
        .iter()
        .map(|col| col.iter().zip(phi).map(|(x, p)| x * p).collect())
        .collect();
    let mut entries = CMatrix::zeros(n, n);
    for (k, pw) in products.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            entries[(j, k)] = boundary_inner_product(pw, wj)?;
        }
    }
    let gram = frame.gram();
    let defect = (gram - CMatrix::identity(n, n))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    Ok((
        FiniteSection {
            entries,
            basis: BasisTag::Wold {
                block_dim: frame.block_dim(),
            },
        },
        defect,
    ))
}

/// `[T_phi^*, T_phi]` on the `n`-section, computed at `n + bandwidth` and
/// cropped so every returned entry is exact.
pub fn commutator_section(phi: &LaurentSymbol, n: usize) -> Result<FiniteSection> {
    let bw = phi.bandwidth();
    if n < bw + 1 {
        return Err(Error::SectionTooSmall {
            size: n,
            required: bw + 1,
        });
    }
    let big = toeplitz_matrix(phi, n + bw, n + bw);
    let adj = big.adjoint();
    let c = matmul(&adj, &big) - matmul(&big, &adj);
    Ok(FiniteSection {
        entries: crop(&c, n, n),
        basis: BasisTag::Monomial,
    })
}

/// Default relative tolerance of `numerical_rank`.
pub const RANK_TOL: f64 = 1e-8;

/// Number of singular values above `tol` times the largest.
pub fn numerical_rank(s: &FiniteSection, tol: f64) -> usize {
    if s.dim() == 0 {
        return 0;
    }
    let sv = s.entries.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&v| v > tol * top).count()
}

pub fn trace(s: &FiniteSection) -> C64 {
    s.trace()
}

/// `U S U^H`.
pub fn conjugate_by_unitary(u: &FiniteSection, s: &FiniteSection) -> Result<FiniteSection> {
    if u.dim() != s.dim() || u.basis != s.basis {
        return Err(Error::DimensionMismatch(format!(
            "cannot conjugate a {} section ({:?}) by a {} section ({:?})",
            s.dim(),
            s.basis,
            u.dim(),
            u.basis
        )));
    }
    Ok(FiniteSection {
        entries: matmul(&matmul(&u.entries, &s.entries), &u.entries.adjoint()),
        basis: s.basis,
    })
}

/// Leading `rows x cols` block of `U_a` in the monomial basis; column `k`
/// holds the Taylor coefficients of `phi_a^k e_a`.
pub fn u_a_matrix(a: C64, rows: usize, cols: usize) -> Result<CMatrix> {
    check_disk(a, 1.0)?;
    let s = C64::new((1.0 - a.norm_sqr()).sqrt(), 0.0);
    let mut col = series::mul_kernel(&series::one(rows), a, s);
    let mut m = CMatrix::zeros(rows, cols);
    for k in 0..cols {
        m.column_mut(k).copy_from_slice(&col);
        if k + 1 < cols {
            col = series::mul_mobius(&col, a);
        }
    }
    Ok(m)
}

pub fn u_a_section(a: C64, n: usize) -> Result<FiniteSection> {
    Ok(FiniteSection {
        entries: u_a_matrix(a, n, n)?,
        basis: BasisTag::Monomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::tm_basis;
    use crate::linalg::max_abs;
    use crate::symbol::BlaschkeProduct;
    use crate::{c64, I};

    fn one() -> C64 {
        c64(1.0, 0.0)
    }

    #[test]
    fn toeplitz_section_examples() {
        let t = toeplitz_section(&LaurentSymbol::monomial(1, one()), 3);
        let shift = CMatrix::from_fn(3, 3, |j, k| if j == k + 1 { one() } else { C64::default() });
        assert_eq!(t.entries, shift);
        assert_eq!(
            toeplitz_section(&LaurentSymbol::constant(one()), 4).entries,
            CMatrix::identity(4, 4)
        );
        let phi = LaurentSymbol::from_pairs([(1, one()), (-1, I)]);
        let t = toeplitz_section(&phi, 4);
        for j in 0..4 {
            for k in 0..4 {
                let want = if j == k + 1 {
                    one()
                } else if k == j + 1 {
                    I
                } else {
                    C64::default()
                };
                assert_eq!(t.get(j, k), want);
            }
        }
    }

    #[test]
    fn toeplitz_apply_matches_dense_product() {
        let phi = LaurentSymbol::from_pairs([(-2, c64(0.3, 1.0)), (0, one()), (3, c64(-2.0, 0.5))]);
        let x = CMatrix::from_fn(20, 3, |j, k| c64(j as f64 - k as f64, (j * k) as f64 * 0.1));
        let dense = toeplitz_matrix(&phi, 15, 20) * &x;
        assert!(max_abs(&(dense - toeplitz_apply(&phi, &x, 15))) < 1e-12);
    }

    #[test]
    fn wold_block_rule_examples() {
        let u_coeffs = LaurentSymbol::monomial(1, one());
        let t = toeplitz_in_wold_basis(&u_coeffs, 2, 3);
        for r in 0..6 {
            for c in 0..6 {
                let want = if r == c + 2 { one() } else { C64::default() };
                assert_eq!(t.get(r, c), want);
            }
        }
        let sym = LaurentSymbol::from_pairs([(1, one()), (-1, one())]);
        let t = toeplitz_in_wold_basis(&sym, 3, 4);
        for r in 0..12 {
            for c in 0..12 {
                let (br, bc): (usize, usize) = (r / 3, c / 3);
                let want = if r % 3 == c % 3 && br.abs_diff(bc) == 1 { one() } else { C64::default() };
                assert_eq!(t.get(r, c), want);
            }
        }
    }

    #[test]
    fn quadrature_section_agrees_with_block_rule_for_composition_symbols() {
        let u = BlaschkeProduct::new(one(), vec![c64(0.2, 0.1), c64(-0.3, 0.0)]).unwrap();
        let basis = tm_basis(&u).unwrap();
        let frame = WoldFrame::new(&basis, 6, 1024).unwrap();
        let grid = crate::fourier::circle_grid(1024);
        let phi: Vec<C64> = grid
            .iter()
            .map(|&z| {
                let w = u.eval(z);
                w + c64(0.5, 0.5) * w.conj() * w.conj()
            })
            .collect();
        let (q, defect) = wold_section_from_samples(&phi, &frame).unwrap();
        assert!(defect < 1e-12);
        let sym = LaurentSymbol::from_pairs([(1, one()), (-2, c64(0.5, 0.5))]);
        let exact = toeplitz_in_wold_basis(&sym, 2, 6);
        assert!(max_abs(&(q.entries - exact.entries)) < 1e-12);
    }

    #[test]
    fn commutator_examples() {
        let c = commutator_section(&LaurentSymbol::monomial(1, one()), 5).unwrap();
        let mut want = CMatrix::zeros(5, 5);
        want[(0, 0)] = one();
        assert!(max_abs(&(c.entries.clone() - want)) < 1e-15);
        assert_eq!(numerical_rank(&c, RANK_TOL), 1);

        let c = commutator_section(&LaurentSymbol::constant(c64(2.0, 1.0)), 4).unwrap();
        assert_eq!(max_abs(&c.entries), 0.0);
        assert_eq!(numerical_rank(&c, RANK_TOL), 0);

        let phi = LaurentSymbol::from_pairs([(2, one()), (-1, c64(2f64.sqrt(), 0.0))]);
        let c = commutator_section(&phi, 16).unwrap();
        assert!(c.trace().norm() < 1e-13);

        for m in 1..=5 {
            let c = commutator_section(&LaurentSymbol::monomial(m, one()), 8).unwrap();
            assert_eq!(c.trace(), c64(m as f64, 0.0));
        }
        assert!(matches!(
            commutator_section(&LaurentSymbol::monomial(4, one()), 4),
            Err(Error::SectionTooSmall { size: 4, required: 5 })
        ));
    }

    #[test]
    fn commutator_interior_is_independent_of_section_size() {
        let phi = LaurentSymbol::from_pairs([(-3, c64(0.2, -1.0)), (1, one()), (2, c64(0.0, 0.7))]);
        let a = commutator_section(&phi, 20).unwrap();
        let b = commutator_section(&phi, 36).unwrap();
        assert_eq!(a.interior(17).entries, b.interior(17).entries);
    }

    #[test]
    fn trace_and_rank_of_mixed_commutator() {
        // z^2 + conj(z): rank equals the SVD count of the dense product
        let phi = LaurentSymbol::from_pairs([(2, one()), (-1, one())]);
        let c = commutator_section(&phi, 64).unwrap();
        let eig = c.entries.clone().symmetric_eigenvalues();
        let count = eig.iter().filter(|v| v.abs() > 1e-8).count();
        assert_eq!(numerical_rank(&c, RANK_TOL), count);
        assert!((c.trace() - c64(1.0, 0.0)).norm() < 1e-13);
        assert_eq!(trace(&toeplitz_section(&LaurentSymbol::constant(one()), 5)), c64(5.0, 0.0));
    }

    #[test]
    fn unitary_conjugation_examples() {
        let t = toeplitz_section(&LaurentSymbol::monomial(1, one()), 6);
        let id = FiniteSection::new(CMatrix::identity(6, 6), BasisTag::Monomial).unwrap();
        assert_eq!(conjugate_by_unitary(&id, &t).unwrap().entries, t.entries);

        let u0 = u_a_section(C64::default(), 6).unwrap();
        let r = conjugate_by_unitary(&u0, &t).unwrap();
        let neg = toeplitz_section(&LaurentSymbol::monomial(1, c64(-1.0, 0.0)), 6);
        assert!(max_abs(&(r.entries - neg.entries)) < 1e-15);

        // U_a moves z^k to indices up to (1 + |a|) / (1 - |a|) k, so only a
        // leading block of the product is free of truncation
        let a = c64(0.4, 0.0);
        let phi_a = BlaschkeProduct::mobius(a).unwrap().to_symbol();
        let z = LaurentSymbol::monomial(1, one());
        for (n, k) in [(64, 16), (128, 32)] {
            let u = u_a_section(a, n).unwrap();
            let r = conjugate_by_unitary(&u, &toeplitz_section(&z, n)).unwrap().interior(k);
            let want = toeplitz_section(&phi_a, k);
            assert!(max_abs(&(r.entries - want.entries)) < 1e-8);
        }
        let u = u_a_section(a, 64).unwrap();
        let r = conjugate_by_unitary(&u, &toeplitz_section(&z, 64)).unwrap().interior(32);
        assert!(max_abs(&(r.entries - toeplitz_section(&phi_a, 32).entries)) > 1e-6);

        let small = toeplitz_section(&LaurentSymbol::monomial(1, one()), 5);
        assert!(matches!(
            conjugate_by_unitary(&u, &small),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn adjoint_is_section_of_conjugate_symbol() {
        let phi = LaurentSymbol::from_pairs([(-2, c64(1.0, 2.0)), (0, c64(0.0, 1.0)), (1, c64(3.0, -1.0))]);
        let t = toeplitz_section(&phi, 7);
        let bar = toeplitz_section(&phi.conj_reflect(), 7);
        assert_eq!(t.adjoint().entries, bar.entries);
    }
}
