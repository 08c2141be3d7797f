//! Winding numbers of sampled symbol curves.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::circle_grid;
use crate::symbol::{mobius, LaurentSymbol};
use crate::{poly, C64};

pub const MIN_CURVE_GRID: usize = 256;
pub const DEFAULT_CURVE_GRID: usize = 4096;
pub const DEFAULT_SWEEP: usize = 41;

/// Values of a symbol on a uniform grid of the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    points: Vec<C64>,
    max_gap: f64,
}

impl CurveSamples {
    pub fn new(points: Vec<C64>) -> Result<Self> {
        if points.len() < MIN_CURVE_GRID {
            return Err(Error::InvalidArgument(format!(
                "curve needs at least {MIN_CURVE_GRID} samples, got {}",
                points.len()
            )));
        }
        let n = points.len();
        let max_gap = (0..n)
            .map(|k| (points[(k + 1) % n] - points[k]).norm())
            .fold(0.0, f64::max);
        Ok(Self { points, max_gap })
    }

    pub fn from_fn<F: Fn(C64) -> C64>(f: F, grid: usize) -> Result<Self> {
        Self::new(circle_grid(grid).into_iter().map(f).collect())
    }

    pub fn from_symbol(phi: &LaurentSymbol, grid: usize) -> Result<Self> {
        Self::new(phi.samples(grid))
    }

    /// `z + conj(q phi_b(z))`.
    pub fn mobius_family(q: C64, b: C64, grid: usize) -> Result<Self> {
        Self::from_fn(|z| z + (q * mobius(b, z)).conj(), grid)
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn grid_size(&self) -> usize {
        self.points.len()
    }

    pub fn max_gap(&self) -> f64 {
        self.max_gap
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bounding_box(&self) -> (C64, C64) {
        let mut lo = C64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            lo.re = lo.re.min(p.re);
            lo.im = lo.im.min(p.im);
            hi.re = hi.re.max(p.re);
            hi.im = hi.im.max(p.im);
        }
        (lo, hi)
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// True when some gap exceeds an eighth of the diameter.
    pub fn under_resolved(&self) -> bool {
        self.max_gap() > self.diameter() / 8.0
    }

    pub fn distance_to(&self, s: C64) -> f64 {
        self.points
            .iter()
            .map(|p| (p - s).norm_sqr())
            .fold(f64::INFINITY, f64::min)
            .sqrt()
    }
}

/// Net turns of `arg(p_k - s)` around the closed polygon.
fn accumulated_turns(points: &[C64], s: C64) -> f64 {
    let n = points.len();
    let total: f64 = (0..n)
        .map(|k| ((points[(k + 1) % n] - s) * (points[k] - s).conj()).arg())
        .sum();
    total / std::f64::consts::TAU
}

fn round_turns(raw: f64) -> Result<i64> {
    let r = raw.round();
    if (raw - r).abs() > 0.1 {
        return Err(Error::NonIntegerAccumulation(raw));
    }
    Ok(r as i64)
}

/// Index of `s` with respect to the curve.  `s` must be farther than four
/// times the largest sample gap from every sample.
pub fn winding_number(curve: &CurveSamples, s: C64) -> Result<i64> {
    let required = 4.0 * curve.max_gap();
    let distance = curve.distance_to(s);
    if distance <= required {
        return Err(Error::TooCloseToCurve { distance, required });
    }
    round_turns(accumulated_turns(&curve.points, s))
}

/// Index of `s` with respect to the closed curve `t -> f(t)`, `t` in
/// `[0, 2 pi)`.  Starts from `base` uniform steps and bisects every step
/// whose chord is not small against its distance to `s`, so points very
/// close to the curve are handled without refining it everywhere.
pub fn winding_number_adaptive<F: Fn(f64) -> C64>(f: F, s: C64, base: usize) -> Result<i64> {
    const MAX_DEPTH: u32 = 48;
    let mut closest = f64::INFINITY;
    let mut turns = 0.0;
    // explicit stack of (t0, p0, t1, p1, depth)
    let mut stack = Vec::new();
    let step = std::f64::consts::TAU / base.max(8) as f64;
    for k in (0..base.max(8)).rev() {
        let (t0, t1) = (k as f64 * step, (k + 1) as f64 * step);
        stack.push((t0, f(t0), t1, f(t1), 0));
    }
    while let Some((t0, p0, t1, p1, depth)) = stack.pop() {
        let near = (p0 - s).norm().min((p1 - s).norm());
        closest = closest.min(near);
        if (p1 - p0).norm() * 4.0 <= near {
            turns += ((p1 - s) * (p0 - s).conj()).arg();
            continue;
        }
        if depth == MAX_DEPTH || near == 0.0 {
            return Err(Error::TooCloseToCurve {
                distance: closest,
                required: 4.0 * (p1 - p0).norm(),
            });
        }
        let tm = 0.5 * (t0 + t1);
        let pm = f(tm);
        stack.push((tm, pm, t1, p1, depth + 1));
        stack.push((t0, p0, tm, pm, depth + 1));
    }
    round_turns(turns / std::f64::consts::TAU)
}

/// Argument principle for a rational function: zeros minus poles inside
/// the disk.
pub fn winding_rational(zeros_in_disk: i64, poles_in_disk: i64) -> i64 {
    zeros_in_disk - poles_in_disk
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NowhereWindingReport {
    pub nowhere_winding: bool,
    pub tested: usize,
    pub skipped: usize,
    pub counterexample: Option<C64>,
    /// Index at the counterexample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
}

/// Samples the bounding box, inflated by 20% of its larger side, on a
/// `grid x grid` lattice and computes the index at every lattice point that
/// is not too close to the curve.  The first nonzero index found in
/// row-major order is reported.
pub fn nowhere_winding_check(curve: &CurveSamples, grid: usize) -> NowhereWindingReport {
    let (lo, hi) = curve.bounding_box();
    let pad = 0.2 * (hi.re - lo.re).max(hi.im - lo.im);
    let (lo, hi) = (lo - C64::new(pad, pad), hi + C64::new(pad, pad));
    let steps = grid.max(2) - 1;
    let at = |i: usize, j: usize| {
        C64::new(
            lo.re + (hi.re - lo.re) * i as f64 / steps as f64,
            lo.im + (hi.im - lo.im) * j as f64 / steps as f64,
        )
    };
    let results: Vec<Option<(C64, i64)>> = (0..grid * grid)
        .into_par_iter()
        .map(|k| {
            let s = at(k % grid, k / grid);
            winding_number(curve, s).ok().map(|w| (s, w))
        })
        .collect();
    let tested = results.iter().flatten().count();
    let hit = results.iter().flatten().find(|(_, w)| *w != 0).copied();
    NowhereWindingReport {
        nowhere_winding: hit.is_none(),
        tested,
        skipped: grid * grid - tested,
        counterexample: hit.map(|(s, _)| s),
        index: hit.map(|(_, w)| w),
    }
}

/// Number of roots of `p` (ascending coefficients) inside the unit disk,
/// by tracking `arg p` around the circle.
pub fn root_count_in_disk(p: &[C64]) -> Result<usize> {
    let deg = p.iter().rposition(|c| c.norm() > 0.0).unwrap_or(0);
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut grid = (4096).max(64 * deg.next_power_of_two());
    loop {
        let vals: Vec<C64> = circle_grid(grid).into_iter().map(|z| poly::eval(p, z)).collect();
        let floor = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if floor < 1e-8 * scale {
            return Err(Error::RootOnCircle(floor));
        }
        let n = vals.len();
        let max_step = (0..n)
            .map(|k| (vals[(k + 1) % n] / vals[k]).arg().abs())
            .fold(0.0, f64::max);
        if max_step < std::f64::consts::FRAC_PI_4 || grid >= 1 << 20 {
            let w = round_turns(accumulated_turns(&vals, C64::default()))?;
            return usize::try_from(w).map_err(|_| Error::NonIntegerAccumulation(w as f64));
        }
        grid *= 2;
    }
}

/// Witness point `conj(q) conj(b) - b` for the family `z + conj(q phi_b)`.
pub fn mobius_family_witness(q: C64, b: C64) -> C64 {
    q.conj() * b.conj() - b
}

/// Numerator of `(phi - s)(z) (z - b)` for `phi = z + conj(q phi_b)` on the
/// circle: `z^2 + (conj(q b) - b - s) z + s b - conj(q)`.
pub fn mobius_family_numerator(q: C64, b: C64, s: C64) -> Vec<C64> {
    vec![s * b - q.conj(), q.conj() * b.conj() - b - s, C64::new(1.0, 0.0)]
}

/// Index of `s` for `z + conj(q phi_b)` from zero and pole counts.
pub fn mobius_family_index(q: C64, b: C64, s: C64) -> Result<i64> {
    let zeros = root_count_in_disk(&mobius_family_numerator(q, b, s))?;
    Ok(winding_rational(zeros as i64, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, I};

    fn curve(phi: &LaurentSymbol) -> CurveSamples {
        CurveSamples::from_symbol(phi, DEFAULT_CURVE_GRID).unwrap()
    }

    #[test]
    fn adaptive_winding_resolves_points_near_the_curve() {
        let circle = |t: f64| C64::from_polar(1.0, t);
        assert_eq!(winding_number_adaptive(circle, c64(1.0 - 1e-9, 0.0), 64).unwrap(), 1);
        assert_eq!(winding_number_adaptive(circle, c64(1.0 + 1e-9, 0.0), 64).unwrap(), 0);
        let twice = |t: f64| C64::from_polar(0.5, -2.0 * t);
        assert_eq!(winding_number_adaptive(twice, c64(0.0, 0.499_999), 64).unwrap(), -2);
        assert!(winding_number_adaptive(circle, c64(1.0, 0.0), 64).is_err());
    }

    #[test]
    fn winding_examples() {
        let one = c64(1.0, 0.0);
        let z = curve(&LaurentSymbol::monomial(1, one));
        assert_eq!(winding_number(&z, C64::default()).unwrap(), 1);
        let zb = curve(&LaurentSymbol::monomial(-1, one));
        assert_eq!(winding_number(&zb, C64::default()).unwrap(), -1);
        let fam = CurveSamples::mobius_family(one, c64(0.0, 0.5), DEFAULT_CURVE_GRID).unwrap();
        assert_eq!(winding_number(&fam, -I).unwrap(), 1);
        assert!(matches!(
            winding_number(&z, one),
            Err(Error::TooCloseToCurve { .. })
        ));
        assert!(CurveSamples::from_symbol(&LaurentSymbol::monomial(1, one), 100).is_err());
    }

    #[test]
    fn monomial_indices() {
        for n in -6i64..=6 {
            let c = curve(&LaurentSymbol::monomial(n, c64(1.0, 0.0)));
            if n == 0 {
                continue;
            }
            assert_eq!(winding_number(&c, C64::default()).unwrap(), n);
        }
    }

    #[test]
    fn rational_examples() {
        assert_eq!(winding_rational(2, 1), 1);
        assert_eq!(winding_rational(0, 0), 0);
        let (q, b) = (c64(1.0, 0.0), c64(0.0, 0.5));
        let s = mobius_family_witness(q, b);
        assert!((s + I).norm() < 1e-15);
        assert_eq!(mobius_family_index(q, b, s).unwrap(), 1);
    }

    #[test]
    fn root_count_examples() {
        let one = c64(1.0, 0.0);
        let zero = C64::default();
        assert_eq!(root_count_in_disk(&[c64(-0.25, 0.0), zero, one]).unwrap(), 2);
        assert_eq!(root_count_in_disk(&[c64(-4.0, 0.0), zero, one]).unwrap(), 0);
        let (q, b) = (one, c64(0.0, 0.5));
        let w = q.conj() * (1.0 - b.norm_sqr()) + b * b;
        assert!((w.norm() - 0.5).abs() < 1e-15);
        assert_eq!(root_count_in_disk(&[-w, zero, one]).unwrap(), 2);
        assert!(matches!(
            root_count_in_disk(&[-one, zero, one]),
            Err(Error::RootOnCircle(_))
        ));
    }

    #[test]
    fn nowhere_winding_examples() {
        let one = c64(1.0, 0.0);
        let seg = curve(&LaurentSymbol::from_pairs([(1, one), (-1, one)]));
        let r = nowhere_winding_check(&seg, DEFAULT_SWEEP);
        assert!(r.nowhere_winding && r.tested > 0);

        let sym = CurveSamples::mobius_family(one, c64(0.5, 0.0), DEFAULT_CURVE_GRID).unwrap();
        let r = nowhere_winding_check(&sym, DEFAULT_SWEEP);
        assert!(r.nowhere_winding, "{r:?}");
        assert_eq!(r.tested + r.skipped, DEFAULT_SWEEP * DEFAULT_SWEEP);

        let b = c64(0.0, 0.5);
        let fam = CurveSamples::mobius_family(one, b, DEFAULT_CURVE_GRID).unwrap();
        let r = nowhere_winding_check(&fam, DEFAULT_SWEEP);
        assert!(!r.nowhere_winding);
        assert_eq!(r.index, Some(1));
        assert_eq!(winding_number(&fam, mobius_family_witness(one, b)).unwrap(), 1);
    }

    #[test]
    fn translation_equivariance() {
        let phi = LaurentSymbol::from_pairs([(2, c64(1.0, 0.0)), (-1, c64(0.3, 0.2))]);
        let c = curve(&phi);
        let w = c64(3.0, -1.5);
        let shifted = CurveSamples::new(c.points().iter().map(|p| p + w).collect()).unwrap();
        for s in [C64::default(), c64(0.4, 0.1), c64(-0.2, 0.9)] {
            assert_eq!(
                winding_number(&c, s).ok(),
                winding_number(&shifted, s + w).ok()
            );
        }
    }
}
