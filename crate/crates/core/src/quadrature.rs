//! Adaptive Gauss–Kronrod (7/15) quadrature with global bisection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{MeanError, Result};
use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_subdivisions: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub abs_error: T,
    pub subdivisions: usize,
}

struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Scalar> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Segment<T> {}

impl<T: Scalar> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.to_f64_lossy().total_cmp(&other.error.to_f64_lossy())
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn gk15<T: Scalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Segment<T> {
    let two = T::lit(2.0);
    let center = (lo + hi) / two;
    let half = (hi - lo) / two;
    let f_center = f(center);
    let mut kronrod = f_center * T::lit(WGK[7]);
    let mut gauss = f_center * T::lit(WG[3]);
    let mut abs_sum = kronrod.abs();
    let mut values = [T::zero(); 14];
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let (f1, f2) = (f(center - dx), f(center + dx));
        values[2 * j] = f1;
        values[2 * j + 1] = f2;
        kronrod = kronrod + T::lit(WGK[j]) * (f1 + f2);
        abs_sum = abs_sum + T::lit(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = kronrod / two;
    let mut asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        asc = asc + T::lit(WGK[j]) * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }
    let value = kronrod * half;
    let abs_half = half.abs();
    let res_abs = abs_sum * abs_half;
    let res_asc = asc * abs_half;
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != T::zero() && error != T::zero() {
        error = res_asc * T::one().min((T::lit(200.0) * error / res_asc).powf(T::lit(1.5)));
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if floor > error {
        error = floor;
    }
    Segment { lo, hi, value, error }
}

/// `∫_lo^hi f`, subdividing the worst panel until the summed error estimate
/// meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T, cfg: &QuadratureConfig) -> Result<Quadrature<T>> {
    let first = gk15(&f, lo, hi);
    if !first.value.is_finite() {
        return Err(MeanError::NonFinite);
    }
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let target = |v: T| T::lit(cfg.abs_tol).max(T::lit(cfg.rel_tol) * v.abs());
    let mut subdivisions = 0;
    while total_err > target(total) {
        if subdivisions >= cfg.max_subdivisions {
            return Err(MeanError::QuadratureNonConvergence {
                achieved: (total_err / total.abs().max(T::min_positive_value())).to_f64_lossy(),
                requested: cfg.rel_tol,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = (worst.lo + worst.hi) / T::lit(2.0);
        let left = gk15(&f, worst.lo, mid);
        let right = gk15(&f, mid, worst.hi);
        total = total - worst.value + left.value + right.value;
        total_err = total_err - worst.error + left.error + right.error;
        if !total.is_finite() {
            return Err(MeanError::NonFinite);
        }
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // re-sum to shed accumulated cancellation in the running totals
            total = heap.iter().fold(T::zero(), |acc, s| acc + s.value);
            total_err = heap.iter().fold(T::zero(), |acc, s| acc + s.error);
        }
    }
    Ok(Quadrature {
        value: total,
        abs_error: total_err,
        subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        let q = integrate(|x: f64| x.powi(12) - 3.0 * x, 0.0, 1.0, &QuadratureConfig::default()).unwrap();
        assert!((q.value - (1.0 / 13.0 - 1.5)).abs() < 1e-15);
        assert_eq!(q.subdivisions, 0);
    }

    #[test]
    fn smooth_transcendental() {
        let q = integrate(|x: f64| x.exp() * x.cos(), 0.0, 5.0, &QuadratureConfig::default()).unwrap();
        let exact = (5f64.exp() * (5f64.cos() + 5f64.sin()) - 1.0) / 2.0;
        assert!((q.value - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn endpoint_singularity_needs_bisection() {
        let q = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &QuadratureConfig::default()).unwrap();
        assert!((q.value - 2.0 / 3.0).abs() < 1e-12);
        assert!(q.subdivisions > 0);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let cfg = QuadratureConfig::default();
        let a = integrate(|x: f64| x.sin(), 0.0, 2.0, &cfg).unwrap().value;
        let b = integrate(|x: f64| x.sin(), 2.0, 0.0, &cfg).unwrap().value;
        assert!((a + b).abs() < 1e-15);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = QuadratureConfig {
            max_subdivisions: 3,
            ..QuadratureConfig::default()
        };
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, &cfg).unwrap_err();
        assert!(matches!(
            err,
            MeanError::QuadratureNonConvergence { subdivisions: 3, .. }
        ));
    }
}
