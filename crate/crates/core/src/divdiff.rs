//! Divided differences `(g(p) - g(q))/(p - q)` across a removable singularity.
//!
//! Every two-parameter mean has the form `exp((T(p) - T(q))/(p - q))`. Near
//! p = q the quotient cancels catastrophically, so the evaluation switches
//! route by the relative gap `|p - q| / (1 + |p| + |q|)`:
//!
//! * gap ≤ δ: limit route, `g'((p+q)/2)`;
//! * δ < gap ≤ 10³δ: five-point Gauss–Legendre rule for `∫₀¹ g'(q + u(p-q)) du`;
//! * otherwise: the quotient itself.
//!
//! Inputs are put in canonical order first, so the result is bitwise
//! symmetric in p ↔ q.

use crate::scalar::Scalar;

/// Upper edge of the quadrature band as a multiple of the limit threshold.
pub const BAND_FACTOR: f64 = 1e3;

const GL5_NODES: [f64; 5] = [
    0.0,
    0.538_469_310_105_683_1,
    -0.538_469_310_105_683_1,
    0.906_179_845_938_664,
    -0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    Quadrature,
    Limit,
}

#[derive(Debug, Clone, Copy)]
pub struct DividedDifference<T> {
    pub value: T,
    pub route: Route,
    pub est_abs_error: T,
}

/// Relative gap of a parameter pair, as used for route selection.
pub fn relative_gap<T: Scalar>(p: T, q: T) -> T {
    (p - q).abs() / (T::one() + p.abs() + q.abs())
}

pub fn is_near_equal<T: Scalar>(p: T, q: T) -> bool {
    relative_gap(p, q) <= T::branch_delta()
}

pub fn is_near_zero<T: Scalar>(p: T, other: T) -> bool {
    p.abs() <= T::branch_delta() * (T::one() + other.abs())
}

pub fn divided_difference<T, G, D>(p: T, q: T, g: G, dg: D) -> DividedDifference<T>
where
    T: Scalar,
    G: Fn(T) -> T,
    D: Fn(T) -> T,
{
    let (hi, lo) = if p >= q { (p, q) } else { (q, p) };
    let gap = hi - lo;
    let rel = relative_gap(hi, lo);
    let delta = T::branch_delta();
    let two = T::lit(2.0);

    if rel <= delta {
        let mid = lo + gap / two;
        let value = dg(mid);
        // midpoint error ≈ (trapezoid - midpoint)/3
        let est = if gap > T::zero() {
            ((dg(hi) + dg(lo)) / two - value).abs() / T::lit(3.0)
        } else {
            T::zero()
        };
        DividedDifference {
            value,
            route: Route::Limit,
            est_abs_error: est,
        }
    } else if rel <= delta * T::lit(BAND_FACTOR) {
        let half = gap / two;
        let center = lo + half;
        let value = GL5_NODES
            .iter()
            .zip(GL5_WEIGHTS.iter())
            .fold(T::zero(), |acc, (&x, &w)| {
                acc + T::lit(w) * dg(center + half * T::lit(x))
            })
            / two;
        DividedDifference {
            value,
            route: Route::Quadrature,
            est_abs_error: T::lit(8.0) * T::epsilon() * value.abs(),
        }
    } else {
        direct(hi, lo, &g)
    }
}

/// The plain quotient, for pairs whose segment must not be sampled (e.g. it
/// straddles a pole of `g'`).
pub fn divided_difference_direct<T: Scalar, G: Fn(T) -> T>(p: T, q: T, g: G) -> DividedDifference<T> {
    let (hi, lo) = if p >= q { (p, q) } else { (q, p) };
    direct(hi, lo, &g)
}

fn direct<T: Scalar, G: Fn(T) -> T>(hi: T, lo: T, g: &G) -> DividedDifference<T> {
    let (gh, gl) = (g(hi), g(lo));
    let gap = hi - lo;
    DividedDifference {
        value: (gh - gl) / gap,
        route: Route::Direct,
        est_abs_error: T::lit(4.0) * T::epsilon() * (gh.abs() + gl.abs()) / gap,
    }
}
