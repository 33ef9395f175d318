//! Central finite differences with one Richardson halving step.

use crate::scalar::Scalar;

/// `(4·D(h/2) - D(h))/3`, cancelling the O(h²) term of a central stencil.
#[inline]
pub fn richardson<T: Scalar>(coarse: T, fine: T) -> T {
    (T::lit(4.0) * fine - coarse) / T::lit(3.0)
}

/// Default step for first derivatives: `ε^(1/3)·(1 + |x|)`.
pub fn first_step<T: Scalar>(x: T) -> T {
    T::epsilon().cbrt() * (T::one() + x.abs())
}

/// Default step for second and mixed derivatives: `ε^(1/4)·(1 + |x|)`.
pub fn second_step<T: Scalar>(x: T) -> T {
    T::epsilon().sqrt().sqrt() * (T::one() + x.abs())
}

pub fn first_derivative<T: Scalar, F: Fn(T) -> T>(f: F, x: T, h: T) -> T {
    let d = |h: T| (f(x + h) - f(x - h)) / (h + h);
    richardson(d(h), d(h / T::lit(2.0)))
}

pub fn second_derivative<T: Scalar, F: Fn(T) -> T>(f: F, x: T, h: T) -> T {
    let fx = f(x);
    let two = T::lit(2.0);
    let d = |h: T| (f(x + h) - two * fx + f(x - h)) / (h * h);
    richardson(d(h), d(h / two))
}

/// `∂²f/∂x∂y` from the four-corner cross stencil.
pub fn mixed_derivative<T: Scalar, F: Fn(T, T) -> T>(f: F, x: T, y: T, hx: T, hy: T) -> T {
    let d = |hx: T, hy: T| {
        (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy)) / (T::lit(4.0) * hx * hy)
    };
    let two = T::lit(2.0);
    richardson(d(hx, hy), d(hx / two, hy / two))
}
