//! Log-kernels of 1-homogeneous generators.
//!
//! For a generator `f` homogeneous of order one, `f(e^(m+z), e^(m-z)) = e^m · e^k(z)`
//! with `k(z) = ln f(e^z, e^-z)`. Every family evaluator works with `k` and `k'`
//! at `z = t·w`, `w = ln(max/min)/2`, which keeps all quantities bounded and
//! makes the a = b and t = 0 limits explicit instead of 0/0.

use crate::divdiff::divided_difference;
use crate::scalar::Scalar;

const SERIES_TERMS: usize = 40;

/// Sum of `Σ_{n≥1} c_n(x²)` where each term is obtained from the previous one by `step(n)`.
fn positive_series<T: Scalar>(first: T, x2: T, step: impl Fn(usize) -> T) -> T {
    let mut term = first;
    let mut sum = first;
    for n in 1..SERIES_TERMS {
        term = term * x2 / step(n);
        sum = sum + term;
        if term <= T::epsilon() * sum {
            break;
        }
    }
    sum
}

/// `sinh(x)/x`.
fn sinhc<T: Scalar>(x: T) -> T {
    let ax = x.abs();
    if ax < T::one() {
        let x2 = ax * ax;
        // 1 + x²/3! + x⁴/5! + ...
        T::one() + positive_series(x2 / T::lit(6.0), x2, |n| T::lit(((2 * n + 2) * (2 * n + 3)) as f64))
    } else {
        ax.sinh() / ax
    }
}

/// `ln(sinh z / z)`; even, zero at the origin. Logarithmic-mean kernel.
pub fn ln_sinhc<T: Scalar>(z: T) -> T {
    let x = z.abs();
    if x < T::one() {
        let x2 = x * x;
        if x2 == T::zero() {
            return T::zero();
        }
        positive_series(x2 / T::lit(6.0), x2, |n| T::lit(((2 * n + 2) * (2 * n + 3)) as f64)).ln_1p()
    } else {
        x - T::LN_2() + (-(-(x + x)).exp()).ln_1p() - x.ln()
    }
}

/// Langevin function `coth z - 1/z`, the derivative of [`ln_sinhc`]. Odd.
pub fn langevin<T: Scalar>(z: T) -> T {
    let x = z.abs();
    let v = if x < T::one() {
        // (x cosh x - sinh x)/x³ = Σ 2n x^(2n-2)/(2n+1)!
        let x2 = x * x;
        let s = positive_series(T::one() / T::lit(3.0), x2, |n| {
            // ratio of consecutive terms times (2n)/(2n+2) correction
            let n = n as f64;
            T::lit((2.0 * n + 2.0) * (2.0 * n + 3.0) * n / (n + 1.0))
        });
        x * s / sinhc(x)
    } else {
        T::one() / x.tanh() - T::one() / x
    };
    v.copysign(z)
}

/// `1/z² - 1/sinh² z`, the second derivative of [`ln_sinhc`]. Even.
pub fn langevin_prime<T: Scalar>(z: T) -> T {
    let x = z.abs();
    if x < T::one() {
        // (sinh² x - x²)/x⁴ = Σ_{n≥2} 2^(2n-1) x^(2n-4)/(2n)!
        let x2 = x * x;
        let s = positive_series(T::one() / T::lit(3.0), x2, |n| {
            let m = (n + 2) as f64;
            T::lit((2.0 * m) * (2.0 * m - 1.0) / 4.0)
        });
        let sc = sinhc(x);
        s / (sc * sc)
    } else {
        let sh = x.sinh();
        T::one() / (x * x) - T::one() / (sh * sh)
    }
}

/// `ln cosh z`. Arithmetic-mean kernel.
pub fn ln_cosh<T: Scalar>(z: T) -> T {
    let x = z.abs();
    if x < T::one() {
        let s = (x / T::lit(2.0)).sinh();
        (T::lit(2.0) * s * s).ln_1p()
    } else {
        x - T::LN_2() + (-(x + x)).exp().ln_1p()
    }
}

/// `z·coth z - 1`. Identric-mean kernel.
pub fn identric_kernel<T: Scalar>(z: T) -> T {
    z * langevin(z)
}

pub fn identric_kernel_prime<T: Scalar>(z: T) -> T {
    langevin(z) + z * langevin_prime(z)
}

/// `z·tanh z`. Power-exponential (Gini `G_{1,1}`) kernel.
pub fn power_exponential_kernel<T: Scalar>(z: T) -> T {
    z * z.tanh()
}

pub fn power_exponential_kernel_prime<T: Scalar>(z: T) -> T {
    let c = z.cosh();
    z.tanh() + if c.is_finite() { z / (c * c) } else { T::zero() }
}

/// `ln((1 + 2 cosh z)/3)`. Heronian-mean kernel.
pub fn heronian_kernel<T: Scalar>(z: T) -> T {
    let x = z.abs();
    if x < T::one() {
        let s = (x / T::lit(2.0)).sinh();
        (T::lit(4.0) * s * s / T::lit(3.0)).ln_1p()
    } else {
        let e1 = (-x).exp();
        x - T::lit(3.0).ln() + (e1 + e1 * e1).ln_1p()
    }
}

pub fn heronian_kernel_prime<T: Scalar>(z: T) -> T {
    let x = z.abs();
    let e1 = (-x).exp();
    let v = (T::one() - e1 * e1) / (T::one() + e1 + e1 * e1);
    v.copysign(z)
}

/// `ln(2|sinh z|)`. Kernel of the difference generator `|x - y|`; singular at zero.
pub fn difference_kernel<T: Scalar>(z: T) -> T {
    T::LN_2() + z.abs().ln() + ln_sinhc(z)
}

pub fn difference_kernel_prime<T: Scalar>(z: T) -> T {
    T::one() / z.tanh()
}

/// Kernel of the Stolarsky mean `S_{r,s}` viewed as a generator:
/// `(ln_sinhc(r z) - ln_sinhc(s z))/(r - s)` with its r = s limit.
pub fn stolarsky_kernel<T: Scalar>(r: T, s: T, z: T) -> T {
    divided_difference(r, s, |rho| ln_sinhc(rho * z), |rho| z * langevin(rho * z)).value
}

/// z-derivative of [`stolarsky_kernel`].
pub fn stolarsky_kernel_prime<T: Scalar>(r: T, s: T, z: T) -> T {
    divided_difference(
        r,
        s,
        |rho| rho * langevin(rho * z),
        |rho| langevin(rho * z) + rho * z * langevin_prime(rho * z),
    )
    .value
}
