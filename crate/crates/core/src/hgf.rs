//! Two-parameter homogeneous functions `H_f(p,q;a,b) = (f(a^p,b^p)/f(a^q,b^q))^(1/(p-q))`
//! generated by a homogeneous `f`, the derivatives of `T(t) = ln f(a^t, b^t)`,
//! the integral representation `ln H_f = ∫₀¹ T'(tp + (1-t)q) dt`, and the
//! difference function `H_D` generated by `|x - y|`.
//!
//! `T` is handled through `T(t) = κ·t·m + T̃(t)` with `m = ln √(ab)`,
//! `T̃(t) = ln f(e^(t·v), e^(-t·v))` and `v = ln(a/b)/2`, so the large linear
//! part never enters a subtraction.

use crate::divdiff::{
    divided_difference, divided_difference_direct, relative_gap, DividedDifference, Route, BAND_FACTOR,
};
use crate::error::{MeanError, Result};
use crate::fd;
use crate::kernel;
use crate::means::{self, check_saturation, classify_pair, Branch, EvalResult, GeneratorPair, MeanPoint, ParamPair};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::scalar::Scalar;

/// A positively homogeneous generating function `f(x, y)` on the open quadrant.
pub trait Generator<T: Scalar>: Send + Sync {
    fn label(&self) -> String;

    /// Homogeneity order κ: `f(λx, λy) = λ^κ f(x, y)`.
    fn order(&self) -> T {
        T::one()
    }

    fn value(&self, x: T, y: T) -> T;

    /// `(f_x, f_y)` at `(x, y)`.
    fn partials(&self, x: T, y: T) -> (T, T);

    /// `lim_{y→x} f(x, y)` when it exists and is positive.
    fn diagonal_limit(&self, x: T) -> Option<T>;
}

/// Generators shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin<T> {
    /// `(x + y)/2`; generates the Gini means.
    Arithmetic,
    /// Logarithmic mean; generates the Stolarsky means.
    Logarithmic,
    /// Identric mean; generates `I_{p,q}`.
    Identric,
    /// `(x + √(xy) + y)/3`; generates `He_{p,q}`.
    Heronian,
    /// `|x - y|`; generates `H_D`. Has no diagonal limit.
    Difference,
    /// Stolarsky mean `S_{r,s}`; generates `F(·,·;r,s)`.
    Stolarsky(GeneratorPair<T>),
}

/// A, L, I, He, D, followed by `S_{r,s}` for each supplied pair.
pub fn builtin_generators<T: Scalar>(stolarsky: &[GeneratorPair<T>]) -> Vec<Builtin<T>> {
    let mut out = vec![
        Builtin::Arithmetic,
        Builtin::Logarithmic,
        Builtin::Identric,
        Builtin::Heronian,
        Builtin::Difference,
    ];
    out.extend(stolarsky.iter().map(|&gp| Builtin::Stolarsky(gp)));
    out
}

impl<T: Scalar> Builtin<T> {
    /// `(k(z), k'(z))` for the log-kernel `k(z) = ln f(e^z, e^-z)`.
    fn kernel(&self, z: T) -> (T, T) {
        match self {
            Builtin::Arithmetic => (kernel::ln_cosh(z), z.tanh()),
            Builtin::Logarithmic => (kernel::ln_sinhc(z), kernel::langevin(z)),
            Builtin::Identric => (kernel::identric_kernel(z), kernel::identric_kernel_prime(z)),
            Builtin::Heronian => (kernel::heronian_kernel(z), kernel::heronian_kernel_prime(z)),
            Builtin::Difference => (kernel::difference_kernel(z), kernel::difference_kernel_prime(z)),
            Builtin::Stolarsky(gp) => (
                kernel::stolarsky_kernel(gp.r, gp.s, z),
                kernel::stolarsky_kernel_prime(gp.r, gp.s, z),
            ),
        }
    }
}

impl<T: Scalar> Generator<T> for Builtin<T> {
    fn label(&self) -> String {
        match self {
            Builtin::Arithmetic => "A".into(),
            Builtin::Logarithmic => "L".into(),
            Builtin::Identric => "I".into(),
            Builtin::Heronian => "He".into(),
            Builtin::Difference => "D".into(),
            Builtin::Stolarsky(gp) => format!("S_{{{},{}}}", gp.r, gp.s),
        }
    }

    fn value(&self, x: T, y: T) -> T {
        let Ok(pt) = MeanPoint::new(x, y) else {
            return T::nan();
        };
        match self {
            Builtin::Arithmetic => means::arithmetic_mean(pt),
            Builtin::Logarithmic => means::log_mean(pt),
            Builtin::Identric => means::identric_mean(pt),
            Builtin::Heronian => means::heronian_mean(pt),
            Builtin::Difference => (x - y).abs(),
            Builtin::Stolarsky(gp) => ParamPair::new(gp.r, gp.s)
                .and_then(|pp| means::stolarsky(pp, pt))
                .map_or(T::nan(), |r| r.value),
        }
    }

    fn partials(&self, x: T, y: T) -> (T, T) {
        let two = T::lit(2.0);
        match self {
            Builtin::Arithmetic => (T::one() / two, T::one() / two),
            Builtin::Difference => {
                let sign = (x - y).signum();
                (sign, -sign)
            }
            _ => {
                // f = exp(m + k(z)): f_x = f(1 + k')/(2x), f_y = f(1 - k')/(2y)
                let f = self.value(x, y);
                let (_, dk) = self.kernel((x.ln() - y.ln()) / two);
                (f * (T::one() + dk) / (two * x), f * (T::one() - dk) / (two * y))
            }
        }
    }

    fn diagonal_limit(&self, x: T) -> Option<T> {
        match self {
            Builtin::Difference => None,
            _ => Some(x),
        }
    }
}

/// `T(t) = κ·t·m + T̃(t)` for one argument pair.
struct Profile<'a, T: Scalar, G: Generator<T> + ?Sized> {
    f: &'a G,
    mid: T,
    half: T,
    kappa: T,
}

impl<'a, T: Scalar, G: Generator<T> + ?Sized> Profile<'a, T, G> {
    fn new(f: &'a G, pt: &MeanPoint<T>) -> Self {
        let two = T::lit(2.0);
        let (la, lb) = (pt.a().ln(), pt.b().ln());
        Profile {
            f,
            mid: (la + lb) / two,
            half: (la - lb) / two,
            kappa: f.order(),
        }
    }

    /// Scaled arguments `(e^(tv - s), e^(-tv - s))` with `s = |tv|`.
    fn scaled(&self, t: T) -> (T, T, T) {
        let z = t * self.half;
        let s = z.abs();
        ((z - s).exp(), (-z - s).exp(), s)
    }

    fn value_at(&self, x: T, y: T) -> Result<T> {
        if x == y {
            self.f.diagonal_limit(x).ok_or_else(|| MeanError::MissingDiagonalLimit {
                generator: self.f.label(),
            })
        } else {
            Ok(self.f.value(x, y))
        }
    }

    fn t_tilde(&self, t: T) -> Result<T> {
        let (x, y, s) = self.scaled(t);
        let v = self.value_at(x, y)?;
        if v > T::zero() && v.is_finite() {
            Ok(self.kappa * s + v.ln())
        } else {
            Err(MeanError::OutsideDomain(format!(
                "generator {} is not positive at ({x}, {y})",
                self.f.label()
            )))
        }
    }

    /// `T̃'(t) = v·(x f_x - y f_y)/f`, 0-homogeneous in the scaled arguments.
    fn t_tilde_prime(&self, t: T) -> T {
        let (x, y, _) = self.scaled(t);
        let f = match self.value_at(x, y) {
            Ok(v) => v,
            Err(_) => return T::nan(),
        };
        let (fx, fy) = self.f.partials(x, y);
        self.half * (x * fx - y * fy) / f
    }

    fn t_prime(&self, t: T) -> T {
        self.kappa * self.mid + self.t_tilde_prime(t)
    }
}

/// `H_f(p,q;a,b)` with all limit branches; the diagonal `a = b` gives `a^κ`.
pub fn hf_eval<T: Scalar, G: Generator<T> + ?Sized>(
    f: &G,
    pp: ParamPair<T>,
    pt: MeanPoint<T>,
) -> Result<EvalResult<T>> {
    pp.validate()?;
    let has_diagonal = f.diagonal_limit(T::one()).is_some();
    if pt.is_diagonal() {
        if !has_diagonal {
            return Err(MeanError::MissingDiagonalLimit { generator: f.label() });
        }
        return Ok(EvalResult {
            value: pt.a().powf(f.order()),
            branch: Branch::DiagonalAb,
            est_rel_error: T::zero(),
        });
    }
    if !has_diagonal && (pp.p == T::zero() || pp.q == T::zero()) {
        return Err(MeanError::MissingDiagonalLimit { generator: f.label() });
    }
    let prof = Profile::new(f, &pt);
    check_saturation(pp.p.abs().max(pp.q.abs()) * (prof.half + prof.half))?;

    let dd = if relative_gap_is_direct(pp.p, pp.q) || (!has_diagonal && pp.p * pp.q < T::zero()) {
        let (hi, lo) = if pp.p >= pp.q { (pp.p, pp.q) } else { (pp.q, pp.p) };
        let (th, tl) = (prof.t_tilde(hi)?, prof.t_tilde(lo)?);
        DividedDifference {
            value: (th - tl) / (hi - lo),
            route: Route::Direct,
            est_abs_error: T::lit(4.0) * T::epsilon() * (th.abs() + tl.abs()) / (hi - lo),
        }
    } else {
        // limit and band routes only sample T̃'
        divided_difference(pp.p, pp.q, |_| T::nan(), |t| prof.t_tilde_prime(t))
    };
    if !dd.value.is_finite() {
        return Err(MeanError::NonFinite);
    }
    let ln_value = prof.kappa * prof.mid + dd.value;
    let value = ln_value.exp();
    if !value.is_finite() || value <= T::zero() {
        return Err(MeanError::NonFinite);
    }
    Ok(EvalResult {
        value,
        branch: classify_pair(pp.p, pp.q, dd.route),
        est_rel_error: T::lit(4.0) * T::epsilon() * (T::one() + ln_value.abs()) + dd.est_abs_error,
    })
}

fn relative_gap_is_direct<T: Scalar>(p: T, q: T) -> bool {
    relative_gap(p, q) > T::branch_delta() * T::lit(BAND_FACTOR)
}

/// `T'(t) = (x f_x ln a + y f_y ln b)/f` at `x = a^t`, `y = b^t`.
pub fn t_prime<T: Scalar, G: Generator<T> + ?Sized>(f: &G, t: T, pt: MeanPoint<T>) -> T {
    Profile::new(f, &pt).t_prime(t)
}

/// `T'''(t)` by central differences of `T'`, without the `t ≠ 0` restriction
/// of [`t_derivatives`].
pub fn t_third<T: Scalar, G: Generator<T> + ?Sized>(f: &G, t: T, pt: MeanPoint<T>, h: Option<T>) -> T {
    let prof = Profile::new(f, &pt);
    let h = h.unwrap_or_else(|| fd::second_step(t));
    fd::second_derivative(|u| prof.t_tilde_prime(u), t, h)
}

/// Derivatives of `T(t) = ln f(a^t, b^t)` and the quantities `I = (ln f)_xy`,
/// `J = (x - y)(x I)_x`, `C = xy ln³(x/y)/(x - y)` at `x = a^t`, `y = b^t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TDerivatives<T> {
    pub t: T,
    pub x: T,
    pub y: T,
    pub t1: T,
    pub t2: T,
    pub t3: T,
    pub i_val: T,
    pub j_val: T,
    pub c_val: T,
    /// `ln(b/a)`.
    pub log_ratio: T,
}

impl<T: Scalar> TDerivatives<T> {
    /// `-x y I ln²(b/a)`, the closed form that `t2` should reproduce.
    pub fn t2_from_i(&self) -> T {
        -self.x * self.y * self.i_val * self.log_ratio * self.log_ratio
    }

    /// `-C t⁻³ J`, the closed form that `t3` should reproduce.
    pub fn t3_from_j(&self) -> T {
        -self.c_val * self.j_val / (self.t * self.t * self.t)
    }
}

/// Evaluates [`TDerivatives`]. `h` overrides the default step for both the
/// t-differences and the (x, y)-differences (the latter relative to the
/// scaled arguments).
pub fn t_derivatives<T: Scalar, G: Generator<T> + ?Sized>(
    f: &G,
    t: T,
    pt: MeanPoint<T>,
    h: Option<T>,
) -> Result<TDerivatives<T>> {
    finite_param("t", t)?;
    if t == T::zero() {
        return Err(MeanError::OutsideDomain("t_derivatives requires t ≠ 0".into()));
    }
    if pt.is_diagonal() {
        return Err(MeanError::OutsideDomain("t_derivatives requires a ≠ b".into()));
    }
    let h2 = h.unwrap_or_else(|| fd::second_step(t));
    let h1 = h.unwrap_or_else(|| fd::first_step(t));
    let floor = T::lit(16.0) * T::epsilon() * (T::one() + t.abs());
    let step = h1.min(h2);
    if step.is_nan() || step <= floor {
        return Err(MeanError::StepUnderflow {
            t: t.to_f64_lossy(),
            step: step.to_f64_lossy(),
            suggested: fd::second_step(t).to_f64_lossy(),
        });
    }
    if f.diagonal_limit(T::one()).is_none() && t.abs() <= T::lit(2.0) * h2 {
        return Err(MeanError::OutsideDomain(format!(
            "difference stencil around t = {t} crosses the singular point t = 0 of {}",
            f.label()
        )));
    }

    let prof = Profile::new(f, &pt);
    let t1 = prof.t_prime(t);
    let t2 = fd::first_derivative(|u| prof.t_tilde_prime(u), t, h1);
    let t3 = fd::second_derivative(|u| prof.t_tilde_prime(u), t, h2);

    // I and J in coordinates scaled by M = max(x, y).
    let (la, lb) = (t * pt.a().ln(), t * pt.b().ln());
    let top = la.max(lb);
    let (xs, ys) = ((la - top).exp(), (lb - top).exp());
    let scale = top.exp();
    let u = |x: T, y: T| {
        let (fx, _) = f.partials(x, y);
        fx / f.value(x, y)
    };
    let gap = (xs - ys).abs();
    let (room_x, room_y) = (xs.min(gap), ys.min(gap));
    let first = h.unwrap_or_else(|| T::epsilon().cbrt());
    let second = h.unwrap_or_else(|| T::epsilon().sqrt().sqrt());
    let i_scaled = fd::first_derivative(|y| u(xs, y), ys, first * room_y);
    let i_x_scaled = fd::mixed_derivative(u, xs, ys, second * room_x, second * room_y);
    let j_scaled = (xs - ys) * (i_scaled + xs * i_x_scaled);
    let ln_xy = xs.ln() - ys.ln();
    let c_scaled = xs * ys * ln_xy * ln_xy * ln_xy / (xs - ys);

    let out = TDerivatives {
        t,
        x: la.exp(),
        y: lb.exp(),
        t1,
        t2,
        t3,
        i_val: i_scaled / (scale * scale),
        j_val: j_scaled / scale,
        c_val: scale * c_scaled,
        log_ratio: pt.b().ln() - pt.a().ln(),
    };
    if [out.t1, out.t2, out.t3, out.i_val, out.j_val]
        .iter()
        .all(|v| v.is_finite())
    {
        Ok(out)
    } else {
        Err(MeanError::NonFinite)
    }
}

fn finite_param<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(MeanError::NonFiniteParameter {
            name,
            value: v.to_f64_lossy(),
        })
    }
}

/// `exp(∫₀¹ T'(tp + (1-t)q) dt)` by adaptive quadrature; `exp(T'(q))` when p = q.
/// `tol` is the requested relative accuracy of the result.
pub fn hf_integral_oracle<T: Scalar, G: Generator<T> + ?Sized>(
    f: &G,
    pp: ParamPair<T>,
    pt: MeanPoint<T>,
    tol: T,
) -> Result<T> {
    pp.validate()?;
    if pt.is_diagonal() {
        return Err(MeanError::OutsideDomain("integral form requires a ≠ b".into()));
    }
    let (lo, hi) = (pp.p.min(pp.q), pp.p.max(pp.q));
    if f.diagonal_limit(T::one()).is_none() && lo <= T::zero() && hi >= T::zero() {
        return Err(MeanError::MissingDiagonalLimit { generator: f.label() });
    }
    let prof = Profile::new(f, &pt);
    check_saturation(hi.abs().max(lo.abs()) * (prof.half + prof.half))?;
    let base = prof.kappa * prof.mid;
    if pp.p == pp.q {
        return finite_exp(prof.t_prime(pp.q));
    }
    let cfg = QuadratureConfig {
        rel_tol: tol.to_f64_lossy(),
        abs_tol: tol.to_f64_lossy(),
        ..QuadratureConfig::default()
    };
    // ∫₀¹ T̃'(q + s(p - q)) ds = (1/(p - q))∫_q^p T̃'
    let q = integrate(|t| prof.t_tilde_prime(t), lo, hi, &cfg)?;
    finite_exp(base + q.value / (hi - lo))
}

fn finite_exp<T: Scalar>(ln_value: T) -> Result<T> {
    let v = ln_value.exp();
    if v.is_finite() && v > T::zero() {
        Ok(v)
    } else {
        Err(MeanError::NonFinite)
    }
}

/// `H_D(p,q;a,b) = |(a^p - b^p)/(a^q - b^q)|^(1/(p-q))`, with
/// `e^(1/p) I^(1/p)(a^p, b^p)` on p = q. Zero parameters and a = b are
/// outside its domain.
pub fn hd_eval<T: Scalar>(pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
    pp.validate()?;
    if pt.is_diagonal() {
        return Err(MeanError::OutsideDomain("H_D is undefined for a = b".into()));
    }
    if pp.p == T::zero() || pp.q == T::zero() {
        return Err(MeanError::OutsideDomain("H_D is undefined for a zero parameter".into()));
    }
    let lc = pt.log_coords();
    let w = lc.half_gap;
    check_saturation(pp.p.abs().max(pp.q.abs()) * (w + w))?;
    let g = |t: T| kernel::difference_kernel(t * w);
    let dd = if pp.p * pp.q < T::zero() {
        divided_difference_direct(pp.p, pp.q, g)
    } else {
        divided_difference(pp.p, pp.q, g, |t| w * kernel::difference_kernel_prime(t * w))
    };
    let ln_value = lc.mid + dd.value;
    let value = ln_value.exp();
    if !value.is_finite() {
        return Err(MeanError::NonFinite);
    }
    Ok(EvalResult {
        value,
        branch: classify_pair(pp.p, pp.q, dd.route),
        est_rel_error: T::lit(4.0) * T::epsilon() * (T::one() + ln_value.abs()) + dd.est_abs_error,
    })
}
