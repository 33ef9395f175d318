//! Classical bivariate means and the parametric families built on them:
//! Stolarsky, Gini, two-parameter identric and Heronian means, and the
//! four-parameter means `F(p,q;r,s;a,b)`.
//!
//! All ratio-power forms are evaluated in log space as
//! `ln M = m + (g(p) - g(q))/(p - q)` with `m = ln √(ab)`, `g(t) = k(t·w)`,
//! `w = ln(max/min)/2` and `k` the log-kernel of the generating mean.

use serde::{Deserialize, Serialize};

use crate::divdiff::{divided_difference, is_near_equal, is_near_zero, DividedDifference, Route};
use crate::error::{MeanError, Result};
use crate::kernel;
use crate::scalar::Scalar;

/// The positive argument pair `(a, b)` of a mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanPoint<T> {
    a: T,
    b: T,
}

impl<T: Scalar> MeanPoint<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a > T::zero() && b > T::zero() {
            Ok(MeanPoint { a, b })
        } else {
            Err(MeanError::InvalidPoint {
                a: a.to_f64_lossy(),
                b: b.to_f64_lossy(),
            })
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn min(&self) -> T {
        self.a.min(self.b)
    }

    pub fn max(&self) -> T {
        self.a.max(self.b)
    }

    pub fn is_diagonal(&self) -> bool {
        self.a == self.b
    }

    pub fn swapped(&self) -> Self {
        MeanPoint { a: self.b, b: self.a }
    }

    /// `(a^t, b^t)`; fails when either power leaves the finite positive range.
    pub fn powered(&self, t: T) -> Result<Self> {
        MeanPoint::new(self.a.powf(t), self.b.powf(t))
    }

    pub fn scaled(&self, lambda: T) -> Result<Self> {
        MeanPoint::new(self.a * lambda, self.b * lambda)
    }

    pub(crate) fn log_coords(&self) -> LogCoords<T> {
        let two = T::lit(2.0);
        let (hi, lo) = (self.max(), self.min());
        LogCoords {
            mid: (hi.ln() + lo.ln()) / two,
            half_gap: (hi / lo).ln() / two,
        }
    }

    fn clamp(&self, v: T) -> T {
        v.max(self.min()).min(self.max())
    }
}

/// `m = ln √(ab)` and `w = ln(max/min)/2 ≥ 0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogCoords<T> {
    pub mid: T,
    pub half_gap: T,
}

/// The parameter pair `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPair<T> {
    pub p: T,
    pub q: T,
}

impl<T: Scalar> ParamPair<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        let pp = ParamPair { p, q };
        pp.validate()?;
        Ok(pp)
    }

    pub fn validate(&self) -> Result<()> {
        finite("p", self.p)?;
        finite("q", self.q)
    }

    pub fn swapped(&self) -> Self {
        ParamPair { p: self.q, q: self.p }
    }

    /// `α·self + β·other`.
    pub fn blend(&self, other: &Self, alpha: T, beta: T) -> Self {
        ParamPair {
            p: alpha * self.p + beta * other.p,
            q: alpha * self.q + beta * other.q,
        }
    }
}

/// The generator pair `(r, s)` of the four-parameter means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorPair<T> {
    pub r: T,
    pub s: T,
}

impl<T: Scalar> GeneratorPair<T> {
    pub fn new(r: T, s: T) -> Result<Self> {
        let gp = GeneratorPair { r, s };
        gp.validate()?;
        Ok(gp)
    }

    pub fn validate(&self) -> Result<()> {
        finite("r", self.r)?;
        finite("s", self.s)
    }

    fn as_params(&self) -> ParamPair<T> {
        ParamPair { p: self.r, q: self.s }
    }
}

fn finite<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(MeanError::NonFiniteParameter {
            name,
            value: v.to_f64_lossy(),
        })
    }
}

/// Which formula produced an [`EvalResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Generic,
    PEqQ,
    PZero,
    QZero,
    BothZero,
    DiagonalAb,
    Swapped,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Generic => "generic",
            Branch::PEqQ => "p_eq_q",
            Branch::PZero => "p_zero",
            Branch::QZero => "q_zero",
            Branch::BothZero => "both_zero",
            Branch::DiagonalAb => "diagonal_ab",
            Branch::Swapped => "swapped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult<T> {
    pub value: T,
    pub branch: Branch,
    pub est_rel_error: T,
}

impl<T: Scalar> EvalResult<T> {
    fn diagonal(a: T) -> Self {
        EvalResult {
            value: a,
            branch: Branch::DiagonalAb,
            est_rel_error: T::zero(),
        }
    }
}

/// Branch tag for a parameter pair, given the divided-difference route taken.
pub(crate) fn classify_pair<T: Scalar>(p: T, q: T, route: Route) -> Branch {
    if route == Route::Limit || is_near_equal(p, q) {
        if is_near_zero(p, T::zero()) && is_near_zero(q, T::zero()) {
            Branch::BothZero
        } else {
            Branch::PEqQ
        }
    } else if is_near_zero(p, q) {
        Branch::PZero
    } else if is_near_zero(q, p) {
        Branch::QZero
    } else {
        Branch::Generic
    }
}

pub(crate) fn check_saturation<T: Scalar>(exponent: T) -> Result<()> {
    if exponent.abs() > T::saturation_log() {
        Err(MeanError::Saturation {
            exponent: exponent.to_f64_lossy(),
            limit: T::saturation_log().to_f64_lossy(),
        })
    } else {
        Ok(())
    }
}

/// Turns `ln M = m + dd` into an [`EvalResult`] clamped to `[min, max]`.
fn finish<T: Scalar>(
    pt: &MeanPoint<T>,
    lc: &LogCoords<T>,
    dd: DividedDifference<T>,
    branch: Branch,
) -> Result<EvalResult<T>> {
    let ln_value = lc.mid + dd.value;
    let value = pt.clamp(ln_value.exp());
    if !value.is_finite() {
        return Err(MeanError::NonFinite);
    }
    Ok(EvalResult {
        value,
        branch,
        est_rel_error: T::lit(4.0) * T::epsilon() * (T::one() + ln_value.abs()) + dd.est_abs_error,
    })
}

/// Evaluates `exp(m + DD[k(t·w)])` for a 1-homogeneous kernel.
fn kernel_family<T, K, D>(pp: ParamPair<T>, pt: MeanPoint<T>, k: K, dk: D) -> Result<EvalResult<T>>
where
    T: Scalar,
    K: Fn(T) -> T,
    D: Fn(T) -> T,
{
    pp.validate()?;
    if pt.is_diagonal() {
        return Ok(EvalResult::diagonal(pt.a));
    }
    let lc = pt.log_coords();
    let w = lc.half_gap;
    check_saturation(pp.p.abs().max(pp.q.abs()) * (w + w))?;
    let dd = divided_difference(pp.p, pp.q, |t| k(t * w), |t| w * dk(t * w));
    let branch = classify_pair(pp.p, pp.q, dd.route);
    finish(&pt, &lc, dd, branch)
}

pub fn arithmetic_mean<T: Scalar>(pt: MeanPoint<T>) -> T {
    let two = T::lit(2.0);
    pt.a / two + pt.b / two
}

pub fn geometric_mean<T: Scalar>(pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    let prod = pt.a * pt.b;
    if prod.is_normal() {
        prod.sqrt()
    } else {
        pt.a.sqrt() * pt.b.sqrt()
    }
}

/// `(a - b)/(ln a - ln b)`, with a series in `u = (a-b)/(a+b)` near the diagonal.
pub fn log_mean<T: Scalar>(pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    let (hi, lo) = (pt.max(), pt.min());
    let diff = hi - lo;
    if diff <= T::lit(1e-4) * (hi + lo) {
        // L = A·u/atanh(u) = A·(1 - u²/3 - 4u⁴/45 - 44u⁶/945 - ...)
        let u = diff / (hi + lo);
        let x = u * u;
        let series = T::one()
            - x * (T::one() / T::lit(3.0)
                + x * (T::lit(4.0 / 45.0) + x * (T::lit(44.0 / 945.0) + x * T::lit(428.0 / 14175.0))));
        arithmetic_mean(pt) * series
    } else {
        let ratio = hi / lo;
        let ln_ratio = if ratio < T::lit(2.0) {
            (diff / lo).ln_1p()
        } else {
            hi.ln() - lo.ln()
        };
        diff / ln_ratio
    }
}

/// `e⁻¹ (a^a/b^b)^(1/(a-b))`, computed as `√(ab)·exp(w coth w - 1)`.
pub fn identric_mean<T: Scalar>(pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    let lc = pt.log_coords();
    pt.clamp((lc.mid + kernel::identric_kernel(lc.half_gap)).exp())
}

/// `exp((a ln a + b ln b)/(a + b))`.
pub fn power_exponential_z<T: Scalar>(pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    let lc = pt.log_coords();
    pt.clamp((lc.mid + kernel::power_exponential_kernel(lc.half_gap)).exp())
}

/// `(a + √(ab) + b)/3`.
pub fn heronian_mean<T: Scalar>(pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    let three = T::lit(3.0);
    pt.clamp(pt.a / three + geometric_mean(pt) / three + pt.b / three)
}

/// `Y = I·exp(1 - G²/L²)`.
pub fn y_mean<T: Scalar>(pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    let lc = pt.log_coords();
    let ln_i = lc.mid + kernel::identric_kernel(lc.half_gap);
    // G/L = exp(-ln_sinhc(w))
    let correction = -(-T::lit(2.0) * kernel::ln_sinhc(lc.half_gap)).exp_m1();
    pt.clamp((ln_i + correction).exp())
}

/// Power mean `((a^t + b^t)/2)^(1/t)`, geometric mean at t = 0.
pub fn power_mean<T: Scalar>(t: T, pt: MeanPoint<T>) -> T {
    if pt.is_diagonal() {
        return pt.a;
    }
    if t == T::zero() {
        return geometric_mean(pt);
    }
    let lc = pt.log_coords();
    pt.clamp((lc.mid + kernel::ln_cosh(t * lc.half_gap) / t).exp())
}

/// Stolarsky (extended) means `S_{p,q}(a,b)`.
pub fn stolarsky<T: Scalar>(pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
    kernel_family(pp, pt, kernel::ln_sinhc, kernel::langevin)
}

/// Gini means `G_{p,q}(a,b)`.
pub fn gini<T: Scalar>(pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
    kernel_family(pp, pt, kernel::ln_cosh, |z: T| z.tanh())
}

/// Two-parameter identric means `I_{p,q}(a,b)`; `Y^(1/p)(a^p, b^p)` on p = q
/// and `√(ab)` at p = q = 0.
pub fn two_param_identric<T: Scalar>(pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
    kernel_family(pp, pt, kernel::identric_kernel, kernel::identric_kernel_prime)
}

/// Two-parameter Heronian means `He_{p,q}(a,b)`.
pub fn two_param_heronian<T: Scalar>(pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
    kernel_family(pp, pt, kernel::heronian_kernel, kernel::heronian_kernel_prime)
}

/// Four-parameter means `F(p,q;r,s;a,b)`.
///
/// Evaluated as the two-parameter homogeneous function generated by `S_{r,s}`:
/// an outer divided difference over (p,q) of the Stolarsky kernel, which is
/// itself an inner divided difference over (r,s). The pairs are put in a
/// canonical order first, so the value is identical under p ↔ q, r ↔ s and
/// (p,q) ↔ (r,s).
pub fn four_param<T: Scalar>(pp: ParamPair<T>, gp: GeneratorPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
    pp.validate()?;
    gp.validate()?;
    if pt.is_diagonal() {
        return Ok(EvalResult::diagonal(pt.a));
    }
    let lc = pt.log_coords();
    let w = lc.half_gap;
    let pmax = pp.p.abs().max(pp.q.abs());
    let rmax = gp.r.abs().max(gp.s.abs());
    check_saturation(pmax * rmax * (w + w))?;

    let sorted = |x: T, y: T| if x >= y { (x, y) } else { (y, x) };
    let first = sorted(pp.p, pp.q);
    let second = sorted(gp.r, gp.s);
    let ((p, q), (r, s)) = if first <= second {
        (first, second)
    } else {
        (second, first)
    };

    let dd = divided_difference(
        p,
        q,
        |t| kernel::stolarsky_kernel(r, s, t * w),
        |t| w * kernel::stolarsky_kernel_prime(r, s, t * w),
    );

    let outer = classify_pair(
        pp.p,
        pp.q,
        if is_near_equal(pp.p, pp.q) {
            Route::Limit
        } else {
            Route::Direct
        },
    );
    let branch = if outer == Branch::Generic && classify_pair(gp.r, gp.s, Route::Direct) != Branch::Generic {
        Branch::Swapped
    } else {
        outer
    };
    finish(&pt, &lc, dd, branch)
}

/// A classical two-parameter family that a four-parameter configuration reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Reduction<T> {
    Stolarsky { p: T, q: T },
    Gini { p: T, q: T },
    Identric { p: T, q: T },
    Heronian { p: T, q: T },
}

impl<T: Scalar> Reduction<T> {
    pub fn params(&self) -> ParamPair<T> {
        match *self {
            Reduction::Stolarsky { p, q }
            | Reduction::Gini { p, q }
            | Reduction::Identric { p, q }
            | Reduction::Heronian { p, q } => ParamPair { p, q },
        }
    }

    pub fn evaluate(&self, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
        let pp = self.params();
        match self {
            Reduction::Stolarsky { .. } => stolarsky(pp, pt),
            Reduction::Gini { .. } => gini(pp, pt),
            Reduction::Identric { .. } => two_param_identric(pp, pt),
            Reduction::Heronian { .. } => two_param_heronian(pp, pt),
        }
    }
}

/// Which classical family `F(p,q;r,s)` collapses to, via
/// `F(p,0) = S_{pr,ps}`, `F(p,p) = I_{pr,ps}`, `F(p,2p) = G_{pr,ps}` and
/// `F(p/2,3p/2) = He_{pr,ps}`.
pub fn reduction_table<T: Scalar>(pp: ParamPair<T>, gp: GeneratorPair<T>) -> Option<Reduction<T>> {
    let tol = T::lit(1e-12);
    let same = |x: T, y: T| (x - y).abs() <= tol * (T::one() + x.abs() + y.abs());
    let (p, q) = (pp.p, pp.q);
    let scaled = |c: T| (c * gp.r, c * gp.s);
    let hit = |c: T, ctor: fn(T, T) -> Reduction<T>| {
        let (x, y) = scaled(c);
        Some(ctor(x, y))
    };
    let stol = |x, y| Reduction::Stolarsky { p: x, q: y };
    let gini = |x, y| Reduction::Gini { p: x, q: y };
    let iden = |x, y| Reduction::Identric { p: x, q: y };
    let hero = |x, y| Reduction::Heronian { p: x, q: y };
    let two = T::lit(2.0);
    let three = T::lit(3.0);

    if same(q, T::zero()) {
        hit(p, stol)
    } else if same(p, T::zero()) {
        hit(q, stol)
    } else if same(p, q) {
        hit(p, iden)
    } else if same(q, two * p) {
        hit(p, gini)
    } else if same(p, two * q) {
        hit(q, gini)
    } else if same(q, three * p) {
        hit(two * p, hero)
    } else if same(p, three * q) {
        hit(two * q, hero)
    } else {
        None
    }
}

/// `F(p,q;r,s)` evaluated through the generator pair as the outer parameters;
/// used by callers that want the (r,s)-major evaluation order explicitly.
pub fn four_param_exchanged<T: Scalar>(
    pp: ParamPair<T>,
    gp: GeneratorPair<T>,
    pt: MeanPoint<T>,
) -> Result<EvalResult<T>> {
    let p = gp.as_params();
    four_param(p, GeneratorPair { r: pp.p, s: pp.q }, pt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: f64, b: f64) -> MeanPoint<f64> {
        MeanPoint::new(a, b).unwrap()
    }

    fn pp(p: f64, q: f64) -> ParamPair<f64> {
        ParamPair::new(p, q).unwrap()
    }

    fn gp(r: f64, s: f64) -> GeneratorPair<f64> {
        GeneratorPair::new(r, s).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn point_validation() {
        assert!(MeanPoint::new(0.0, 1.0).is_err());
        assert!(MeanPoint::new(-1.0, 1.0).is_err());
        assert!(MeanPoint::new(f64::INFINITY, 1.0).is_err());
        assert!(MeanPoint::new(1.0, f64::NAN).is_err());
        assert!(ParamPair::new(f64::NAN, 1.0).is_err());
        assert!(GeneratorPair::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn classical_means_closed_forms() {
        assert_eq!(arithmetic_mean(pt(4.0, 2.0)), 3.0);
        assert_eq!(arithmetic_mean(pt(1.0, 3.0)), 2.0);
        assert_eq!(geometric_mean(pt(4.0, 1.0)), 2.0);
        assert_eq!(geometric_mean(pt(2.0, 8.0)), 4.0);
        assert!(rel(log_mean(pt(4.0, 2.0)), 2.0 / 2f64.ln()) < 1e-15);
        assert!(rel(heronian_mean(pt(4.0, 1.0)), 7.0 / 3.0) < 1e-15);
        assert!(rel(heronian_mean(pt(9.0, 4.0)), 19.0 / 3.0) < 1e-15);
        let e = std::f64::consts::E;
        assert!(rel(identric_mean(pt(e, 1.0)), (e / (e - 1.0) - 1.0).exp()) < 1e-14);
        assert!(rel(power_exponential_z(pt(4.0, 2.0)), 2f64.powf(5.0 / 3.0)) < 1e-14);
        assert_eq!(power_exponential_z(pt(1.0, 1.0)), 1.0);
        assert!(rel(power_mean(1.0, pt(4.0, 2.0)), 3.0) < 1e-15);
        assert_eq!(power_mean(0.0, pt(4.0, 1.0)), 2.0);
        assert!(rel(power_mean(-1.0, pt(2.0, 6.0)), 3.0) < 1e-15);
    }

    #[test]
    fn diagonal_is_exact() {
        let x = 3.7;
        let d = pt(x, x);
        for v in [
            arithmetic_mean(d),
            geometric_mean(d),
            log_mean(d),
            identric_mean(d),
            power_exponential_z(d),
            heronian_mean(d),
            y_mean(d),
            power_mean(0.3, d),
        ] {
            assert_eq!(v, x);
        }
        let r = stolarsky(pp(1.2, -0.4), d).unwrap();
        assert_eq!((r.value, r.branch), (x, Branch::DiagonalAb));
        assert_eq!(four_param(pp(1.0, 2.0), gp(0.5, 3.0), d).unwrap().value, x);
    }

    #[test]
    fn log_mean_near_diagonal_uses_series() {
        let v = log_mean(pt(1.0, 1.0 + 1e-12));
        assert!(rel(v, 1.0 + 5e-13) < 1e-13);
        // either side of the series switch
        let b1: f64 = 1.0 + 2.0 * 0.999e-4 / (1.0 - 0.999e-4);
        let b2: f64 = 1.0 + 2.0 * 1.001e-4 / (1.0 - 1.001e-4);
        for b in [b1, b2] {
            let exact = (b - 1.0) / (b - 1.0).ln_1p();
            assert!(rel(log_mean(pt(1.0, b)), exact) < 2e-15, "b={b}");
        }
    }

    #[test]
    fn y_mean_is_identric_diagonal_branch() {
        let p = pt(4.0, 2.0);
        let i = identric_mean(p);
        let l = log_mean(p);
        let direct = i * (1.0 - 8.0 / (l * l)).exp();
        assert!(rel(y_mean(p), direct) < 1e-14);
        let via_family = two_param_identric(pp(1.0, 1.0), p).unwrap();
        assert_eq!(via_family.branch, Branch::PEqQ);
        assert!(rel(via_family.value, y_mean(p)) < 1e-14);
    }

    #[test]
    fn z_identity() {
        let p = pt(4.0, 2.0);
        let lhs = identric_mean(pt(16.0, 4.0)) / identric_mean(p);
        assert!(rel(lhs, power_exponential_z(p)) < 1e-13);
    }

    #[test]
    fn stolarsky_examples() {
        let r = stolarsky(pp(2.0, 1.0), pt(4.0, 2.0)).unwrap();
        assert!(rel(r.value, 3.0) < 1e-14);
        assert_eq!(r.branch, Branch::Generic);
        assert!(rel(stolarsky(pp(1.0, -1.0), pt(4.0, 1.0)).unwrap().value, 2.0) < 1e-14);
        let r = stolarsky(pp(1.0, 0.0), pt(4.0, 2.0)).unwrap();
        assert!(rel(r.value, 2.0 / 2f64.ln()) < 1e-14);
        assert_eq!(r.branch, Branch::QZero);
        let r = stolarsky(pp(0.0, 0.0), pt(9.0, 4.0)).unwrap();
        assert!(rel(r.value, 6.0) < 1e-15);
        assert_eq!(r.branch, Branch::BothZero);
        assert_eq!(stolarsky(pp(0.0, 2.0), pt(9.0, 4.0)).unwrap().branch, Branch::PZero);
        assert_eq!(stolarsky(pp(2.0, 2.0), pt(9.0, 4.0)).unwrap().branch, Branch::PEqQ);
    }

    #[test]
    fn stolarsky_p_eq_q_matches_closed_form() {
        // exp((a^p ln a - b^p ln b)/(a^p - b^p) - 1/p)
        let (a, b, p) = (5.0f64, 2.0f64, 1.7f64);
        let closed = ((a.powf(p) * a.ln() - b.powf(p) * b.ln()) / (a.powf(p) - b.powf(p)) - 1.0 / p).exp();
        assert!(rel(stolarsky(pp(p, p), pt(a, b)).unwrap().value, closed) < 1e-14);
    }

    #[test]
    fn gini_examples() {
        assert!(rel(gini(pp(1.0, 0.0), pt(4.0, 2.0)).unwrap().value, 3.0) < 1e-14);
        assert!(rel(gini(pp(0.0, 0.0), pt(4.0, 1.0)).unwrap().value, 2.0) < 1e-15);
        assert!(rel(gini(pp(1.0, 1.0), pt(4.0, 2.0)).unwrap().value, 2f64.powf(5.0 / 3.0)) < 1e-14);
    }

    #[test]
    fn heronian_examples() {
        assert!(rel(two_param_heronian(pp(1.0, 0.0), pt(4.0, 1.0)).unwrap().value, 7.0 / 3.0) < 1e-14);
        let r = two_param_heronian(pp(0.0, 0.0), pt(4.0, 1.0)).unwrap();
        assert!(rel(r.value, 2.0) < 1e-15);
        // limit probe from both sides of p = q = 0
        for eps in [1e-4, -1e-4] {
            let v = two_param_heronian(pp(eps, eps), pt(4.0, 1.0)).unwrap().value;
            assert!(rel(v, 2.0) < 1e-4);
        }
    }

    #[test]
    fn heronian_p_eq_q_is_the_log_derivative() {
        // a^(w_a) b^(w_b), w_a = (a^p + (ab)^(p/2)/2)/(a^p + (ab)^(p/2) + b^p)
        let (a, b, p) = (4.0f64, 1.0f64, 0.8f64);
        let g = (a * b).powf(p / 2.0);
        let den = a.powf(p) + g + b.powf(p);
        let wa = (a.powf(p) + g / 2.0) / den;
        let closed = a.powf(wa) * b.powf(1.0 - wa);
        assert!(rel(two_param_heronian(pp(p, p), pt(a, b)).unwrap().value, closed) < 1e-14);
    }

    #[test]
    fn four_param_examples() {
        let p42 = pt(4.0, 2.0);
        assert!(
            rel(
                four_param(pp(1.0, 0.0), gp(1.0, 0.0), p42).unwrap().value,
                2.0 / 2f64.ln()
            ) < 1e-14
        );
        assert!(rel(four_param(pp(1.0, 0.0), gp(2.0, 1.0), p42).unwrap().value, 3.0) < 1e-14);
        let r = four_param(pp(0.0, 0.0), gp(1.0, 0.0), pt(9.0, 4.0)).unwrap();
        assert!(rel(r.value, 6.0) < 1e-15);
        assert_eq!(r.branch, Branch::BothZero);
        let r = four_param(pp(0.0, 0.0), gp(2.0, 0.7), pt(9.0, 4.0)).unwrap();
        assert!(rel(r.value, 6.0) < 1e-15);
        let x = pt(5.0, 2.0);
        let base = four_param(pp(1.3, 0.4), gp(2.2, -0.7), x).unwrap().value;
        for v in [
            four_param(pp(0.4, 1.3), gp(2.2, -0.7), x).unwrap().value,
            four_param(pp(2.2, -0.7), gp(1.3, 0.4), x).unwrap().value,
            four_param(pp(1.3, 0.4), gp(-0.7, 2.2), x).unwrap().value,
            four_param_exchanged(pp(1.3, 0.4), gp(2.2, -0.7), x).unwrap().value,
        ] {
            assert!(rel(v, base) < 1e-12);
        }
    }

    #[test]
    fn four_param_generic_matches_naive_formula() {
        let (p, q, r, s, a, b) = (1.3f64, 0.4f64, 2.2f64, -0.7f64, 5.0f64, 2.0f64);
        let d = |e: f64| a.powf(e) - b.powf(e);
        let naive = (d(p * r) / d(p * s) * d(q * s) / d(q * r)).powf(1.0 / ((p - q) * (r - s)));
        assert!(rel(four_param(pp(p, q), gp(r, s), pt(a, b)).unwrap().value, naive) < 1e-13);
    }

    #[test]
    fn four_param_limit_branches() {
        let x = pt(5.0, 2.0);
        // F(p,p;r,s) = (I(a^pr,b^pr)/I(a^ps,b^ps))^(1/(p(r-s)))
        let (p, r, s) = (0.9f64, 1.4f64, 0.3f64);
        let ip = |e: f64| identric_mean(x.powered(e).unwrap());
        let expect = (ip(p * r) / ip(p * s)).powf(1.0 / (p * (r - s)));
        let got = four_param(pp(p, p), gp(r, s), x).unwrap();
        assert!(rel(got.value, expect) < 1e-13);
        assert_eq!(got.branch, Branch::PEqQ);
        // F(p,0;r,s) = (L(a^pr,b^pr)/L(a^ps,b^ps))^(1/(p(r-s)))
        let lp = |e: f64| log_mean(x.powered(e).unwrap());
        let expect = (lp(p * r) / lp(p * s)).powf(1.0 / (p * (r - s)));
        let got = four_param(pp(p, 0.0), gp(r, s), x).unwrap();
        assert!(rel(got.value, expect) < 1e-13);
        assert_eq!(got.branch, Branch::QZero);
        // degenerate generator pair is tagged as reached through the exchange
        let got = four_param(pp(1.5, 0.5), gp(1.0, 1.0), x).unwrap();
        assert_eq!(got.branch, Branch::Swapped);
        let direct = two_param_identric(pp(1.5, 0.5), x).unwrap();
        assert!(rel(got.value, direct.value) < 1e-13);
    }

    #[test]
    fn saturation_is_reported() {
        let err = stolarsky(pp(400.0, 1.0), pt(1.0, 10.0)).unwrap_err();
        assert!(matches!(err, MeanError::Saturation { .. }));
        let err = four_param(pp(30.0, 1.0), gp(20.0, 1.0), pt(1.0, 10.0)).unwrap_err();
        match err {
            MeanError::Saturation { exponent, .. } => assert!((exponent - 600.0 * 10f64.ln()).abs() < 1e-9),
            e => panic!("unexpected {e:?}"),
        }
        assert!(stolarsky(pp(300.0, 1.0), pt(1.0, 10.0)).is_ok());
    }

    #[test]
    fn reduction_table_examples() {
        assert_eq!(
            reduction_table(pp(1.0, 2.0), gp(0.7, -1.2)),
            Some(Reduction::Gini { p: 0.7, q: -1.2 })
        );
        assert_eq!(
            reduction_table(pp(1.0, 0.0), gp(0.7, -1.2)),
            Some(Reduction::Stolarsky { p: 0.7, q: -1.2 })
        );
        assert_eq!(
            reduction_table(pp(1.0, 3.0), gp(1.0, 0.0)),
            Some(Reduction::Heronian { p: 2.0, q: 0.0 })
        );
        assert_eq!(
            reduction_table(pp(0.5, 0.5), gp(2.0, 1.0)),
            Some(Reduction::Identric { p: 1.0, q: 0.5 })
        );
        assert_eq!(reduction_table(pp(1.0, 1.7), gp(2.0, 1.0)), None);
    }

    #[test]
    fn f32_evaluation_is_usable() {
        let p = MeanPoint::<f32>::new(4.0, 2.0).unwrap();
        let r = stolarsky(ParamPair::new(2.0f32, 1.0).unwrap(), p).unwrap();
        assert!((r.value - 3.0).abs() < 1e-5);
        let r = four_param(
            ParamPair::new(1.0f32, 0.0).unwrap(),
            GeneratorPair::new(2.0f32, 1.0).unwrap(),
            p,
        )
        .unwrap();
        assert!((r.value - 3.0).abs() < 1e-5);
    }
}
