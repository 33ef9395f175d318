//! Numerical evaluation of bivariate means, the homogeneous functions they
//! generate, and the Hessian and inequality harnesses built on top of them.
//!
//! The evaluators are generic over [`Scalar`] (`f32` or `f64`); the harness
//! modules (`convexity`, `inequalities`, `suite`) work in `f64`.
//!
//! ```
//! use extmeans::{means, Family, GeneratorPair64, MeanPoint64, ParamPair64};
//!
//! let pt = MeanPoint64::new(4.0, 2.0)?;
//! let s = means::stolarsky(ParamPair64::new(2.0, 1.0)?, pt)?;
//! assert!((s.value - 3.0).abs() < 1e-14);
//!
//! let f = Family::FourParam(GeneratorPair64::new(1.0, 0.0)?);
//! let g = f.evaluate(ParamPair64::new(0.0, 0.0)?, MeanPoint64::new(9.0, 4.0)?)?;
//! assert!((g.value - 6.0).abs() < 1e-14);
//! assert_eq!(g.branch.as_str(), "both_zero");
//! # Ok::<(), extmeans::MeanError>(())
//! ```

pub mod convexity;
pub mod divdiff;
pub mod error;
pub mod family;
pub mod fd;
pub mod hgf;
pub mod inequalities;
pub mod kernel;
pub mod means;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{MeanError, Result};
pub use family::Family;
pub use hgf::{Builtin, Generator, TDerivatives};
pub use means::{Branch, EvalResult, GeneratorPair, MeanPoint, ParamPair, Reduction};
pub use report::{CheckReport, SupremumRecord};
pub use scalar::Scalar;

pub type MeanPoint64 = MeanPoint<f64>;
pub type ParamPair64 = ParamPair<f64>;
pub type GeneratorPair64 = GeneratorPair<f64>;
pub type EvalResult64 = EvalResult<f64>;

pub type MeanPoint32 = MeanPoint<f32>;
pub type ParamPair32 = ParamPair<f32>;
pub type GeneratorPair32 = GeneratorPair<f32>;
pub type EvalResult32 = EvalResult<f32>;
