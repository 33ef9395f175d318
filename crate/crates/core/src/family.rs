//! Dispatch over the parametric families, with the generating mean of each.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MeanError, Result};
use crate::hgf::{hd_eval, Builtin};
use crate::means::{self, EvalResult, GeneratorPair, MeanPoint, ParamPair};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family<T> {
    Stolarsky,
    Gini,
    Identric2,
    Heronian2,
    FourParam(GeneratorPair<T>),
    Hd,
}

impl<T: Scalar> Family<T> {
    /// The four two-parameter mean families, each as `F(·,·;r,s)` with r + s > 0.
    pub fn classical() -> [Family<T>; 4] {
        [Family::Stolarsky, Family::Gini, Family::Identric2, Family::Heronian2]
    }

    /// Accepts `stolarsky`, `gini`, `identric2`, `heronian2`, `hd` and
    /// `F`/`four_param` (which needs the generator pair).
    pub fn from_name(name: &str, generator: Option<GeneratorPair<T>>) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "stolarsky" | "s" => Ok(Family::Stolarsky),
            "gini" | "g" => Ok(Family::Gini),
            "identric2" | "identric" | "i" => Ok(Family::Identric2),
            "heronian2" | "heronian" | "he" => Ok(Family::Heronian2),
            "hd" | "h_d" => Ok(Family::Hd),
            "f" | "four_param" | "four-param" => generator
                .map(Family::FourParam)
                .ok_or_else(|| MeanError::InvalidSpec("family F needs a generator pair (r, s)".into())),
            other => Err(MeanError::InvalidSpec(format!("unknown family `{other}`"))),
        }
    }

    pub fn evaluate(&self, pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<EvalResult<T>> {
        match self {
            Family::Stolarsky => means::stolarsky(pp, pt),
            Family::Gini => means::gini(pp, pt),
            Family::Identric2 => means::two_param_identric(pp, pt),
            Family::Heronian2 => means::two_param_heronian(pp, pt),
            Family::FourParam(gp) => means::four_param(pp, *gp, pt),
            Family::Hd => hd_eval(pp, pt),
        }
    }

    pub fn ln_evaluate(&self, pp: ParamPair<T>, pt: MeanPoint<T>) -> Result<T> {
        self.evaluate(pp, pt).map(|r| r.value.ln())
    }

    /// The pair (r, s) with `family = F(·,·;r,s)`; `None` for `H_D`.
    pub fn generator_pair(&self) -> Option<GeneratorPair<T>> {
        let gp = |r: f64, s: f64| {
            Some(GeneratorPair {
                r: T::lit(r),
                s: T::lit(s),
            })
        };
        match self {
            Family::Stolarsky => gp(1.0, 0.0),
            Family::Gini => gp(2.0, 1.0),
            Family::Identric2 => gp(1.0, 1.0),
            Family::Heronian2 => gp(1.5, 0.5),
            Family::FourParam(g) => Some(*g),
            Family::Hd => None,
        }
    }

    /// The generator of the family as an `H_f`.
    pub fn generator(&self) -> Builtin<T> {
        match self {
            Family::Stolarsky => Builtin::Logarithmic,
            Family::Gini => Builtin::Arithmetic,
            Family::Identric2 => Builtin::Identric,
            Family::Heronian2 => Builtin::Heronian,
            Family::FourParam(g) => Builtin::Stolarsky(*g),
            Family::Hd => Builtin::Difference,
        }
    }

    /// Whether the family is a mean (H_D is not).
    pub fn is_mean(&self) -> bool {
        !matches!(self, Family::Hd)
    }
}

impl<T: Scalar> fmt::Display for Family<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Stolarsky => f.write_str("stolarsky"),
            Family::Gini => f.write_str("gini"),
            Family::Identric2 => f.write_str("identric2"),
            Family::Heronian2 => f.write_str("heronian2"),
            Family::FourParam(g) => write!(f, "F({},{})", g.r, g.s),
            Family::Hd => f.write_str("hd"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgf::hf_eval;

    #[test]
    fn names_round_trip() {
        for fam in Family::<f64>::classical().into_iter().chain([Family::Hd]) {
            assert_eq!(Family::from_name(&fam.to_string(), None).unwrap(), fam);
        }
        let g = GeneratorPair::new(1.0, -1.0).unwrap();
        assert_eq!(Family::from_name("F", Some(g)).unwrap(), Family::FourParam(g));
        assert!(Family::<f64>::from_name("F", None).is_err());
        assert!(Family::<f64>::from_name("nope", None).is_err());
    }

    #[test]
    fn families_agree_with_their_four_param_form() {
        let pt = MeanPoint::new(6.0, 1.5).unwrap();
        let pp = ParamPair::new(1.7, -0.6).unwrap();
        for fam in Family::<f64>::classical() {
            let direct = fam.evaluate(pp, pt).unwrap().value;
            let via_f = Family::FourParam(fam.generator_pair().unwrap())
                .evaluate(pp, pt)
                .unwrap()
                .value;
            let via_hf = hf_eval(&fam.generator(), pp, pt).unwrap().value;
            assert!((direct - via_f).abs() < 1e-12 * direct, "{fam}");
            assert!((direct - via_hf).abs() < 1e-12 * direct, "{fam}");
        }
    }
}
