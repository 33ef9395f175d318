//! Catalog of mean inequalities and a seeded scanner that checks them.
//!
//! Each case reads `lower ≤ middle ≤ upper` (either bound may be absent) and
//! is checked in log scale, so `margin = min(ln middle - ln lower, ln upper - ln middle)`
//! and `margin ≥ 0` means the inequality holds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MeanError, Result};
use crate::family::Family;
use crate::means::{self, MeanPoint};
use crate::report::{witness, CheckReport, Outcome, SupremumRecord, Witness};
use crate::{GeneratorPair64, MeanPoint64, ParamPair64};

/// Free variables of a case. `beta` is always `1 - alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vars {
    pub r: f64,
    pub s: f64,
    pub p1: f64,
    pub q1: f64,
    pub p2: f64,
    pub q2: f64,
    pub alpha: f64,
}

impl Vars {
    pub fn generalized(r: f64, s: f64) -> Vars {
        Vars {
            r,
            s,
            ..Vars::default()
        }
    }

    pub fn double(p1: f64, q1: f64, p2: f64, q2: f64, alpha: f64) -> Vars {
        Vars {
            p1,
            q1,
            p2,
            q2,
            alpha,
            ..Vars::default()
        }
    }

    pub fn beta(&self) -> f64 {
        1.0 - self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Var {
    R,
    S,
    P1,
    Q1,
    P2,
    Q2,
    Alpha,
    Beta,
}

/// A parameter as a function of the free variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Param {
    Lit(f64),
    /// `c·v`
    Scaled(f64, Var),
    /// `α p₁ + β p₂`
    BlendP,
    /// `α q₁ + β q₂`
    BlendQ,
}

impl Param {
    pub fn eval(&self, v: &Vars) -> f64 {
        match *self {
            Param::Lit(x) => x,
            Param::Scaled(c, var) => {
                c * match var {
                    Var::R => v.r,
                    Var::S => v.s,
                    Var::P1 => v.p1,
                    Var::Q1 => v.q1,
                    Var::P2 => v.p2,
                    Var::Q2 => v.q2,
                    Var::Alpha => v.alpha,
                    Var::Beta => v.beta(),
                }
            }
            Param::BlendP => v.alpha * v.p1 + v.beta() * v.p2,
            Param::BlendQ => v.alpha * v.q1 + v.beta() * v.q2,
        }
    }
}

fn var(v: Var) -> Param {
    Param::Scaled(1.0, v)
}

fn lit(x: f64) -> Param {
    Param::Lit(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Kind {
    Stolarsky,
    Gini,
    Identric,
    Heronian,
    /// `F(·,·;r,s)` with the generator pair given as parameters.
    FourParam(Param, Param),
}

/// An expression over the means, evaluated as its logarithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Const(f64),
    Mean {
        kind: Kind,
        p: Param,
        q: Param,
    },
    /// `e^(1/L(p,q))` with `L` the logarithmic mean of the parameters.
    ExpInvLogMean {
        p: Param,
        q: Param,
    },
    Pow(Box<Expr>, Param),
    Product(Vec<Expr>),
}

impl Expr {
    pub fn ln_eval(&self, v: &Vars, pt: MeanPoint64) -> Result<f64> {
        match self {
            Expr::Const(c) => Ok(c.ln()),
            Expr::Mean { kind, p, q } => {
                let pp = ParamPair64::new(p.eval(v), q.eval(v))?;
                let family = match *kind {
                    Kind::Stolarsky => Family::Stolarsky,
                    Kind::Gini => Family::Gini,
                    Kind::Identric => Family::Identric2,
                    Kind::Heronian => Family::Heronian2,
                    Kind::FourParam(r, s) => Family::FourParam(GeneratorPair64::new(r.eval(v), s.eval(v))?),
                };
                family.ln_evaluate(pp, pt)
            }
            Expr::ExpInvLogMean { p, q } => {
                let lm = MeanPoint::new(p.eval(v), q.eval(v))
                    .map_err(|_| MeanError::OutsideDomain("e^(1/L(p,q)) needs p, q > 0".into()))?;
                Ok(1.0 / means::log_mean(lm))
            }
            Expr::Pow(base, e) => {
                let exponent = e.eval(v);
                if exponent == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(exponent * base.ln_eval(v, pt)?)
                }
            }
            Expr::Product(items) => items.iter().try_fold(0.0, |acc, e| Ok(acc + e.ln_eval(v, pt)?)),
        }
    }

    fn constant(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }
}

fn mean(kind: Kind, p: Param, q: Param) -> Expr {
    Expr::Mean { kind, p, q }
}

fn pow(e: Expr, power: Param) -> Expr {
    Expr::Pow(Box::new(e), power)
}

fn r_s(kind: Kind, c: f64) -> Expr {
    mean(kind, Param::Scaled(c, Var::R), Param::Scaled(c, Var::S))
}

fn fixed(kind: Kind, p: f64, q: f64) -> Expr {
    mean(kind, lit(p), lit(q))
}

/// `F(p,q;r,s)` with (r, s) the free generator pair.
fn four(p: f64, q: f64) -> Expr {
    mean(Kind::FourParam(var(Var::R), var(Var::S)), lit(p), lit(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Free (r, s); asserted only for r, s ≥ 0 with r + s > 0.
    Generalized,
    /// Free (p₁, q₁), (p₂, q₂) in the positive quadrant and α ∈ (0, 1).
    Double,
    /// No free parameters.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Le,
    Ge,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedConstant {
    pub name: &'static str,
    pub closed_form: &'static str,
    pub value: f64,
    /// Four-decimal rendering.
    pub decimal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCase {
    pub id: &'static str,
    pub statement: &'static str,
    pub lower: Option<Expr>,
    pub middle: Expr,
    pub upper: Option<Expr>,
    pub domain: Domain,
    pub constants: Vec<NamedConstant>,
}

impl InequalityCase {
    pub fn direction(&self) -> Direction {
        match (&self.lower, &self.upper) {
            (Some(_), Some(_)) => Direction::TwoSided,
            (Some(_), None) => Direction::Ge,
            _ => Direction::Le,
        }
    }

    /// Whether a sample of the free variables lies where the case is asserted.
    pub fn asserted_at(&self, v: &Vars) -> bool {
        match self.domain {
            Domain::Generalized => v.r >= 0.0 && v.s >= 0.0 && v.r + v.s > 0.0,
            Domain::Double | Domain::Fixed => true,
        }
    }

    /// Evaluates the case at one sample.
    pub fn evaluate(&self, v: &Vars, pt: MeanPoint64) -> Result<Evaluation> {
        let middle = self.middle.ln_eval(v, pt)?;
        let lower = self.lower.as_ref().map(|e| e.ln_eval(v, pt)).transpose()?;
        let upper = self.upper.as_ref().map(|e| e.ln_eval(v, pt)).transpose()?;
        Ok(Evaluation { lower, middle, upper })
    }

    /// Log of the ratio whose range is tracked: the middle itself when a
    /// bound is a constant, otherwise middle over the (first) bound.
    fn tracked(&self, e: &Evaluation) -> f64 {
        let constant_bound = self.lower.as_ref().and_then(Expr::constant).is_some()
            || self.upper.as_ref().and_then(Expr::constant).is_some();
        if constant_bound {
            e.middle
        } else if let Some(u) = e.upper {
            e.middle - u
        } else {
            e.middle - e.lower.unwrap_or(0.0)
        }
    }
}

/// Log-values of the three parts of a case at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub lower: Option<f64>,
    pub middle: f64,
    pub upper: Option<f64>,
}

/// Relative slack applied to each side in log scale.
pub const SLACK: f64 = 1e-11;

impl Evaluation {
    /// `(margin, violated)`; each side is allowed `SLACK·(1 + |ln lhs| + |ln rhs|)`.
    pub fn margin(&self) -> (f64, bool) {
        let mut margin = f64::INFINITY;
        let mut violated = false;
        let mut side = |lo: f64, hi: f64| {
            let m = hi - lo;
            violated |= m < -SLACK * (1.0 + lo.abs() + hi.abs());
            margin = margin.min(m);
        };
        if let Some(l) = self.lower {
            side(l, self.middle);
        }
        if let Some(u) = self.upper {
            side(self.middle, u);
        }
        (margin, violated)
    }
}

fn konst(name: &'static str, closed_form: &'static str, value: f64, decimal: f64) -> NamedConstant {
    NamedConstant {
        name,
        closed_form,
        value,
        decimal,
    }
}

fn one() -> NamedConstant {
    konst("one", "1", 1.0, 1.0)
}

/// `e^(α/L(p₁,q₁) + β/L(p₂,q₂) - 1/L(αp₁+βp₂, αq₁+βq₂))`.
fn log_mean_bound() -> Expr {
    Expr::Product(vec![
        pow(
            Expr::ExpInvLogMean {
                p: var(Var::P1),
                q: var(Var::Q1),
            },
            var(Var::Alpha),
        ),
        pow(
            Expr::ExpInvLogMean {
                p: var(Var::P2),
                q: var(Var::Q2),
            },
            var(Var::Beta),
        ),
        pow(
            Expr::ExpInvLogMean {
                p: Param::BlendP,
                q: Param::BlendQ,
            },
            lit(-1.0),
        ),
    ])
}

/// `M_{blend} / (M^α_{p₁,q₁} M^β_{p₂,q₂})`.
fn blend_ratio(kind: Kind) -> Expr {
    Expr::Product(vec![
        mean(kind, Param::BlendP, Param::BlendQ),
        pow(mean(kind, var(Var::P1), var(Var::Q1)), Param::Scaled(-1.0, Var::Alpha)),
        pow(mean(kind, var(Var::P2), var(Var::Q2)), Param::Scaled(-1.0, Var::Beta)),
    ])
}

/// All thirteen cases.
pub fn catalog() -> Vec<InequalityCase> {
    use Kind::*;
    let e = std::f64::consts::E;
    let sqrt8 = 8f64.sqrt();
    let i = || fixed(Stolarsky, 1.0, 1.0);
    let a23 = || fixed(Stolarsky, 4.0 / 3.0, 2.0 / 3.0);
    let he = || fixed(Stolarsky, 1.5, 0.5);
    let z = || fixed(Gini, 1.0, 1.0);
    let generalized = |id, statement, lower: Option<Expr>, middle, upper: Option<Expr>| InequalityCase {
        id,
        statement,
        lower,
        middle,
        upper,
        domain: Domain::Generalized,
        constants: vec![],
    };
    let two_sided = |id, statement, middle, lo: NamedConstant, hi: NamedConstant| InequalityCase {
        id,
        statement,
        lower: Some(Expr::Const(lo.value)),
        middle,
        upper: Some(Expr::Const(hi.value)),
        domain: Domain::Fixed,
        constants: vec![lo, hi],
    };
    let double = |id, statement, kind| InequalityCase {
        id,
        statement,
        lower: Some(Expr::Const(1.0)),
        middle: blend_ratio(kind),
        upper: Some(log_mean_bound()),
        domain: Domain::Double,
        constants: vec![one()],
    };
    let e124 = konst("e^(1/24)", "e^(1/24)", (1.0f64 / 24.0).exp(), 1.0425);

    vec![
        generalized(
            "gen_lin",
            "S_{r,s} ≤ G_{r/3,s/3}",
            None,
            r_s(Stolarsky, 1.0),
            Some(r_s(Gini, 1.0 / 3.0)),
        ),
        generalized(
            "gen_jia_cao",
            "S_{r,s} ≤ He_{r/2,s/2}",
            None,
            r_s(Stolarsky, 1.0),
            Some(r_s(Heronian, 0.5)),
        ),
        generalized(
            "gen_sandor",
            "I_{r,s} ≥ S_{2r,2s}",
            Some(r_s(Stolarsky, 2.0)),
            r_s(Identric, 1.0),
            None,
        ),
        generalized(
            "new_ineq_1",
            "S_{r,s} ≤ He⁴_{r/2,s/2} G⁻³_{r/3,s/3}",
            None,
            r_s(Stolarsky, 1.0),
            Some(Expr::Product(vec![
                pow(r_s(Heronian, 0.5), lit(4.0)),
                pow(r_s(Gini, 1.0 / 3.0), lit(-3.0)),
            ])),
        ),
        generalized(
            "new_ineq_2",
            "I_{r,s} ≤ G⁵_{2r/5,2s/5} He⁻⁴_{r/2,s/2}",
            None,
            r_s(Identric, 1.0),
            Some(Expr::Product(vec![
                pow(r_s(Gini, 0.4), lit(5.0)),
                pow(r_s(Heronian, 0.5), lit(-4.0)),
            ])),
        ),
        double(
            "stolarsky_double",
            "1 ≤ S_{αp₁+βp₂,αq₁+βq₂}/(S^α_{p₁,q₁} S^β_{p₂,q₂}) ≤ e^(α/L(p₁,q₁)+β/L(p₂,q₂)-1/L(αp₁+βp₂,αq₁+βq₂))",
            Stolarsky,
        ),
        double(
            "gini_double",
            "1 ≤ G_{αp₁+βp₂,αq₁+βq₂}/(G^α_{p₁,q₁} G^β_{p₂,q₂}) ≤ e^(α/L(p₁,q₁)+β/L(p₂,q₂)-1/L(αp₁+βp₂,αq₁+βq₂))",
            Gini,
        ),
        two_sided(
            "identric_power",
            "1 ≤ I/A_{2/3} ≤ √8/e",
            Expr::Product(vec![i(), pow(a23(), lit(-1.0))]),
            one(),
            konst("sqrt8_over_e", "√8·e⁻¹", sqrt8 / e, 1.0405),
        ),
        two_sided(
            "power_heronian",
            "1 ≤ A_{2/3}/He ≤ 3/√8",
            Expr::Product(vec![a23(), pow(he(), lit(-1.0))]),
            one(),
            konst("three_over_sqrt8", "3/√8", 3.0 / sqrt8, 1.0607),
        ),
        two_sided(
            "new_est_1",
            "16√2/(9e) ≤ I/(A³_{2/3} He⁻²) ≤ 1",
            Expr::Product(vec![i(), pow(a23(), lit(-3.0)), pow(he(), lit(2.0))]),
            konst(
                "sixteen_sqrt2_over_9e",
                "16√2·e⁻¹/9",
                16.0 * 2f64.sqrt() / (9.0 * e),
                0.9249,
            ),
            one(),
        ),
        two_sided(
            "new_est_2a",
            "1 ≤ I/√(I_{6/5} I_{4/5}) ≤ e^(1/24)",
            Expr::Product(vec![
                i(),
                pow(fixed(Stolarsky, 1.2, 1.2), lit(-0.5)),
                pow(fixed(Stolarsky, 0.8, 0.8), lit(-0.5)),
            ]),
            one(),
            e124.clone(),
        ),
        two_sided(
            "new_est_2b",
            "1 ≤ Z/√(Z_{6/5} Z_{4/5}) ≤ e^(1/24)",
            Expr::Product(vec![
                z(),
                pow(fixed(Gini, 1.2, 1.2), lit(-0.5)),
                pow(fixed(Gini, 0.8, 0.8), lit(-0.5)),
            ]),
            one(),
            e124,
        ),
        two_sided(
            "new_est_3",
            "1 ≤ Z/(2A - G) ≤ 3/e",
            Expr::Product(vec![z(), pow(fixed(Gini, 0.5, 1.5), lit(-1.0))]),
            one(),
            konst("three_over_e", "3·e⁻¹", 3.0 / e, 1.1036),
        ),
    ]
}

pub fn case(id: &str) -> Option<InequalityCase> {
    catalog().into_iter().find(|c| c.id == id)
}

/// The same generalized inequality written with the four-parameter means
/// `F(p,q) = F(p,q;r,s)`: `(lower, middle, upper)`.
pub fn derivation_chain(id: &str) -> Option<(Option<Expr>, Expr, Option<Expr>)> {
    let le = |m: Expr, u: Expr| Some((None, m, Some(u)));
    match id {
        "gen_lin" => le(four(1.0, 0.0), four(1.0 / 3.0, 2.0 / 3.0)),
        "gen_jia_cao" => le(four(1.0, 0.0), four(0.75, 0.25)),
        "gen_sandor" => Some((Some(four(2.0, 0.0)), four(1.0, 1.0), None)),
        "new_ineq_1" => le(
            four(1.0, 0.0),
            Expr::Product(vec![
                pow(four(0.75, 0.25), lit(4.0)),
                pow(four(2.0 / 3.0, 1.0 / 3.0), lit(-3.0)),
            ]),
        ),
        "new_ineq_2" => le(
            four(1.0, 1.0),
            Expr::Product(vec![pow(four(0.8, 0.4), lit(5.0)), pow(four(0.75, 0.25), lit(-4.0))]),
        ),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Number of log-spaced b values in the structured grid (a = 1).
    pub grid_b: usize,
    /// Number of random samples.
    pub random: usize,
    pub seed: u64,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            grid_b: 25,
            random: 10_000,
            seed: 0,
        }
    }
}

/// Range of b (with a = 1) for a domain.
pub fn b_range(domain: Domain) -> (f64, f64) {
    match domain {
        Domain::Double => (1.01, 1e3),
        Domain::Generalized | Domain::Fixed => (1.001, 1e6),
    }
}

/// `n` log-spaced points covering `[lo, hi]`.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => (l + (h - l) * k as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// Values of (r, s) excluded because a generalized case degenerates near them.
pub fn in_exclusion_band(r: f64, s: f64) -> bool {
    const BAND: f64 = 0.05;
    r.abs() < BAND || s.abs() < BAND || (r - s).abs() < BAND || (r + s).abs() < BAND
}

const RS_GRID: [f64; 10] = [-4.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 4.0];
const PQ_GRID: [f64; 4] = [0.25, 1.0, 2.5, 4.0];
const ALPHA_GRID: [f64; 3] = [0.25, 0.5, 0.75];

/// Structured and random samples of the free variables for a domain.
pub fn samples(domain: Domain, plan: &SamplingPlan) -> Vec<(Vars, f64)> {
    let (lo, hi) = b_range(domain);
    let grid_b = log_spaced(lo, hi, plan.grid_b.max(1));
    let mut out = Vec::new();
    match domain {
        Domain::Fixed => out.extend(grid_b.iter().map(|&b| (Vars::default(), b))),
        Domain::Generalized => {
            for &r in &RS_GRID {
                for &s in &RS_GRID {
                    if !in_exclusion_band(r, s) {
                        out.extend(grid_b.iter().map(|&b| (Vars::generalized(r, s), b)));
                    }
                }
            }
        }
        Domain::Double => {
            for &p1 in &PQ_GRID {
                for &q1 in &PQ_GRID {
                    for &p2 in &PQ_GRID {
                        for &q2 in &PQ_GRID {
                            for &alpha in &ALPHA_GRID {
                                let b = grid_b[out.len() % grid_b.len()];
                                out.push((Vars::double(p1, q1, p2, q2, alpha), b));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let (ll, lh) = (lo.ln(), hi.ln());
    let mut k = 0;
    while k < plan.random {
        let vars = match domain {
            Domain::Fixed => Vars::default(),
            Domain::Generalized => {
                let (r, s) = (rng.gen_range(-4.0..=4.0), rng.gen_range(-4.0..=4.0));
                if in_exclusion_band(r, s) {
                    continue;
                }
                Vars::generalized(r, s)
            }
            Domain::Double => {
                let mut positive = || 4.0 * (1.0 - rng.gen::<f64>());
                let (p1, q1, p2, q2) = (positive(), positive(), positive(), positive());
                let alpha = loop {
                    let a: f64 = rng.gen();
                    if a > 0.0 {
                        break a;
                    }
                };
                Vars::double(p1, q1, p2, q2, alpha)
            }
        };
        let b = rng.gen_range(ll..=lh).exp();
        out.push((vars, b));
        k += 1;
    }
    out
}

fn sample_witness(v: &Vars, b: f64, domain: Domain, e: Option<&Evaluation>) -> Witness {
    let mut w = witness([("a", 1.0), ("b", b)]);
    match domain {
        Domain::Generalized => {
            w.insert("r".into(), v.r);
            w.insert("s".into(), v.s);
        }
        Domain::Double => {
            for (k, x) in [
                ("p1", v.p1),
                ("q1", v.q1),
                ("p2", v.p2),
                ("q2", v.q2),
                ("alpha", v.alpha),
            ] {
                w.insert(k.into(), x);
            }
        }
        Domain::Fixed => {}
    }
    if let Some(e) = e {
        w.insert("ln_middle".into(), e.middle);
        if let Some(l) = e.lower {
            w.insert("ln_lower".into(), l);
        }
        if let Some(u) = e.upper {
            w.insert("ln_upper".into(), u);
        }
    }
    w
}

/// Scans one case. Samples outside the asserted domain are tallied in the
/// notes but do not count towards the report totals.
pub fn check_case(case: &InequalityCase, plan: &SamplingPlan) -> (CheckReport, SupremumRecord) {
    let mut report = CheckReport::new(case.id);
    let mut sup = SupremumRecord::default();
    let mut outside = CheckReport::new(case.id);
    for (v, b) in samples(case.domain, plan) {
        let pt = MeanPoint64::new(1.0, b).expect("b > 0");
        let target = if case.asserted_at(&v) {
            &mut report
        } else {
            &mut outside
        };
        match case.evaluate(&v, pt) {
            Ok(e) => {
                let (margin, violated) = e.margin();
                let outcome = if violated { Outcome::Fail } else { Outcome::Pass };
                target.record(outcome, margin, || sample_witness(&v, b, case.domain, Some(&e)));
                if case.asserted_at(&v) {
                    sup.observe(case.tracked(&e).exp(), || sample_witness(&v, b, case.domain, None));
                }
            }
            Err(_) => target.record(Outcome::Inconclusive, 0.0, || sample_witness(&v, b, case.domain, None)),
        }
    }
    if outside.total > 0 {
        report.note(format!(
            "report-only samples outside r,s ≥ 0: {} (holds {}, violated {}, inconclusive {}, worst margin {:.3e})",
            outside.total,
            outside.passed,
            outside.failed,
            outside.inconclusive,
            outside.worst_margin.unwrap_or(f64::NAN)
        ));
    }
    if sup.samples > 0 {
        report.note(format!(
            "observed range [{:.9}, {:.9}]",
            sup.observed_inf, sup.observed_sup
        ));
    }
    (report, sup)
}

/// Checks that each generalized case and its four-parameter form agree side
/// by side to `1e-12` (relative, log scale).
pub fn check_derivation_chains(plan: &SamplingPlan) -> CheckReport {
    let mut report = CheckReport::new("derivation_chains");
    for case in catalog().into_iter().filter(|c| c.domain == Domain::Generalized) {
        let (lower, middle, upper) = derivation_chain(case.id).expect("every generalized case has a chain");
        let chain = InequalityCase {
            lower,
            middle,
            upper,
            ..case.clone()
        };
        for (v, b) in samples(case.domain, plan)
            .into_iter()
            .filter(|(v, _)| case.asserted_at(v))
        {
            let pt = MeanPoint64::new(1.0, b).expect("b > 0");
            match (case.evaluate(&v, pt), chain.evaluate(&v, pt)) {
                (Ok(x), Ok(y)) => {
                    let gap = |a: Option<f64>, c: Option<f64>| match (a, c) {
                        (Some(a), Some(c)) => 1e-12 * (1.0 + a.abs()) - (a - c).abs(),
                        _ => f64::INFINITY,
                    };
                    let margin = gap(Some(x.middle), Some(y.middle))
                        .min(gap(x.lower, y.lower))
                        .min(gap(x.upper, y.upper));
                    report.record_margin(margin, 0.0, || {
                        let mut w = sample_witness(&v, b, case.domain, Some(&x));
                        w.insert(format!("case_{}", case.id), 1.0);
                        w
                    });
                }
                _ => report.record(Outcome::Inconclusive, 0.0, Witness::new),
            }
        }
    }
    report
}

/// A named specialization `lhs ≤ rhs` in terms of classical means, and the
/// generalized case and (r, s) it comes from.
pub struct Specialization {
    pub statement: &'static str,
    pub case_id: &'static str,
    pub r: f64,
    pub s: f64,
    /// `ln lhs`, `ln rhs` with `lhs ≤ rhs`.
    pub sides: fn(MeanPoint64) -> (f64, f64),
}

/// `ln M_p(a,b) = ln M(a^p, b^p)/p`.
fn power_type(m: fn(MeanPoint64) -> f64, p: f64, pt: MeanPoint64) -> f64 {
    m(pt.powered(p).expect("moderate powers stay finite")).ln() / p
}

fn ln_gini(p: f64, q: f64, pt: MeanPoint64) -> f64 {
    Family::Gini.ln_evaluate(ParamPair64 { p, q }, pt).unwrap_or(f64::NAN)
}

fn ln_heronian(p: f64, q: f64, pt: MeanPoint64) -> f64 {
    Family::Heronian2
        .ln_evaluate(ParamPair64 { p, q }, pt)
        .unwrap_or(f64::NAN)
}

pub fn specializations() -> Vec<Specialization> {
    use means::{arithmetic_mean as a, heronian_mean as he, identric_mean as i, log_mean as l};
    use means::{power_exponential_z as z, y_mean as y};
    vec![
        Specialization {
            statement: "L ≤ A_{1/3}",
            case_id: "gen_lin",
            r: 1.0,
            s: 0.0,
            sides: |pt| (l(pt).ln(), power_type(a, 1.0 / 3.0, pt)),
        },
        Specialization {
            statement: "I ≤ Z_{1/3}",
            case_id: "gen_lin",
            r: 1.0,
            s: 1.0,
            sides: |pt| (i(pt).ln(), power_type(z, 1.0 / 3.0, pt)),
        },
        Specialization {
            statement: "L ≤ He_{1/2}",
            case_id: "gen_jia_cao",
            r: 1.0,
            s: 0.0,
            sides: |pt| (l(pt).ln(), power_type(he, 0.5, pt)),
        },
        Specialization {
            statement: "L₂ ≤ I",
            case_id: "gen_sandor",
            r: 1.0,
            s: 0.0,
            sides: |pt| (power_type(l, 2.0, pt), i(pt).ln()),
        },
        Specialization {
            statement: "I₂ ≤ Y",
            case_id: "gen_sandor",
            r: 1.0,
            s: 1.0,
            sides: |pt| (power_type(i, 2.0, pt), y(pt).ln()),
        },
        Specialization {
            statement: "A₂ ≤ Z",
            case_id: "gen_sandor",
            r: 2.0,
            s: 1.0,
            sides: |pt| (power_type(a, 2.0, pt), z(pt).ln()),
        },
        Specialization {
            statement: "L ≤ He⁴_{1/2} A⁻³_{1/3}",
            case_id: "new_ineq_1",
            r: 1.0,
            s: 0.0,
            sides: |pt| {
                (
                    l(pt).ln(),
                    4.0 * power_type(he, 0.5, pt) - 3.0 * power_type(a, 1.0 / 3.0, pt),
                )
            },
        },
        Specialization {
            statement: "I ≤ A⁵_{2/5} He⁻⁴_{1/2}",
            case_id: "new_ineq_2",
            r: 1.0,
            s: 0.0,
            sides: |pt| (i(pt).ln(), 5.0 * power_type(a, 0.4, pt) - 4.0 * power_type(he, 0.5, pt)),
        },
        Specialization {
            statement: "Z ≤ G⁵_{4/5,2/5} He⁻⁴_{1,1/2}",
            case_id: "new_ineq_2",
            r: 2.0,
            s: 1.0,
            sides: |pt| {
                (
                    z(pt).ln(),
                    5.0 * ln_gini(0.8, 0.4, pt) - 4.0 * ln_heronian(1.0, 0.5, pt),
                )
            },
        },
    ]
}

/// Checks every specialization on the standard b grid, and that its two sides
/// coincide (to `1e-12`, log scale) with the generalized case at its (r, s).
pub fn special_reductions_check(grid_b: usize) -> CheckReport {
    let mut report = CheckReport::new("special_reductions");
    let (lo, hi) = b_range(Domain::Fixed);
    for spec in specializations() {
        let general = case(spec.case_id).expect("specializations name catalog cases");
        let v = Vars::generalized(spec.r, spec.s);
        for b in log_spaced(lo, hi, grid_b) {
            let pt = MeanPoint64::new(1.0, b).expect("b > 0");
            let (lhs, rhs) = (spec.sides)(pt);
            let w = || {
                let mut w = witness([
                    ("a", 1.0),
                    ("b", b),
                    ("r", spec.r),
                    ("s", spec.s),
                    ("ln_lhs", lhs),
                    ("ln_rhs", rhs),
                ]);
                w.insert(format!("case_{}", spec.case_id), 1.0);
                w
            };
            let slack = SLACK * (1.0 + lhs.abs() + rhs.abs());
            report.record_margin(rhs - lhs, slack, w);
            // the generalized case at (r, s), arranged as lhs ≤ rhs
            let implied = general.evaluate(&v, pt).map(|e| match (e.lower, e.upper) {
                (Some(l), None) => (l, e.middle),
                (_, Some(u)) => (e.middle, u),
                (None, None) => (e.middle, e.middle),
            });
            match implied {
                Ok((gl, gr)) => {
                    let agree = 1e-12 * (1.0 + lhs.abs()) - (gl - lhs).abs();
                    let agree = agree.min(1e-12 * (1.0 + rhs.abs()) - (gr - rhs).abs());
                    report.record_margin(agree, 0.0, w);
                }
                Err(_) => report.record(Outcome::Inconclusive, 0.0, w),
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_thirteen_cases_with_consistent_constants() {
        let cases = catalog();
        assert_eq!(cases.len(), 13);
        for c in &cases {
            for k in &c.constants {
                assert!((k.value - k.decimal).abs() < 1e-4, "{} {}", c.id, k.name);
            }
        }
        let sy = case("identric_power").unwrap();
        assert_eq!(sy.direction(), Direction::TwoSided);
        assert!((sy.constants[1].value - 1.0405).abs() < 1e-4);
        assert!((case("power_heronian").unwrap().constants[1].value - 1.0607).abs() < 1e-4);
        assert!((case("new_est_3").unwrap().constants[1].value - 1.1036).abs() < 1e-4);
        assert_eq!(case("gen_sandor").unwrap().direction(), Direction::Ge);
        assert_eq!(case("gen_lin").unwrap().direction(), Direction::Le);
    }

    #[test]
    fn gen_lin_reduces_to_lin() {
        let c = case("gen_lin").unwrap();
        for b in log_spaced(1.001, 1e6, 40) {
            let pt = MeanPoint64::new(1.0, b).unwrap();
            let e = c.evaluate(&Vars::generalized(1.0, 0.0), pt).unwrap();
            let direct = power_type(means::arithmetic_mean, 1.0 / 3.0, pt);
            assert!((e.upper.unwrap() - direct).abs() < 1e-12 * (1.0 + direct.abs()));
            assert!(!e.margin().1);
        }
    }

    #[test]
    fn identric_power_at_one_ten() {
        let c = case("identric_power").unwrap();
        let e = c
            .evaluate(&Vars::default(), MeanPoint64::new(1.0, 10.0).unwrap())
            .unwrap();
        let ratio = e.middle.exp();
        assert!((1.0..=1.0405).contains(&ratio), "{ratio}");
    }

    #[test]
    fn stolarsky_double_example() {
        let c = case("stolarsky_double").unwrap();
        let e = c
            .evaluate(
                &Vars::double(2.0, 1.0, 1.0, 3.0, 0.5),
                MeanPoint64::new(1.0, 7.0).unwrap(),
            )
            .unwrap();
        let (margin, violated) = e.margin();
        assert!(!violated && margin >= 0.0, "{e:?}");
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let plan = SamplingPlan {
            grid_b: 5,
            random: 200,
            seed: 11,
        };
        let a = samples(Domain::Double, &plan);
        assert_eq!(a, samples(Domain::Double, &plan));
        for (v, b) in &a {
            assert!((1.01..=1e3).contains(b));
            for x in [v.p1, v.q1, v.p2, v.q2] {
                assert!(x > 0.0 && x <= 4.0);
            }
            assert!(v.alpha > 0.0 && v.alpha < 1.0);
        }
        for (v, _) in samples(Domain::Generalized, &plan) {
            assert!(!in_exclusion_band(v.r, v.s));
        }
    }

    #[test]
    fn small_scan_of_every_case() {
        let plan = SamplingPlan {
            grid_b: 6,
            random: 300,
            seed: 5,
        };
        for c in catalog() {
            let (r, sup) = check_case(&c, &plan);
            assert_eq!(r.failed, 0, "{r:?}");
            assert!(sup.observed_inf <= sup.observed_sup);
        }
    }

    #[test]
    fn derivation_chains_and_specializations() {
        let plan = SamplingPlan {
            grid_b: 4,
            random: 100,
            seed: 2,
        };
        let r = check_derivation_chains(&plan);
        assert_eq!(r.failed, 0, "{r:?}");
        let r = special_reductions_check(20);
        assert_eq!(r.failed, 0, "{r:?}");
    }
}
