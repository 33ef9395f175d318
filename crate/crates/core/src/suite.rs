//! The check suites run by the command-line driver: convexity scans,
//! the inequality catalog, and numerical identities between the evaluators.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convexity::{self, Expectation, HessianConfig, Region, ScanSpec, Verdict};
use crate::divdiff::BAND_FACTOR;
use crate::error::MeanError;
use crate::family::Family;
use crate::hgf::{self, Builtin};
use crate::inequalities::{self, SamplingPlan};
use crate::means::{self, Reduction};
use crate::report::{witness, CheckReport, Outcome, Witness};
use crate::{GeneratorPair64, MeanPoint64, ParamPair64, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Convexity,
    Inequalities,
    Identities,
}

impl FromStr for Suite {
    type Err = MeanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "convexity" => Ok(Suite::Convexity),
            "inequalities" => Ok(Suite::Inequalities),
            "identities" => Ok(Suite::Identities),
            other => Err(MeanError::InvalidSpec(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random samples per inequality case.
    pub samples: usize,
    /// Log-spaced b values in the structured inequality grids.
    pub grid_b: usize,
    /// Quadrants to scan; `None` means both.
    pub region: Option<Region>,
    /// Restricts the convexity suite to one family.
    pub family: Option<Family<f64>>,
    pub hessian: HessianConfig,
    /// Random blends per family for the midpoint check.
    pub midpoint_samples: usize,
    /// Random configurations per family for the quadrature-oracle comparison.
    pub oracle_samples: usize,
    /// Relative tolerance of the oracle comparison.
    pub oracle_tol: f64,
    /// Samples for the H_D, Z and reduction identities.
    pub identity_samples: usize,
    /// Cases per singular locus for the continuity check.
    pub continuity_samples: usize,
    /// (t, a, b) probes per generator for the sign law and J criterion.
    pub probe_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 10_000,
            grid_b: 25,
            region: None,
            family: None,
            hessian: HessianConfig::default(),
            midpoint_samples: 10_000,
            oracle_samples: 1_000,
            oracle_tol: 1e-9,
            identity_samples: 1_000,
            continuity_samples: 100,
            probe_samples: 100,
        }
    }
}

impl SuiteConfig {
    fn regions(&self) -> Vec<Region> {
        match self.region {
            Some(r) => vec![r],
            None => vec![Region::PositiveQuadrant, Region::NegativeQuadrant],
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckReport> {
    match suite {
        Suite::All => {
            let mut out = run_convexity(cfg);
            out.extend(run_inequalities(cfg));
            out.extend(run_identities(cfg));
            out
        }
        Suite::Convexity => run_convexity(cfg),
        Suite::Inequalities => run_inequalities(cfg),
        Suite::Identities => run_identities(cfg),
    }
}

fn gp(r: f64, s: f64) -> GeneratorPair64 {
    GeneratorPair64 { r, s }
}

fn point(a: f64, b: f64) -> MeanPoint64 {
    MeanPoint64::new(a, b).expect("sampled points are positive")
}

/// Families scanned by default: the four mean families, two four-parameter
/// families with r + s < 0, and H_D.
pub fn convexity_families() -> Vec<Family<f64>> {
    let mut v = Family::classical().to_vec();
    v.push(Family::FourParam(gp(-1.0, -1.0)));
    v.push(Family::FourParam(gp(1.0, -2.0)));
    v.push(Family::Hd);
    v
}

/// Generators probed for the sign law and the J criterion.
pub fn probe_generators() -> Vec<Builtin<f64>> {
    vec![
        Builtin::Arithmetic,
        Builtin::Logarithmic,
        Builtin::Difference,
        Builtin::Stolarsky(gp(1.0, 0.0)),
        Builtin::Stolarsky(gp(1.0, -2.0)),
    ]
}

pub fn run_convexity(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let families = match cfg.family {
        Some(f) => vec![f],
        None => convexity_families(),
    };
    let mut out = Vec::new();
    for (k, family) in families.iter().enumerate() {
        for region in cfg.regions() {
            let mut spec = ScanSpec::standard(*family, region);
            spec.hessian = cfg.hessian;
            spec.seed = cfg.seed;
            out.push(convexity::scan_convexity(&spec));
            out.push(verdict_stability(&spec));
            if let Some(r) = midpoint_check(family, region, cfg, 100 + k as u64) {
                out.push(r);
            }
            if let Some(r) = boundary_midpoint(family, region, cfg, 300 + k as u64) {
                out.push(r);
            }
            if let Some(r) = route_consistency(&spec, cfg, 200 + k as u64) {
                out.push(r);
            }
        }
    }
    if cfg.family.is_none() {
        let samples = convexity::probe_samples(cfg.probe_samples.min(40), cfg.seed ^ 0x5eed);
        for g in probe_generators() {
            out.push(convexity::j_criterion_probe(&g, &samples, &cfg.hessian));
        }
        out.push(integral_hessian_check());
    }
    out
}

/// Halving the step must not flip any definite verdict.
fn verdict_stability(spec: &ScanSpec) -> CheckReport {
    let mut report = CheckReport::new(format!("verdict_stability/{}/{}", spec.family, spec.region.short()));
    let mut halved = spec.clone();
    for &pt in &spec.mean_points {
        for (pp, h) in convexity::scan_grid(spec, pt) {
            let Ok(h) = h else {
                report.record(Outcome::Inconclusive, 0.0, Witness::new);
                continue;
            };
            halved.hessian.step = Some(h.step_used / 2.0);
            let h2 = convexity::hessian_log_family(&spec.family, pp, pt, &halved.hessian);
            let w = || {
                witness([
                    ("p", pp.p),
                    ("q", pp.q),
                    ("a", pt.a()),
                    ("b", pt.b()),
                    ("step", h.step_used),
                ])
            };
            match h2 {
                Ok(h2) if h.verdict == Verdict::Inconclusive || h2.verdict == Verdict::Inconclusive => {
                    report.record(Outcome::Inconclusive, 0.0, w)
                }
                Ok(h2) => report.record(
                    if h.verdict == h2.verdict {
                        Outcome::Pass
                    } else {
                        Outcome::Fail
                    },
                    0.0,
                    w,
                ),
                Err(_) => report.record(Outcome::Inconclusive, 0.0, w),
            }
        }
    }
    report
}

fn sample_pair(rng: &mut ChaCha8Rng, sign: f64) -> ParamPair64 {
    let mut positive = || 4.0 * (1.0 - rng.gen::<f64>());
    ParamPair64 {
        p: sign * positive(),
        q: sign * positive(),
    }
}

fn sample_ratio_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> MeanPoint64 {
    let b = rng.gen_range(lo.ln()..=hi.ln()).exp();
    point(1.0, b)
}

fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let a: f64 = rng.gen();
        if a > 0.0 {
            return a;
        }
    }
}

/// Random blends in the quadrant: margins `α ln M₁ + β ln M₂ - ln M(blend)`
/// must be `≤ 1e-11` where log-concavity is expected, `≥ -1e-11` for log-convexity.
pub fn midpoint_check(family: &Family<f64>, region: Region, cfg: &SuiteConfig, stream: u64) -> Option<CheckReport> {
    let Expectation::Expect(v) = convexity::expected_verdict(family, region) else {
        return None;
    };
    let sign = if region == Region::PositiveQuadrant { 1.0 } else { -1.0 };
    let orient = if v == Verdict::Convex { 1.0 } else { -1.0 };
    let mut report = CheckReport::new(format!("midpoint/{}/{}", family, region.short()));
    let mut rng = cfg.rng(stream);
    for _ in 0..cfg.midpoint_samples {
        let (x, y) = (sample_pair(&mut rng, sign), sample_pair(&mut rng, sign));
        let alpha = open_unit(&mut rng);
        let pt = sample_ratio_point(&mut rng, 1.01, 1e3);
        let phi = |pp: ParamPair64| family.ln_evaluate(pp, pt);
        let w = || {
            witness([
                ("p1", x.p),
                ("q1", x.q),
                ("p2", y.p),
                ("q2", y.q),
                ("alpha", alpha),
                ("a", pt.a()),
                ("b", pt.b()),
            ])
        };
        match convexity::midpoint_test(phi, x, y, alpha, 1.0 - alpha) {
            Ok(m) => report.record_margin(orient * m, 1e-11, w),
            Err(_) => report.record(Outcome::Inconclusive, 0.0, w),
        }
    }
    Some(report)
}

/// Blends with both endpoints on the closed-quadrant boundary (the axes and
/// the origin), where the grid scans cannot difference.
pub fn boundary_midpoint(family: &Family<f64>, region: Region, cfg: &SuiteConfig, stream: u64) -> Option<CheckReport> {
    let Expectation::Expect(v) = convexity::expected_verdict(family, region) else {
        return None;
    };
    // H_D is undefined at p = 0 or q = 0
    family.generator_pair()?;
    let sign = if region == Region::PositiveQuadrant { 1.0 } else { -1.0 };
    let orient = if v == Verdict::Convex { 1.0 } else { -1.0 };
    let mut report = CheckReport::new(format!("boundary_midpoint/{}/{}", family, region.short()));
    let mut rng = cfg.rng(stream);
    let on_axis = |rng: &mut ChaCha8Rng| {
        let x = sign * 4.0 * (1.0 - rng.gen::<f64>());
        match rng.gen_range(0..5) {
            0 => ParamPair64 { p: 0.0, q: 0.0 },
            1 | 2 => ParamPair64 { p: 0.0, q: x },
            _ => ParamPair64 { p: x, q: 0.0 },
        }
    };
    for _ in 0..(cfg.midpoint_samples / 10).max(1) {
        let (x, y) = (on_axis(&mut rng), on_axis(&mut rng));
        let alpha = open_unit(&mut rng);
        let pt = sample_ratio_point(&mut rng, 1.01, 1e3);
        let phi = |pp: ParamPair64| family.ln_evaluate(pp, pt);
        let w = || {
            witness([
                ("p1", x.p),
                ("q1", x.q),
                ("p2", y.p),
                ("q2", y.q),
                ("alpha", alpha),
                ("b", pt.b()),
            ])
        };
        match convexity::midpoint_test(phi, x, y, alpha, 1.0 - alpha) {
            Ok(m) => report.record_margin(orient * m, 1e-11, w),
            Err(_) => report.record(Outcome::Inconclusive, 0.0, w),
        }
    }
    Some(report)
}

/// Where the Hessian gives a definite verdict, midpoint margins of ten nearby
/// blends must agree with it to `1e-10`.
fn route_consistency(spec: &ScanSpec, cfg: &SuiteConfig, stream: u64) -> Option<CheckReport> {
    let mut report = CheckReport::new(format!("route_consistency/{}/{}", spec.family, spec.region.short()));
    let mut rng = cfg.rng(stream);
    let pt = *spec.mean_points.first()?;
    for (pp, h) in convexity::scan_grid(spec, pt) {
        let orient = match h {
            Ok(h) if h.verdict == Verdict::Convex => 1.0,
            Ok(h) if h.verdict == Verdict::Concave => -1.0,
            _ => continue,
        };
        let radius = 0.2 * pp.p.abs().min(pp.q.abs());
        for _ in 0..10 {
            let mut near = || ParamPair64 {
                p: pp.p + rng.gen_range(-radius..=radius),
                q: pp.q + rng.gen_range(-radius..=radius),
            };
            let (x, y) = (near(), near());
            let alpha = open_unit(&mut rng);
            let phi = |q: ParamPair64| spec.family.ln_evaluate(q, pt);
            let w = || {
                witness([
                    ("p", pp.p),
                    ("q", pp.q),
                    ("p1", x.p),
                    ("q1", x.q),
                    ("p2", y.p),
                    ("q2", y.q),
                    ("alpha", alpha),
                ])
            };
            match convexity::midpoint_test(phi, x, y, alpha, 1.0 - alpha) {
                Ok(m) => report.record_margin(orient * m, 1e-10, w),
                Err(_) => report.record(Outcome::Inconclusive, 0.0, w),
            }
        }
    }
    Some(report)
}

/// Δ from the integral forms of the second partials agrees with the
/// finite-difference Δ to 5%.
fn integral_hessian_check() -> CheckReport {
    let mut report = CheckReport::new("integral_hessian");
    let generators = [
        Builtin::Logarithmic,
        Builtin::Arithmetic,
        Builtin::Identric,
        Builtin::Heronian,
        Builtin::Difference,
    ];
    for g in generators {
        for (p, q) in [(1.5, 0.5), (2.0, 3.0), (0.75, 1.25)] {
            for b in [3.0, 20.0] {
                let (pp, pt) = (ParamPair64 { p, q }, point(1.0, b));
                let (ipp, iqq, ipq) = convexity::integral_hessian(&g, pp, pt);
                let w = || witness([("p", p), ("q", q), ("b", b)]);
                match convexity::hessian_log_generator(&g, pp, pt, &HessianConfig::default()) {
                    Ok(h) => {
                        let delta = ipp * iqq - ipq * ipq;
                        report.record_margin(0.05 * h.delta.abs() - (delta - h.delta).abs(), 0.0, w);
                    }
                    Err(_) => report.record(Outcome::Inconclusive, 0.0, w),
                }
            }
        }
    }
    report
}

pub fn run_inequalities(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let plan = SamplingPlan {
        grid_b: cfg.grid_b,
        random: cfg.samples,
        seed: cfg.seed,
    };
    inequalities::catalog()
        .iter()
        .map(|c| inequalities::check_case(c, &plan).0)
        .collect()
}

pub fn run_identities(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = vec![
        hd_lifted(cfg),
        hd_gini_square(cfg),
        z_identity(cfg),
        reduction_table_check(cfg),
        inequalities::special_reductions_check(cfg.grid_b.max(2) * 8),
        inequalities::check_derivation_chains(&SamplingPlan {
            grid_b: cfg.grid_b,
            random: cfg.samples / 10,
            seed: cfg.seed,
        }),
    ];
    out.extend(oracle_equivalence(cfg));
    let samples = convexity::probe_samples(cfg.probe_samples, cfg.seed ^ 0x516e);
    for g in probe_generators() {
        out.push(convexity::sign_law_probe(&g, &samples));
    }
    out.extend(branch_continuity(cfg));
    out
}

fn rel_margin(x: f64, y: f64, tol: f64) -> f64 {
    tol - (x - y).abs() / y.abs()
}

/// `H_D(p,q) = e^(1/L(p,q)) S_{p,q}` for p, q > 0.
pub fn hd_lifted(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("hd_lifted");
    let mut rng = cfg.rng(1);
    for _ in 0..cfg.identity_samples {
        let pp = sample_pair(&mut rng, 1.0);
        let pt = sample_ratio_point(&mut rng, 1.01, 1e3);
        let w = || witness([("p", pp.p), ("q", pp.q), ("b", pt.b())]);
        match (hgf::hd_eval(pp, pt), means::stolarsky(pp, pt)) {
            (Ok(h), Ok(s)) => {
                let expect = (s.value.ln() + 1.0 / means::log_mean(point(pp.p, pp.q))).exp();
                report.record_margin(rel_margin(h.value, expect, 1e-12), 0.0, w);
            }
            _ => report.record(Outcome::Inconclusive, 0.0, w),
        }
    }
    report
}

/// `H_D(p,q)·G_{p,q} = H_D(2p,2q)²`.
pub fn hd_gini_square(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("hd_gini_square");
    let mut rng = cfg.rng(2);
    for _ in 0..cfg.identity_samples {
        let pp = sample_pair(&mut rng, 1.0);
        let pt = sample_ratio_point(&mut rng, 1.01, 1e3);
        let w = || witness([("p", pp.p), ("q", pp.q), ("b", pt.b())]);
        let doubled = ParamPair64 {
            p: 2.0 * pp.p,
            q: 2.0 * pp.q,
        };
        match (hgf::hd_eval(pp, pt), means::gini(pp, pt), hgf::hd_eval(doubled, pt)) {
            (Ok(h), Ok(g), Ok(h2)) => {
                let lhs = (h.value.ln() + g.value.ln()).exp();
                let rhs = (2.0 * h2.value.ln()).exp();
                report.record_margin(rel_margin(lhs, rhs, 1e-12), 0.0, w);
            }
            _ => report.record(Outcome::Inconclusive, 0.0, w),
        }
    }
    report
}

/// `I(a², b²)/I(a, b) = Z(a, b)`.
pub fn z_identity(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("z_identity");
    let mut rng = cfg.rng(3);
    let grid = inequalities::log_spaced(1.001, 1e6, cfg.grid_b.max(2));
    let random = (0..cfg.identity_samples).map(|_| rng.gen_range(1.001f64.ln()..=1e6f64.ln()).exp());
    for b in grid.into_iter().chain(random) {
        let pt = point(1.0, b);
        let lhs = means::identric_mean(point(1.0, b * b)) / means::identric_mean(pt);
        report.record_margin(rel_margin(lhs, means::power_exponential_z(pt), 1e-13), 0.0, || {
            witness([("b", b)])
        });
    }
    report
}

/// Wherever the reduction table fires, `F` matches the named family to `1e-10`.
pub fn reduction_table_check(cfg: &SuiteConfig) -> CheckReport {
    let mut report = CheckReport::new("reduction_table");
    let mut rng = cfg.rng(4);
    let per_form = (cfg.identity_samples / 4).max(1);
    for form in 0..4 {
        for _ in 0..per_form {
            let p: f64 = rng.gen_range(-3.0..3.0);
            let g = gp(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let pt = sample_ratio_point(&mut rng, 1.01, 1e2);
            let pp = match form {
                0 => ParamPair64 { p, q: 0.0 },
                1 => ParamPair64 { p, q: p },
                2 => ParamPair64 { p, q: 2.0 * p },
                _ => ParamPair64 { p: p / 2.0, q: 1.5 * p },
            };
            let w = || witness([("p", pp.p), ("q", pp.q), ("r", g.r), ("s", g.s), ("b", pt.b())]);
            let Some(red) = means::reduction_table(pp, g) else {
                report.record(Outcome::Fail, f64::NEG_INFINITY, w);
                continue;
            };
            let expected_kind = matches!(
                (form, red),
                (0, Reduction::Stolarsky { .. })
                    | (1, Reduction::Identric { .. })
                    | (2, Reduction::Gini { .. })
                    | (3, Reduction::Heronian { .. })
            ) || p.abs() < 1e-12;
            match (means::four_param(pp, g, pt), red.evaluate(pt)) {
                (Ok(f), Ok(d)) if expected_kind => report.record_margin(rel_margin(f.value, d.value, 1e-10), 0.0, w),
                (Ok(_), Ok(_)) => report.record(Outcome::Fail, f64::NEG_INFINITY, w),
                _ => report.record(Outcome::Inconclusive, 0.0, w),
            }
        }
    }
    report
}

/// Families compared against the quadrature oracle.
pub fn oracle_families() -> Vec<Family<f64>> {
    let mut v = Family::classical().to_vec();
    v.extend([gp(1.0, 0.0), gp(2.0, 1.0), gp(1.0, 1.0), gp(1.5, 0.5)].map(Family::FourParam));
    v
}

/// Closed forms against `exp(∫₀¹ T'(tp + (1-t)q) dt)` for parameters in
/// `[0.1, 4]` with `|p - q| > 1e-3` and `b/a ∈ [1.01, 100]`.
pub fn oracle_equivalence(cfg: &SuiteConfig) -> Vec<CheckReport> {
    oracle_families()
        .into_iter()
        .enumerate()
        .map(|(k, family)| {
            let mut report = CheckReport::new(format!("oracle_equivalence/{family}"));
            let mut rng = cfg.rng(10 + k as u64);
            let g = family.generator();
            for _ in 0..cfg.oracle_samples {
                let (p, q) = loop {
                    let (p, q) = (rng.gen_range(0.1f64..=4.0), rng.gen_range(0.1f64..=4.0));
                    if (p - q).abs() > 1e-3 {
                        break (p, q);
                    }
                };
                let pp = ParamPair64 { p, q };
                let a = 10f64.powf(rng.gen_range(-1.0..1.0));
                let pt = point(a, a * rng.gen_range(1.01f64.ln()..=100f64.ln()).exp());
                let w = || witness([("p", p), ("q", q), ("a", pt.a()), ("b", pt.b())]);
                match (
                    family.evaluate(pp, pt),
                    hgf::hf_integral_oracle(&g, pp, pt, cfg.oracle_tol * 1e-3),
                ) {
                    (Ok(c), Ok(o)) => report.record_margin(rel_margin(c.value, o, cfg.oracle_tol), 0.0, w),
                    _ => report.record(Outcome::Inconclusive, 0.0, w),
                }
            }
            report
        })
        .collect()
}

/// A removable-singularity locus of the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    PEqQ,
    QZero,
    PZero,
    REqS,
}

impl Locus {
    pub fn label(&self) -> &'static str {
        match self {
            Locus::PEqQ => "p_eq_q",
            Locus::QZero => "q_zero",
            Locus::PZero => "p_zero",
            Locus::REqS => "r_eq_s",
        }
    }
}

/// Worst relative jump of one locus configuration. `base` places the
/// configuration on the locus; `offset(d)` moves it a signed distance `d`
/// off the locus; `theta` is the route-switch threshold in that direction.
///
/// Checked: the ±10θ points average to the on-locus value (to second order),
/// and linear extrapolations from either side of each route boundary
/// (θ and 10³θ) meet.
fn jump_size<E: Fn(f64) -> Option<f64>>(eval: E, theta: f64) -> Option<(f64, f64)> {
    let m0 = eval(0.0)?;
    let (plus, minus) = (eval(10.0 * theta)?, eval(-10.0 * theta)?);
    let mut worst = ((plus + minus) / 2.0 - m0).abs() / m0;
    for edge in [theta, BAND_FACTOR * theta] {
        let side = |dir: f64| -> Option<f64> {
            let near = eval(edge * (1.0 + dir * 1e-3))?;
            let far = eval(edge * (1.0 + dir * 3e-3))?;
            Some(near + (near - far) / 2.0)
        };
        worst = worst.max((side(1.0)? - side(-1.0)?).abs() / m0);
    }
    Some((worst, (plus - minus).abs() / m0))
}

pub fn branch_continuity(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let delta = f64::branch_delta();
    [Locus::PEqQ, Locus::QZero, Locus::PZero, Locus::REqS]
        .into_iter()
        .enumerate()
        .map(|(k, locus)| {
            let mut report = CheckReport::new(format!("branch_continuity/{}", locus.label()));
            let mut rng = cfg.rng(30 + k as u64);
            let families = Family::<f64>::classical();
            let mut literal = 0f64;
            for i in 0..cfg.continuity_samples {
                let pt = sample_ratio_point(&mut rng, 1.01, 100.0);
                let x: f64 = rng.gen_range(0.2f64..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let g = gp(rng.gen_range(0.2..3.0), rng.gen_range(-3.0..-0.2));
                let family = if i % 5 == 4 {
                    Family::FourParam(g)
                } else {
                    families[i % 4]
                };
                let ev = |pp: ParamPair64| family.evaluate(pp, pt).ok().map(|r| r.value);
                let outcome = match locus {
                    // relative gap |p - q|/(1 + |p| + |q|) at p ≈ q ≈ x
                    Locus::PEqQ => jump_size(|d| ev(ParamPair64 { p: x + d, q: x }), delta * (1.0 + 2.0 * x.abs())),
                    Locus::QZero => jump_size(|d| ev(ParamPair64 { p: x, q: d }), delta * (1.0 + x.abs())),
                    Locus::PZero => jump_size(|d| ev(ParamPair64 { p: d, q: x }), delta * (1.0 + x.abs())),
                    Locus::REqS => {
                        let pp = ParamPair64 {
                            p: x,
                            q: rng.gen_range(-3.0..3.0),
                        };
                        let s = g.r;
                        jump_size(
                            |d| means::four_param(pp, gp(s + d, s), pt).ok().map(|r| r.value),
                            delta * (1.0 + 2.0 * s.abs()),
                        )
                    }
                };
                let w = || witness([("x", x), ("a", pt.a()), ("b", pt.b()), ("r", g.r), ("s", g.s)]);
                match outcome {
                    Some((jump, diff)) => {
                        literal = literal.max(diff);
                        report.record_margin(1e-8 - jump, 0.0, w);
                    }
                    None => report.record(Outcome::Inconclusive, 0.0, w),
                }
            }
            report.note(format!(
                "largest relative difference between the ±10θ points: {literal:.3e}"
            ));
            report
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: 200,
            grid_b: 5,
            midpoint_samples: 200,
            oracle_samples: 20,
            identity_samples: 40,
            continuity_samples: 10,
            probe_samples: 10,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn suites_parse() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_are_clean_and_deterministic() {
        let cfg = small();
        let a = run(Suite::All, &cfg);
        for r in &a {
            assert_eq!(r.failed, 0, "{r:?}");
        }
        assert_eq!(a, run(Suite::All, &cfg));
    }

    #[test]
    fn family_and_region_filters() {
        let cfg = SuiteConfig {
            family: Some(Family::Stolarsky),
            region: Some(Region::NegativeQuadrant),
            ..small()
        };
        let reports = run_convexity(&cfg);
        assert!(reports.iter().all(|r| r.case_id.contains("stolarsky/neg")));
        assert!(reports.iter().all(|r| r.failed == 0));
    }
}
