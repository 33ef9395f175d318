//! Log-convexity of `(p, q) ↦ ln M(p,q;a,b)`: finite-difference Hessians,
//! midpoint tests, quadrant scans against the r + s sign rule, and probes of
//! the `J` criterion and the sign law `sgn T''' = -sgn(t)·sgn(J)`.

use std::cell::RefCell;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MeanError, Result};
use crate::family::Family;
use crate::fd;
use crate::hgf::{self, hf_eval, Generator};
use crate::report::{witness, CheckReport, Outcome, Witness};
use crate::{MeanPoint64, ParamPair64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HessianConfig {
    /// Base step; `None` means `ε^(1/6)·(1 + max(|p|, |q|))`.
    pub step: Option<f64>,
    /// Entries with `|·| ≤ sign_tol·(|ln M| + 1)` are treated as zero.
    pub sign_tol: f64,
}

impl Default for HessianConfig {
    fn default() -> Self {
        HessianConfig {
            step: None,
            sign_tol: 1e-7,
        }
    }
}

impl HessianConfig {
    pub fn step_at(&self, pp: ParamPair64) -> f64 {
        self.step
            .unwrap_or_else(|| f64::EPSILON.powf(1.0 / 6.0) * (1.0 + pp.p.abs().max(pp.q.abs())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Convex,
    Concave,
    Inconclusive,
    Indefinite,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Convex => "convex",
            Verdict::Concave => "concave",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Indefinite => "indefinite",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HessianReport {
    pub d2_pp: f64,
    pub d2_qq: f64,
    pub d2_pq: f64,
    pub delta: f64,
    pub verdict: Verdict,
    pub step_used: f64,
    /// `|m₁ - m₂|` between the cross-stencil and diagonal-direction mixed estimates.
    pub mixed_asymmetry: f64,
    /// The zero threshold applied to the diagonal entries.
    pub tolerance: f64,
}

impl HessianReport {
    fn classify(d2_pp: f64, d2_qq: f64, d2_pq: f64, tol: f64) -> (f64, Verdict) {
        let delta = d2_pp * d2_qq - d2_pq * d2_pq;
        let delta_tol = tol * (d2_pp.abs() + d2_qq.abs() + 2.0 * d2_pq.abs()) + tol * tol;
        let verdict = if d2_pp.abs() <= tol || d2_qq.abs() <= tol || delta.abs() <= delta_tol {
            Verdict::Inconclusive
        } else if delta > 0.0 && d2_pp > 0.0 {
            Verdict::Convex
        } else if delta > 0.0 {
            Verdict::Concave
        } else {
            Verdict::Indefinite
        };
        (delta, verdict)
    }
}

/// Hessian of `(p, q) ↦ φ(p, q)` where `φ` is a log-mean.
pub fn hessian<E>(phi: E, pp: ParamPair64, cfg: &HessianConfig) -> Result<HessianReport>
where
    E: Fn(f64, f64) -> Result<f64>,
{
    let h = cfg.step_at(pp);
    let (p, q) = (pp.p, pp.q);
    let center = phi(p, q)?;
    let failure = RefCell::new(None);
    let at = |x: f64, y: f64| {
        phi(x, y).unwrap_or_else(|e| {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        })
    };
    let d2_pp = fd::second_derivative(|x| at(x, q), p, h);
    let d2_qq = fd::second_derivative(|y| at(p, y), q, h);
    let cross = fd::mixed_derivative(at, p, q, h, h);
    let along = fd::second_derivative(|s| at(p + s, q + s), 0.0, h);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let diagonal = (along - d2_pp - d2_qq) / 2.0;
    let d2_pq = (cross + diagonal) / 2.0;
    let tol = cfg.sign_tol * (center.abs() + 1.0);
    let (delta, verdict) = HessianReport::classify(d2_pp, d2_qq, d2_pq, tol);
    Ok(HessianReport {
        d2_pp,
        d2_qq,
        d2_pq,
        delta,
        verdict,
        step_used: h,
        mixed_asymmetry: (cross - diagonal).abs(),
        tolerance: tol,
    })
}

/// Hessian of `ln M` for a family at a fixed argument pair.
pub fn hessian_log_family(
    family: &Family<f64>,
    pp: ParamPair64,
    pt: MeanPoint64,
    cfg: &HessianConfig,
) -> Result<HessianReport> {
    hessian(|p, q| family.ln_evaluate(ParamPair64 { p, q }, pt), pp, cfg)
}

/// Hessian of `ln H_f` for an arbitrary generator.
pub fn hessian_log_generator<G: Generator<f64> + ?Sized>(
    f: &G,
    pp: ParamPair64,
    pt: MeanPoint64,
    cfg: &HessianConfig,
) -> Result<HessianReport> {
    hessian(
        |p, q| hf_eval(f, ParamPair64 { p, q }, pt).map(|r| r.value.ln()),
        pp,
        cfg,
    )
}

/// `α·ln M(pair1) + β·ln M(pair2) - ln M(α·pair1 + β·pair2)`.
///
/// Non-positive values are consistent with log-concavity, non-negative ones
/// with log-convexity.
pub fn midpoint_test<E>(phi: E, pair1: ParamPair64, pair2: ParamPair64, alpha: f64, beta: f64) -> Result<f64>
where
    E: Fn(ParamPair64) -> Result<f64>,
{
    if !(alpha >= 0.0 && beta >= 0.0 && (alpha + beta - 1.0).abs() <= 1e-12) {
        return Err(MeanError::InvalidWeights { alpha, beta });
    }
    let blend = pair1.blend(&pair2, alpha, beta);
    let mut sum = -phi(blend)?;
    if alpha > 0.0 {
        sum += alpha * phi(pair1)?;
    }
    if beta > 0.0 {
        sum += beta * phi(pair2)?;
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    PositiveQuadrant,
    NegativeQuadrant,
}

impl Region {
    pub fn contains(&self, pp: ParamPair64) -> bool {
        match self {
            Region::PositiveQuadrant => pp.p > 0.0 && pp.q > 0.0,
            Region::NegativeQuadrant => pp.p < 0.0 && pp.q < 0.0,
        }
    }

    pub fn short(&self) -> &'static str {
        match self {
            Region::PositiveQuadrant => "pos",
            Region::NegativeQuadrant => "neg",
        }
    }
}

/// What a quadrant scan is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Expect(Verdict),
    /// No claim is asserted; verdicts are tallied in the report notes.
    Observe,
}

/// Expected verdict per family and quadrant: for `F(·,·;r,s)`, concave on the
/// positive quadrant and convex on the negative one when r + s > 0, reversed
/// when r + s < 0, no claim when r + s = 0. `H_D` is convex on the positive
/// quadrant; its negative quadrant is observed only.
pub const EXPECTATION_TABLE: [(SumSign, Region, Expectation); 7] = [
    (
        SumSign::Positive,
        Region::PositiveQuadrant,
        Expectation::Expect(Verdict::Concave),
    ),
    (
        SumSign::Positive,
        Region::NegativeQuadrant,
        Expectation::Expect(Verdict::Convex),
    ),
    (
        SumSign::Negative,
        Region::PositiveQuadrant,
        Expectation::Expect(Verdict::Convex),
    ),
    (
        SumSign::Negative,
        Region::NegativeQuadrant,
        Expectation::Expect(Verdict::Concave),
    ),
    (SumSign::Zero, Region::PositiveQuadrant, Expectation::Observe),
    (
        SumSign::Difference,
        Region::PositiveQuadrant,
        Expectation::Expect(Verdict::Convex),
    ),
    (SumSign::Difference, Region::NegativeQuadrant, Expectation::Observe),
];

/// Sign of r + s for the generator of a family, with `H_D` kept apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumSign {
    Positive,
    Negative,
    Zero,
    Difference,
}

impl SumSign {
    pub fn of(family: &Family<f64>) -> SumSign {
        match family.generator_pair() {
            None => SumSign::Difference,
            Some(g) if (g.r + g.s).abs() <= 1e-12 => SumSign::Zero,
            Some(g) if g.r + g.s > 0.0 => SumSign::Positive,
            Some(_) => SumSign::Negative,
        }
    }
}

pub fn expected_verdict(family: &Family<f64>, region: Region) -> Expectation {
    let sign = SumSign::of(family);
    EXPECTATION_TABLE
        .iter()
        .find(|(s, r, _)| *s == sign && *r == region)
        .map_or(Expectation::Observe, |e| e.2)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub family: Family<f64>,
    pub region: Region,
    pub p_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub mean_points: Vec<MeanPoint64>,
    /// Minimum distance of grid points from the axes p = 0 and q = 0.
    pub exclusion_band: f64,
    pub hessian: HessianConfig,
    pub seed: u64,
}

/// Magnitudes used for the standard quadrant grid.
pub const STANDARD_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

impl ScanSpec {
    /// The `{0.25, 0.5, 1, 2, 4}²` grid in the quadrant, at `(1,2)`, `(1,10)`, `(1,10³)`.
    pub fn standard(family: Family<f64>, region: Region) -> ScanSpec {
        let sign = match region {
            Region::PositiveQuadrant => 1.0,
            Region::NegativeQuadrant => -1.0,
        };
        let grid: Vec<f64> = STANDARD_GRID.iter().map(|v| sign * v).collect();
        ScanSpec {
            family,
            region,
            p_grid: grid.clone(),
            q_grid: grid,
            mean_points: [(1.0, 2.0), (1.0, 10.0), (1.0, 1e3)]
                .iter()
                .map(|&(a, b)| MeanPoint64::new(a, b).expect("standard points are positive"))
                .collect(),
            exclusion_band: 0.05,
            hessian: HessianConfig::default(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for pp in self.grid_points() {
            if pp.p.abs() <= self.exclusion_band || pp.q.abs() <= self.exclusion_band || !self.region.contains(pp) {
                return Err(MeanError::InvalidSpec(format!(
                    "grid point ({}, {}) is not inside the open {} quadrant outside the exclusion band",
                    pp.p,
                    pp.q,
                    self.region.short()
                )));
            }
        }
        if self.mean_points.is_empty() {
            return Err(MeanError::InvalidSpec("scan needs at least one (a, b)".into()));
        }
        Ok(())
    }

    pub fn grid_points(&self) -> impl Iterator<Item = ParamPair64> + '_ {
        self.p_grid
            .iter()
            .flat_map(move |&p| self.q_grid.iter().map(move |&q| ParamPair64 { p, q }))
    }

    pub fn case_id(&self) -> String {
        format!("convexity/{}/{}", self.family, self.region.short())
    }
}

fn hessian_witness(pp: ParamPair64, pt: MeanPoint64, h: &HessianReport) -> Witness {
    witness([
        ("p", pp.p),
        ("q", pp.q),
        ("a", pt.a()),
        ("b", pt.b()),
        ("d2_pp", h.d2_pp),
        ("d2_qq", h.d2_qq),
        ("d2_pq", h.d2_pq),
        ("delta", h.delta),
    ])
}

/// Records one Hessian against an expectation.
fn record_hessian(
    report: &mut CheckReport,
    tally: &mut [u64; 4],
    expect: Expectation,
    pp: ParamPair64,
    pt: MeanPoint64,
    h: &HessianReport,
) {
    let idx = match h.verdict {
        Verdict::Convex => 0,
        Verdict::Concave => 1,
        Verdict::Indefinite => 2,
        Verdict::Inconclusive => 3,
    };
    tally[idx] += 1;
    let w = || hessian_witness(pp, pt, h);
    match expect {
        Expectation::Observe => {
            let outcome = if h.verdict == Verdict::Inconclusive {
                Outcome::Inconclusive
            } else {
                Outcome::Pass
            };
            report.record(outcome, f64::INFINITY, w);
        }
        Expectation::Expect(v) => {
            let signed = if v == Verdict::Convex { h.d2_pp } else { -h.d2_pp };
            let margin = signed.min(h.delta);
            let outcome = if h.verdict == Verdict::Inconclusive {
                Outcome::Inconclusive
            } else if h.verdict == v {
                Outcome::Pass
            } else {
                Outcome::Fail
            };
            report.record(outcome, margin, w);
        }
    }
}

fn tally_note(tally: &[u64; 4]) -> String {
    format!(
        "observed verdicts: convex {}, concave {}, indefinite {}, inconclusive {}",
        tally[0], tally[1], tally[2], tally[3]
    )
}

/// Hessian verdicts over the grid for each argument pair, in grid order.
pub fn scan_grid(spec: &ScanSpec, pt: MeanPoint64) -> Vec<(ParamPair64, Result<HessianReport>)> {
    spec.grid_points()
        .map(|pp| (pp, hessian_log_family(&spec.family, pp, pt, &spec.hessian)))
        .collect()
}

/// Runs the Hessian over the grid and compares against [`expected_verdict`].
pub fn scan_convexity(spec: &ScanSpec) -> CheckReport {
    let mut report = CheckReport::new(spec.case_id());
    if let Err(e) = spec.validate() {
        report.note(format!("invalid scan: {e}"));
        report.failed += 1;
        report.total += 1;
        return report;
    }
    let expect = expected_verdict(&spec.family, spec.region);
    let mut tally = [0u64; 4];
    let mut errors = 0;
    for &pt in &spec.mean_points {
        for (pp, h) in scan_grid(spec, pt) {
            match h {
                Ok(h) => record_hessian(&mut report, &mut tally, expect, pp, pt, &h),
                Err(_) => {
                    errors += 1;
                    report.record(Outcome::Inconclusive, 0.0, Witness::new);
                }
            }
        }
    }
    if expect == Expectation::Observe {
        report.note("no verdict asserted");
    }
    report.note(tally_note(&tally));
    if errors > 0 {
        report.note(format!("{errors} evaluator failures"));
    }
    report
}

/// Samples `(t, a, b)` off the diagonal with `|t| ∈ [0.1, 3]` and `b/a ∈ [1.1, 100]`.
pub fn probe_samples(n: usize, seed: u64) -> Vec<(f64, MeanPoint64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let t = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let a = 10f64.powf(rng.gen_range(-1.0..1.0));
            let ratio = 10f64.powf(rng.gen_range(1.1f64.log10()..2.0));
            let (a, b) = if rng.gen_bool(0.5) {
                (a, a * ratio)
            } else {
                (a * ratio, a)
            };
            (t, MeanPoint64::new(a, b).expect("sampled points are positive"))
        })
        .collect()
}

const J_DEAD_ZONE: f64 = 1e-8;

/// Checks that `J` keeps one sign σ over the samples and that Hessian verdicts
/// of `H_f` on the positive quadrant are convex for σ < 0, concave for σ > 0.
pub fn j_criterion_probe<G: Generator<f64> + ?Sized>(
    f: &G,
    samples: &[(f64, MeanPoint64)],
    cfg: &HessianConfig,
) -> CheckReport {
    let mut report = CheckReport::new(format!("j_criterion/{}", f.label()));
    let mut signs = Vec::with_capacity(samples.len());
    for &(t, pt) in samples {
        match hgf::t_derivatives(f, t, pt, None) {
            Ok(d) if d.j_val.abs() > J_DEAD_ZONE => signs.push((Some(d.j_val.signum()), t, pt, d.j_val)),
            _ => signs.push((None, t, pt, 0.0)),
        }
    }
    let positives = signs.iter().filter(|s| s.0 == Some(1.0)).count();
    let negatives = signs.iter().filter(|s| s.0 == Some(-1.0)).count();
    let sigma = if positives >= negatives { 1.0 } else { -1.0 };
    for &(sign, t, pt, j) in &signs {
        let w = || witness([("t", t), ("a", pt.a()), ("b", pt.b()), ("J", j)]);
        match sign {
            None => report.record(Outcome::Inconclusive, 0.0, w),
            Some(s) => report.record_margin(sigma * s * j.abs(), 0.0, w),
        }
    }
    report.note(format!("J sign {}", if sigma > 0.0 { "+" } else { "-" }));
    if positives > 0 && negatives > 0 {
        report.note("J changes sign; the criterion does not apply");
        return report;
    }
    let expect = Expectation::Expect(if sigma < 0.0 { Verdict::Convex } else { Verdict::Concave });
    let mut tally = [0u64; 4];
    for (a, b) in [(1.0, 2.0), (1.0, 10.0)] {
        let pt = MeanPoint64::new(a, b).expect("positive");
        for &p in &STANDARD_GRID {
            for &q in &STANDARD_GRID {
                let pp = ParamPair64 { p, q };
                match hessian_log_generator(f, pp, pt, cfg) {
                    Ok(h) => record_hessian(&mut report, &mut tally, expect, pp, pt, &h),
                    Err(_) => report.record(Outcome::Inconclusive, 0.0, Witness::new),
                }
            }
        }
    }
    report.note(tally_note(&tally));
    report
}

/// `sgn T''' = -sgn(t)·sgn(J)` wherever both exceed the dead zone.
pub fn sign_law_probe<G: Generator<f64> + ?Sized>(f: &G, samples: &[(f64, MeanPoint64)]) -> CheckReport {
    let mut report = CheckReport::new(format!("sign_law/{}", f.label()));
    for &(t, pt) in samples {
        let w = |t3: f64, j: f64| witness([("t", t), ("a", pt.a()), ("b", pt.b()), ("T3", t3), ("J", j)]);
        match hgf::t_derivatives(f, t, pt, None) {
            Ok(d) if d.t3.abs() > J_DEAD_ZONE && d.j_val.abs() > J_DEAD_ZONE => {
                let agree = d.t3.signum() == -t.signum() * d.j_val.signum();
                let margin = if agree {
                    d.t3.abs().min(d.j_val.abs())
                } else {
                    -d.t3.abs().min(d.j_val.abs())
                };
                report.record(if agree { Outcome::Pass } else { Outcome::Fail }, margin, || {
                    w(d.t3, d.j_val)
                });
            }
            Ok(d) => report.record(Outcome::Inconclusive, 0.0, || w(d.t3, d.j_val)),
            Err(_) => report.record(Outcome::Inconclusive, 0.0, || w(f64::NAN, f64::NAN)),
        }
    }
    report
}

/// Second partials of `ln H_f` from their integral forms
/// `∫₀¹ t²T'''`, `∫₀¹ (1-t)²T'''`, `∫₀¹ t(1-t)T'''` along `u = tp + (1-t)q`,
/// by composite Simpson on 64 panels. Returns `(d2_pp, d2_qq, d2_pq)`.
pub fn integral_hessian<G: Generator<f64> + ?Sized>(f: &G, pp: ParamPair64, pt: MeanPoint64) -> (f64, f64, f64) {
    const PANELS: usize = 64;
    let (mut spp, mut sqq, mut spq) = (0.0, 0.0, 0.0);
    for i in 0..=PANELS {
        let t = i as f64 / PANELS as f64;
        let weight = if i == 0 || i == PANELS {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let t3 = hgf::t_third(f, t * pp.p + (1.0 - t) * pp.q, pt, None);
        spp += weight * t * t * t3;
        sqq += weight * (1.0 - t) * (1.0 - t) * t3;
        spq += weight * t * (1.0 - t) * t3;
    }
    let scale = 1.0 / (3.0 * PANELS as f64);
    (spp * scale, sqq * scale, spq * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgf::Builtin;
    use crate::GeneratorPair64;

    fn pt(a: f64, b: f64) -> MeanPoint64 {
        MeanPoint64::new(a, b).unwrap()
    }

    fn pp(p: f64, q: f64) -> ParamPair64 {
        ParamPair64 { p, q }
    }

    #[test]
    fn stolarsky_verdicts() {
        let cfg = HessianConfig::default();
        let e = std::f64::consts::E;
        let h = hessian_log_family(&Family::Stolarsky, pp(1.0, 2.0), pt(1.0, e), &cfg).unwrap();
        assert_eq!(h.verdict, Verdict::Concave);
        assert_eq!(h.delta, h.d2_pp * h.d2_qq - h.d2_pq * h.d2_pq);
        let h = hessian_log_family(&Family::Stolarsky, pp(-1.0, -2.0), pt(1.0, e), &cfg).unwrap();
        assert_eq!(h.verdict, Verdict::Convex);
        let h = hessian_log_family(&Family::Hd, pp(1.0, 2.0), pt(1.0, 4.0), &cfg).unwrap();
        assert_eq!(h.verdict, Verdict::Convex);
    }

    #[test]
    fn midpoint_examples() {
        let x = pt(4.0, 2.0);
        let phi = |p: ParamPair64| Family::Stolarsky.ln_evaluate(p, x);
        let m = midpoint_test(phi, pp(1.0, 1.0), pp(3.0, 3.0), 0.5, 0.5).unwrap();
        assert!(m <= 0.0);
        assert_eq!(midpoint_test(phi, pp(1.0, 1.0), pp(3.0, 3.0), 1.0, 0.0).unwrap(), 0.0);
        let hd = |p: ParamPair64| Family::Hd.ln_evaluate(p, x);
        assert!(midpoint_test(hd, pp(1.0, 2.0), pp(3.0, 0.5), 0.3, 0.7).unwrap() >= 0.0);
        assert!(midpoint_test(phi, pp(1.0, 1.0), pp(3.0, 3.0), 0.6, 0.6).is_err());
    }

    #[test]
    fn expectation_table_lookup() {
        let fam = |r, s| Family::FourParam(GeneratorPair64::new(r, s).unwrap());
        assert_eq!(
            expected_verdict(&Family::Gini, Region::PositiveQuadrant),
            Expectation::Expect(Verdict::Concave)
        );
        assert_eq!(
            expected_verdict(&fam(-1.0, -1.0), Region::PositiveQuadrant),
            Expectation::Expect(Verdict::Convex)
        );
        assert_eq!(
            expected_verdict(&fam(-1.0, -1.0), Region::NegativeQuadrant),
            Expectation::Expect(Verdict::Concave)
        );
        assert_eq!(
            expected_verdict(&fam(1.0, -1.0), Region::PositiveQuadrant),
            Expectation::Observe
        );
        assert_eq!(
            expected_verdict(&Family::Hd, Region::NegativeQuadrant),
            Expectation::Observe
        );
    }

    #[test]
    fn four_param_positive_quadrant_scan() {
        let mut spec = ScanSpec::standard(
            Family::FourParam(GeneratorPair64::new(1.0, 0.0).unwrap()),
            Region::PositiveQuadrant,
        );
        spec.mean_points = vec![pt(1.0, 2.0), pt(1.0, 10.0)];
        let r = scan_convexity(&spec);
        assert_eq!(r.failed, 0, "{r:?}");
        spec.family = Family::FourParam(GeneratorPair64::new(-1.0, -1.0).unwrap());
        let r = scan_convexity(&spec);
        assert_eq!(r.failed, 0, "{r:?}");
    }

    #[test]
    fn invalid_grid_is_reported() {
        let mut spec = ScanSpec::standard(Family::Gini, Region::PositiveQuadrant);
        spec.p_grid.push(0.01);
        assert!(spec.validate().is_err());
        assert_eq!(scan_convexity(&spec).failed, 1);
    }

    #[test]
    fn j_signs_of_builtins() {
        let samples = probe_samples(20, 3);
        let cfg = HessianConfig::default();
        let d = j_criterion_probe(&Builtin::Difference, &samples, &cfg);
        assert!(d.notes.contains("J sign -"), "{d:?}");
        assert_eq!(d.failed, 0, "{d:?}");
        let l = j_criterion_probe(
            &Builtin::Stolarsky(GeneratorPair64::new(1.0, 0.0).unwrap()),
            &samples,
            &cfg,
        );
        assert!(l.notes.contains("J sign +"), "{l:?}");
        assert_eq!(l.failed, 0, "{l:?}");
        let s = sign_law_probe(&Builtin::Stolarsky(GeneratorPair64::new(1.0, -2.0).unwrap()), &samples);
        assert_eq!(s.failed, 0, "{s:?}");
    }

    #[test]
    fn integral_forms_match_finite_differences() {
        let x = pt(1.0, 5.0);
        for g in [Builtin::Logarithmic, Builtin::Arithmetic, Builtin::Difference] {
            let at = pp(1.5, 0.5);
            let (ipp, iqq, ipq) = integral_hessian(&g, at, x);
            let h = hessian_log_generator(&g, at, x, &HessianConfig::default()).unwrap();
            let delta = ipp * iqq - ipq * ipq;
            assert!(
                (delta - h.delta).abs() <= 0.05 * h.delta.abs(),
                "{}: {delta} vs {}",
                g.label(),
                h.delta
            );
        }
    }
}
