//! Closed forms against direct evaluation of the defining quotients at
//! well-conditioned points, plus the quadrature oracle with a negative control.

use extmeans::hgf::{self, hf_integral_oracle};
use extmeans::{means, Builtin, Family, GeneratorPair64, MeanPoint64, ParamPair64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn naive_l(x: f64, y: f64) -> f64 {
    (x - y) / (x.ln() - y.ln())
}

fn naive_i(x: f64, y: f64) -> f64 {
    ((x * x.ln() - y * y.ln()) / (x - y) - 1.0).exp()
}

fn naive_he(x: f64, y: f64) -> f64 {
    (x + (x * y).sqrt() + y) / 3.0
}

fn naive_s(r: f64, s: f64, x: f64, y: f64) -> f64 {
    ((x.powf(r) - y.powf(r)) * s / ((x.powf(s) - y.powf(s)) * r)).powf(1.0 / (r - s))
}

/// `(f(a^p, b^p)/f(a^q, b^q))^(1/(p-q))`.
fn naive_h(f: impl Fn(f64, f64) -> f64, p: f64, q: f64, a: f64, b: f64) -> f64 {
    (f(a.powf(p), b.powf(p)) / f(a.powf(q), b.powf(q))).powf(1.0 / (p - q))
}

fn naive(family: &Family<f64>, p: f64, q: f64, a: f64, b: f64) -> f64 {
    match family {
        Family::Stolarsky => naive_h(naive_l, p, q, a, b),
        Family::Gini => naive_h(|x, y| (x + y) / 2.0, p, q, a, b),
        Family::Identric2 => naive_h(naive_i, p, q, a, b),
        Family::Heronian2 => naive_h(naive_he, p, q, a, b),
        Family::FourParam(g) => naive_h(|x, y| naive_s(g.r, g.s, x, y), p, q, a, b),
        Family::Hd => naive_h(|x, y| (x - y).abs(), p, q, a, b),
    }
}

fn families() -> Vec<Family<f64>> {
    let mut v = Family::classical().to_vec();
    for (r, s) in [(2.0, 1.0), (1.5, 0.5), (3.0, -1.0), (-1.0, -2.5)] {
        v.push(Family::FourParam(GeneratorPair64 { r, s }));
    }
    v.push(Family::Hd);
    v
}

#[test]
fn closed_forms_match_direct_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in families() {
        for _ in 0..300 {
            let p: f64 = rng.gen_range(0.1..4.0);
            let mut q: f64 = rng.gen_range(0.1..4.0);
            if (p - q).abs() < 0.05 {
                q += 0.1;
            }
            let a: f64 = rng.gen_range(0.5..2.0);
            let b = a * rng.gen_range(1.2..20.0);
            let got = family
                .evaluate(ParamPair64 { p, q }, MeanPoint64::new(a, b).unwrap())
                .unwrap()
                .value;
            let want = naive(&family, p, q, a, b);
            assert!(
                ((got - want) / want).abs() < 1e-10,
                "{family} p={p} q={q} a={a} b={b}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn classical_means_match_direct_forms() {
    for (a, b) in [(1.0, 2.0), (0.3, 7.0), (5.0, 4.0), (1e-3, 1e3)] {
        let pt = MeanPoint64::new(a, b).unwrap();
        let close = |x: f64, y: f64| assert!(((x - y) / y).abs() < 1e-13, "{x} vs {y} at ({a}, {b})");
        close(means::arithmetic_mean(pt), (a + b) / 2.0);
        close(means::geometric_mean(pt), (a * b).sqrt());
        close(means::log_mean(pt), naive_l(a, b));
        close(means::identric_mean(pt), naive_i(a, b));
        close(means::heronian_mean(pt), naive_he(a, b));
        close(
            means::power_exponential_z(pt),
            ((a * a.ln() + b * b.ln()) / (a + b)).exp(),
        );
    }
}

#[test]
fn quadrature_oracle_agrees_and_detects_a_wrong_generator() {
    let pt = MeanPoint64::new(1.0, 30.0).unwrap();
    let pp = ParamPair64 { p: 2.5, q: 0.4 };
    for family in Family::<f64>::classical() {
        let closed = family.evaluate(pp, pt).unwrap().value;
        let oracle = hf_integral_oracle(&family.generator(), pp, pt, 1e-13).unwrap();
        assert!(((closed - oracle) / oracle).abs() < 1e-11, "{family}");
    }
    // Gini is generated by A, not L.
    let gini = means::gini(pp, pt).unwrap().value;
    let wrong = hf_integral_oracle(&Builtin::Logarithmic, pp, pt, 1e-13).unwrap();
    assert!(((gini - wrong) / wrong).abs() > 1e-3);
}

#[test]
fn hd_uses_the_difference_generator() {
    let pt = MeanPoint64::new(2.0, 5.0).unwrap();
    for (p, q) in [(1.0, 2.0), (-1.5, 0.5), (-1.0, -3.0)] {
        let got = hgf::hd_eval(ParamPair64 { p, q }, pt).unwrap().value;
        let want = naive(&Family::Hd, p, q, 2.0, 5.0);
        assert!(((got - want) / want).abs() < 1e-12, "({p}, {q})");
    }
}
