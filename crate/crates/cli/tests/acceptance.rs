//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use extmeans::convexity::{self, Expectation, Region, ScanSpec, Verdict};
use extmeans::inequalities::{self, SamplingPlan};
use extmeans::suite::{self, SuiteConfig};
use extmeans::{CheckReport, Family};

struct Criterion {
    n: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn clean(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.failed == 0 && r.total > 0)
}

fn failures(reports: &[CheckReport]) -> u64 {
    reports.iter().map(|r| r.failed).sum()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn oracle_equivalence(cfg: &SuiteConfig) -> Criterion {
    let (reports, took) = timed(|| suite::oracle_equivalence(cfg));
    let enough = reports.iter().all(|r| r.total == 1_000 && r.inconclusive == 0);
    Criterion {
        n: 1,
        name: "oracle equivalence",
        pass: clean(&reports) && enough && reports.len() == 8 && took < Duration::from_secs(10),
        detail: format!(
            "{} families x 1000, {} failures, {:.2?}",
            reports.len(),
            failures(&reports),
            took
        ),
    }
}

fn branch_continuity(cfg: &SuiteConfig) -> Criterion {
    let reports = suite::branch_continuity(cfg);
    let per_locus = reports.iter().all(|r| r.total == 100);
    let worst = reports
        .iter()
        .filter_map(|r| r.worst_margin)
        .fold(f64::INFINITY, f64::min);
    Criterion {
        n: 2,
        name: "branch continuity",
        pass: clean(&reports) && per_locus && reports.len() == 4,
        detail: format!(
            "{} loci x 100, largest jump {:.2e} (limit 1e-8)",
            reports.len(),
            1e-8 - worst
        ),
    }
}

fn convexity_certification() -> Criterion {
    let (reports, took) = timed(|| {
        let mut out = Vec::new();
        for family in Family::<f64>::classical() {
            for region in [Region::PositiveQuadrant, Region::NegativeQuadrant] {
                let expect = convexity::expected_verdict(&family, region);
                let want = if region == Region::PositiveQuadrant {
                    Verdict::Concave
                } else {
                    Verdict::Convex
                };
                assert_eq!(expect, Expectation::Expect(want));
                out.push(convexity::scan_convexity(&ScanSpec::standard(family, region)));
            }
        }
        out
    });
    let worst_inconclusive = reports
        .iter()
        .map(CheckReport::inconclusive_fraction)
        .fold(0.0, f64::max);
    Criterion {
        n: 3,
        name: "convexity certification",
        pass: clean(&reports) && worst_inconclusive < 0.05 && took < Duration::from_secs(30),
        detail: format!(
            "{} scans, {} failures, worst inconclusive fraction {:.3}, {:.2?}",
            reports.len(),
            failures(&reports),
            worst_inconclusive,
            took
        ),
    }
}

fn midpoint_property(cfg: &SuiteConfig) -> Criterion {
    let mut families = Family::<f64>::classical().to_vec();
    families.push(Family::Hd);
    let reports: Vec<CheckReport> = families
        .iter()
        .enumerate()
        .filter_map(|(k, f)| suite::midpoint_check(f, Region::PositiveQuadrant, cfg, 500 + k as u64))
        .collect();
    let samples = reports.iter().all(|r| r.total == 10_000);
    let worst = reports
        .iter()
        .filter_map(|r| r.worst_margin)
        .fold(f64::INFINITY, f64::min);
    Criterion {
        n: 4,
        name: "midpoint property",
        pass: clean(&reports) && samples && reports.len() == 5,
        detail: format!(
            "{} families x 10000 blends, smallest oriented margin {worst:.2e}",
            reports.len()
        ),
    }
}

fn constant_reproduction() -> Criterion {
    let e = std::f64::consts::E;
    let sqrt8 = 8f64.sqrt();
    // (id, lower, upper) on the tracked ratio
    let bounds = [
        ("identric_power", 1.0 - 1e-12, sqrt8 / e + 1e-6),
        ("power_heronian", 1.0 - 1e-12, 3.0 / sqrt8 + 1e-6),
        ("new_est_1", 16.0 * 2f64.sqrt() / (9.0 * e) - 1e-6, 1.0 + 1e-12),
        ("new_est_2a", 1.0 - 1e-12, (1.0f64 / 24.0).exp() + 1e-6),
        ("new_est_2b", 1.0 - 1e-12, (1.0f64 / 24.0).exp() + 1e-6),
        ("new_est_3", 1.0 - 1e-12, 3.0 / e + 1e-6),
    ];
    let plan = SamplingPlan {
        grid_b: 200,
        random: 10_000,
        seed: 0,
    };
    let mut pass = true;
    let mut ranges = Vec::new();
    for (id, lo, hi) in bounds {
        let case = inequalities::case(id).expect("catalog case");
        let (report, sup) = inequalities::check_case(&case, &plan);
        pass &= report.failed == 0 && sup.samples > 0 && sup.observed_inf >= lo && sup.observed_sup <= hi;
        ranges.push(format!("{id} [{:.6}, {:.6}]", sup.observed_inf, sup.observed_sup));
    }
    Criterion {
        n: 5,
        name: "constant reproduction",
        pass,
        detail: ranges.join(", "),
    }
}

fn double_inequalities() -> Criterion {
    let plan = SamplingPlan {
        grid_b: 25,
        random: 10_000,
        seed: 0,
    };
    let reports: Vec<CheckReport> = ["stolarsky_double", "gini_double"]
        .iter()
        .map(|id| inequalities::check_case(&inequalities::case(id).expect("catalog case"), &plan).0)
        .collect();
    let worst = reports
        .iter()
        .filter_map(|r| r.worst_margin)
        .fold(f64::INFINITY, f64::min);
    Criterion {
        n: 6,
        name: "double inequalities",
        pass: clean(&reports) && worst >= -1e-11 && reports.iter().all(|r| r.total >= 10_000),
        detail: format!("smallest log-scale slack {worst:.2e}"),
    }
}

fn identity_suite(cfg: &SuiteConfig) -> Criterion {
    let reports = vec![
        suite::hd_lifted(cfg),
        suite::hd_gini_square(cfg),
        suite::z_identity(cfg),
        suite::reduction_table_check(cfg),
    ];
    let sizes = reports.iter().all(|r| r.total >= 1_000);
    Criterion {
        n: 7,
        name: "identity suite",
        pass: clean(&reports) && sizes,
        detail: reports
            .iter()
            .map(|r| format!("{} {}/{}", r.case_id, r.passed, r.total))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn sign_law() -> Criterion {
    let samples = convexity::probe_samples(100, 0x516e);
    let reports: Vec<CheckReport> = suite::probe_generators()
        .iter()
        .map(|g| convexity::sign_law_probe(g, &samples))
        .collect();
    Criterion {
        n: 8,
        name: "sign law",
        pass: clean(&reports) && reports.iter().all(|r| r.total == 100),
        detail: format!(
            "{} generators x 100 probes, {} violations",
            reports.len(),
            failures(&reports)
        ),
    }
}

fn full_check_run() -> Criterion {
    let out = std::env::temp_dir().join(format!("extmeans-acceptance-{}.json", std::process::id()));
    let (status, took) = timed(|| {
        Command::new(env!("CARGO_BIN_EXE_extmeans"))
            .args(["check", "--suite", "all", "--out"])
            .arg(&out)
            .status()
    });
    let _ = std::fs::remove_file(&out);
    let code = status.ok().and_then(|s| s.code());
    Criterion {
        n: 9,
        name: "full check run",
        pass: code == Some(0) && took < Duration::from_secs(60),
        detail: format!("exit {code:?} in {took:.2?}"),
    }
}

fn main() {
    let cfg = SuiteConfig::default();
    let results = [
        oracle_equivalence(&cfg),
        branch_continuity(&cfg),
        convexity_certification(),
        midpoint_property(&cfg),
        constant_reproduction(),
        double_inequalities(),
        identity_suite(&cfg),
        sign_law(),
        full_check_run(),
    ];
    println!();
    for c in &results {
        println!(
            "criterion {} {:<24} {}  {}",
            c.n,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail
        );
    }
    let failed = results.iter().filter(|c| !c.pass).count();
    println!("\nacceptance: {} passed, {failed} failed\n", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
