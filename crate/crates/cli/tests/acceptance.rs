//! The twelve acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always reach the console.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use sections_core::bounds::{fig3_radius, s1_value, s2_value, threshold_ctc, threshold_starlike, ThresholdConstants};
use sections_core::classg::{coefficient_bound, extremal_function};
use sections_core::radii::{convexity_indicator, radius_of_property, starlikeness_indicator, Property, RadiusQuery};
use sections_core::verify::{coefficient_bound_suite, run_suite, Suite, SuiteConfig, VerificationReport};

const SEED: u64 = 42;

fn radius(alpha: f64, beta: f64, property: Property) -> f64 {
    let r = radius_of_property(&RadiusQuery::new(alpha, beta, property).unwrap());
    assert!(r.converged, "{r:?}");
    r.rho
}

fn suite(s: Suite) -> Vec<VerificationReport> {
    run_suite(s, &SuiteConfig::with_seed(SEED)).unwrap()
}

fn assert_reports_pass<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> usize {
    let mut count = 0;
    for r in reports {
        assert!(
            r.pass,
            "{} failed: margin {} at {:?}",
            r.check_id, r.worst_margin, r.witness
        );
        count += 1;
    }
    assert!(count > 0, "no reports selected");
    count
}

fn c01() {
    let rho = radius(1.0, 0.0, Property::CloseToConvexOrder);
    let exact = 1.0 - (-1.0f64).exp();
    assert!((rho - exact).abs() < 1e-9, "{rho} vs {exact}");
}

fn c02() {
    let rho = radius(1.0, 0.0, Property::ConvexOrder);
    assert!((rho - 0.3578).abs() < 5e-4, "{rho}");
    let classical = 1.0 - 2.0 * rho + (1.0 - rho) * (1.0 - rho).ln();
    assert!(classical.abs() < 1e-10, "{classical}");
    assert!(convexity_indicator(1.0, 0.0, rho).unwrap().abs() < 1e-10);
}

fn c03() {
    let rho = radius(1.0, 0.0, Property::StarlikeOrder);
    assert!((rho - 0.5698).abs() < 5e-4, "{rho}");
    let classical = rho - rho * rho + (2.0 - 3.0 * rho) * (1.0 - rho).ln();
    assert!(classical.abs() < 1e-10, "{classical}");
    assert!(starlikeness_indicator(1.0, 0.0, rho).unwrap().abs() < 1e-10);
}

fn c04() {
    assert_eq!(threshold_ctc(), 17);
    assert_eq!(threshold_starlike(), 10);
    let p = ThresholdConstants::ROUNDED;
    assert!(p.c_n(16) > 50.794f64.to_radians().sin(), "C_16 = {}", p.c_n(16));
    assert!(p.e_n(9) > 1.0, "E_9 = {}", p.e_n(9));
}

fn c05() {
    let r = coefficient_bound_suite(1.0, 100, 32, SEED).unwrap();
    assert_eq!(r.parameters["members"], 100);
    assert!(r.pass && r.worst_margin > -1e-9, "{r:?}");
    for alpha in [0.25, 0.5, 1.0] {
        for n in 2..=8 {
            let f = extremal_function(alpha, n, 32).unwrap();
            let dev = (f.coeff(n).norm() - coefficient_bound(alpha, n)).abs();
            assert!(dev <= 1e-12, "alpha={alpha} n={n}: {dev}");
        }
    }
}

fn c06() {
    let reports = suite(Suite::Tails);
    let selected: Vec<_> = reports
        .iter()
        .filter(|r| {
            ["tails/abs/", "tails/deriv/", "tails/second_deriv/"]
                .iter()
                .any(|p| r.check_id.starts_with(p))
        })
        .collect();
    assert_eq!(assert_reports_pass(selected.iter().copied()), 9);
    for r in selected {
        assert_eq!(r.parameters["members"], 20);
    }
}

fn c07() {
    for i in 1..=9 {
        let rho = i as f64 / 10.0;
        let log = (1.0 - rho).ln();
        let mut prev = (f64::INFINITY, f64::INFINITY);
        for n in 2..=50usize {
            let head1: f64 = (2..=n).map(|k| rho.powi(k as i32) / (k * (k - 1)) as f64).sum();
            let head2: f64 = (1..n).map(|k| rho.powi(k as i32) / k as f64).sum();
            let (s1, s2) = (s1_value(n, rho).unwrap(), s2_value(n, rho).unwrap());
            assert!((s1 - (rho + (1.0 - rho) * log - head1)).abs() < 1e-10, "S1({n}, {rho})");
            assert!((s2 - (-log - head2)).abs() < 1e-10, "S2({n}, {rho})");
            assert!(s1 < prev.0 && s2 < prev.1, "not decreasing at n={n}, rho={rho}");
            prev = (s1, s2);
        }
    }
}

fn c08() {
    let reports = suite(Suite::Rogosinski);
    assert_reports_pass(&reports);
    let sums = reports
        .iter()
        .find(|r| r.check_id == "rogosinski/partial_sums")
        .unwrap();
    assert_eq!(sums.parameters["members"], 50);
    let eq = reports.iter().find(|r| r.check_id == "rogosinski/equality").unwrap();
    assert!(eq.worst_margin >= 0.0, "{eq:?}");
}

fn c09() {
    let reports = suite(Suite::Radii);
    let empirical: Vec<_> = reports
        .iter()
        .filter(|r| r.check_id.starts_with("radii/empirical/"))
        .collect();
    assert_eq!(empirical.len(), 33);
    for r in &empirical {
        let gap = r.parameters["min_empirical"].as_f64().unwrap() - r.parameters["classical"].as_f64().unwrap();
        assert!(gap >= -1e-2, "{}: gap {gap}", r.check_id);
    }
    assert_reports_pass(&reports);
}

fn c10() {
    let limit = ThresholdConstants::ROUNDED.ctc_radius;
    assert!((fig3_radius(3) - (3f64.sqrt() - 1.0)).abs() < 1e-9);
    let radii: Vec<f64> = (2..=200).map(fig3_radius).collect();
    assert!(radii.windows(2).all(|w| w[1] <= w[0]), "not nonincreasing");
    for (i, r) in radii.iter().enumerate() {
        let n = i + 2;
        if n >= 17 {
            assert!((r - limit).abs() <= 1e-3, "n={n}: {r}");
        }
    }
}

fn c11() {
    let reports = suite(Suite::Monotonicity);
    let mut ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
    ids.sort();
    assert_eq!(ids.len(), 11);
    for psi in 1..=11 {
        assert!(
            ids.iter()
                .any(|id| id.starts_with(&format!("monotonicity/psi{psi:02}/"))),
            "psi{psi} missing"
        );
    }
    assert_reports_pass(&reports);
}

fn c12() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_sections"))
            .args(["verify", "--suite", "all", "--seed", "42", "--json"])
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let (a, b) = (run(), run());
    assert!(!a.is_empty());
    assert!(a == b, "reports differ between runs");
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 12] = [
        ("close-to-convexity radius at alpha=1, beta=0 equals 1 - 1/e", c01),
        ("convexity radius at alpha=1, beta=0 is 0.3578", c02),
        ("starlikeness radius at alpha=1, beta=0 is 0.5698", c03),
        ("section thresholds are 17 and 10 with crossing witnesses", c04),
        ("coefficient bound suite and extremal equality", c05),
        ("tail bounds on the default grid", c06),
        ("S1 and S2 decrease and match closed forms", c07),
        ("Rogosinski partial sums and equality case", c08),
        ("empirical section radii dominate the classical constants", c09),
        ("coefficient-sum radius curve", c10),
        ("monotonicity of the proof curves", c11),
        ("verify --suite all is byte-stable", c12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(()) => println!("criterion {:02} PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:02} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
