//! Acceptance criteria, one line each. Exits non-zero if any fails.

use std::f64::consts::FRAC_PI_2;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use funkdisc::geodesics::band_residual;
use funkdisc::{Chord, ModelId, ModelPoint};
use funkdisc_cli::figure::BandFigure;
use funkdisc_cli::verify::{self, Plan, Suite, VerificationReport};

const SEED: u64 = 7;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

/// Requires each named check to be present, to use the pinned tolerance and
/// to pass.
fn checks(reports: &[VerificationReport], pinned: &[(&str, f64)]) -> Outcome {
    let mut failures = Vec::new();
    let mut worst = Vec::new();
    for (name, tol) in pinned {
        match reports.iter().find(|r| r.check == *name) {
            None => failures.push(format!("{name} missing")),
            Some(r) => {
                if r.tolerance != *tol {
                    failures.push(format!("{name} tolerance {} != {tol}", r.tolerance));
                }
                if r.max_residual.is_nan() || r.max_residual > *tol {
                    failures.push(format!("{name} residual {:e} > {tol:e}", r.max_residual));
                }
                worst.push(format!("{name}={:.1e}", r.max_residual));
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            worst.join(" ")
        } else {
            failures.join("; ")
        },
    }
}

fn run_suite(suite: Suite, samples: usize) -> (Vec<VerificationReport>, Duration) {
    let start = Instant::now();
    let reports = verify::run(suite, Plan { samples, seed: SEED });
    (reports, start.elapsed())
}

fn isometries() -> Outcome {
    let (reports, elapsed) = run_suite(Suite::Isometries, 1000);
    let mut pinned: Vec<(String, f64)> = ["eta", "pi", "psi", "sigma", "xi", "phi", "f", "g"]
        .iter()
        .map(|m| (format!("pullback-{m}"), 1e-10))
        .collect();
    pinned.push(("composed-path".into(), 1e-9));
    let pinned: Vec<(&str, f64)> = pinned.iter().map(|(n, t)| (n.as_str(), *t)).collect();
    let mut out = checks(&reports, &pinned);
    if elapsed > Duration::from_secs(5) {
        out.passed = false;
        out.detail = format!("took {elapsed:?}; {}", out.detail);
    }
    out
}

fn geodesics() -> Outcome {
    let (reports, _) = run_suite(Suite::Geodesics, 100);
    checks(
        &reports,
        &[
            ("funk-unit-speed", 1e-12),
            ("hilbert-unit-speed", 1e-12),
            ("funk-additivity", 1e-10),
            ("hilbert-additivity", 1e-10),
            ("reference-distances", 1e-12),
        ],
    )
}

fn busemann() -> Outcome {
    let (reports, _) = run_suite(Suite::Busemann, 100);
    checks(
        &reports,
        &[
            ("truncation-t20", 1e-6),
            ("funk-decay-slope", 0.05),
            ("horocycle-level", 1e-10),
            ("horocycle-perpendicular", 1e-12),
        ],
    )
}

fn laplacian() -> Outcome {
    let (reports, _) = run_suite(Suite::Laplacian, 100);
    checks(
        &reports,
        &[
            ("bh-closed-form", 0.0),
            ("bh-fd-oracle", 1e-4),
            ("measure-corrections", 2e-4),
            ("reference-point", 1e-4),
            ("mean-curvature-limit", 1e-12),
        ],
    )
}

fn dual_metric() -> Outcome {
    let (reports, _) = run_suite(Suite::Laplacian, 100);
    checks(
        &reports,
        &[("dual-support-oracle", 1e-6), ("distance-function", 1e-10)],
    )
}

fn figure() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let paths = [dir.path().join("a.svg"), dir.path().join("b.svg")];
    for p in &paths {
        let status = Command::new(env!("CARGO_BIN_EXE_funkdisc"))
            .args(["figure-band", "--out", p.to_str().unwrap()])
            .output()
            .expect("binary runs");
        if !status.status.success() {
            return Outcome {
                passed: false,
                detail: format!("figure-band exited with {:?}", status.status.code()),
            };
        }
    }
    let a = std::fs::read(&paths[0]).expect("first figure");
    let b = std::fs::read(&paths[1]).expect("second figure");

    // recheck every emitted vertex against the band equation independently
    let fig = BandFigure::build().expect("figure builds");
    let mut worst = 0.0f64;
    let mut vertices = 0;
    for curve in &fig.curves {
        for u in &curve.vertices {
            let p = ModelPoint::new(ModelId::Fb, u).expect("inside the band");
            worst = worst.max(band_residual(curve.chord, &p).expect("residual"));
            vertices += 1;
            if u[1].abs() >= FRAC_PI_2 {
                worst = f64::INFINITY;
            }
        }
    }
    let horizontal = fig
        .curves
        .iter()
        .any(|c| c.chord == Chord::Sloped { m: 0.0, c: 0.0 });
    let vertical = fig
        .curves
        .iter()
        .any(|c| matches!(c.chord, Chord::Vertical { .. }));
    let distinct = {
        let mut chords: Vec<String> = fig.curves.iter().map(|c| c.chord.to_string()).collect();
        chords.dedup();
        chords.len()
    };
    let text = String::from_utf8_lossy(&a);
    let svg_curves = text.matches("<polyline").count();
    let passed = a == b
        && worst < 1e-8
        && horizontal
        && vertical
        && distinct >= 6
        && svg_curves == fig.curves.len()
        && text.contains("version=\"1.1\"");
    Outcome {
        passed,
        detail: format!(
            "{vertices} vertices, max residual {worst:.1e}, {distinct} curves, identical bytes: {}",
            a == b
        ),
    }
}

fn full_run() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_funkdisc"))
        .args(["verify", "--suite", "all", "--samples", "1000"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let code = out.status.code();
    Outcome {
        passed: code == Some(0) && elapsed < Duration::from_secs(60),
        detail: format!("exit {code:?} in {:.2}s", elapsed.as_secs_f64()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 isometry pullbacks and composed path", isometries),
        (
            "2 geodesic unit speed, additivity, reference distances",
            geodesics,
        ),
        ("3 Busemann truncation, decay, horocycles", busemann),
        ("4 Laplacian closed forms and oracle", laplacian),
        ("5 dual metric support oracle and distance function", dual_metric),
        ("6 band figure residuals and determinism", figure),
        ("7 full verification run", full_run),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
