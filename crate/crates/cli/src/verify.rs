//! Seeded verification suites over the geometric kernel.

use std::f64::consts::LN_2;

use clap::ValueEnum;
use funkdisc::busemann::conic_residual;
use funkdisc::fd;
use funkdisc::geodesics::{band_implicit_residual, lambda_roots, to_model};
use funkdisc::laplace::{
    dual_funk, dual_support_oracle, dual_tensor, gradient, laplacian_busemann, laplacian_fd_oracle,
    mean_curvature_sphere,
};
use funkdisc::{
    classify_image, composed_path_discrepancy, eval_funk, eval_hilbert, funk_distance, hilbert_distance,
    BoundaryPoint, BusemannField, BusemannMetric, Chord, DiscPoint, FunkRay, GeodesicKind, HilbertLine,
    HorocycleLevel, IsometryId, MeasureKind, ModelPoint, Result,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::format::ser_f64;
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Isometries,
    Geodesics,
    Busemann,
    Laplacian,
    All,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Isometries,
                Suite::Geodesics,
                Suite::Busemann,
                Suite::Laplacian,
            ],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Isometries => "isometries",
            Suite::Geodesics => "geodesics",
            Suite::Busemann => "busemann",
            Suite::Laplacian => "laplacian",
            Suite::All => "all",
        }
    }
}

/// Outcome of one check: the worst residual over its samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub check: String,
    pub samples: usize,
    #[serde(serialize_with = "ser_f64")]
    pub max_residual: f64,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
    pub passed: bool,
    pub seed: u64,
}

/// Settings shared by every check of a run.
#[derive(Debug, Clone, Copy)]
pub struct Plan {
    pub samples: usize,
    pub seed: u64,
}

/// Upper bound on samples for the grid-search dual oracle, which costs
/// about 10^5 metric evaluations per sample.
const DUAL_ORACLE_SAMPLES: usize = 100;

struct Runner {
    plan: Plan,
    suite: Suite,
    out: Vec<VerificationReport>,
}

impl Runner {
    /// Runs `residual` on `samples` independent streams and keeps the worst
    /// value. Errors and NaNs count as infinite residuals.
    fn check<F>(&mut self, name: &str, samples: usize, tolerance: f64, residual: F)
    where
        F: Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
    {
        let tag = format!("{}/{name}", self.suite.name());
        let worst = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample::stream(self.plan.seed, &tag, i);
                match residual(&mut rng) {
                    Ok(r) if !r.is_nan() => r,
                    _ => f64::INFINITY,
                }
            })
            .reduce(|| 0.0, f64::max);
        self.out.push(VerificationReport {
            suite: self.suite.name().into(),
            check: name.into(),
            samples,
            max_residual: worst,
            tolerance,
            passed: worst <= tolerance,
            seed: self.plan.seed,
        });
    }
}

/// Runs the requested suites. Reports come back in a fixed order.
pub fn run(suite: Suite, plan: Plan) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    for s in suite.expand() {
        let mut runner = Runner {
            plan,
            suite: s,
            out: Vec::new(),
        };
        match s {
            Suite::Isometries => isometries(&mut runner),
            Suite::Geodesics => geodesics(&mut runner),
            Suite::Busemann => busemann(&mut runner),
            Suite::Laplacian => laplacian(&mut runner),
            Suite::All => unreachable!("expanded above"),
        }
        reports.extend(runner.out);
    }
    reports
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn central_jacobian(id: IsometryId, x: &ModelPoint) -> Result<Vec<Vec<f64>>> {
    let h = 1e-6;
    let c = x.coords();
    let mut cols = Vec::with_capacity(2);
    for j in 0..2 {
        let mut plus = [c[0], c[1]];
        let mut minus = plus;
        plus[j] += h;
        minus[j] -= h;
        let fp = id.apply(&ModelPoint::new(x.model(), &plus)?)?;
        let fm = id.apply(&ModelPoint::new(x.model(), &minus)?)?;
        cols.push(
            fp.coords()
                .iter()
                .zip(fm.coords())
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect(),
        );
    }
    Ok(cols)
}

fn isometries(r: &mut Runner) {
    let n = r.plan.samples;
    for id in IsometryId::ALL {
        r.check(&format!("pullback-{id}"), n, 1e-10, |rng| {
            let x = sample::chart_point(rng, id.source());
            id.pullback_residual(&x, sample::vector(rng))
        });
    }
    for id in IsometryId::ALL {
        r.check(&format!("roundtrip-{id}"), n, 1e-10, |rng| {
            let x = sample::chart_point(rng, id.source());
            let y = id.apply(&x)?;
            let back = id.apply_inverse(&y)?;
            let again = id.apply(&back)?;
            let scale = y.coords().iter().fold(1.0f64, |m, c| m.max(c.abs()));
            Ok(max_abs_diff(x.coords(), back.coords()).max(max_abs_diff(y.coords(), again.coords()) / scale))
        });
    }
    r.check("differential-fd", n, 1e-6, |rng| {
        let id = IsometryId::ALL[rng.random_range(0..IsometryId::ALL.len())];
        let x = match id.source() {
            funkdisc::ModelId::Fb => sample::chart_point(rng, id.source()),
            model => ModelPoint::from_disc(model, sample::disc_point(rng, 0.9))?,
        };
        let exact = id.differential(&x)?.jacobian;
        let approx = central_jacobian(id, &x)?;
        let scale = exact.amax().max(1.0);
        let mut worst = 0.0f64;
        for (j, col) in approx.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                worst = worst.max((exact[(i, j)] - v).abs());
            }
        }
        Ok(worst / scale)
    });
    r.check("inverse-differential", n, 1e-8, |rng| {
        let id = IsometryId::ALL[rng.random_range(0..IsometryId::ALL.len())];
        let x = sample::chart_point(rng, id.source());
        let d = id.differential(&x)?.jacobian;
        let dinv = id.differential_inverse(&id.apply(&x)?)?.jacobian;
        let left = dinv * d;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((left[(i, j)] - delta).abs());
            }
        }
        Ok(worst)
    });
    r.check("composed-path", n, 1e-9, |rng| {
        composed_path_discrepancy(sample::disc_point(rng, 0.95), sample::vector(rng))
    });
}

fn random_ray(rng: &mut ChaCha8Rng) -> (DiscPoint, BoundaryPoint) {
    let p = sample::disc_point(rng, 0.95);
    (p, sample::boundary_from(rng, p))
}

fn time_grid() -> impl Iterator<Item = f64> {
    (0..=20).map(|i| 0.5 * i as f64)
}

fn geodesics(r: &mut Runner) {
    let n = r.plan.samples;
    r.check("funk-unit-speed", n, 1e-12, |rng| {
        let (p, y) = random_ray(rng);
        let ray = FunkRay::new(p, y);
        time_grid().try_fold(0.0f64, |w, t| {
            Ok(w.max((eval_funk(ray.point(t)?, ray.velocity(t)).total - 1.0).abs()))
        })
    });
    r.check("hilbert-unit-speed", n, 1e-12, |rng| {
        let (p, y) = random_ray(rng);
        let line = HilbertLine::new(p, y);
        time_grid().try_fold(0.0f64, |w, t| {
            Ok(w.max((eval_hilbert(line.point(t)?, line.velocity(t)).total - 1.0).abs()))
        })
    });
    r.check("funk-additivity", n, 1e-10, |rng| {
        let (p, y) = random_ray(rng);
        let ray = FunkRay::new(p, y);
        let (a, b): (f64, f64) = (rng.random_range(0.0..10.0), rng.random_range(0.0..10.0));
        let (s, t) = (a.min(b), a.max(b));
        Ok((funk_distance(ray.point(s)?, ray.point(t)?) - (t - s)).abs())
    });
    r.check("hilbert-additivity", n, 1e-10, |rng| {
        let (p, y) = random_ray(rng);
        let line = HilbertLine::new(p, y);
        let (a, b): (f64, f64) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let (s, t) = (a.min(b), a.max(b));
        Ok((hilbert_distance(line.point(s)?, line.point(t)?) - (t - s)).abs())
    });
    r.check("reference-distances", 1, 1e-12, |_| {
        let half = DiscPoint::new(0.5, 0.0)?;
        let funk = (funk_distance(DiscPoint::ORIGIN, half) - LN_2).abs();
        let hilbert = (hilbert_distance(DiscPoint::ORIGIN, half) - 0.5 * 3f64.ln()).abs();
        Ok(funk.max(hilbert))
    });
    r.check("reversal-factor", n, 1e-12, |rng| {
        let p = sample::disc_point(rng, 0.95);
        let v = sample::vector(rng);
        let k = HilbertLine::from_direction(p, v.into())?.k();
        let forward = eval_funk(p, v.into()).total;
        let backward = eval_funk(p, [-v[0], -v[1]].into()).total;
        Ok((backward - k * forward).abs() / backward.max(1.0))
    });
    r.check("lambda-roots", n, 1e-12, |rng| {
        let x = sample::disc_point(rng, 0.99);
        let z = sample::disc_point(rng, 0.99);
        let (l1, l2) = lambda_roots(x, z)?;
        if !(l1 < 0.0 && 0.0 < l2) {
            return Ok(f64::INFINITY);
        }
        let [a, b, c] = funkdisc::geodesics::lambda_coefficients(x, z);
        Ok([l1, l2]
            .iter()
            .map(|l| (a * l * l + 2.0 * b * l + c).abs())
            .fold(0.0, f64::max))
    });
    r.check("band-implicit", n, 1e-9, |rng| {
        let (m, c) = (rng.random_range(-3.0..3.0), rng.random_range(-0.9..0.9));
        Chord::Sloped { m, c }
            .sample(20)?
            .into_iter()
            .try_fold(0.0f64, |w, x| {
                let b = to_model(x, funkdisc::ModelId::Fb)?;
                Ok(w.max(band_implicit_residual(m, c, &b)?.residual))
            })
    });
    r.check("fp-orthogonal-arcs", n, 1e-9, |rng| {
        let (m, c) = (rng.random_range(-3.0..3.0), rng.random_range(-0.9..0.9));
        let chord = if rng.random_bool(0.2) {
            Chord::Vertical { k: c }
        } else {
            Chord::Sloped { m, c }
        };
        let class = classify_image(funkdisc::ModelId::Fp, chord)?;
        chord.sample(20)?.into_iter().try_fold(0.0f64, |w, x| {
            let u = to_model(x, funkdisc::ModelId::Fp)?;
            let u = [u.coords()[0], u.coords()[1]];
            let err = match class.kind {
                GeodesicKind::OrthoArc { center, radius } => {
                    let on = ((u[0] - center[0]).hypot(u[1] - center[1]) - radius).abs();
                    let orth = (center[0].powi(2) + center[1].powi(2) - radius * radius - 1.0).abs();
                    on.max(orth / radius.max(1.0)) / radius.max(1.0)
                }
                GeodesicKind::Diameter { slope } if slope.is_finite() => (u[1] - slope * u[0]).abs(),
                GeodesicKind::Diameter { .. } => u[0].abs(),
                _ => f64::INFINITY,
            };
            Ok(w.max(err))
        })
    });
}

fn random_field(rng: &mut ChaCha8Rng, metric: BusemannMetric) -> BusemannField {
    let p = sample::disc_point(rng, 0.9);
    BusemannField::new(metric, p, sample::boundary_from(rng, p))
}

fn any_metric(rng: &mut ChaCha8Rng) -> BusemannMetric {
    if rng.random_bool(0.5) {
        BusemannMetric::Funk
    } else {
        BusemannMetric::Hilbert
    }
}

/// Least-squares slope of `ln y` against `t`.
fn log_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let mt = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let ml = samples.iter().map(|s| s.1.ln()).sum::<f64>() / n;
    let cov: f64 = samples.iter().map(|s| (s.0 - mt) * (s.1.ln() - ml)).sum();
    let var: f64 = samples.iter().map(|s| (s.0 - mt).powi(2)).sum();
    cov / var
}

fn busemann(r: &mut Runner) {
    let n = r.plan.samples;
    r.check("along-geodesic", n, 1e-12, |rng| {
        let metric = any_metric(rng);
        let field = random_field(rng, metric);
        time_grid().try_fold(0.0f64, |w, t| {
            Ok(w.max((field.value(field.geodesic(t)?) - t).abs()))
        })
    });
    r.check("truncation-t20", n, 1e-6, |rng| {
        let metric = any_metric(rng);
        let field = random_field(rng, metric);
        let x = sample::disc_point(rng, 0.9);
        Ok((field.truncated(x, 20.0)? - field.value(x)).abs())
    });
    r.check("truncation-monotone", n, 1e-12, |rng| {
        let metric = any_metric(rng);
        let field = random_field(rng, metric);
        let x = sample::disc_point(rng, 0.9);
        let mut worst = 0.0f64;
        let mut last = field.truncated(x, 0.0)?;
        for i in 1..=40 {
            let next = field.truncated(x, i as f64)?;
            worst = worst.max(last - next);
            last = next;
        }
        Ok(worst)
    });
    r.check("funk-decay-slope", n, 0.05, |rng| {
        // the e^{-t} coefficient vanishes on the line through p and y, so
        // points are drawn at distance at least 0.05 from it
        let (field, x) = loop {
            let field = random_field(rng, BusemannMetric::Funk);
            let x = sample::disc_point(rng, 0.9);
            let d = [field.y.y1() - field.p.x1(), field.y.y2() - field.p.x2()];
            let e = [x.x1() - field.p.x1(), x.x2() - field.p.x2()];
            if (d[0] * e[1] - d[1] * e[0]).abs() / d[0].hypot(d[1]) >= 0.05 {
                break (field, x);
            }
        };
        let limit = field.value(x);
        let samples = (5..=20)
            .map(|t| {
                let t = t as f64;
                Ok((t, (limit - field.truncated(x, t)?).abs()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((log_slope(&samples) + 1.0).abs())
    });
    r.check("one-lipschitz", n, 1e-12, |rng| {
        let field = random_field(rng, BusemannMetric::Funk);
        let a = sample::disc_point(rng, 0.95);
        let b = sample::disc_point(rng, 0.95);
        Ok((field.value(b) - field.value(a) - funk_distance(a, b)).max(0.0))
    });
    r.check("horocycle-level", n, 1e-10, |rng| {
        let metric = any_metric(rng);
        let field = random_field(rng, metric);
        let a = match metric {
            BusemannMetric::Funk => rng.random_range(0.0..4.0),
            BusemannMetric::Hilbert => rng.random_range(-3.0..3.0),
        };
        let level = HorocycleLevel::new(field, a)?;
        let mut worst = 0.0f64;
        for x in level.points(32)? {
            worst = worst.max(level.level_residual(x));
            if let Some(conic) = level.hilbert_conic() {
                worst = worst.max(conic_residual(&conic, x.coords()).abs());
            }
        }
        Ok(worst)
    });
    r.check("horocycle-perpendicular", n, 1e-12, |rng| {
        let field = random_field(rng, BusemannMetric::Funk);
        let level = HorocycleLevel::new(field, rng.random_range(0.0..4.0))?;
        let pts = level.points(2)?;
        let dir = [pts[1].x1() - pts[0].x1(), pts[1].x2() - pts[0].x2()];
        Ok((dir[0] * field.y.y1() + dir[1] * field.y.y2()).abs() / dir[0].hypot(dir[1]))
    });
}

fn random_funk_field(rng: &mut ChaCha8Rng) -> BusemannField {
    random_field(rng, BusemannMetric::Funk)
}

fn laplacian(r: &mut Runner) {
    let n = r.plan.samples;
    r.check("bh-closed-form", n, 0.0, |rng| {
        let field = random_funk_field(rng);
        Ok((laplacian_busemann(MeasureKind::Bh, &field, sample::disc_point(rng, 0.9))? + 2.0).abs())
    });
    r.check("bh-fd-oracle", n, 1e-4, |rng| {
        let field = random_funk_field(rng);
        Ok((laplacian_fd_oracle(MeasureKind::Bh, &field, sample::disc_point(rng, 0.9))? + 2.0).abs())
    });
    r.check("measure-corrections", n, 2e-4, |rng| {
        let field = random_funk_field(rng);
        let x = loop {
            let x = sample::disc_point(rng, 0.9);
            if x.norm() >= 0.05 {
                break x;
            }
        };
        let base = laplacian_fd_oracle(MeasureKind::Bh, &field, x)?;
        [MeasureKind::Ht, MeasureKind::Max, MeasureKind::Min]
            .iter()
            .try_fold(0.0f64, |w, kind| {
                let fd = laplacian_fd_oracle(*kind, &field, x)?;
                let closed = laplacian_busemann(*kind, &field, x)?;
                Ok(w.max(((fd - base) - (closed + 2.0)).abs())
                    .max((fd - closed).abs()))
            })
    });
    r.check("reference-point", 1, 1e-4, |_| {
        let field = BusemannField::funk(DiscPoint::ORIGIN, BoundaryPoint::new(1.0, 0.0)?);
        let x = DiscPoint::new(0.5, 0.0)?;
        [
            (MeasureKind::Ht, -1.0),
            (MeasureKind::Max, 0.0),
            (MeasureKind::Min, -4.0),
        ]
        .iter()
        .try_fold(0.0f64, |w, (kind, expected)| {
            Ok(w.max((laplacian_fd_oracle(*kind, &field, x)? - expected).abs()))
        })
    });
    r.check("mean-curvature-limit", 1, 1e-12, |_| {
        Ok((mean_curvature_sphere(100.0)? + 2.0).abs())
    });
    r.check("dual-support-oracle", n.min(DUAL_ORACLE_SAMPLES), 1e-6, |rng| {
        let x = sample::disc_point(rng, 0.9);
        let xi = sample::vector(rng);
        Ok((dual_funk(x, xi.into()).total - dual_support_oracle(x, xi.into(), 100_000)).abs())
    });
    r.check("distance-function", n, 1e-10, |rng| {
        let field = random_funk_field(rng);
        let x = sample::disc_point(rng, 0.95);
        let dual = (dual_funk(x, field.differential(x)).total - 1.0).abs();
        let primal = (eval_funk(x, gradient(&field, x)?).total - 1.0).abs();
        Ok(dual.max(primal))
    });
    r.check("dual-tensor-fd", n, 1e-6, |rng| {
        let x = sample::disc_point(rng, 0.9);
        let xi = sample::vector(rng);
        let g = dual_tensor(x, xi.into())?;
        let energy = |c: [f64; 2]| 0.5 * dual_funk(x, c.into()).total.powi(2);
        let h = fd::hessian2(energy, xi, fd::H_HESS * xi[0].hypot(xi[1]));
        Ok((h[0][0] - g.g11)
            .abs()
            .max((h[0][1] - g.g12).abs())
            .max((h[1][1] - g.g22).abs()))
    });
}
