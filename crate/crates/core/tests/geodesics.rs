mod common;

use funkdisc::geodesics::{band_implicit_residual, band_residual, to_model, Branch};
use funkdisc::metrics::{eval_funk, eval_hilbert};
use funkdisc::{
    classify_image, forward_hit, funk_distance, hilbert_distance, lambda_roots, BoundaryPoint, Chord,
    DiscPoint, FunkRay, GeodesicKind, HilbertLine, ModelId,
};
use proptest::prelude::*;
use rand::Rng;

fn times() -> impl Iterator<Item = f64> {
    (0..=20).map(|i| 0.5 * i as f64)
}

fn random_rays(seed: u64, n: usize) -> Vec<(DiscPoint, BoundaryPoint)> {
    let mut rng = common::rng(seed);
    (0..n)
        .map(|_| {
            let p = common::disc_point(&mut rng, 0.95);
            let y = forward_hit(p, common::direction(&mut rng).into()).unwrap();
            (p, y)
        })
        .collect()
}

#[test]
fn funk_rays_have_unit_speed() {
    for (p, y) in random_rays(1, 100) {
        let ray = FunkRay::new(p, y);
        for t in times() {
            let speed = eval_funk(ray.point(t).unwrap(), ray.velocity(t)).total;
            assert!((speed - 1.0).abs() < 1e-12, "t={t}: {speed}");
        }
    }
}

#[test]
fn hilbert_lines_have_unit_speed() {
    for (p, y) in random_rays(2, 100) {
        let line = HilbertLine::new(p, y);
        for t in times() {
            let speed = eval_hilbert(line.point(t).unwrap(), line.velocity(t)).total;
            assert!((speed - 1.0).abs() < 1e-12, "t={t}: {speed}");
        }
    }
}

#[test]
fn distances_add_along_geodesics() {
    let mut rng = common::rng(3);
    for (p, y) in random_rays(4, 100) {
        let ray = FunkRay::new(p, y);
        let line = HilbertLine::new(p, y);
        for _ in 0..20 {
            let a: f64 = rng.random_range(0.0..10.0);
            let b: f64 = rng.random_range(0.0..10.0);
            let (s, t) = (a.min(b), a.max(b));
            let df = funk_distance(ray.point(s).unwrap(), ray.point(t).unwrap());
            assert!((df - (t - s)).abs() < 1e-10, "funk {s} {t}: {df}");
            let dh = hilbert_distance(line.point(s).unwrap(), line.point(t).unwrap());
            assert!((dh - (t - s)).abs() < 1e-10, "hilbert {s} {t}: {dh}");
            let dh = hilbert_distance(line.point(-t).unwrap(), line.point(s).unwrap());
            assert!((dh - (t + s)).abs() < 1e-10, "hilbert {} {s}: {dh}", -t);
        }
    }
}

#[test]
fn reversing_a_vector_scales_the_funk_metric_by_k() {
    let mut rng = common::rng(5);
    for _ in 0..1000 {
        let p = common::disc_point(&mut rng, 0.95);
        let v = common::vector(&mut rng);
        let y = forward_hit(p, v.into()).unwrap();
        let k = HilbertLine::new(p, y).k();
        let forward = eval_funk(p, v.into()).total;
        let backward = eval_funk(p, [-v[0], -v[1]].into()).total;
        assert!((backward - k * forward).abs() < 1e-12 * backward.max(1.0));
    }
}

#[test]
fn lambda_roots_bracket_zero_and_solve_the_quadratic() {
    let mut rng = common::rng(6);
    for _ in 0..1000 {
        let x = common::disc_point(&mut rng, 0.99);
        let z = common::disc_point(&mut rng, 0.99);
        let (l1, l2) = lambda_roots(x, z).unwrap();
        assert!(l1 < 0.0 && 0.0 < l2 && l1 * l2 < 0.0);
        for l in [l1, l2] {
            let on = [z.x1() + l * (x.x1() - z.x1()), z.x2() + l * (x.x2() - z.x2())];
            let [a, b, c] = funkdisc::geodesics::lambda_coefficients(x, z);
            let residual = a * l * l + 2.0 * b * l + c;
            assert!(residual.abs() < 1e-12, "{residual:e}");
            assert!((on[0].hypot(on[1]) - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn finsler_poincare_images_are_orthogonal_circles() {
    let mut rng = common::rng(7);
    for _ in 0..200 {
        let m = rng.random_range(-3.0..3.0);
        let c = rng.random_range(-0.9..0.9);
        let chord = if rng.random_bool(0.2) {
            Chord::Vertical { k: c }
        } else {
            Chord::Sloped { m, c }
        };
        let class = classify_image(ModelId::Fp, chord).unwrap();
        for x in chord.sample(20).unwrap() {
            let u = to_model(x, ModelId::Fp).unwrap();
            let u = [u.coords()[0], u.coords()[1]];
            match class.kind {
                GeodesicKind::OrthoArc { center, radius } => {
                    let r = (u[0] - center[0]).hypot(u[1] - center[1]);
                    assert!((r - radius).abs() < 1e-9 * radius.max(1.0));
                    let orth = center[0] * center[0] + center[1] * center[1] - radius * radius;
                    assert!((orth - 1.0).abs() < 1e-9 * radius.max(1.0).powi(2));
                }
                GeodesicKind::Diameter { slope } => {
                    assert!((u[1] - slope * u[0]).abs() < 1e-12);
                }
                other => panic!("{other:?}"),
            }
        }
    }
}

#[test]
fn upper_half_plane_images_match_their_class() {
    let mut rng = common::rng(8);
    let mut chords = vec![Chord::Sloped { m: 0.25, c: 0.25 }, Chord::Vertical { k: 0.0 }];
    for _ in 0..200 {
        chords.push(Chord::Sloped {
            m: rng.random_range(-3.0..3.0),
            c: rng.random_range(-0.9..0.9),
        });
        chords.push(Chord::Vertical {
            k: rng.random_range(-0.9..0.9),
        });
    }
    for chord in chords {
        let class = classify_image(ModelId::Fu, chord).unwrap();
        for x in chord.sample(20).unwrap() {
            let u = to_model(x, ModelId::Fu).unwrap();
            let u = [u.coords()[0], u.coords()[1]];
            let err = match class.kind {
                GeodesicKind::VerticalRay { x1 } => (u[0] - x1).abs(),
                GeodesicKind::ConcentricSemicircle { radius } => (u[0].hypot(u[1]) - radius).abs() / radius,
                GeodesicKind::SemicircleOnAxis { center, radius } => {
                    ((u[0] - center).hypot(u[1]) - radius).abs() / radius.max(1.0)
                }
                other => panic!("{other:?}"),
            };
            assert!(err < 1e-9, "{chord}: {err:e}");
        }
    }
}

#[test]
fn band_images_satisfy_the_implicit_equation() {
    let mut rng = common::rng(9);
    for _ in 0..500 {
        let m = rng.random_range(-3.0..3.0);
        let c = rng.random_range(-0.9..0.9);
        let chord = Chord::Sloped { m, c };
        for x in chord.sample(20).unwrap() {
            let b = to_model(x, ModelId::Fb).unwrap();
            let r = band_implicit_residual(m, c, &b).unwrap();
            assert!(r.residual < 1e-9, "{chord}: {r:?}");
            assert!(r.branch == Branch::Minus || r.residual < 1e-12);
        }
        let vertical = Chord::Vertical { k: c };
        for x in vertical.sample(20).unwrap() {
            let b = to_model(x, ModelId::Fb).unwrap();
            assert!(band_residual(vertical, &b).unwrap() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn hilbert_distance_is_symmetric(a in 0.0..0.95f64, t in 0.0..6.3f64, b in 0.0..0.95f64, u in 0.0..6.3f64) {
        let x = DiscPoint::new(a * t.cos(), a * t.sin()).unwrap();
        let z = DiscPoint::new(b * u.cos(), b * u.sin()).unwrap();
        let d1 = hilbert_distance(x, z);
        let d2 = hilbert_distance(z, x);
        prop_assert!((d1 - d2).abs() < 1e-12);
    }

    #[test]
    fn funk_distance_satisfies_the_triangle_inequality(
        r in proptest::array::uniform3(0.0..0.95f64),
        t in proptest::array::uniform3(0.0..6.3f64),
    ) {
        let p: Vec<DiscPoint> = (0..3)
            .map(|i| DiscPoint::new(r[i] * t[i].cos(), r[i] * t[i].sin()).unwrap())
            .collect();
        let direct = funk_distance(p[0], p[2]);
        let detour = funk_distance(p[0], p[1]) + funk_distance(p[1], p[2]);
        prop_assert!(direct <= detour + 1e-12);
        prop_assert!(funk_distance(p[0], p[1]) >= 0.0);
    }

    #[test]
    fn hilbert_is_the_mean_of_the_two_funk_distances(
        a in 0.0..0.95f64, t in 0.0..6.3f64, b in 0.0..0.95f64, u in 0.0..6.3f64,
    ) {
        let x = DiscPoint::new(a * t.cos(), a * t.sin()).unwrap();
        let z = DiscPoint::new(b * u.cos(), b * u.sin()).unwrap();
        let mean = 0.5 * (funk_distance(x, z) + funk_distance(z, x));
        prop_assert!((hilbert_distance(x, z) - mean).abs() < 1e-12);
    }
}
