//! Distances, boundary hits, unit-speed geodesics and their images in the
//! planar models.

use std::fmt;

use crate::chart::{DiscPoint, ModelId, ModelPoint, TangentVector};
use crate::error::{domain, GeomError, Result};
use crate::isometries::IsometryId;
use crate::vec2::{self, V2};

/// Default number of samples along a geodesic.
pub const DEFAULT_SAMPLES: usize = 256;

/// Accepted deviation of `|y|` from 1 before renormalizing.
const TOL_BOUNDARY: f64 = 1e-8;

/// Fraction of a chord's half length kept when sampling it.
const CHORD_CLIP: f64 = 0.999;

/// A point of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    y: V2,
}

impl BoundaryPoint {
    /// Accepts points within `1e-8` of the circle and renormalizes them.
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        let r = y1.hypot(y2);
        if !r.is_finite() || (r - 1.0).abs() > TOL_BOUNDARY {
            return Err(domain(format!("({y1}, {y2}) is not on the unit circle")));
        }
        Ok(Self { y: [y1 / r, y2 / r] })
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { y: [c, s] }
    }

    pub fn coords(&self) -> V2 {
        self.y
    }

    pub fn y1(&self) -> f64 {
        self.y[0]
    }

    pub fn y2(&self) -> f64 {
        self.y[1]
    }
}

/// Parameter `u > 0` with `|x + u d| = 1`.
fn exit_parameter(x: &DiscPoint, d: V2) -> f64 {
    exit_root(x.defect(), vec2::dot(x.coords(), d), vec2::norm_sq(d))
}

/// Positive root of `dd u^2 + 2 c u - defect = 0`.
fn exit_root(defect: f64, c: f64, dd: f64) -> f64 {
    let root = c.mul_add(c, dd * defect).sqrt();
    if c >= 0.0 {
        defect / (c + root)
    } else {
        (root - c) / dd
    }
}

/// `|a - b|^2`, with the radial part taken from the defects.
///
/// Near the boundary the coordinates alone fix the radial offset of two
/// points only to rounding, which the metric magnifies; the defects carry
/// it exactly.
fn separation_sq(a: &DiscPoint, b: &DiscPoint) -> f64 {
    let dot = vec2::dot(a.coords(), b.coords());
    let (ra, rb) = (a.norm(), b.norm());
    if dot <= 0.5 * ra * rb {
        return vec2::norm_sq(vec2::sub(a.coords(), b.coords()));
    }
    let radial = (b.defect() - a.defect()) / (ra + rb);
    let cross = a.x1() * b.x2() - a.x2() * b.x1();
    radial * radial + 2.0 * cross * cross / (ra * rb + dot)
}

/// Exit parameters of `b` along `b - a` and of `a` along `a - b`.
fn chord_exits(a: &DiscPoint, b: &DiscPoint) -> (f64, f64) {
    let dd = separation_sq(a, b);
    let shift = a.defect() - b.defect();
    let forward = exit_root(b.defect(), 0.5 * (shift + dd), dd);
    let backward = exit_root(a.defect(), 0.5 * (dd - shift), dd);
    (forward, backward)
}

/// `x + v / F_F(x, v)`, the point where the ray from `x` along `v` leaves
/// the disc.
pub fn forward_hit(x: DiscPoint, v: TangentVector) -> Result<BoundaryPoint> {
    if v.is_zero() {
        return Err(GeomError::ZeroVector);
    }
    let v = v.coords();
    let u = exit_parameter(&x, v);
    let hit = vec2::add(x.coords(), vec2::scale(u, v));
    let r = vec2::norm(hit);
    Ok(BoundaryPoint {
        y: vec2::scale(1.0 / r, hit),
    })
}

/// The Funk distance `d_F(from, to)`. Not symmetric.
pub fn funk_distance(from: DiscPoint, to: DiscPoint) -> f64 {
    if from.coords() == to.coords() {
        return 0.0;
    }
    let (forward, _) = chord_exits(&from, &to);
    (1.0 / forward).ln_1p()
}

/// The Hilbert distance, the symmetrization of the Funk distance.
pub fn hilbert_distance(a: DiscPoint, b: DiscPoint) -> f64 {
    if a.coords() == b.coords() {
        return 0.0;
    }
    let (forward, backward) = chord_exits(&a, &b);
    0.5 * ((1.0 / forward).ln_1p() + (1.0 / backward).ln_1p())
}

/// Roots `l1 < 0 < l2` of `|z + l (x - z)|^2 = 1`.
pub fn lambda_roots(x: DiscPoint, z: DiscPoint) -> Result<(f64, f64)> {
    let d = vec2::sub(x.coords(), z.coords());
    if vec2::norm(d) < 1e-14 {
        return Err(GeomError::Degenerate(
            "the points coincide, so they span no chord".into(),
        ));
    }
    let [a, b, c] = lambda_coefficients(x, z);
    let disc = b.mul_add(b, -a * c).sqrt();
    let q = -(b + disc.copysign(b));
    let (r1, r2) = (q / a, c / q);
    Ok(if r1 < r2 { (r1, r2) } else { (r2, r1) })
}

/// `[A, B, C]` with the chord quadratic written `A l^2 + 2 B l + C = 0`.
pub fn lambda_coefficients(x: DiscPoint, z: DiscPoint) -> [f64; 3] {
    let d = vec2::sub(x.coords(), z.coords());
    [vec2::norm_sq(d), vec2::dot(z.coords(), d), -z.defect()]
}

/// Unit-speed forward Funk geodesic from `p` towards the boundary point `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunkRay {
    pub p: DiscPoint,
    pub y: BoundaryPoint,
}

impl FunkRay {
    pub fn new(p: DiscPoint, y: BoundaryPoint) -> Self {
        Self { p, y }
    }

    pub fn from_direction(p: DiscPoint, v: TangentVector) -> Result<Self> {
        Ok(Self::new(p, forward_hit(p, v)?))
    }

    /// `e^{-t} p + (1 - e^{-t}) y`.
    pub fn point(&self, t: f64) -> Result<DiscPoint> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(domain(format!("Funk rays are parametrized by t >= 0, got {t}")));
        }
        let decay = (-t).exp();
        let grow = -(-t).exp_m1();
        let [p, y] = [self.p.coords(), self.y.coords()];
        let x = [decay.mul_add(p[0], grow * y[0]), decay.mul_add(p[1], grow * y[1])];
        let gap = vec2::norm_sq(vec2::sub(p, y));
        let defect = decay * (2.0 * self.p.gap_to(y) - decay * gap);
        DiscPoint::with_defect(x[0], x[1], defect)
    }

    /// `e^{-t} (y - p)`.
    pub fn velocity(&self, t: f64) -> TangentVector {
        vec2::scale((-t).exp(), vec2::sub(self.y.coords(), self.p.coords())).into()
    }
}

/// Unit-speed Hilbert geodesic through `p`, leaving the disc at `y` as
/// `t -> +inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HilbertLine {
    pub p: DiscPoint,
    pub y: BoundaryPoint,
    k: f64,
}

impl HilbertLine {
    pub fn new(p: DiscPoint, y: BoundaryPoint) -> Self {
        let k = vec2::norm_sq(vec2::sub(y.coords(), p.coords())) / p.defect();
        Self { p, y, k }
    }

    pub fn from_direction(p: DiscPoint, v: TangentVector) -> Result<Self> {
        Ok(Self::new(p, forward_hit(p, v)?))
    }

    /// `|y - p|^2 / (1 - |p|^2)`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// The same line traversed backwards.
    pub fn reversed(&self) -> Self {
        let back = vec2::sub(self.p.coords(), self.y.coords());
        let y = forward_hit(self.p, back.into()).expect("p differs from y");
        Self::new(self.p, y)
    }

    /// `(1 - s) p + s y` with `s = (e^t - e^{-t}) / (e^t + k e^{-t})`.
    pub fn point(&self, t: f64) -> Result<DiscPoint> {
        if !t.is_finite() {
            return Err(domain(format!("non-finite time {t}")));
        }
        if t < 0.0 {
            return self.reversed().point(-t);
        }
        let e2 = (2.0 * t).exp();
        let s = (2.0 * t).exp_m1() / (e2 + self.k);
        let rest = (1.0 + self.k) / (e2 + self.k);
        let [p, y] = [self.p.coords(), self.y.coords()];
        let x = [rest.mul_add(p[0], s * y[0]), rest.mul_add(p[1], s * y[1])];
        let gap = vec2::norm_sq(vec2::sub(p, y));
        let defect = rest * (2.0 * self.p.gap_to(y) - rest * gap);
        DiscPoint::with_defect(x[0], x[1], defect)
    }

    /// `s'(t) (y - p)` with `s' = 2 (1 + k) / (e^t + k e^{-t})^2`.
    pub fn velocity(&self, t: f64) -> TangentVector {
        if t < 0.0 {
            return -self.reversed().velocity(-t);
        }
        let w = t.exp() + self.k * (-t).exp();
        let ds = 2.0 * (1.0 + self.k) / (w * w);
        vec2::scale(ds, vec2::sub(self.y.coords(), self.p.coords())).into()
    }
}

/// `n` uniform times covering `[t0, t1]`.
pub fn sample_times(t0: f64, t1: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(domain(format!("need at least 2 samples, got {n}")));
    }
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(domain("non-finite time interval"));
    }
    let step = (t1 - t0) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { t1 } else { t0 + step * i as f64 })
        .collect())
}

/// A straight line in the plane, which is a chord once clipped to the disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chord {
    /// `x2 = m x1 + c`.
    Sloped { m: f64, c: f64 },
    /// `x1 = k`.
    Vertical { k: f64 },
}

impl Chord {
    /// The line through two distinct points.
    pub fn through(a: V2, b: V2) -> Result<Self> {
        let d = vec2::sub(b, a);
        let len = vec2::norm(d);
        if len == 0.0 {
            return Err(GeomError::Degenerate("a chord needs two distinct points".into()));
        }
        if d[0].abs() <= 1e-12 * len {
            return Ok(Chord::Vertical {
                k: 0.5 * (a[0] + b[0]),
            });
        }
        let m = d[1] / d[0];
        Ok(Chord::Sloped {
            m,
            c: a[1] - m * a[0],
        })
    }

    /// Foot of the perpendicular from the origin, unit direction and squared
    /// half length inside the disc.
    fn frame(&self) -> (V2, V2, f64) {
        match *self {
            Chord::Sloped { m, c } => {
                let n2 = 1.0 + m * m;
                let len = n2.sqrt();
                let foot = [-m * c / n2, c / n2];
                let half_sq = (n2 - c * c) / n2;
                (foot, [1.0 / len, m / len], half_sq)
            }
            Chord::Vertical { k } => ([k, 0.0], [0.0, 1.0], (1.0 - k) * (1.0 + k)),
        }
    }

    pub fn meets_disc(&self) -> bool {
        let (_, _, half_sq) = self.frame();
        half_sq > 0.0
    }

    /// `n` points spaced evenly along the chord, kept strictly inside the
    /// disc.
    pub fn sample(&self, n: usize) -> Result<Vec<DiscPoint>> {
        if n < 2 {
            return Err(domain(format!("need at least 2 samples, got {n}")));
        }
        let (foot, dir, half_sq) = self.frame();
        if !(half_sq > 0.0) {
            return Err(GeomError::NoIntersection);
        }
        let h = half_sq.sqrt();
        let reach = CHORD_CLIP * h;
        (0..n)
            .map(|i| {
                let s = -reach + 2.0 * reach * i as f64 / (n - 1) as f64;
                let x = vec2::add(foot, vec2::scale(s, dir));
                DiscPoint::with_defect(x[0], x[1], (h - s) * (h + s)).or_else(|_| DiscPoint::new(x[0], x[1]))
            })
            .collect()
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chord::Sloped { m, c } => write!(f, "x2 = {m} x1 + {c}"),
            Chord::Vertical { k } => write!(f, "x1 = {k}"),
        }
    }
}

/// Shape of the image of a chord in a planar model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicKind {
    /// Upper half plane: the vertical ray `X1 = x1`.
    VerticalRay { x1: f64 },
    /// Upper half plane: a semicircle centered at the origin.
    ConcentricSemicircle { radius: f64 },
    /// Upper half plane: a semicircle centered on the real axis.
    SemicircleOnAxis { center: f64, radius: f64 },
    /// Finsler-Poincaré disc: a diameter (`slope` is infinite when vertical).
    Diameter { slope: f64 },
    /// Finsler-Poincaré disc: an arc meeting the boundary circle at right angles.
    OrthoArc { center: V2, radius: f64 },
    /// Band: the vertical line `X1 = x1`.
    BandVertical { x1: f64 },
    /// Band: the curve `4 e^{X1} sin X2 = -(m (4 - e^{2X1}) + c (4 + e^{2X1}))`.
    BandImplicit { m: f64, c: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicClass {
    pub model: ModelId,
    pub kind: GeodesicKind,
}

/// Identifies the image of a Funk chord in the upper half plane, the
/// Finsler-Poincaré disc or the band.
pub fn classify_image(model: ModelId, chord: Chord) -> Result<GeodesicClass> {
    if !chord.meets_disc() {
        return Err(GeomError::NoIntersection);
    }
    let kind = match (model, chord) {
        (ModelId::Fu, Chord::Sloped { m, c }) if m == c => GeodesicKind::VerticalRay { x1: 2.0 * c },
        (ModelId::Fu, Chord::Sloped { m, c }) => {
            let d = m - c;
            GeodesicKind::SemicircleOnAxis {
                center: -2.0 / d,
                radius: (4.0 * (m * m - c * c + 1.0)).sqrt() / d.abs(),
            }
        }
        (ModelId::Fu, Chord::Vertical { k }) => GeodesicKind::ConcentricSemicircle {
            radius: (4.0 * (1.0 - k) / (1.0 + k)).sqrt(),
        },
        (ModelId::Fp, Chord::Sloped { m, c: 0.0 }) => GeodesicKind::Diameter { slope: m },
        (ModelId::Fp, Chord::Sloped { m, c }) => GeodesicKind::OrthoArc {
            center: [-m / c, 1.0 / c],
            radius: (1.0 + m * m - c * c).sqrt() / c.abs(),
        },
        (ModelId::Fp, Chord::Vertical { k: 0.0 }) => GeodesicKind::Diameter { slope: f64::INFINITY },
        (ModelId::Fp, Chord::Vertical { k }) => GeodesicKind::OrthoArc {
            center: [1.0 / k, 0.0],
            radius: ((1.0 - k) * (1.0 + k)).sqrt() / k.abs(),
        },
        (ModelId::Fb, Chord::Sloped { m, c }) => GeodesicKind::BandImplicit { m, c },
        (ModelId::Fb, Chord::Vertical { k }) => GeodesicKind::BandVertical {
            x1: std::f64::consts::LN_2 + 0.5 * ((1.0 - k) / (1.0 + k)).ln(),
        },
        (other, _) => {
            return Err(GeomError::UnsupportedModel(format!(
                "chord images are classified in fu, fp and fb, not {other}"
            )))
        }
    };
    Ok(GeodesicClass { model, kind })
}

/// Which sign of the band equation a point satisfies best.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandResidual {
    pub residual: f64,
    pub branch: Branch,
}

/// `min over +- of |4 e^{X1} sin X2 -+ (m (4 - e^{2X1}) + c (4 + e^{2X1}))|`.
///
/// Images of chords under `xi` satisfy the minus branch.
pub fn band_implicit_residual(m: f64, c: f64, x: &ModelPoint) -> Result<BandResidual> {
    let [x1, x2] = band_coords(x)?;
    let e = x1.exp();
    let big = e * e;
    let lhs = 4.0 * e * x2.sin();
    let rhs = m * (4.0 - big) + c * (4.0 + big);
    let plus = (lhs - rhs).abs();
    let minus = (lhs + rhs).abs();
    Ok(if minus <= plus {
        BandResidual {
            residual: minus,
            branch: Branch::Minus,
        }
    } else {
        BandResidual {
            residual: plus,
            branch: Branch::Plus,
        }
    })
}

/// Distance of a band point from the image of the chord `x1 = k`.
pub fn band_vertical_residual(k: f64, x: &ModelPoint) -> Result<f64> {
    let [x1, _] = band_coords(x)?;
    match classify_image(ModelId::Fb, Chord::Vertical { k })?.kind {
        GeodesicKind::BandVertical { x1: line } => Ok((x1 - line).abs()),
        _ => unreachable!("vertical chords map to vertical band lines"),
    }
}

/// Residual of a band point against the image of any chord.
pub fn band_residual(chord: Chord, x: &ModelPoint) -> Result<f64> {
    match chord {
        Chord::Sloped { m, c } => Ok(band_implicit_residual(m, c, x)?.residual),
        Chord::Vertical { k } => band_vertical_residual(k, x),
    }
}

fn band_coords(x: &ModelPoint) -> Result<V2> {
    if x.model() != ModelId::Fb {
        return Err(domain(format!("expected a fb point, got {}", x.model())));
    }
    Ok(x.planar().expect("planar chart"))
}

/// The maps carrying the Funk chart to `model`, applied right to left.
fn route(model: ModelId) -> Result<&'static [IsometryId]> {
    Ok(match model {
        ModelId::Ff => &[],
        ModelId::Fp => &[IsometryId::FMap],
        ModelId::Fb => &[IsometryId::Xi],
        ModelId::Fu => &[IsometryId::GMap],
        ModelId::Fuh1 => &[IsometryId::Eta],
        ModelId::Fus1 => &[IsometryId::Psi],
        ModelId::Fuh2 => &[IsometryId::Pi, IsometryId::FMap],
        ModelId::Fus2 => &[IsometryId::Sigma, IsometryId::FMap],
        ModelId::AmbientHalfspace => {
            return Err(GeomError::UnsupportedModel(
                "the ambient half space is not a model of the disc".into(),
            ))
        }
    })
}

/// Maps a disc point of the Funk chart into another chart.
pub fn to_model(x: DiscPoint, model: ModelId) -> Result<ModelPoint> {
    let mut p = ModelPoint::from_disc(ModelId::Ff, x)?;
    for id in route(model)?.iter().rev() {
        p = id.apply(&p)?;
    }
    Ok(p)
}

/// Maps a point and tangent vector of the Funk chart into another chart.
pub fn push_to_model(x: DiscPoint, v: [f64; 2], model: ModelId) -> Result<(ModelPoint, Vec<f64>)> {
    let mut p = ModelPoint::from_disc(ModelId::Ff, x)?;
    let mut w = v.to_vec();
    for id in route(model)?.iter().rev() {
        w = id.differential(&p)?.apply(&w)?;
        p = id.apply(&p)?;
    }
    Ok((p, w))
}
