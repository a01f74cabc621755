//! Busemann functions of Funk rays and Hilbert lines, and their level sets.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::chart::{Covector, DiscPoint, EPS_BOUND};
use crate::error::{domain, GeomError, Result};
use crate::geodesics::{funk_distance, hilbert_distance, BoundaryPoint, FunkRay, HilbertLine};
use crate::vec2::{self, V2};

/// Default horizon when a limit in `t` is approximated by truncation.
pub const DEFAULT_HORIZON: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BusemannMetric {
    Funk,
    Hilbert,
}

impl fmt::Display for BusemannMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BusemannMetric::Funk => "funk",
            BusemannMetric::Hilbert => "hilbert",
        })
    }
}

impl FromStr for BusemannMetric {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "funk" => Ok(BusemannMetric::Funk),
            "hilbert" => Ok(BusemannMetric::Hilbert),
            _ => Err(GeomError::Parse(format!(
                "unknown metric {s:?} (expected funk or hilbert)"
            ))),
        }
    }
}

/// The Busemann function of the geodesic from `p` towards `y`: the forward
/// Funk ray, or the Hilbert line through `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BusemannField {
    pub metric: BusemannMetric,
    pub p: DiscPoint,
    pub y: BoundaryPoint,
}

impl BusemannField {
    pub fn new(metric: BusemannMetric, p: DiscPoint, y: BoundaryPoint) -> Self {
        Self { metric, p, y }
    }

    pub fn funk(p: DiscPoint, y: BoundaryPoint) -> Self {
        Self::new(BusemannMetric::Funk, p, y)
    }

    pub fn hilbert(p: DiscPoint, y: BoundaryPoint) -> Self {
        Self::new(BusemannMetric::Hilbert, p, y)
    }

    /// The defining geodesic at time `t >= 0`.
    pub fn geodesic(&self, t: f64) -> Result<DiscPoint> {
        match self.metric {
            BusemannMetric::Funk => FunkRay::new(self.p, self.y).point(t),
            BusemannMetric::Hilbert => HilbertLine::new(self.p, self.y).point(t),
        }
    }

    fn distance(&self, a: DiscPoint, b: DiscPoint) -> f64 {
        match self.metric {
            BusemannMetric::Funk => funk_distance(a, b),
            BusemannMetric::Hilbert => hilbert_distance(a, b),
        }
    }

    /// Closed-form value `b(x)`.
    pub fn value(&self, x: DiscPoint) -> f64 {
        let y = self.y.coords();
        let log_gaps = self.p.gap_to(y).ln() - x.gap_to(y).ln();
        match self.metric {
            BusemannMetric::Funk => log_gaps,
            BusemannMetric::Hilbert => 0.5 * (x.defect().ln() - self.p.defect().ln()) + log_gaps,
        }
    }

    /// `t - d(x, geodesic(t))`, nondecreasing in `t` with limit `b(x)`.
    pub fn truncated(&self, x: DiscPoint, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(domain(format!("truncation time must be >= 0, got {t}")));
        }
        Ok(t - self.distance(x, self.geodesic(t)?))
    }

    /// The differential `db` at `x`.
    pub fn differential(&self, x: DiscPoint) -> Covector {
        let y = self.y.coords();
        let along = vec2::scale(1.0 / x.gap_to(y), y);
        let db = match self.metric {
            BusemannMetric::Funk => along,
            BusemannMetric::Hilbert => vec2::sub(along, vec2::scale(1.0 / x.defect(), x.coords())),
        };
        db.into()
    }
}

pub fn busemann_value(field: &BusemannField, x: DiscPoint) -> f64 {
    field.value(x)
}

pub fn busemann_truncated(field: &BusemannField, x: DiscPoint, t: f64) -> Result<f64> {
    field.truncated(x, t)
}

/// `db` at `x`; for the Funk metric this is `y / (1 - <x, y>)`, which never
/// vanishes.
pub fn busemann_gradient_covector(field: &BusemannField, x: DiscPoint) -> Covector {
    field.differential(x)
}

/// A level set `b = a` of a Busemann function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorocycleLevel {
    pub field: BusemannField,
    pub a: f64,
}

impl HorocycleLevel {
    /// Fails with [`GeomError::EmptyLevelSet`] when the level set misses the
    /// disc. Funk horocycles are chords `<x, y> = const`, which miss the disc
    /// once the constant drops to `-1`; Hilbert horocycles are never empty.
    pub fn new(field: BusemannField, a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(domain(format!("non-finite level {a}")));
        }
        let level = Self { field, a };
        if field.metric == BusemannMetric::Funk {
            let (offset, half_sq) = level.funk_chord();
            if !(half_sq > EPS_BOUND) {
                return Err(GeomError::EmptyLevelSet(format!(
                    "the chord <x, y> = {offset} does not meet the open disc"
                )));
            }
        }
        Ok(level)
    }

    /// Offset `c` of the Funk chord `<x, y> = c` and its squared half
    /// length `1 - c^2`.
    fn funk_chord(&self) -> (f64, f64) {
        // 1 - c = e^{-a} (1 - <p, y>)
        let gap = (-self.a).exp() * self.field.p.gap_to(self.field.y.coords());
        (1.0 - gap, gap * (2.0 - gap))
    }

    /// `(K, P)` with the Hilbert horocycle written
    /// `P (1 - |x|^2) = K (1 - <x, y>)^2`.
    fn hilbert_weights(&self) -> (f64, f64) {
        let p = self.field.p;
        let k = (2.0 * self.a).exp() * p.defect();
        let gap = p.gap_to(self.field.y.coords());
        (k, gap * gap)
    }

    /// For the Funk metric, the offset `c` of the chord `<x, y> = c`.
    pub fn chord_offset(&self) -> Option<f64> {
        (self.field.metric == BusemannMetric::Funk).then(|| self.funk_chord().0)
    }

    /// For the Hilbert metric, the coefficients `[c11, c12, c22, l1, l2, c0]`
    /// of the conic `c11 x1^2 + 2 c12 x1 x2 + c22 x2^2 + 2 l1 x1 + 2 l2 x2 + c0 = 0`,
    /// equivalent to `P |x|^2 + K <x, y>^2 - 2 K <x, y> + K - P = 0`.
    pub fn hilbert_conic(&self) -> Option<[f64; 6]> {
        if self.field.metric != BusemannMetric::Hilbert {
            return None;
        }
        let (k, p) = self.hilbert_weights();
        let [y1, y2] = self.field.y.coords();
        Some([
            p + k * y1 * y1,
            k * y1 * y2,
            p + k * y2 * y2,
            -k * y1,
            -k * y2,
            k - p,
        ])
    }

    /// `|b(x) - a|`.
    pub fn level_residual(&self, x: DiscPoint) -> f64 {
        (self.field.value(x) - self.a).abs()
    }

    /// `n >= 2` points of the level set inside the disc.
    ///
    /// Funk chords are sampled evenly by arc length over all but the last
    /// thousandth of their length at either end. Hilbert ellipses are
    /// sampled at `n` evenly spaced angles about their center, skipping the
    /// point of tangency with the boundary.
    pub fn points(&self, n: usize) -> Result<Vec<DiscPoint>> {
        if n < 2 {
            return Err(domain(format!("need at least 2 samples, got {n}")));
        }
        let y = self.field.y.coords();
        let across = vec2::perp(y);
        match self.field.metric {
            BusemannMetric::Funk => {
                let (offset, half_sq) = self.funk_chord();
                let h = half_sq.sqrt();
                let reach = 0.999 * h;
                (0..n)
                    .map(|i| {
                        let s = -reach + 2.0 * reach * i as f64 / (n - 1) as f64;
                        let x = vec2::add(vec2::scale(offset, y), vec2::scale(s, across));
                        DiscPoint::with_defect(x[0], x[1], (h - s) * (h + s))
                    })
                    .collect()
            }
            BusemannMetric::Hilbert => {
                let (k, p) = self.hilbert_weights();
                let total = p + k;
                // semi-axes along y (which is also the depth 1 - <x, y> of
                // the center) and across y
                let axis_along = p / total;
                let axis_across = (p / total).sqrt();
                let squash = p / total;
                (0..n)
                    .map(|i| {
                        let phi = TAU * (i as f64 + 0.5) / n as f64;
                        let (sin, cos) = phi.sin_cos();
                        // distance from the center to the ellipse along the ray at angle phi
                        let r = 1.0
                            / (cos * cos / (axis_along * axis_along)
                                + sin * sin / (axis_across * axis_across))
                                .sqrt();
                        let norm = cos.mul_add(cos, squash * sin * sin).sqrt();
                        // depth 1 - <x, y> = axis_along - r cos
                        let depth = if cos >= 0.0 {
                            axis_along * squash * sin * sin / (norm * (norm + cos))
                        } else {
                            axis_along - r * cos
                        };
                        let x = vec2::add(vec2::scale(1.0 - depth, y), vec2::scale(r * sin, across));
                        DiscPoint::with_defect(x[0], x[1], k / p * depth * depth)
                    })
                    .collect()
            }
        }
    }
}

pub fn horocycle_points(level: &HorocycleLevel, n: usize) -> Result<Vec<DiscPoint>> {
    level.points(n)
}

/// Evaluates a conic `[c11, c12, c22, l1, l2, c0]` at `x`.
pub fn conic_residual(conic: &[f64; 6], x: V2) -> f64 {
    let [c11, c12, c22, l1, l2, c0] = *conic;
    c11 * x[0] * x[0] + 2.0 * c12 * x[0] * x[1] + c22 * x[1] * x[1] + 2.0 * (l1 * x[0] + l2 * x[1]) + c0
}
