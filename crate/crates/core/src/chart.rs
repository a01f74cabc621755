//! Coordinate charts: the open unit disc, the upper half plane, the band,
//! the hyperboloid sheet, the upper hemisphere and the ambient half space.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{domain, GeomError, Result};
use crate::vec2::{self, V2};

/// Points with `1 - |x|^2 <= EPS_BOUND` are rejected when built from raw
/// coordinates.
pub const EPS_BOUND: f64 = 1e-9;

/// Surface-membership tolerance for the hyperboloid and hemisphere charts.
pub const TOL_CHART: f64 = 1e-10;

/// Relative tolerance on the normal component of a surface tangent vector.
pub const TOL_TANGENT: f64 = 1e-9;

/// Largest admissible mismatch between a supplied boundary defect and the
/// one recomputed from coordinates.
const TOL_DEFECT: f64 = 1e-12;

/// A point of the open unit disc.
///
/// Besides its coordinates the point carries its boundary defect
/// `1 - |x|^2`. Raw coordinates determine the defect only to absolute
/// rounding, which is catastrophic near the boundary; points produced by
/// closed-form constructions (geodesics, horocycles, inverse charts) carry
/// the defect computed from the same closed form instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    x: V2,
    defect: f64,
}

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint {
        x: [0.0, 0.0],
        defect: 1.0,
    };

    /// Builds a point from raw coordinates, enforcing the boundary guard.
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        let x = [x1, x2];
        if !vec2::is_finite(x) {
            return Err(domain(format!("non-finite disc point ({x1}, {x2})")));
        }
        let defect = raw_defect(x);
        if defect <= EPS_BOUND {
            return Err(domain(format!(
                "({x1}, {x2}) is not inside the unit disc (1 - |x|^2 = {defect:e})"
            )));
        }
        Ok(Self { x, defect })
    }

    /// Builds a point whose defect `1 - |x|^2` is known in closed form.
    ///
    /// Only `defect > 0` is required, so such points may lie closer to the
    /// boundary than [`EPS_BOUND`].
    pub fn with_defect(x1: f64, x2: f64, defect: f64) -> Result<Self> {
        let x = [x1, x2];
        if !vec2::is_finite(x) || !defect.is_finite() || defect <= 0.0 {
            return Err(domain(format!(
                "({x1}, {x2}) with defect {defect:e} is not inside the unit disc"
            )));
        }
        let recomputed = raw_defect(x);
        if (recomputed - defect).abs() > TOL_DEFECT {
            return Err(domain(format!(
                "defect {defect:e} disagrees with coordinates ({x1}, {x2}), which give {recomputed:e}"
            )));
        }
        Ok(Self { x, defect })
    }

    pub fn x1(&self) -> f64 {
        self.x[0]
    }

    pub fn x2(&self) -> f64 {
        self.x[1]
    }

    pub fn coords(&self) -> [f64; 2] {
        self.x
    }

    /// `1 - |x|^2`.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn norm(&self) -> f64 {
        vec2::norm(self.x)
    }

    pub fn norm_sq(&self) -> f64 {
        vec2::norm_sq(self.x)
    }

    /// `1 - |x|`, from the defect.
    pub fn radial_gap(&self) -> f64 {
        self.defect / (1.0 + self.norm())
    }

    /// `1 - <x, y>` for a unit vector `y`, computed as
    /// `(|x - y|^2 + (1 - |x|^2)) / 2` so that it stays accurate as `x`
    /// approaches `y`.
    pub fn gap_to(&self, y: V2) -> f64 {
        0.5 * (vec2::norm_sq(vec2::sub(self.x, y)) + self.defect)
    }
}

fn raw_defect(x: V2) -> f64 {
    (-x[0]).mul_add(x[0], (-x[1]).mul_add(x[1], 1.0))
}

/// A tangent vector on a planar chart.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TangentVector {
    pub v1: f64,
    pub v2: f64,
}

impl TangentVector {
    pub fn new(v1: f64, v2: f64) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(domain(format!("non-finite tangent vector ({v1}, {v2})")));
        }
        Ok(Self { v1, v2 })
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.v1, self.v2]
    }

    pub fn is_zero(&self) -> bool {
        self.v1 == 0.0 && self.v2 == 0.0
    }
}

impl From<[f64; 2]> for TangentVector {
    fn from(v: [f64; 2]) -> Self {
        Self { v1: v[0], v2: v[1] }
    }
}

impl Neg for TangentVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            v1: -self.v1,
            v2: -self.v2,
        }
    }
}

impl Mul<TangentVector> for f64 {
    type Output = TangentVector;
    fn mul(self, v: TangentVector) -> TangentVector {
        TangentVector {
            v1: self * v.v1,
            v2: self * v.v2,
        }
    }
}

/// A cotangent vector (a linear form on the tangent plane).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Covector {
    pub xi1: f64,
    pub xi2: f64,
}

impl Covector {
    pub fn new(xi1: f64, xi2: f64) -> Result<Self> {
        if !(xi1.is_finite() && xi2.is_finite()) {
            return Err(domain(format!("non-finite covector ({xi1}, {xi2})")));
        }
        Ok(Self { xi1, xi2 })
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.xi1, self.xi2]
    }

    pub fn is_zero(&self) -> bool {
        self.xi1 == 0.0 && self.xi2 == 0.0
    }

    /// Pairing with a tangent vector.
    pub fn apply(&self, v: TangentVector) -> f64 {
        vec2::dot(self.coords(), v.coords())
    }
}

impl From<[f64; 2]> for Covector {
    fn from(xi: [f64; 2]) -> Self {
        Self {
            xi1: xi[0],
            xi2: xi[1],
        }
    }
}

/// The charts of the model atlas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelId {
    /// Funk disc.
    Ff,
    /// Finsler-Poincaré disc.
    Fp,
    /// Finsler-Poincaré upper half plane.
    Fu,
    /// Finsler band.
    Fb,
    /// Hyperboloid sheet carrying the pullback of the Funk disc.
    Fuh1,
    /// Hyperboloid sheet carrying the pullback of the Finsler-Poincaré disc.
    Fuh2,
    /// Upper hemisphere carrying the pullback of the Funk disc.
    Fus1,
    /// Upper hemisphere carrying the pullback of the Finsler-Poincaré disc.
    Fus2,
    /// The half space `x3 > 0` in which the hyperboloid and hemisphere sit.
    AmbientHalfspace,
}

impl ModelId {
    pub const ALL: [ModelId; 9] = [
        ModelId::Ff,
        ModelId::Fp,
        ModelId::Fu,
        ModelId::Fb,
        ModelId::Fuh1,
        ModelId::Fuh2,
        ModelId::Fus1,
        ModelId::Fus2,
        ModelId::AmbientHalfspace,
    ];

    /// Number of coordinates of a point in this chart.
    pub fn dim(self) -> usize {
        match self {
            ModelId::Ff | ModelId::Fp | ModelId::Fu | ModelId::Fb => 2,
            _ => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ModelId::Ff => "ff",
            ModelId::Fp => "fp",
            ModelId::Fu => "fu",
            ModelId::Fb => "fb",
            ModelId::Fuh1 => "fuh1",
            ModelId::Fuh2 => "fuh2",
            ModelId::Fus1 => "fus1",
            ModelId::Fus2 => "fus2",
            ModelId::AmbientHalfspace => "ambient",
        }
    }

    fn is_disc(self) -> bool {
        matches!(self, ModelId::Ff | ModelId::Fp)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repr {
    Disc(DiscPoint),
    Plane(V2),
    Space([f64; 3]),
}

/// A point tagged with the chart it lives in. The chart invariant is
/// checked on every construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    model: ModelId,
    repr: Repr,
}

impl ModelPoint {
    pub fn new(model: ModelId, coords: &[f64]) -> Result<Self> {
        if coords.len() != model.dim() {
            return Err(domain(format!(
                "{model} points have {} coordinates, got {}",
                model.dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(domain(format!("non-finite {model} point {coords:?}")));
        }
        let repr = match model {
            ModelId::Ff | ModelId::Fp => Repr::Disc(DiscPoint::new(coords[0], coords[1])?),
            ModelId::Fu => {
                if coords[1] <= 0.0 {
                    return Err(domain(format!(
                        "fu point {coords:?} is not in the upper half plane"
                    )));
                }
                Repr::Plane([coords[0], coords[1]])
            }
            ModelId::Fb => {
                if coords[1].abs() >= FRAC_PI_2 || coords[1].cos() <= 0.0 {
                    return Err(domain(format!(
                        "fb point {coords:?} is not in the band |x2| < pi/2"
                    )));
                }
                Repr::Plane([coords[0], coords[1]])
            }
            ModelId::Fuh1 | ModelId::Fuh2 => {
                let [x1, x2, x3] = [coords[0], coords[1], coords[2]];
                let sheet = x1.hypot(x2).hypot(1.0);
                if x3 <= 0.0 || (x3 - sheet).abs() > TOL_CHART * x3 {
                    return Err(domain(format!(
                        "{model} point {coords:?} is not on the upper hyperboloid sheet"
                    )));
                }
                Repr::Space([x1, x2, x3])
            }
            ModelId::Fus1 | ModelId::Fus2 => {
                let [x1, x2, x3] = [coords[0], coords[1], coords[2]];
                let r2 = x1.mul_add(x1, x2.mul_add(x2, x3 * x3));
                if x3 <= 0.0 || (r2 - 1.0).abs() > TOL_CHART {
                    return Err(domain(format!(
                        "{model} point {coords:?} is not on the upper hemisphere"
                    )));
                }
                Repr::Space([x1, x2, x3])
            }
            ModelId::AmbientHalfspace => {
                if coords[2] <= 0.0 {
                    return Err(domain(format!(
                        "ambient point {coords:?} is not in the half space x3 > 0"
                    )));
                }
                Repr::Space([coords[0], coords[1], coords[2]])
            }
        };
        Ok(Self { model, repr })
    }

    /// Wraps a disc point in one of the two disc charts.
    pub fn from_disc(model: ModelId, p: DiscPoint) -> Result<Self> {
        if !model.is_disc() {
            return Err(domain(format!("{model} is not a disc chart")));
        }
        Ok(Self {
            model,
            repr: Repr::Disc(p),
        })
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn coords(&self) -> &[f64] {
        match &self.repr {
            Repr::Disc(p) => p.x.as_slice(),
            Repr::Plane(x) => x.as_slice(),
            Repr::Space(x) => x.as_slice(),
        }
    }

    pub fn as_disc(&self) -> Option<DiscPoint> {
        match self.repr {
            Repr::Disc(p) => Some(p),
            _ => None,
        }
    }

    /// Coordinates of a point in any planar chart.
    pub fn planar(&self) -> Option<V2> {
        match self.repr {
            Repr::Disc(p) => Some(p.x),
            Repr::Plane(x) => Some(x),
            Repr::Space(_) => None,
        }
    }

    pub fn spatial(&self) -> Option<[f64; 3]> {
        match self.repr {
            Repr::Space(x) => Some(x),
            _ => None,
        }
    }

    /// Unnormalized surface normal for the hyperboloid and hemisphere charts.
    pub fn surface_normal(&self) -> Option<[f64; 3]> {
        let x = self.spatial()?;
        match self.model {
            ModelId::Fuh1 | ModelId::Fuh2 => Some([-x[0], -x[1], x[2]]),
            ModelId::Fus1 | ModelId::Fus2 => Some(x),
            _ => None,
        }
    }

    /// Rejects 3-vectors with a normal component above [`TOL_TANGENT`]
    /// (relative to `|normal| |v|`). A no-op away from the embedded surfaces.
    pub fn check_tangent(&self, v: [f64; 3]) -> Result<()> {
        let Some(n) = self.surface_normal() else {
            return Ok(());
        };
        let dot = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
        let scale = norm3(n) * norm3(v);
        if dot.abs() > TOL_TANGENT * scale {
            let normal_component = if scale > 0.0 { dot / scale } else { dot };
            return Err(GeomError::Tangency {
                model: self.model,
                normal_component,
            });
        }
        Ok(())
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    v[0].hypot(v[1]).hypot(v[2])
}
