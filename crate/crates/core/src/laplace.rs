//! The dual Funk metric, Finsler gradients, volume densities and the
//! Laplacian of Funk Busemann functions.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::busemann::{BusemannField, BusemannMetric};
use crate::chart::{Covector, DiscPoint, TangentVector};
use crate::error::{domain, GeomError, Result};
use crate::metrics::eval_funk;
use crate::vec2::{self, V2};

/// Below this radius the maximum and minimum volume Laplacians are singular.
pub const EPS_ORIGIN: f64 = 1e-6;

/// Step of the outer (divergence) difference in the Laplacian oracle.
pub const H_DIVERGENCE: f64 = 1e-4;

/// Step of the inner (gradient) difference in the Laplacian oracle.
pub const H_GRADIENT: f64 = 1e-5;

/// Choice of volume form on the Funk disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    /// Busemann-Hausdorff.
    Bh,
    /// Holmes-Thompson.
    Ht,
    /// Maximum volume.
    Max,
    /// Minimum volume.
    Min,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::Bh,
        MeasureKind::Ht,
        MeasureKind::Max,
        MeasureKind::Min,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MeasureKind::Bh => "bh",
            MeasureKind::Ht => "ht",
            MeasureKind::Max => "max",
            MeasureKind::Min => "min",
        }
    }

    fn singular_at_origin(self) -> bool {
        matches!(self, MeasureKind::Max | MeasureKind::Min)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MeasureKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        MeasureKind::ALL
            .into_iter()
            .find(|m| m.tag() == t)
            .ok_or_else(|| GeomError::Parse(format!("unknown measure {s:?} (expected bh, ht, max or min)")))
    }
}

/// `F*(x, xi) = |xi| - <x, xi>`, split like a Randers value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub alpha_star: f64,
    pub beta_star: f64,
    pub total: f64,
}

/// The dual fundamental tensor `g*^{ij}(x, xi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualTensor {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl DualTensor {
    /// `g*^{ij} xi_j`.
    pub fn raise(&self, xi: Covector) -> TangentVector {
        let [a, b] = xi.coords();
        TangentVector {
            v1: self.g11 * a + self.g12 * b,
            v2: self.g12 * a + self.g22 * b,
        }
    }

    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        crate::metrics::sym_eigenvalues(self.g11, self.g12, self.g22)
    }
}

/// Dual of the Funk metric.
pub fn dual_funk(x: DiscPoint, xi: Covector) -> DualValue {
    let xi = xi.coords();
    let alpha_star = vec2::norm(xi);
    let beta_star = -vec2::dot(x.coords(), xi);
    let total = if beta_star >= 0.0 {
        alpha_star + beta_star
    } else {
        // |xi|^2 - <x, xi>^2 = (1 - |x|^2) |xi|^2 + (x ^ xi)^2
        let cross = x.x1() * xi[1] - x.x2() * xi[0];
        x.defect().mul_add(alpha_star * alpha_star, cross * cross) / (alpha_star - beta_star)
    };
    DualValue {
        alpha_star,
        beta_star,
        total,
    }
}

/// `sup { xi(v) : F_F(x, v) = 1 }` by a search over `directions` evenly spaced
/// directions followed by a golden-section refinement around the best one.
/// Uses only the primal metric.
pub fn dual_support_oracle(x: DiscPoint, xi: Covector, directions: usize) -> f64 {
    let support = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let v = TangentVector { v1: c, v2: s };
        xi.apply(v) / eval_funk(x, v).total
    };
    let n = directions.max(3);
    let step = TAU / n as f64;
    let best = (0..n)
        .map(|i| i as f64 * step)
        .max_by(|a, b| support(*a).total_cmp(&support(*b)))
        .expect("at least one direction");
    let (mut lo, mut hi) = (best - step, best + step);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut m1 = hi - ratio * (hi - lo);
    let mut m2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (support(m1), support(m2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + ratio * (hi - lo);
            f2 = support(m2);
        } else {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - ratio * (hi - lo);
            f1 = support(m1);
        }
    }
    support(best).max(f1).max(f2)
}

/// `g*^{ij} = (1 - <x, xi^>) (delta - xi^ xi^) + (xi^ - x)(xi^ - x)` with
/// `xi^ = xi / |xi|`.
pub fn dual_tensor(x: DiscPoint, xi: Covector) -> Result<DualTensor> {
    if xi.is_zero() {
        return Err(GeomError::ZeroCovector);
    }
    let c = xi.coords();
    let unit = vec2::scale(1.0 / vec2::norm(c), c);
    let w = 1.0 - vec2::dot(x.coords(), unit);
    let d = vec2::sub(unit, x.coords());
    Ok(DualTensor {
        g11: w * (1.0 - unit[0] * unit[0]) + d[0] * d[0],
        g12: -w * unit[0] * unit[1] + d[0] * d[1],
        g22: w * (1.0 - unit[1] * unit[1]) + d[1] * d[1],
    })
}

/// The Legendre image `g*(x, xi) xi` of a covector.
pub fn legendre(x: DiscPoint, xi: Covector) -> Result<TangentVector> {
    Ok(dual_tensor(x, xi)?.raise(xi))
}

fn expect_funk(field: &BusemannField) -> Result<()> {
    if field.metric != BusemannMetric::Funk {
        return Err(GeomError::UnsupportedModel(
            "the Laplacian is implemented for Funk Busemann functions".into(),
        ));
    }
    Ok(())
}

/// Finsler gradient of a Funk Busemann function, equal to `y - x`.
pub fn gradient(field: &BusemannField, x: DiscPoint) -> Result<TangentVector> {
    expect_funk(field)?;
    legendre(x, field.differential(x))
}

/// Density of the chosen volume form against Lebesgue measure.
pub fn volume_density(kind: MeasureKind, x: DiscPoint) -> f64 {
    let s = x.defect();
    match kind {
        MeasureKind::Bh => 1.0,
        MeasureKind::Ht => s.powf(-1.5),
        // (1 + r) / (1 - r) = (1 + r)^2 / (1 - r^2)
        MeasureKind::Max => ((1.0 + x.norm()).powi(2) / s).powf(1.5),
        MeasureKind::Min => (s / (1.0 + x.norm()).powi(2)).powf(1.5),
    }
}

fn check_origin(kind: MeasureKind, x: DiscPoint) -> Result<()> {
    if kind.singular_at_origin() && x.norm() < EPS_ORIGIN {
        return Err(GeomError::OriginSingularity(x.norm()));
    }
    Ok(())
}

/// Closed-form Laplacian of a Funk Busemann function.
///
/// It is `-2` for the Busemann-Hausdorff measure and picks up a correction
/// proportional to `<x, y> - |x|^2` for the others.
pub fn laplacian_busemann(kind: MeasureKind, field: &BusemannField, x: DiscPoint) -> Result<f64> {
    expect_funk(field)?;
    check_origin(kind, x)?;
    let q = vec2::dot(x.coords(), field.y.coords()) - x.norm_sq();
    let s = x.defect();
    Ok(match kind {
        MeasureKind::Bh => -2.0,
        MeasureKind::Ht => -2.0 + 3.0 * q / s,
        MeasureKind::Max => -2.0 + 3.0 * q / (x.norm() * s),
        MeasureKind::Min => -2.0 - 3.0 * q / (x.norm() * s),
    })
}

/// `(1 / sigma) d_i (sigma g*^{ij}(x, db) d_j b)` by nested central
/// differences of the Busemann value and the density.
pub fn laplacian_fd_oracle(kind: MeasureKind, field: &BusemannField, x: DiscPoint) -> Result<f64> {
    expect_funk(field)?;
    check_origin(kind, x)?;
    let value = |z: V2| -> Result<f64> { Ok(field.value(DiscPoint::new(z[0], z[1])?)) };
    let flux = |z: V2| -> Result<V2> {
        let h = H_GRADIENT;
        let db = [
            (value([z[0] + h, z[1]])? - value([z[0] - h, z[1]])?) / (2.0 * h),
            (value([z[0], z[1] + h])? - value([z[0], z[1] - h])?) / (2.0 * h),
        ];
        let at = DiscPoint::new(z[0], z[1])?;
        let v = legendre(at, db.into())?;
        Ok(vec2::scale(volume_density(kind, at), v.coords()))
    };
    let h = H_DIVERGENCE;
    let c = x.coords();
    let div = (flux([c[0] + h, c[1]])?[0] - flux([c[0] - h, c[1]])?[0] + flux([c[0], c[1] + h])?[1]
        - flux([c[0], c[1] - h])?[1])
        / (2.0 * h);
    Ok(div / volume_density(kind, x))
}

/// Mean curvature `-coth(r / 2) / 2 - 3 / 2` of forward spheres of radius
/// `r`; tends to the Busemann-Hausdorff Laplacian `-2` as `r -> inf`.
pub fn mean_curvature_sphere(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("sphere radius must be positive, got {r}")));
    }
    Ok(-0.5 / (0.5 * r).tanh() - 1.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::BoundaryPoint;
    use approx::assert_relative_eq;

    fn half() -> DiscPoint {
        DiscPoint::new(0.5, 0.0).unwrap()
    }

    fn east_field() -> BusemannField {
        BusemannField::funk(DiscPoint::ORIGIN, BoundaryPoint::new(1.0, 0.0).unwrap())
    }

    #[test]
    fn dual_values() {
        assert_eq!(dual_funk(DiscPoint::ORIGIN, [3.0, 4.0].into()).total, 5.0);
        assert_relative_eq!(dual_funk(half(), [1.0, 0.0].into()).total, 0.5, epsilon = 1e-15);
        assert_relative_eq!(dual_funk(half(), [-1.0, 0.0].into()).total, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn dual_tensor_examples() {
        let g = dual_tensor(DiscPoint::ORIGIN, [0.3, -2.0].into()).unwrap();
        assert_relative_eq!(g.g11, 1.0, epsilon = 1e-15);
        assert!(g.g12.abs() < 1e-15);
        assert_relative_eq!(g.g22, 1.0, epsilon = 1e-15);
        let g = dual_tensor(half(), [1.0, 0.0].into()).unwrap();
        assert_eq!((g.g11, g.g12, g.g22), (0.25, 0.0, 0.5));
        assert!(matches!(
            dual_tensor(half(), [0.0, 0.0].into()),
            Err(GeomError::ZeroCovector)
        ));
    }

    #[test]
    fn gradient_at_origin() {
        let g = gradient(&east_field(), DiscPoint::ORIGIN).unwrap();
        assert_eq!(g.coords(), [1.0, 0.0]);
    }

    #[test]
    fn densities() {
        assert_eq!(volume_density(MeasureKind::Bh, half()), 1.0);
        assert_eq!(volume_density(MeasureKind::Ht, DiscPoint::ORIGIN), 1.0);
        assert_relative_eq!(
            volume_density(MeasureKind::Max, half()),
            3f64.powf(1.5),
            epsilon = 1e-14
        );
        assert_relative_eq!(
            volume_density(MeasureKind::Min, half()),
            3f64.powf(-1.5),
            epsilon = 1e-15
        );
    }

    #[test]
    fn closed_form_laplacians() {
        let f = east_field();
        for x in [DiscPoint::ORIGIN, half()] {
            assert_eq!(laplacian_busemann(MeasureKind::Bh, &f, x).unwrap(), -2.0);
        }
        assert_eq!(
            laplacian_busemann(MeasureKind::Ht, &f, DiscPoint::ORIGIN).unwrap(),
            -2.0
        );
        assert_relative_eq!(
            laplacian_busemann(MeasureKind::Ht, &f, half()).unwrap(),
            -1.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            laplacian_busemann(MeasureKind::Max, &f, half()).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            laplacian_busemann(MeasureKind::Min, &f, half()).unwrap(),
            -4.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            laplacian_busemann(MeasureKind::Max, &f, DiscPoint::ORIGIN),
            Err(GeomError::OriginSingularity(_))
        ));
    }

    #[test]
    fn oracle_laplacians() {
        let f = east_field();
        for (kind, expected) in [
            (MeasureKind::Bh, -2.0),
            (MeasureKind::Ht, -1.0),
            (MeasureKind::Max, 0.0),
            (MeasureKind::Min, -4.0),
        ] {
            let got = laplacian_fd_oracle(kind, &f, half()).unwrap();
            assert!((got - expected).abs() < 1e-4, "{kind}: {got}");
        }
    }

    #[test]
    fn mean_curvature() {
        assert!((mean_curvature_sphere(100.0).unwrap() + 2.0).abs() < 1e-12);
        assert_relative_eq!(
            mean_curvature_sphere(2.0).unwrap(),
            -0.5 / 1f64.tanh() - 1.5,
            epsilon = 1e-15
        );
        assert!(mean_curvature_sphere(0.0).is_err());
    }

    #[test]
    fn measures_parse() {
        assert_eq!("MAX".parse::<MeasureKind>().unwrap(), MeasureKind::Max);
        assert!("volume".parse::<MeasureKind>().is_err());
    }
}
