//! Finsler metrics of the model atlas.
//!
//! Every planar model is a Randers metric `F = alpha + beta` with `beta`
//! exact. The two ambient metrics on the half space `x3 > 0` are Randers
//! forms that are not positive definite; only their restrictions to the
//! hyperboloid sheet and the hemisphere are.
//!
//! Totals are evaluated through `(alpha^2 - beta^2) / (alpha - beta)` when
//! `beta < 0`, with `alpha^2 - beta^2` written as a sum of nonnegative terms.
//! This keeps the metric accurate for vectors pointing back from the
//! boundary, where `alpha + beta` cancels.

use std::fmt;

use crate::chart::{norm3, DiscPoint, ModelId, ModelPoint, TangentVector};
use crate::error::{domain, GeomError, Result};
use crate::fd;
use crate::vec2::{self, V2};

/// A Randers value split into its Riemannian and 1-form parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandersValue {
    pub alpha: f64,
    pub beta: f64,
    pub total: f64,
}

impl RandersValue {
    fn new(alpha: f64, beta: f64, alpha2_minus_beta2: f64) -> Self {
        let total = if beta >= 0.0 {
            alpha + beta
        } else {
            alpha2_minus_beta2 / (alpha - beta)
        };
        Self { alpha, beta, total }
    }
}

/// `g_ij = 1/2 d^2 F^2 / dv^i dv^j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalTensor {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl FundamentalTensor {
    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        sym_eigenvalues(self.g11, self.g12, self.g22)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigenvalues()[0] > 0.0
    }

    pub fn as_matrix(&self) -> [[f64; 2]; 2] {
        [[self.g11, self.g12], [self.g12, self.g22]]
    }
}

pub(crate) fn sym_eigenvalues(a: f64, b: f64, c: f64) -> [f64; 2] {
    let mean = 0.5 * (a + c);
    let radius = (0.5 * (a - c)).hypot(b);
    // the smaller root via the determinant avoids cancellation
    let big = mean + radius.copysign(mean);
    let small = if big != 0.0 { (a * c - b * b) / big } else { 0.0 };
    let mut out = [small, big];
    if out[0] > out[1] {
        out.swap(0, 1);
    }
    out
}

/// The planar Finsler metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `F_F` on the disc.
    Funk,
    /// `F_H`, the symmetrization of `F_F`; the Klein metric.
    Hilbert,
    /// `F_P` on the disc.
    FinslerPoincare,
    /// `F_U` on the upper half plane.
    UpperHalfPlane,
    /// `F_B` on the band.
    Band,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Funk,
        Metric::Hilbert,
        Metric::FinslerPoincare,
        Metric::UpperHalfPlane,
        Metric::Band,
    ];

    /// The chart the metric is written in.
    pub fn chart(self) -> ModelId {
        match self {
            Metric::Funk | Metric::Hilbert => ModelId::Ff,
            Metric::FinslerPoincare => ModelId::Fp,
            Metric::UpperHalfPlane => ModelId::Fu,
            Metric::Band => ModelId::Fb,
        }
    }

    /// The metric attached to a planar chart (the Funk metric on `ff`).
    pub fn of_chart(model: ModelId) -> Option<Metric> {
        match model {
            ModelId::Ff => Some(Metric::Funk),
            ModelId::Fp => Some(Metric::FinslerPoincare),
            ModelId::Fu => Some(Metric::UpperHalfPlane),
            ModelId::Fb => Some(Metric::Band),
            _ => None,
        }
    }

    fn point(self, p: &ModelPoint) -> Result<V2> {
        if p.model() != self.chart() {
            return Err(domain(format!(
                "{self} lives on the {} chart, got a {} point",
                self.chart(),
                p.model()
            )));
        }
        Ok(p.planar().expect("planar chart"))
    }

    fn disc(self, p: &ModelPoint) -> Result<DiscPoint> {
        self.point(p)?;
        Ok(p.as_disc().expect("disc chart"))
    }

    /// Evaluates `F(x, v)` with its Randers split.
    pub fn eval(self, p: &ModelPoint, v: [f64; 2]) -> Result<RandersValue> {
        if !vec2::is_finite(v) {
            return Err(domain(format!("non-finite tangent vector {v:?}")));
        }
        let value = match self {
            Metric::Funk => eval_funk(self.disc(p)?, v.into()),
            Metric::Hilbert => eval_hilbert(self.disc(p)?, v.into()),
            Metric::FinslerPoincare => eval_finsler_poincare(self.disc(p)?, v),
            Metric::UpperHalfPlane => eval_upper_half_plane(self.point(p)?, v),
            Metric::Band => eval_band(self.point(p)?, v),
        };
        Ok(value)
    }

    /// Convenience wrapper building the chart point from coordinates.
    pub fn eval_at(self, x: [f64; 2], v: [f64; 2]) -> Result<RandersValue> {
        self.eval(&ModelPoint::new(self.chart(), &x)?, v)
    }

    /// Coefficients `b_i` of the 1-form `beta = b_i dx^i`.
    pub fn one_form(self, p: &ModelPoint) -> Result<[f64; 2]> {
        let b = match self {
            Metric::Funk => {
                let x = self.disc(p)?;
                vec2::scale(1.0 / x.defect(), x.coords())
            }
            Metric::Hilbert => {
                self.disc(p)?;
                [0.0, 0.0]
            }
            Metric::FinslerPoincare => {
                let x = self.disc(p)?;
                let s = x.defect();
                vec2::scale(4.0 / (s * (2.0 - s)), x.coords())
            }
            Metric::UpperHalfPlane => {
                let x = self.point(p)?;
                let w = upper_half_plane_w(x);
                vec2::scale(1.0 / (x[1] * (4.0 + vec2::norm_sq(x))), w)
            }
            Metric::Band => band_one_form(self.point(p)?),
        };
        Ok(b)
    }

    /// Inverse `a^{ij}` of the Riemannian part.
    pub fn alpha_inverse(self, p: &ModelPoint) -> Result<[[f64; 2]; 2]> {
        let m = match self {
            Metric::Funk | Metric::Hilbert => {
                let x = self.disc(p)?;
                let s = x.defect();
                let [x1, x2] = x.coords();
                [
                    [s * (1.0 - x1 * x1), -s * x1 * x2],
                    [-s * x1 * x2, s * (1.0 - x2 * x2)],
                ]
            }
            Metric::FinslerPoincare => {
                let c = 0.25 * self.disc(p)?.defect().powi(2);
                [[c, 0.0], [0.0, c]]
            }
            Metric::UpperHalfPlane => {
                let c = self.point(p)?[1].powi(2);
                [[c, 0.0], [0.0, c]]
            }
            Metric::Band => {
                let c = self.point(p)?[1].cos().powi(2);
                [[c, 0.0], [0.0, c]]
            }
        };
        Ok(m)
    }

    /// `f` with `beta = df`.
    pub fn potential(self, p: &ModelPoint) -> Result<f64> {
        match self {
            Metric::Funk => Ok(-0.5 * self.disc(p)?.defect().ln()),
            Metric::FinslerPoincare => {
                let s = self.disc(p)?.defect();
                Ok(((2.0 - s) / s).ln())
            }
            Metric::UpperHalfPlane => {
                let x = self.point(p)?;
                Ok(((4.0 + vec2::norm_sq(x)) / x[1]).ln())
            }
            Metric::Band => {
                let x = self.point(p)?;
                Ok(x[0] + (4.0 * (-2.0 * x[0]).exp()).ln_1p() - x[1].cos().ln())
            }
            Metric::Hilbert => Err(GeomError::UnsupportedModel(
                "the Hilbert metric is reversible and has no deformation potential".into(),
            )),
        }
    }

    /// `||beta||_alpha = sqrt(a^{ij} b_i b_j)`.
    pub fn one_form_norm(self, p: &ModelPoint) -> Result<f64> {
        let b = self.one_form(p)?;
        let a = self.alpha_inverse(p)?;
        let q = a[0][0] * b[0] * b[0] + 2.0 * a[0][1] * b[0] * b[1] + a[1][1] * b[1] * b[1];
        Ok(q.max(0.0).sqrt())
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Funk => "funk",
            Metric::Hilbert => "hilbert",
            Metric::FinslerPoincare => "finsler-poincare",
            Metric::UpperHalfPlane => "upper-half-plane",
            Metric::Band => "band",
        })
    }
}

#[inline]
fn cross(a: V2, b: V2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// The Funk metric `F_F = alpha_F + beta_F` on the disc.
pub fn eval_funk(x: DiscPoint, v: TangentVector) -> RandersValue {
    let v = v.coords();
    let s = x.defect();
    let b = vec2::dot(x.coords(), v);
    let vv = vec2::norm_sq(v);
    let root = s.mul_add(vv, b * b).sqrt();
    RandersValue::new(root / s, b / s, vv / s)
}

/// The Hilbert metric, `(F_F(x, v) + F_F(x, -v)) / 2`, which is the Klein
/// metric `alpha_F`.
pub fn eval_hilbert(x: DiscPoint, v: TangentVector) -> RandersValue {
    let v = v.coords();
    let s = x.defect();
    let b = vec2::dot(x.coords(), v);
    let root = s.mul_add(vec2::norm_sq(v), b * b).sqrt();
    RandersValue {
        alpha: root / s,
        beta: 0.0,
        total: root / s,
    }
}

fn eval_finsler_poincare(x: DiscPoint, v: V2) -> RandersValue {
    let s = x.defect();
    let q = 2.0 - s; // 1 + |x|^2
    let vn = vec2::norm(v);
    let b = vec2::dot(x.coords(), v);
    let alpha = 2.0 * vn / s;
    let beta = 4.0 * b / (s * q);
    let c = cross(x.coords(), v);
    let diff = 4.0 * (vn * vn * s * s + 4.0 * c * c) / (s * s * q * q);
    RandersValue::new(alpha, beta, diff)
}

fn upper_half_plane_w(x: V2) -> V2 {
    [2.0 * x[0] * x[1], x[1] * x[1] - x[0] * x[0] - 4.0]
}

fn eval_upper_half_plane(x: V2, v: V2) -> RandersValue {
    let q = 4.0 + vec2::norm_sq(x);
    let w = upper_half_plane_w(x);
    let vv = vec2::norm_sq(v);
    let alpha = vec2::norm(v) / x[1];
    let beta = vec2::dot(w, v) / (x[1] * q);
    let c = cross(w, v);
    let diff = (16.0 * x[1] * x[1] * vv + c * c) / (x[1] * x[1] * q * q);
    RandersValue::new(alpha, beta, diff)
}

fn band_one_form(x: V2) -> V2 {
    // (e^{2x1} - 4) / (e^{2x1} + 4) = tanh(x1 - ln 2)
    [(x[0] - std::f64::consts::LN_2).tanh(), x[1].tan()]
}

fn eval_band(x: V2, v: V2) -> RandersValue {
    let c = x[1].cos();
    let b = band_one_form(x);
    let vv = vec2::norm_sq(v);
    let alpha = vec2::norm(v) / c;
    let beta = vec2::dot(b, v);
    // 1 - ||beta||^2 = 16 e^{2x1} cos^2 x2 / (e^{2x1} + 4)^2 = cos^2 x2 sech^2(x1 - ln 2)
    let sech = 1.0 / (x[0] - std::f64::consts::LN_2).cosh();
    let cr = cross(b, v);
    let diff = vv * sech * sech + cr * cr;
    RandersValue::new(alpha, beta, diff)
}

/// `F_L = alpha_L + beta_L` on the half space, with the Lorentzian
/// `alpha_L = sqrt(v1^2 + v2^2 - v3^2)` and `beta_L = dx3 / x3`.
///
/// Not positive definite: totals may be negative, and timelike vectors
/// (`v3^2 > v1^2 + v2^2`) have no real `alpha_L` and are rejected.
pub fn lorentz_randers(x: [f64; 3], v: [f64; 3]) -> Result<RandersValue> {
    if x[2] <= 0.0 {
        return Err(domain(format!("{x:?} is not in the half space x3 > 0")));
    }
    let spatial = v[0].hypot(v[1]);
    let a2 = (spatial - v[2].abs()) * (spatial + v[2].abs());
    if a2 < -1e-12 * spatial * spatial {
        return Err(domain(format!(
            "vector {v:?} is timelike for the Lorentzian form"
        )));
    }
    let alpha = a2.max(0.0).sqrt();
    let beta = v[2] / x[2];
    Ok(RandersValue {
        alpha,
        beta,
        total: alpha + beta,
    })
}

/// `F_+ = |v| / x3 - v3 / x3` on the half space.
pub fn half_space_randers(x: [f64; 3], v: [f64; 3]) -> Result<RandersValue> {
    if x[2] <= 0.0 {
        return Err(domain(format!("{x:?} is not in the half space x3 > 0")));
    }
    let alpha = norm3(v) / x[2];
    let beta = -v[2] / x[2];
    let horiz = v[0] * v[0] + v[1] * v[1];
    Ok(RandersValue::new(alpha, beta, horiz / (x[2] * x[2])))
}

/// Evaluates the metric of the point's chart.
///
/// Planar charts take 2-vectors; the hyperboloid and hemisphere charts take
/// ambient 3-vectors, which must be tangent to the surface.
pub fn eval_model(p: &ModelPoint, v: &[f64]) -> Result<RandersValue> {
    let model = p.model();
    if v.len() != model.dim() {
        return Err(domain(format!(
            "{model} tangent vectors have {} components, got {}",
            model.dim(),
            v.len()
        )));
    }
    if let Some(metric) = Metric::of_chart(model) {
        return metric.eval(p, [v[0], v[1]]);
    }
    let x = p.spatial().expect("spatial chart");
    let v3 = [v[0], v[1], v[2]];
    if v3.iter().any(|c| !c.is_finite()) {
        return Err(domain(format!("non-finite tangent vector {v:?}")));
    }
    match model {
        ModelId::Fuh1 | ModelId::Fuh2 => {
            p.check_tangent(v3)?;
            lorentz_randers(x, v3)
        }
        ModelId::Fus1 | ModelId::Fus2 => {
            p.check_tangent(v3)?;
            half_space_randers(x, v3)
        }
        _ => Err(GeomError::UnsupportedModel(
            "the ambient half space carries both F_L and F_+; use lorentz_randers or half_space_randers"
                .into(),
        )),
    }
}

/// `||beta||_alpha` for a metric at a point (`|x|` for the Funk metric).
pub fn one_form_norm(metric: Metric, p: &ModelPoint) -> Result<f64> {
    metric.one_form_norm(p)
}

/// The potential `f` with `beta = df`.
pub fn potential(metric: Metric, p: &ModelPoint) -> Result<f64> {
    metric.potential(p)
}

/// Fundamental tensor by central differences of `F^2 / 2` in `v`.
pub fn fundamental_tensor(metric: Metric, p: &ModelPoint, v: [f64; 2]) -> Result<FundamentalTensor> {
    if v == [0.0, 0.0] {
        return Err(GeomError::ZeroVector);
    }
    // validates chart and vector once
    metric.eval(p, v)?;
    let h = fd::H_HESS * vec2::norm(v);
    let energy = |w: V2| {
        let f = metric.eval(p, w).map(|r| r.total).unwrap_or(f64::NAN);
        0.5 * f * f
    };
    let hess = fd::hessian2(energy, v, h);
    Ok(FundamentalTensor {
        g11: hess[0][0],
        g12: 0.5 * (hess[0][1] + hess[1][0]),
        g22: hess[1][1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn disc(x1: f64, x2: f64) -> DiscPoint {
        DiscPoint::new(x1, x2).unwrap()
    }

    #[test]
    fn funk_values() {
        let r = eval_funk(DiscPoint::ORIGIN, [1.0, 0.0].into());
        assert_eq!(r.total, 1.0);
        let r = eval_funk(disc(0.5, 0.0), [1.0, 0.0].into());
        assert_relative_eq!(r.alpha, 4.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.beta, 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.total, 2.0, epsilon = 1e-15);
        let r = eval_funk(disc(0.5, 0.0), [-1.0, 0.0].into());
        assert_relative_eq!(r.alpha, 4.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.beta, -2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(r.total, 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn hilbert_values() {
        assert_eq!(eval_hilbert(DiscPoint::ORIGIN, [1.0, 0.0].into()).total, 1.0);
        let r = eval_hilbert(disc(0.5, 0.0), [1.0, 0.0].into());
        assert_relative_eq!(r.total, 4.0 / 3.0, epsilon = 1e-15);
        assert_eq!(r.beta, 0.0);
    }

    #[test]
    fn zero_vector_evaluates_to_zero() {
        let r = eval_funk(disc(0.3, 0.1), TangentVector::default());
        assert_eq!(r.total, 0.0);
        assert!(matches!(
            fundamental_tensor(
                Metric::Funk,
                &ModelPoint::from_disc(ModelId::Ff, disc(0.3, 0.1)).unwrap(),
                [0.0, 0.0]
            ),
            Err(GeomError::ZeroVector)
        ));
    }

    #[test]
    fn model_values() {
        let r = Metric::FinslerPoincare.eval_at([0.0, 0.0], [0.0, 1.0]).unwrap();
        assert_eq!(r.total, 2.0);
        let r = Metric::UpperHalfPlane.eval_at([0.0, 2.0], [1.0, 0.0]).unwrap();
        assert_relative_eq!(r.alpha, 0.5, epsilon = 1e-15);
        assert_eq!(r.beta, 0.0);
        assert_relative_eq!(r.total, 0.5, epsilon = 1e-15);
        let r = Metric::Band.eval_at([2f64.ln(), 0.0], [1.0, 0.0]).unwrap();
        assert_relative_eq!(r.alpha, 1.0, epsilon = 1e-15);
        assert!(r.beta.abs() < 1e-15);
        assert_relative_eq!(r.total, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn band_one_form_matches_printed_expression() {
        let x: [f64; 2] = [0.37, -0.8];
        let e = (2.0 * x[0]).exp();
        let v = [0.4, 1.3];
        let printed =
            ((e - 4.0) * v[0] * x[1].cos() + (e + 4.0) * v[1] * x[1].sin()) / ((e + 4.0) * x[1].cos());
        let r = Metric::Band.eval_at(x, v).unwrap();
        assert_relative_eq!(r.beta, printed, epsilon = 1e-14);
    }

    #[test]
    fn chart_mismatch_is_rejected() {
        let p = ModelPoint::new(ModelId::Fu, &[0.0, 2.0]).unwrap();
        assert!(Metric::Funk.eval(&p, [1.0, 0.0]).is_err());
    }

    #[test]
    fn potentials() {
        let o = |m: ModelId| ModelPoint::new(m, &[0.0, 0.0]).unwrap();
        assert_eq!(Metric::Funk.potential(&o(ModelId::Ff)).unwrap(), 0.0);
        assert_eq!(Metric::FinslerPoincare.potential(&o(ModelId::Fp)).unwrap(), 0.0);
        assert!(matches!(
            Metric::Hilbert.potential(&o(ModelId::Ff)),
            Err(GeomError::UnsupportedModel(_))
        ));
        // f_U and f_B against their printed forms
        let x = [0.7, 1.9];
        let p = ModelPoint::new(ModelId::Fu, &x).unwrap();
        assert_relative_eq!(
            Metric::UpperHalfPlane.potential(&p).unwrap(),
            ((4.0 + 0.49 + 3.61) / 1.9f64).ln(),
            epsilon = 1e-14
        );
        let xb = [0.35, 0.95];
        let p = ModelPoint::new(ModelId::Fb, &xb).unwrap();
        let printed = xb[0] + (1.0 + 4.0 / (2.0 * xb[0]).exp()).ln() + (1.0 / xb[1].cos()).ln();
        assert_relative_eq!(Metric::Band.potential(&p).unwrap(), printed, epsilon = 1e-14);
    }

    #[test]
    fn one_form_norms() {
        let o = ModelPoint::new(ModelId::Ff, &[0.0, 0.0]).unwrap();
        assert_eq!(Metric::Funk.one_form_norm(&o).unwrap(), 0.0);
        let p = ModelPoint::new(ModelId::Ff, &[0.5, 0.0]).unwrap();
        assert_relative_eq!(Metric::Funk.one_form_norm(&p).unwrap(), 0.5, epsilon = 1e-15);
        let p = ModelPoint::new(ModelId::Fp, &[0.5, 0.0]).unwrap();
        assert_relative_eq!(
            Metric::FinslerPoincare.one_form_norm(&p).unwrap(),
            0.8,
            epsilon = 1e-15
        );
    }

    #[test]
    fn upper_half_plane_norm_uses_squared_numerator() {
        // a^{ij} b_i b_j = |w|^2 / (4 + |x|^2)^2, not |w| / (4 + |x|^2)^2
        let x = [1.3, 0.6];
        let p = ModelPoint::new(ModelId::Fu, &x).unwrap();
        let w = upper_half_plane_w(x);
        let q = 4.0 + vec2::norm_sq(x);
        let n = Metric::UpperHalfPlane.one_form_norm(&p).unwrap();
        assert_relative_eq!(n * n, vec2::norm_sq(w) / (q * q), epsilon = 1e-14);
        assert!((n * n - vec2::norm(w) / (q * q)).abs() > 1e-3);
    }

    #[test]
    fn band_norm_matches_printed_expression() {
        let x = [-0.4, 1.1];
        let p = ModelPoint::new(ModelId::Fb, &x).unwrap();
        let e = (2.0 * x[0]).exp();
        let printed = ((e + 4.0).powi(2) - 16.0 * e * x[1].cos().powi(2)) / (e + 4.0).powi(2);
        let n = Metric::Band.one_form_norm(&p).unwrap();
        assert_relative_eq!(n * n, printed, epsilon = 1e-14);
    }

    #[test]
    fn funk_tensor_at_origin_is_identity() {
        let o = ModelPoint::new(ModelId::Ff, &[0.0, 0.0]).unwrap();
        let g = fundamental_tensor(Metric::Funk, &o, [1.0, 0.0]).unwrap();
        assert!((g.g11 - 1.0).abs() < 1e-6);
        assert!(g.g12.abs() < 1e-6);
        assert!((g.g22 - 1.0).abs() < 1e-6);
        let h = fundamental_tensor(Metric::Hilbert, &o, [1.0, 0.0]).unwrap();
        assert!((h.g11 - g.g11).abs() < 1e-9 && (h.g22 - g.g22).abs() < 1e-9);
    }

    #[test]
    fn ambient_metrics() {
        // F_L can be negative
        let r = lorentz_randers([0.0, 0.0, 1.0], [2.0, 0.0, -1.0]).unwrap();
        assert!(r.total < 3.0f64.sqrt());
        let r = lorentz_randers([0.0, 0.0, 0.5], [0.1, 0.0, -0.1]).unwrap();
        assert!(r.total < 0.0);
        assert!(lorentz_randers([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]).is_err());
        let r = half_space_randers([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.total, 0.0);
        let p = ModelPoint::new(ModelId::AmbientHalfspace, &[0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            eval_model(&p, &[1.0, 0.0, 0.0]),
            Err(GeomError::UnsupportedModel(_))
        ));
    }

    #[test]
    fn surface_metrics_reject_normal_vectors() {
        let p = ModelPoint::new(ModelId::Fus1, &[0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            eval_model(&p, &[0.0, 0.0, 1.0]),
            Err(GeomError::Tangency { .. })
        ));
        assert_relative_eq!(eval_model(&p, &[1.0, 0.0, 0.0]).unwrap().total, 1.0);
    }

    #[test]
    fn eigenvalues_are_ordered() {
        let e = sym_eigenvalues(2.0, 1.0, 2.0);
        assert_relative_eq!(e[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(e[1], 3.0, epsilon = 1e-15);
        let e = sym_eigenvalues(-1.0, 0.0, 4.0);
        assert_eq!(e, [-1.0, 4.0]);
    }
}
