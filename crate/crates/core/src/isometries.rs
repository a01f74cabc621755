//! The isometries between the models of the Funk and Finsler-Poincaré discs.
//!
//! ```text
//!   FUH1 <-eta-  FF  -psi->  FUS1
//!                |  \
//!              f |   xi --> FB --phi--> FU
//!                v    \________g_______/^
//!   FUH2 <-pi--  FP  -sigma-> FUS2
//! ```

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::chart::{DiscPoint, ModelId, ModelPoint};
use crate::error::{domain, GeomError, Result};
use crate::metrics::eval_model;
use crate::vec2::{self, V2};

/// One of the eight maps of the model diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsometryId {
    /// Funk disc onto the hyperboloid sheet carrying `F_L`.
    Eta,
    /// Finsler-Poincaré disc onto the hyperboloid sheet.
    Pi,
    /// Funk disc onto the hemisphere carrying `F_+`.
    Psi,
    /// Finsler-Poincaré disc onto the hemisphere.
    Sigma,
    /// Funk disc onto the band.
    Xi,
    /// Band onto the upper half plane.
    Phi,
    /// Funk disc onto the Finsler-Poincaré disc.
    FMap,
    /// Funk disc onto the upper half plane; equals `phi . xi`.
    GMap,
}

impl IsometryId {
    pub const ALL: [IsometryId; 8] = [
        IsometryId::Eta,
        IsometryId::Pi,
        IsometryId::Psi,
        IsometryId::Sigma,
        IsometryId::Xi,
        IsometryId::Phi,
        IsometryId::FMap,
        IsometryId::GMap,
    ];

    pub fn source(self) -> ModelId {
        match self {
            IsometryId::Eta | IsometryId::Psi | IsometryId::Xi | IsometryId::FMap | IsometryId::GMap => {
                ModelId::Ff
            }
            IsometryId::Pi | IsometryId::Sigma => ModelId::Fp,
            IsometryId::Phi => ModelId::Fb,
        }
    }

    pub fn target(self) -> ModelId {
        match self {
            IsometryId::Eta => ModelId::Fuh1,
            IsometryId::Pi => ModelId::Fuh2,
            IsometryId::Psi => ModelId::Fus1,
            IsometryId::Sigma => ModelId::Fus2,
            IsometryId::Xi => ModelId::Fb,
            IsometryId::Phi | IsometryId::GMap => ModelId::Fu,
            IsometryId::FMap => ModelId::Fp,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IsometryId::Eta => "eta",
            IsometryId::Pi => "pi",
            IsometryId::Psi => "psi",
            IsometryId::Sigma => "sigma",
            IsometryId::Xi => "xi",
            IsometryId::Phi => "phi",
            IsometryId::FMap => "f",
            IsometryId::GMap => "g",
        }
    }

    /// Maps a point of the source chart into the target chart.
    pub fn apply(self, x: &ModelPoint) -> Result<ModelPoint> {
        expect_model(x, self.source())?;
        let target = self.target();
        match self {
            IsometryId::Eta => {
                let p = x.as_disc().expect("disc chart");
                let r = 1.0 / p.defect().sqrt();
                ModelPoint::new(target, &[p.x1() * r, p.x2() * r, r])
            }
            IsometryId::Pi => {
                let p = x.as_disc().expect("disc chart");
                let s = p.defect();
                ModelPoint::new(target, &[2.0 * p.x1() / s, 2.0 * p.x2() / s, (2.0 - s) / s])
            }
            IsometryId::Psi => {
                let p = x.as_disc().expect("disc chart");
                ModelPoint::new(target, &[p.x1(), p.x2(), p.defect().sqrt()])
            }
            IsometryId::Sigma => {
                let p = x.as_disc().expect("disc chart");
                let s = p.defect();
                let q = 2.0 - s;
                ModelPoint::new(target, &[2.0 * p.x1() / q, 2.0 * p.x2() / q, s / q])
            }
            IsometryId::Xi => {
                let p = x.as_disc().expect("disc chart");
                let [x1, x2] = p.coords();
                // 1 - x1^2 without cancellation near x1 = +-1
                let m = p.defect() + x2 * x2;
                let half_log_ratio = if x1 >= 0.0 {
                    0.5 * m.ln() - x1.ln_1p()
                } else {
                    (-x1).ln_1p() - 0.5 * m.ln()
                };
                let angle = -x2.atan2(p.defect().sqrt());
                ModelPoint::new(target, &[std::f64::consts::LN_2 + half_log_ratio, angle])
            }
            IsometryId::Phi => {
                let [x1, x2] = x.planar().expect("planar chart");
                let e = x1.exp();
                let (sin, cos) = x2.sin_cos();
                ModelPoint::new(target, &[-e * sin, e * cos])
            }
            IsometryId::FMap => {
                let p = x.as_disc().expect("disc chart");
                let root = p.defect().sqrt();
                let d = 1.0 + root;
                let image = disc_with_defect(p.x1() / d, p.x2() / d, 2.0 * root / d)?;
                ModelPoint::from_disc(target, image)
            }
            IsometryId::GMap => {
                let p = x.as_disc().expect("disc chart");
                let [x1, x2] = p.coords();
                let root = p.defect().sqrt();
                // 1 / (1 + x1), rewritten for x1 near -1
                let inv = if x1 >= 0.0 {
                    1.0 / (1.0 + x1)
                } else {
                    (1.0 - x1) / (p.defect() + x2 * x2)
                };
                ModelPoint::new(target, &[2.0 * x2 * inv, 2.0 * root * inv])
            }
        }
    }

    /// Maps a point of the target chart back to the source chart.
    pub fn apply_inverse(self, y: &ModelPoint) -> Result<ModelPoint> {
        expect_model(y, self.target())?;
        let source = self.source();
        let c = y.coords();
        let disc = match self {
            IsometryId::Eta => {
                let x3 = c[2];
                disc_with_defect(c[0] / x3, c[1] / x3, 1.0 / (x3 * x3))?
            }
            IsometryId::Pi => {
                let d = 1.0 + c[2];
                disc_with_defect(c[0] / d, c[1] / d, 2.0 / d)?
            }
            IsometryId::Psi => disc_with_defect(c[0], c[1], c[2] * c[2])?,
            IsometryId::Sigma => {
                let d = 1.0 + c[2];
                disc_with_defect(c[0] / d, c[1] / d, 2.0 * c[2] / d)?
            }
            IsometryId::Xi => {
                let [e, big] = band_exponentials(c[0]);
                let q = 4.0 + big;
                let (sin, cos) = c[1].sin_cos();
                let defect = 16.0 * big * cos * cos / (q * q);
                disc_with_defect((4.0 - big) / q, -4.0 * e * sin / q, defect)?
            }
            IsometryId::Phi => {
                let x = [c[0], c[1]];
                let image = [0.5 * vec2::norm_sq(x).ln(), -x[0].atan2(x[1])];
                return ModelPoint::new(source, &image);
            }
            IsometryId::FMap => {
                let u = y.as_disc().expect("disc chart");
                let q = 1.0 + u.norm_sq();
                let k = u.defect() / q;
                disc_with_defect(2.0 * u.x1() / q, 2.0 * u.x2() / q, k * k)?
            }
            IsometryId::GMap => {
                let x = [c[0], c[1]];
                let q = 4.0 + vec2::norm_sq(x);
                let k = 4.0 * x[1] / q;
                disc_with_defect((4.0 - vec2::norm_sq(x)) / q, 4.0 * x[0] / q, k * k)?
            }
        };
        ModelPoint::from_disc(source, disc)
    }

    /// Jacobian of [`apply`](Self::apply); rows index target coordinates.
    pub fn differential(self, x: &ModelPoint) -> Result<Differential> {
        expect_model(x, self.source())?;
        let rows: Vec<[f64; 2]> = match self {
            IsometryId::Eta => {
                let p = x.as_disc().expect("disc chart");
                let s = p.defect();
                let k = s.powf(-1.5);
                let [x1, x2] = p.coords();
                vec![
                    [k * (s + x1 * x1), k * x1 * x2],
                    [k * x1 * x2, k * (s + x2 * x2)],
                    [k * x1, k * x2],
                ]
            }
            IsometryId::Pi => {
                let p = x.as_disc().expect("disc chart");
                let s = p.defect();
                let k = 2.0 / (s * s);
                let [x1, x2] = p.coords();
                vec![
                    [k * (s + 2.0 * x1 * x1), 2.0 * k * x1 * x2],
                    [2.0 * k * x1 * x2, k * (s + 2.0 * x2 * x2)],
                    [2.0 * k * x1, 2.0 * k * x2],
                ]
            }
            IsometryId::Psi => {
                let p = x.as_disc().expect("disc chart");
                let root = p.defect().sqrt();
                vec![[1.0, 0.0], [0.0, 1.0], [-p.x1() / root, -p.x2() / root]]
            }
            IsometryId::Sigma => {
                let p = x.as_disc().expect("disc chart");
                let q = 2.0 - p.defect();
                let k = 2.0 / (q * q);
                let [x1, x2] = p.coords();
                vec![
                    [k * (q - 2.0 * x1 * x1), -2.0 * k * x1 * x2],
                    [-2.0 * k * x1 * x2, k * (q - 2.0 * x2 * x2)],
                    [-2.0 * k * x1, -2.0 * k * x2],
                ]
            }
            IsometryId::Xi => {
                let p = x.as_disc().expect("disc chart");
                let [x1, x2] = p.coords();
                let root = p.defect().sqrt();
                let m = p.defect() + x2 * x2;
                vec![[-1.0 / m, 0.0], [-x1 * x2 / (m * root), -1.0 / root]]
            }
            IsometryId::Phi => {
                let [x1, x2] = x.planar().expect("planar chart");
                let e = x1.exp();
                let (sin, cos) = x2.sin_cos();
                vec![[-e * sin, -e * cos], [e * cos, -e * sin]]
            }
            IsometryId::FMap => {
                let p = x.as_disc().expect("disc chart");
                let root = p.defect().sqrt();
                let d = 1.0 + root;
                let k = 1.0 / (root * d * d);
                let [x1, x2] = p.coords();
                vec![
                    [1.0 / d + k * x1 * x1, k * x1 * x2],
                    [k * x1 * x2, 1.0 / d + k * x2 * x2],
                ]
            }
            IsometryId::GMap => {
                let p = x.as_disc().expect("disc chart");
                let [x1, x2] = p.coords();
                let root = p.defect().sqrt();
                let d = 1.0 + x1;
                vec![
                    [-2.0 * x2 / (d * d), 2.0 / d],
                    [
                        -2.0 * x1 / (root * d) - 2.0 * root / (d * d),
                        -2.0 * x2 / (root * d),
                    ],
                ]
            }
        };
        Ok(Differential::from_rows(&rows))
    }

    /// Jacobian of [`apply_inverse`](Self::apply_inverse); rows index source
    /// coordinates, columns target coordinates.
    pub fn differential_inverse(self, y: &ModelPoint) -> Result<Differential> {
        expect_model(y, self.target())?;
        let c = y.coords();
        let jac = match self {
            IsometryId::Eta => {
                let x3 = c[2];
                DMatrix::from_row_slice(
                    2,
                    3,
                    &[1.0 / x3, 0.0, -c[0] / (x3 * x3), 0.0, 1.0 / x3, -c[1] / (x3 * x3)],
                )
            }
            IsometryId::Pi | IsometryId::Sigma => {
                let d = 1.0 + c[2];
                DMatrix::from_row_slice(
                    2,
                    3,
                    &[1.0 / d, 0.0, -c[0] / (d * d), 0.0, 1.0 / d, -c[1] / (d * d)],
                )
            }
            IsometryId::Psi => DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
            IsometryId::Xi => {
                let [e, big] = band_exponentials(c[0]);
                let q = 4.0 + big;
                let (sin, cos) = c[1].sin_cos();
                DMatrix::from_row_slice(
                    2,
                    2,
                    &[
                        -16.0 * big / (q * q),
                        0.0,
                        -4.0 * sin * e * (4.0 - big) / (q * q),
                        -4.0 * e * cos / q,
                    ],
                )
            }
            IsometryId::Phi => {
                let r2 = c[0] * c[0] + c[1] * c[1];
                DMatrix::from_row_slice(2, 2, &[c[0] / r2, c[1] / r2, -c[1] / r2, c[0] / r2])
            }
            IsometryId::FMap => {
                let u = [c[0], c[1]];
                let q = 1.0 + vec2::norm_sq(u);
                let a = 2.0 / q;
                let b = 4.0 / (q * q);
                DMatrix::from_row_slice(
                    2,
                    2,
                    &[
                        a - b * u[0] * u[0],
                        -b * u[0] * u[1],
                        -b * u[0] * u[1],
                        a - b * u[1] * u[1],
                    ],
                )
            }
            IsometryId::GMap => {
                let x = [c[0], c[1]];
                let q = 4.0 + vec2::norm_sq(x);
                let q2 = q * q;
                DMatrix::from_row_slice(
                    2,
                    2,
                    &[
                        -16.0 * x[0] / q2,
                        -16.0 * x[1] / q2,
                        (4.0 * q - 8.0 * x[0] * x[0]) / q2,
                        -8.0 * x[0] * x[1] / q2,
                    ],
                )
            }
        };
        Ok(Differential { jacobian: jac })
    }

    /// Pushes a source tangent vector forward to the target chart.
    pub fn push_forward(self, x: &ModelPoint, v: [f64; 2]) -> Result<(ModelPoint, Vec<f64>)> {
        let y = self.apply(x)?;
        let w = self.differential(x)?.apply(&v)?;
        Ok((y, w))
    }

    /// `|F_target(apply(x), D(x) v) - F_source(x, v)|`.
    ///
    /// For the hyperboloid and hemisphere targets the image vector is checked
    /// for tangency before the ambient metric is evaluated.
    pub fn pullback_residual(self, x: &ModelPoint, v: [f64; 2]) -> Result<f64> {
        let (y, w) = self.push_forward(x, v)?;
        let target = eval_model(&y, &w)?.total;
        let source = eval_model(x, &v)?.total;
        Ok((target - source).abs())
    }
}

impl fmt::Display for IsometryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IsometryId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let t = lower.strip_suffix("_map").unwrap_or(&lower);
        IsometryId::ALL
            .into_iter()
            .find(|id| id.name() == t)
            .ok_or_else(|| GeomError::Parse(format!("unknown map {s:?}")))
    }
}

/// A Jacobian matrix, rows indexing output coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Differential {
    pub jacobian: DMatrix<f64>,
}

impl Differential {
    fn from_rows(rows: &[[f64; 2]]) -> Self {
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self {
            jacobian: DMatrix::from_row_slice(rows.len(), 2, &flat),
        }
    }

    pub fn rows(&self) -> usize {
        self.jacobian.nrows()
    }

    pub fn cols(&self) -> usize {
        self.jacobian.ncols()
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols() {
            return Err(domain(format!(
                "differential takes {} components, got {}",
                self.cols(),
                v.len()
            )));
        }
        let out = &self.jacobian * nalgebra::DVector::from_column_slice(v);
        Ok(out.iter().copied().collect())
    }
}

/// Discrepancy between the two routes from the Funk disc to the band:
/// `xi` directly, and `g` followed by the inverse of `phi`. Compares both the
/// image points and the band metric of the pushed-forward vectors.
pub fn composed_path_discrepancy(x: DiscPoint, v: [f64; 2]) -> Result<f64> {
    let p = ModelPoint::from_disc(ModelId::Ff, x)?;
    let (direct, w_direct) = IsometryId::Xi.push_forward(&p, v)?;
    let (upper, w_upper) = IsometryId::GMap.push_forward(&p, v)?;
    let via = IsometryId::Phi.apply_inverse(&upper)?;
    let w_via = IsometryId::Phi.differential_inverse(&upper)?.apply(&w_upper)?;
    let point_gap = vec2::norm(vec2::sub(
        [direct.coords()[0], direct.coords()[1]],
        [via.coords()[0], via.coords()[1]],
    ));
    let f_direct = eval_model(&direct, &w_direct)?.total;
    let f_via = eval_model(&via, &w_via)?.total;
    Ok(point_gap.max((f_direct - f_via).abs()))
}

fn expect_model(p: &ModelPoint, model: ModelId) -> Result<()> {
    if p.model() != model {
        return Err(domain(format!("expected a {model} point, got {}", p.model())));
    }
    Ok(())
}

/// `[e^{x}, e^{2x}]`.
fn band_exponentials(x: f64) -> V2 {
    let e = x.exp();
    [e, e * e]
}

/// Builds a disc point from coordinates and a closed-form defect, falling
/// back to the recomputed defect when the input sat slightly off its surface.
fn disc_with_defect(x1: f64, x2: f64, defect: f64) -> Result<DiscPoint> {
    DiscPoint::with_defect(x1, x2, defect).or_else(|_| DiscPoint::new(x1, x2))
}
