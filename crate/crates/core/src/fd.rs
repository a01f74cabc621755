//! Central finite differences.

use crate::vec2::V2;

/// Step for first derivatives.
pub const H_GRAD: f64 = 1e-5;

/// Base step for second derivatives; refined once by Richardson
/// extrapolation.
pub const H_HESS: f64 = 1e-3;

/// Central-difference gradient with step `h`.
pub fn gradient2(f: impl Fn(V2) -> f64, at: V2, h: f64) -> V2 {
    let dx = (f([at[0] + h, at[1]]) - f([at[0] - h, at[1]])) / (2.0 * h);
    let dy = (f([at[0], at[1] + h]) - f([at[0], at[1] - h])) / (2.0 * h);
    [dx, dy]
}

fn hessian_raw(f: &impl Fn(V2) -> f64, at: V2, h: f64) -> [[f64; 2]; 2] {
    let f0 = f(at);
    let d11 = (f([at[0] + h, at[1]]) - 2.0 * f0 + f([at[0] - h, at[1]])) / (h * h);
    let d22 = (f([at[0], at[1] + h]) - 2.0 * f0 + f([at[0], at[1] - h])) / (h * h);
    let d12 = (f([at[0] + h, at[1] + h]) - f([at[0] + h, at[1] - h]) - f([at[0] - h, at[1] + h])
        + f([at[0] - h, at[1] - h]))
        / (4.0 * h * h);
    [[d11, d12], [d12, d22]]
}

/// Central-difference Hessian at steps `h` and `h/2`, combined by one
/// Richardson step (fourth order).
pub fn hessian2(f: impl Fn(V2) -> f64, at: V2, h: f64) -> [[f64; 2]; 2] {
    let coarse = hessian_raw(&f, at, h);
    let fine = hessian_raw(&f, at, 0.5 * h);
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (4.0 * fine[i][j] - coarse[i][j]) / 3.0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        let f = |p: V2| p[0].powi(3) + 2.0 * p[0] * p[1] - p[1] * p[1];
        let g = gradient2(f, [1.0, 2.0], H_GRAD);
        assert!((g[0] - 7.0).abs() < 1e-8);
        assert!((g[1] + 2.0).abs() < 1e-8);
        let h = hessian2(f, [1.0, 2.0], H_HESS);
        assert!((h[0][0] - 6.0).abs() < 1e-8);
        assert!((h[0][1] - 2.0).abs() < 1e-8);
        assert!((h[1][1] + 2.0).abs() < 1e-8);
    }
}
