//! SVG rendering of Funk chords mapped into the band model.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use funkdisc::geodesics::{band_residual, to_model};
use funkdisc::{Chord, GeomError, ModelId, Result};

/// Chords drawn in the figure: slanted, horizontal and vertical lines.
pub const CATALOG: [Chord; 9] = [
    Chord::Sloped { m: 0.0, c: 0.0 },
    Chord::Sloped { m: 0.0, c: 0.4 },
    Chord::Sloped { m: 0.0, c: -0.4 },
    Chord::Sloped { m: 1.0, c: 0.2 },
    Chord::Sloped { m: -1.0, c: 0.2 },
    Chord::Sloped { m: 0.5, c: -0.5 },
    Chord::Vertical { k: -0.5 },
    Chord::Vertical { k: 0.0 },
    Chord::Vertical { k: 0.5 },
];

/// Vertices must satisfy the band equation to this accuracy.
pub const TOL_VERTEX: f64 = 1e-8;

/// Half-width of the plotted range of the first band coordinate.
pub const X1_RANGE: f64 = 4.0;

const SAMPLES_PER_CURVE: usize = 2001;
const PX_PER_UNIT: f64 = 100.0;
const MARGIN: f64 = 20.0;

/// One connected piece of a curve inside the viewport, in band coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub chord: Chord,
    pub vertices: Vec<[f64; 2]>,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandFigure {
    pub curves: Vec<Polyline>,
}

impl BandFigure {
    /// Maps every catalog chord into the band and keeps the vertices inside
    /// the viewport. Fails if any vertex misses the band equation.
    pub fn build() -> Result<Self> {
        let mut curves = Vec::new();
        for chord in CATALOG {
            let mut current: Vec<[f64; 2]> = Vec::new();
            let mut worst = 0.0f64;
            for x in chord.sample(SAMPLES_PER_CURVE)? {
                let b = to_model(x, ModelId::Fb)?;
                let u = [b.coords()[0], b.coords()[1]];
                if u[0].abs() > X1_RANGE {
                    if current.len() >= 2 {
                        curves.push(Polyline {
                            chord,
                            vertices: std::mem::take(&mut current),
                            max_residual: worst,
                        });
                    }
                    current.clear();
                    worst = 0.0;
                    continue;
                }
                let r = band_residual(chord, &b)?;
                if !(r < TOL_VERTEX) {
                    return Err(GeomError::Degenerate(format!(
                        "vertex {u:?} of {chord} misses the band equation by {r:e}"
                    )));
                }
                worst = worst.max(r);
                current.push(u);
            }
            if current.len() >= 2 {
                curves.push(Polyline {
                    chord,
                    vertices: current,
                    max_residual: worst,
                });
            }
        }
        Ok(Self { curves })
    }

    pub fn max_residual(&self) -> f64 {
        self.curves.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn to_svg(&self) -> String {
        let width = 2.0 * X1_RANGE * PX_PER_UNIT + 2.0 * MARGIN;
        let height = 2.0 * FRAC_PI_2 * PX_PER_UNIT + 2.0 * MARGIN;
        let px = |u: [f64; 2]| {
            (
                MARGIN + (u[0] + X1_RANGE) * PX_PER_UNIT,
                MARGIN + (FRAC_PI_2 - u[1]) * PX_PER_UNIT,
            )
        };
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
        );
        s.push_str("<title>Funk geodesics in the band model</title>\n");
        let (x0, y0) = px([-X1_RANGE, FRAC_PI_2]);
        let _ = writeln!(
            s,
            "<rect x=\"{x0:.3}\" y=\"{y0:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
            2.0 * X1_RANGE * PX_PER_UNIT,
            2.0 * FRAC_PI_2 * PX_PER_UNIT
        );
        for curve in &self.curves {
            let points: Vec<String> = curve
                .vertices
                .iter()
                .map(|u| {
                    let (x, y) = px(*u);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                s,
                "<polyline data-chord=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>",
                curve.chord,
                points.join(" ")
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
