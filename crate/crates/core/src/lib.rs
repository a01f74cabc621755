//! Funk and Hilbert geometry of the unit disc and its models.
//!
//! Points of the disc carry their defect `1 - |x|^2` alongside their
//! coordinates, so metrics, distances and Busemann functions stay accurate
//! close to the boundary circle.

// `!(a > b)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod busemann;
pub mod chart;
pub mod error;
pub mod fd;
pub mod geodesics;
pub mod isometries;
pub mod laplace;
pub mod metrics;
pub mod parse;
mod vec2;

pub use busemann::{BusemannField, BusemannMetric, HorocycleLevel};
pub use chart::{Covector, DiscPoint, ModelId, ModelPoint, TangentVector};
pub use error::{GeomError, Result};
pub use geodesics::{
    classify_image, forward_hit, funk_distance, hilbert_distance, lambda_roots, BoundaryPoint, Chord,
    FunkRay, GeodesicClass, GeodesicKind, HilbertLine,
};
pub use isometries::{composed_path_discrepancy, Differential, IsometryId};
pub use laplace::{DualTensor, DualValue, MeasureKind};
pub use metrics::{eval_funk, eval_hilbert, eval_model, FundamentalTensor, Metric, RandersValue};
