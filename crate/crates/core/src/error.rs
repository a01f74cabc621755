use thiserror::Error;

use crate::chart::ModelId;

/// Errors raised by the geometric kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point outside the chart: {0}")]
    Domain(String),
    #[error("vector is not tangent to the {model} surface (normal component {normal_component:e})")]
    Tangency { model: ModelId, normal_component: f64 },
    #[error("zero tangent vector: the metric is not smooth at v = 0")]
    ZeroVector,
    #[error("zero covector: the dual metric is not smooth at xi = 0")]
    ZeroCovector,
    #[error("unsupported: {0}")]
    UnsupportedModel(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("chord does not meet the open disc")]
    NoIntersection,
    #[error("level set misses the open disc: {0}")]
    EmptyLevelSet(String),
    #[error("measure density is singular at the origin (|x| = {0:e})")]
    OriginSingularity(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

pub(crate) fn domain(msg: impl Into<String>) -> GeomError {
    GeomError::Domain(msg.into())
}
