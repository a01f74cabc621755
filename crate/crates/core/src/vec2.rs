//! Small helpers on `[f64; 2]`.

pub(crate) type V2 = [f64; 2];

#[inline]
pub(crate) fn dot(a: V2, b: V2) -> f64 {
    a[0].mul_add(b[0], a[1] * b[1])
}

#[inline]
pub(crate) fn norm_sq(a: V2) -> f64 {
    dot(a, a)
}

#[inline]
pub(crate) fn norm(a: V2) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub(crate) fn sub(a: V2, b: V2) -> V2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub(crate) fn add(a: V2, b: V2) -> V2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub(crate) fn scale(s: f64, a: V2) -> V2 {
    [s * a[0], s * a[1]]
}

/// Counter-clockwise quarter turn.
#[inline]
pub(crate) fn perp(a: V2) -> V2 {
    [-a[1], a[0]]
}

#[inline]
pub(crate) fn is_finite(a: V2) -> bool {
    a[0].is_finite() && a[1].is_finite()
}
