//! Seeded random inputs for the verification suites.
//!
//! Every sample draws from its own ChaCha8 stream, keyed by the run seed, a
//! per-check tag and the sample index, so results do not depend on how the
//! work is split across threads.

use std::f64::consts::TAU;

use funkdisc::{forward_hit, BoundaryPoint, DiscPoint, ModelId, ModelPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn stream(seed: u64, tag: &str, index: usize) -> ChaCha8Rng {
    // FNV-1a of the tag, folded into the seed
    let tag_hash = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag_hash);
    rng.set_stream(index as u64);
    rng
}

/// Area-uniform point of the disc of the given radius.
pub fn disc_point(rng: &mut impl Rng, radius: f64) -> DiscPoint {
    let r = radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..TAU);
    DiscPoint::new(r * t.cos(), r * t.sin()).expect("radius below 1")
}

pub fn direction(rng: &mut impl Rng) -> [f64; 2] {
    let t = rng.random_range(0.0..TAU);
    [t.cos(), t.sin()]
}

/// Random direction with length in `[0.1, 2)`.
pub fn vector(rng: &mut impl Rng) -> [f64; 2] {
    let m = rng.random_range(0.1..2.0);
    let d = direction(rng);
    [m * d[0], m * d[1]]
}

pub fn boundary_from(rng: &mut impl Rng, p: DiscPoint) -> BoundaryPoint {
    forward_hit(p, direction(rng).into()).expect("unit direction")
}

/// A point of a planar source chart.
pub fn chart_point(rng: &mut impl Rng, model: ModelId) -> ModelPoint {
    match model {
        ModelId::Fb => {
            let x = [rng.random_range(-3.0..3.0), rng.random_range(-1.4..1.4)];
            ModelPoint::new(model, &x).expect("inside the band")
        }
        _ => ModelPoint::from_disc(model, disc_point(rng, 0.95)).expect("disc chart"),
    }
}
