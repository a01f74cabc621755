#![allow(dead_code)]

use funkdisc::{DiscPoint, ModelId, ModelPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Area-uniform point in the disc of the given radius.
pub fn disc_point(rng: &mut impl Rng, radius: f64) -> DiscPoint {
    let r = radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    DiscPoint::new(r * t.cos(), r * t.sin()).unwrap()
}

pub fn direction(rng: &mut impl Rng) -> [f64; 2] {
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    [t.cos(), t.sin()]
}

pub fn vector(rng: &mut impl Rng) -> [f64; 2] {
    let m = rng.random_range(0.1..2.0);
    let d = direction(rng);
    [m * d[0], m * d[1]]
}

pub fn source_point(rng: &mut impl Rng, model: ModelId) -> ModelPoint {
    match model {
        ModelId::Ff | ModelId::Fp => ModelPoint::from_disc(model, disc_point(rng, 0.95)).unwrap(),
        ModelId::Fb => {
            let x = [rng.random_range(-3.0..3.0), rng.random_range(-1.4..1.4)];
            ModelPoint::new(model, &x).unwrap()
        }
        ModelId::Fu => {
            let x = [rng.random_range(-4.0..4.0), rng.random_range(0.05..4.0)];
            ModelPoint::new(model, &x).unwrap()
        }
        _ => unreachable!("not a planar chart"),
    }
}
