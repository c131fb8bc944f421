#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinmod::{BlochAngles, PhysicalParams};

pub const SEED: u64 = 0x5EED_2024;

pub fn proton() -> PhysicalParams {
    PhysicalParams::symmetric(5e8, 5e4, 5e4).unwrap()
}

/// ω0 = 50 MHz with the band wider than the amplitude limit.
pub fn fifty_mhz() -> PhysicalParams {
    PhysicalParams::symmetric(5e7, 5e4, 1e5).unwrap()
}

pub fn desk() -> PhysicalParams {
    PhysicalParams::symmetric(1000.0, 100.0, 200.0).unwrap()
}

pub fn param_sets() -> [(&'static str, PhysicalParams); 3] {
    [("1H", proton()), ("50MHz", fifty_mhz()), ("desk", desk())]
}

/// Uniform on the sphere: cos θ uniform in [−1, 1].
pub fn random_angles<R: Rng>(rng: &mut R) -> BlochAngles {
    let u: f64 = rng.gen();
    let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
    BlochAngles::new(theta, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_pairs(n: usize, seed: u64) -> Vec<(BlochAngles, BlochAngles)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (random_angles(&mut rng), random_angles(&mut rng)))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
