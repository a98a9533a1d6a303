//! Seeded random instances for fuzzing and demos.

use rand::Rng;

use crate::instance::Instance;

/// Each of the `n_fixed * n_free` possible edges is kept with probability
/// `density`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n_fixed: usize, n_free: usize, density: f64) -> Instance {
    let mut edges = Vec::new();
    for a in 0..n_fixed {
        for v in 0..n_free {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                edges.push((a, v));
            }
        }
    }
    Instance::new(n_fixed, n_free, edges).expect("generated edges are distinct and in range")
}

/// Sizes drawn uniformly from `1..=max_fixed` and `1..=max_free`, density
/// from `[0.1, 0.9]`.
pub fn random_sized_instance<R: Rng + ?Sized>(rng: &mut R, max_fixed: usize, max_free: usize) -> Instance {
    let n_fixed = rng.gen_range(1..=max_fixed);
    let n_free = rng.gen_range(1..=max_free);
    let density = rng.gen_range(0.1..0.9);
    random_instance(rng, n_fixed, n_free, density)
}
