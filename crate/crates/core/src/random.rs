//! Seeded random digraph families for property sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;

/// Arc densities cycled through by [`random_digraphs`] and [`random_acyclic_digraphs`].
pub const DENSITIES: [f64; 3] = [0.1, 0.3, 0.5];
pub const MIN_VERTICES: usize = 2;
pub const MAX_VERTICES: usize = 8;

/// Each ordered pair (loops included) becomes an arc with probability `density`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Digraph {
    let mut d = Digraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(density) {
                d.add_arc(u, v);
            }
        }
    }
    d
}

/// Arcs only run forward along a random vertex order, so the result is acyclic.
pub fn random_acyclic_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Digraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut d = Digraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                d.add_arc(order[i], order[j]);
            }
        }
    }
    d
}

fn family(seed: u64, count: usize, acyclic: bool) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(MIN_VERTICES..=MAX_VERTICES);
            let p = DENSITIES[i % DENSITIES.len()];
            if acyclic {
                random_acyclic_digraph(&mut rng, n, p)
            } else {
                random_digraph(&mut rng, n, p)
            }
        })
        .collect()
}

/// `count` digraphs on 2..=8 vertices, deterministic in `seed`.
pub fn random_digraphs(seed: u64, count: usize) -> Vec<Digraph> {
    family(seed, count, false)
}

/// `count` acyclic digraphs on 2..=8 vertices, deterministic in `seed`.
pub fn random_acyclic_digraphs(seed: u64, count: usize) -> Vec<Digraph> {
    family(seed, count, true)
}
