#![allow(dead_code)]

use fracparity::field::derive_seed_indexed;
use fracparity::instance::{from_graph, random_sparse_instance};
use fracparity::{Graph, LineSet, Prime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded desk-scale instance: `n <= max_n`, `m <= max_m`, `n <= 2m`.
/// Supports vary so that optima are not always `n/2`; every fourth instance
/// is a random graph.
pub fn desk_instance(seed: u64, max_n: usize, max_m: usize) -> LineSet {
    let f = Prime::default();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed_indexed(0xfeed, "desk", seed));
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(2..=max_n.min(2 * m));
    if seed % 4 == 3 && n >= 2 {
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
        return from_graph(f, &Graph::new(n, edges).unwrap()).unwrap();
    }
    let support = rng.gen_range(2..=n);
    random_sparse_instance(f, n, m, support, rng.gen()).unwrap()
}
