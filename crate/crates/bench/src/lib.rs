//! Fixtures shared by the benchmark harness.

use fracparity::field::{derive_seed_indexed, rng_from_seed, Fp};
use fracparity::instance::random_instance;
use fracparity::{FMatrix, LineSet, Prime};

/// Seed all fixtures derive from.
pub const SEED: u64 = 0x5eed;

/// Sizes `(n, m)` used for the solver groups.
pub const SIZES: [(usize, usize); 4] = [(8, 32), (8, 64), (16, 64), (16, 128)];

/// Random instance of the given shape over the default prime.
pub fn instance(n: usize, m: usize) -> LineSet {
    random_instance(Prime::default(), n, m, derive_seed_indexed(SEED, "instance", (n * 1000 + m) as u64))
        .expect("fixture instance")
}

/// Random square matrix, invertible with overwhelming probability.
pub fn square(n: usize) -> FMatrix {
    let mut rng = rng_from_seed(derive_seed_indexed(SEED, "square", n as u64));
    FMatrix::random(Prime::default(), n, n, &mut rng)
}

/// Random rank-deficient `n × n` matrix of rank `r` together with two
/// random rank-one terms for an update.
pub fn update_fixture(n: usize, r: usize) -> (FMatrix, [Vec<Fp>; 4]) {
    let f = Prime::default();
    let mut rng = rng_from_seed(derive_seed_indexed(SEED, "update", (n * 1000 + r) as u64));
    let a = FMatrix::random(f, n, r, &mut rng);
    let b = FMatrix::random(f, r, n, &mut rng);
    let vs = FMatrix::random(f, n, 4, &mut rng);
    (a.mul(&b), [vs.col(0), vs.col(1), vs.col(2), vs.col(3)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_requested_shape() {
        let ls = instance(8, 32);
        assert_eq!((ls.n(), ls.m()), (8, 32));
        assert_eq!(square(10).rank(), 10);
        let (m, vs) = update_fixture(12, 5);
        assert_eq!(m.rank(), 5);
        assert!(vs.iter().all(|v| v.len() == 12));
    }
}
