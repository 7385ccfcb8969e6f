mod common;

use common::desk_instance;
use fracparity::field::rng_from_seed;
use fracparity::instance::{parse_half_vector, write_half_vector};
use fracparity::linalg::{low_rank_update_inverse_at, pfaffian, rank_factorization};
use fracparity::oracle::is_feasible;
use fracparity::repr::constrained_blowup_eval;
use fracparity::solve::{max_matching_solve, simple_solve};
use fracparity::{Evaluation, FMatrix, HalfVector, Prime, Subspace};
use proptest::prelude::*;

fn field() -> Prime {
    Prime::default()
}

fn skew(f: Prime, n: usize, seed: u64) -> FMatrix {
    let r = FMatrix::random(f, n, n, &mut rng_from_seed(seed));
    r.sub(&r.transpose())
}

fn half_vector(m: usize) -> impl Strategy<Value = HalfVector> {
    prop::collection::vec(0u8..=2, m).prop_map(|d| HalfVector::new(d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field();
        let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), fracparity::Fp::ZERO);
        if !a.is_zero() {
            let ai = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, ai), fracparity::Fp::ONE);
            prop_assert_eq!(f.inv(ai).unwrap(), a);
        }
    }

    #[test]
    fn rank_is_transpose_invariant(r in 1usize..7, c in 1usize..7, k in 0usize..5, seed in any::<u64>()) {
        let f = Prime::new(13).unwrap();
        let mut rng = rng_from_seed(seed);
        let m = FMatrix::random(f, r, k, &mut rng).mul(&FMatrix::random(f, k, c, &mut rng));
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= k);
        let fac = rank_factorization(&m);
        prop_assert_eq!(fac.left().mul(&fac.right()), m.clone());
        prop_assert_eq!(fac.left().cols(), m.rank());
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 0usize..7, seed in any::<u64>()) {
        let f = field();
        let m = skew(f, 2 * half, seed);
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(f.mul(pf, pf), m.determinant().unwrap());
        let p = FMatrix::random(f, 2 * half, 2 * half, &mut rng_from_seed(seed ^ 1));
        let cong = p.mul(&m).mul(&p.transpose());
        prop_assert_eq!(pfaffian(&cong).unwrap(), f.mul(p.determinant().unwrap(), pf));
    }

    #[test]
    fn small_update_matches_direct_inverse(n in 2usize..9, s in 1usize..4, seed in any::<u64>()) {
        let f = field();
        let s = s.min(n);
        let mut rng = rng_from_seed(seed);
        let z = FMatrix::random(f, n, n, &mut rng);
        let Ok(zinv) = z.inverse() else { return Ok(()); };
        let sset: Vec<usize> = (0..s).collect();
        let sp: Vec<usize> = (0..n).filter(|i| i % 2 == 0).collect();
        let d = FMatrix::random(f, s, s, &mut rng);
        let mut z2 = z.clone();
        for (a, &i) in sset.iter().enumerate() {
            for (b, &j) in sset.iter().enumerate() {
                z2[(i, j)] = f.add(z2[(i, j)], d[(a, b)]);
            }
        }
        match z2.inverse() {
            Ok(inv) => prop_assert_eq!(low_rank_update_inverse_at(&zinv, &d, &sset, &sp).unwrap(), inv.principal(&sp)),
            Err(_) => prop_assert!(low_rank_update_inverse_at(&zinv, &d, &sset, &sp).is_err()),
        }
    }

    #[test]
    fn preimage_lands_in_target(seed in any::<u64>()) {
        let f = Prime::new(11).unwrap();
        let mut rng = rng_from_seed(seed);
        let m = FMatrix::random(f, 5, 2, &mut rng).mul(&FMatrix::random(f, 2, 6, &mut rng));
        let w = Subspace::span(&FMatrix::random(f, 5, 2, &mut rng));
        let pre = Subspace::preimage(&m, &w).unwrap();
        prop_assert!(w.contains_subspace(&pre.apply(&m).unwrap()).unwrap());
    }

    #[test]
    fn half_vector_text_round_trip(y in half_vector(7)) {
        prop_assert_eq!(parse_half_vector(&write_half_vector(&y)).unwrap(), y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn constrained_rank_is_monotone(seed in 0u64..1000, y in half_vector(5), z in half_vector(5)) {
        let ls = desk_instance(seed, 8, 5);
        let m = ls.m();
        let (y, z) = (y.truncated(m), z.truncated(m));
        let lo = HalfVector::new(y.doubled().iter().zip(z.doubled()).map(|(a, b)| *a.min(b)).collect()).unwrap();
        let ev = Evaluation::for_instance(&ls, seed);
        prop_assert!(constrained_blowup_eval(&ls, &lo, &ev).rank() <= constrained_blowup_eval(&ls, &y, &ev).rank());
    }

    #[test]
    fn constrained_rank_counts_feasible_vectors(seed in 0u64..1000, y in half_vector(5)) {
        let ls = desk_instance(seed, 6, 5);
        let y = y.truncated(ls.m());
        let best = HalfVector::all(ls.m())
            .filter(|z| z.le(&y) && is_feasible(&ls, z, seed))
            .map(|z| z.value_doubled())
            .max()
            .unwrap_or(0);
        let ev = Evaluation::for_instance(&ls, seed);
        prop_assert_eq!(constrained_blowup_eval(&ls, &y, &ev).rank(), 2 * best);
    }

    #[test]
    fn simple_and_max_matching_values_agree(seed in 0u64..1000) {
        let ls = desk_instance(seed, 8, 6);
        let a = simple_solve(&ls, seed).unwrap();
        let b = max_matching_solve(&ls, seed).unwrap();
        prop_assert_eq!(a.value_doubled, b.value_doubled);
        prop_assert!(a.y.doubled().iter().all(|&d| d <= 2));
    }
}
