use crate::error::{Error, Result};
use crate::field::Fp;

use super::matrix::FMatrix;

/// Pfaffian by skew elimination.
///
/// Each step pivots on a 2×2 block `[[0, α], [-α, 0]]` and passes to the skew
/// Schur complement of that block, whose Pfaffian is `pf(M) / α`. Moving a
/// nonzero entry into pivot position is a transposition congruence and
/// flips the sign.
pub fn pfaffian(m: &FMatrix) -> Result<Fp> {
    if !m.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let f = m.field();
    let n = m.rows();
    if n % 2 == 1 {
        return Ok(Fp::ZERO);
    }
    let mut a = m.clone();
    let mut pf = Fp::ONE;
    for k in (0..n).step_by(2) {
        let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Ok(Fp::ZERO);
        };
        if j != k + 1 {
            a.swap_rows(j, k + 1);
            a.swap_cols(j, k + 1);
            pf = f.neg(pf);
        }
        let alpha = a[(k, k + 1)];
        pf = f.mul(pf, alpha);
        let inv = f.inv(alpha)?;
        // a_ij += (a_ik a_{k+1,j} - a_{i,k+1} a_kj) / α on the trailing block
        let rk: Vec<Fp> = (k + 2..n).map(|j| f.mul(a[(k, j)], inv)).collect();
        let rk1: Vec<Fp> = (k + 2..n).map(|j| f.mul(a[(k + 1, j)], inv)).collect();
        for i in k + 2..n {
            let (c0, c1) = (a[(i, k)], f.neg(a[(i, k + 1)]));
            let row = &mut a.row_mut(i)[k + 2..];
            for (t, v) in row.iter_mut().enumerate() {
                *v = f.mul_add(f.mul_add(*v, c0, rk1[t]), c1, rk[t]);
            }
        }
    }
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rng_from_seed, Prime};

    fn random_skew(f: Prime, n: usize, rng: &mut crate::field::SeededRng) -> FMatrix {
        let mut m = FMatrix::zeros(f, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f.sample(rng);
                m[(i, j)] = v;
                m[(j, i)] = f.neg(v);
            }
        }
        m
    }

    #[test]
    fn delta_has_pfaffian_one() {
        let f = Prime::new(7).unwrap();
        let d = FMatrix::from_i64_rows(f, &[&[0, 1], &[-1, 0]]);
        assert_eq!(pfaffian(&d).unwrap(), Fp::ONE);
    }

    #[test]
    fn four_by_four_formula() {
        // pf = a12 a34 - a13 a24 + a14 a23
        let f = Prime::new(101).unwrap();
        let m = FMatrix::from_i64_rows(
            f,
            &[&[0, 2, 3, 5], &[-2, 0, 7, 11], &[-3, -7, 0, 13], &[-5, -11, -13, 0]],
        );
        assert_eq!(pfaffian(&m).unwrap(), f.from_i64(2 * 13 - 3 * 11 + 5 * 7));
    }

    #[test]
    fn odd_order_is_zero() {
        let f = Prime::new(7).unwrap();
        let mut rng = rng_from_seed(1);
        let m = random_skew(f, 3, &mut rng);
        assert_eq!(pfaffian(&m).unwrap(), Fp::ZERO);
    }

    #[test]
    fn rejects_non_skew() {
        let f = Prime::new(7).unwrap();
        assert_eq!(pfaffian(&FMatrix::identity(f, 2)), Err(Error::NotSkewSymmetric));
    }

    #[test]
    fn square_equals_determinant() {
        let f = Prime::default();
        let mut rng = rng_from_seed(77);
        for t in 0..100 {
            let m = random_skew(f, 8, &mut rng);
            let pf = pfaffian(&m).unwrap();
            assert_eq!(f.mul(pf, pf), m.determinant().unwrap(), "trial {t}");
        }
    }

    #[test]
    fn congruence_scales_by_determinant() {
        let f = Prime::default();
        let mut rng = rng_from_seed(78);
        for _ in 0..50 {
            let m = random_skew(f, 6, &mut rng);
            let p = FMatrix::random(f, 6, 6, &mut rng);
            let c = p.mul(&m).mul(&p.transpose());
            let lhs = pfaffian(&c).unwrap();
            let rhs = f.mul(p.determinant().unwrap(), pfaffian(&m).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn singular_skew_has_zero_pfaffian() {
        let f = Prime::new(101).unwrap();
        // e1 ∧ e2 padded to 4×4 has rank 2
        let m = FMatrix::from_i64_rows(f, &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(pfaffian(&m).unwrap(), Fp::ZERO);
    }
}
