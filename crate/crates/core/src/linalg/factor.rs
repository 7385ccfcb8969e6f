//! Rank-revealing factorization with O(n²) low-rank updates.
//!
//! The state is a pair of invertible transforms with `P M Q = diag(I_r, 0)`,
//! kept together with their inverses. Then `M = P⁻¹[:, :r] · Q⁻¹[:r, :]`.
//! A rank-one change `M + u vᵀ` becomes `D + x wᵀ` with `x = P u` and
//! `wᵀ = vᵀ Q`, which a handful of elementary rank-one transforms of `P` and
//! `Q` bring back to diagonal form.

use crate::field::{Fp, Prime};

use super::matrix::{axpy, dot, FMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    p: FMatrix,
    p_inv: FMatrix,
    q: FMatrix,
    q_inv: FMatrix,
    rank: usize,
}

/// Invertible `P`, `Q` and `r` with `P M Q = diag(I_r, 0)`.
pub(crate) fn diagonalizing_transforms(m: &FMatrix) -> (FMatrix, FMatrix, usize) {
    let f = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug = m.hstack(&FMatrix::identity(f, rows));
    let all_piv = aug.rref_in_place();
    let piv: Vec<usize> = all_piv.into_iter().filter(|&c| c < cols).collect();
    let r = piv.len();
    let p = aug.block(0, cols, rows, rows);

    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let mut q = FMatrix::zeros(f, cols, cols);
    for (t, &pc) in piv.iter().enumerate() {
        q[(pc, t)] = Fp::ONE;
    }
    for (s, &fc) in free.iter().enumerate() {
        q[(fc, r + s)] = Fp::ONE;
        for (t, &pc) in piv.iter().enumerate() {
            q[(pc, r + s)] = f.neg(aug[(t, fc)]);
        }
    }
    (p, q, r)
}

/// Factors `M` from scratch in O(n³).
pub fn rank_factorization(m: &FMatrix) -> RankFactorization {
    RankFactorization::new(m)
}

/// Factorization of `M + u1 v1ᵀ + u2 v2ᵀ` given one of `M`, in O(n²).
pub fn rank2_update_factorization(
    fac: &RankFactorization,
    u1: &[Fp],
    v1: &[Fp],
    u2: &[Fp],
    v2: &[Fp],
) -> RankFactorization {
    let mut out = fac.clone();
    out.rank2_update(u1, v1, u2, v2);
    out
}

// Vectors supported on the first r coordinates, moved between row and column space.
fn resized(v: &[Fp], len: usize) -> Vec<Fp> {
    let mut out = v.to_vec();
    out.resize(len, Fp::ZERO);
    out
}

fn unit(n: usize, k: usize) -> Vec<Fp> {
    let mut e = vec![Fp::ZERO; n];
    e[k] = Fp::ONE;
    e
}

// -x / x_k with the k-th entry cleared
fn eliminator(f: Prime, x: &[Fp], k: usize) -> Vec<Fp> {
    let inv = f.neg(f.inv(x[k]).expect("pivot is nonzero"));
    let mut g: Vec<Fp> = x.iter().map(|&v| f.mul(v, inv)).collect();
    g[k] = Fp::ZERO;
    g
}

impl RankFactorization {
    pub fn new(m: &FMatrix) -> Self {
        let (p, q, rank) = diagonalizing_transforms(m);
        let p_inv = p.inverse().expect("elimination transform is invertible");
        let q_inv = q.inverse().expect("elimination transform is invertible");
        RankFactorization {
            p,
            p_inv,
            q,
            q_inv,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Prime {
        self.p.field()
    }

    pub fn rows(&self) -> usize {
        self.p.rows()
    }

    pub fn cols(&self) -> usize {
        self.q.rows()
    }

    /// Full-column-rank left factor, `rows × r`.
    pub fn left(&self) -> FMatrix {
        self.p_inv.block(0, 0, self.rows(), self.rank)
    }

    /// Full-row-rank right factor, `r × cols`.
    pub fn right(&self) -> FMatrix {
        self.q_inv.block(0, 0, self.rank, self.cols())
    }

    pub fn reconstruct(&self) -> FMatrix {
        self.left().mul(&self.right())
    }

    // P <- (I + g hᵀ) P
    fn left_rank1(&mut self, g: &[Fp], h: &[Fp]) {
        let f = self.field();
        let hp = self.p.vec_mul(h);
        for (i, &gi) in g.iter().enumerate() {
            if !gi.is_zero() {
                axpy(f, self.p.row_mut(i), &hp, gi);
            }
        }
        let denom = f.add(Fp::ONE, dot(f, h, g));
        let scale = f.neg(f.inv(denom).expect("elementary transform is invertible"));
        let pg = self.p_inv.mul_vec(g);
        let hs: Vec<Fp> = h.iter().map(|&v| f.mul(v, scale)).collect();
        for (i, &c) in pg.iter().enumerate() {
            if !c.is_zero() {
                axpy(f, self.p_inv.row_mut(i), &hs, c);
            }
        }
    }

    // Q <- Q (I + g hᵀ)
    fn right_rank1(&mut self, g: &[Fp], h: &[Fp]) {
        let f = self.field();
        let qg = self.q.mul_vec(g);
        for (i, &c) in qg.iter().enumerate() {
            if !c.is_zero() {
                axpy(f, self.q.row_mut(i), h, c);
            }
        }
        let denom = f.add(Fp::ONE, dot(f, h, g));
        let scale = f.neg(f.inv(denom).expect("elementary transform is invertible"));
        let hq: Vec<Fp> = self.q_inv.vec_mul(h).into_iter().map(|v| f.mul(v, scale)).collect();
        for (i, &gi) in g.iter().enumerate() {
            if !gi.is_zero() {
                axpy(f, self.q_inv.row_mut(i), &hq, gi);
            }
        }
    }

    fn swap_left(&mut self, a: usize, b: usize) {
        self.p.swap_rows(a, b);
        self.p_inv.swap_cols(a, b);
    }

    fn swap_right(&mut self, a: usize, b: usize) {
        self.q.swap_cols(a, b);
        self.q_inv.swap_rows(a, b);
    }

    /// Replaces the factored matrix `M` by `M + u vᵀ`.
    pub fn rank1_update(&mut self, u: &[Fp], v: &[Fp]) {
        assert_eq!(u.len(), self.rows());
        assert_eq!(v.len(), self.cols());
        let f = self.field();
        let (nr, nc, r) = (self.rows(), self.cols(), self.rank);
        let x = self.p.mul_vec(u);
        let w = self.q.vec_mul(v);
        let k = (r..nr).find(|&i| !x[i].is_zero());
        let j = (r..nc).find(|&i| !w[i].is_zero());
        match (k, j) {
            (Some(k), Some(j)) => {
                self.left_rank1(&eliminator(f, &x, k), &unit(nr, k));
                self.right_rank1(&unit(nc, j), &eliminator(f, &w, j));
                let s = f.inv(f.mul(x[k], w[j])).expect("nonzero pivots");
                let mut g = vec![Fp::ZERO; nr];
                g[k] = f.sub(s, Fp::ONE);
                self.left_rank1(&g, &unit(nr, k));
                self.swap_left(k, r);
                self.swap_right(j, r);
                self.rank += 1;
            }
            (None, Some(j)) => {
                self.right_rank1(&unit(nc, j), &eliminator(f, &w, j));
                let c = f.neg(w[j]);
                let g: Vec<Fp> = x.iter().map(|&v| f.mul(v, c)).collect();
                self.right_rank1(&resized(&g[..r], nc), &unit(nc, j));
            }
            (Some(k), None) => {
                self.left_rank1(&eliminator(f, &x, k), &unit(nr, k));
                let c = f.neg(x[k]);
                let h: Vec<Fp> = w.iter().map(|&v| f.mul(v, c)).collect();
                self.left_rank1(&unit(nr, k), &resized(&h[..r], nr));
            }
            (None, None) => {
                let s = f.add(Fp::ONE, dot(f, &w[..r], &x[..r]));
                if !s.is_zero() {
                    let c = f.neg(f.inv(s).expect("checked nonzero"));
                    let h: Vec<Fp> = w.iter().map(|&v| f.mul(v, c)).collect();
                    self.right_rank1(&resized(&x[..r], nc), &h);
                    return;
                }
                // 1 + wᵀx = 0: the rank drops by one
                let k = (0..r)
                    .find(|&t| !x[t].is_zero() && !w[t].is_zero())
                    .expect("wᵀx = -1 forces a common support index");
                let xk_inv = f.inv(x[k]).expect("nonzero");
                let wk_inv = f.inv(w[k]).expect("nonzero");
                let mut g: Vec<Fp> = x.iter().map(|&v| f.mul(v, xk_inv)).collect();
                g[k] = f.sub(g[k], Fp::ONE);
                self.right_rank1(&resized(&g[..r], nc), &unit(nc, k));
                let mut h: Vec<Fp> = w.iter().map(|&v| f.mul(v, wk_inv)).collect();
                h[k] = f.sub(h[k], Fp::ONE);
                self.left_rank1(&unit(nr, k), &resized(&h[..r], nr));

                let mut xh = resized(&x[..r], nc);
                let mut wh = w.clone();
                xh[k] = Fp::ZERO;
                wh[k] = Fp::ZERO;
                let s2 = f.add(Fp::ONE, dot(f, &wh, &xh));
                let c = f.neg(f.inv(s2).expect("equals -x_k w_k"));
                let h2: Vec<Fp> = wh.iter().map(|&v| f.mul(v, c)).collect();
                self.right_rank1(&xh, &h2);
                self.swap_left(k, r - 1);
                self.swap_right(k, r - 1);
                self.rank -= 1;
            }
        }
    }

    /// Replaces `M` by `M + u1 v1ᵀ + u2 v2ᵀ`.
    pub fn rank2_update(&mut self, u1: &[Fp], v1: &[Fp], u2: &[Fp], v2: &[Fp]) {
        self.rank1_update(u1, v1);
        self.rank1_update(u2, v2);
    }

    /// Debug check that the transforms are mutually inverse.
    pub fn is_consistent(&self) -> bool {
        let f = self.field();
        self.p.mul(&self.p_inv) == FMatrix::identity(f, self.rows())
            && self.q.mul(&self.q_inv) == FMatrix::identity(f, self.cols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rng_from_seed;

    fn outer(f: Prime, u: &[Fp], v: &[Fp]) -> FMatrix {
        FMatrix::column(f, u).mul(&FMatrix::column(f, v).transpose())
    }

    #[test]
    fn identity_and_zero() {
        let f = Prime::new(7).unwrap();
        let fac = rank_factorization(&FMatrix::identity(f, 3));
        assert_eq!(fac.rank(), 3);
        assert_eq!(fac.reconstruct(), FMatrix::identity(f, 3));
        let z = rank_factorization(&FMatrix::zeros(f, 3, 4));
        assert_eq!(z.rank(), 0);
        assert_eq!(z.left().cols(), 0);
        assert_eq!(z.right().rows(), 0);
    }

    #[test]
    fn product_of_random_factors() {
        let f = Prime::default();
        let mut rng = rng_from_seed(8);
        for _ in 0..20 {
            let m = FMatrix::random(f, 6, 4, &mut rng).mul(&FMatrix::random(f, 4, 6, &mut rng));
            let fac = rank_factorization(&m);
            assert_eq!(fac.rank(), 4);
            assert_eq!(fac.reconstruct(), m);
            assert_eq!(fac.left().rank(), 4);
            assert_eq!(fac.right().rank(), 4);
        }
    }

    #[test]
    fn zero_update_is_noop() {
        let f = Prime::new(7).unwrap();
        let m = FMatrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]);
        let fac = rank_factorization(&m);
        let z = vec![Fp::ZERO; 2];
        let out = rank2_update_factorization(&fac, &z, &z, &z, &z);
        assert_eq!(out.rank(), 1);
        assert_eq!(out.reconstruct(), m);
    }

    #[test]
    fn explicit_rank_two_from_zero() {
        let f = Prime::new(7).unwrap();
        let fac = rank_factorization(&FMatrix::zeros(f, 4, 4));
        let e = |k| unit(4, k);
        let out = rank2_update_factorization(&fac, &e(0), &e(1), &e(1), &e(0));
        assert_eq!(out.rank(), 2);
        let mut want = FMatrix::zeros(f, 4, 4);
        want[(0, 1)] = Fp::ONE;
        want[(1, 0)] = Fp::ONE;
        assert_eq!(out.reconstruct(), want);
    }

    // Exercises every branch: increases, same-rank moves and drops.
    #[test]
    fn random_rank_one_walk_tracks_matrix() {
        let f = Prime::new(13).unwrap();
        let mut rng = rng_from_seed(21);
        let n = 6;
        let mut m = FMatrix::random(f, n, 2, &mut rng).mul(&FMatrix::random(f, 2, n, &mut rng));
        let mut fac = rank_factorization(&m);
        for step in 0..400 {
            let (u, v) = match step % 4 {
                // undo a random column of the current left factor
                0 if fac.rank() > 0 => {
                    let l = fac.left();
                    let rt = fac.right();
                    let t = step % fac.rank();
                    (l.col(t).iter().map(|&x| f.neg(x)).collect(), rt.row(t).to_vec())
                }
                1 => {
                    let u: Vec<Fp> = (0..n).map(|_| f.sample(&mut rng)).collect();
                    (u, vec![Fp::ZERO; n])
                }
                _ => (
                    (0..n).map(|_| f.sample(&mut rng)).collect(),
                    (0..n).map(|_| f.sample(&mut rng)).collect(),
                ),
            };
            m = m.add(&outer(f, &u, &v));
            fac.rank1_update(&u, &v);
            assert_eq!(fac.rank(), m.rank(), "step {step}");
            assert_eq!(fac.reconstruct(), m, "step {step}");
        }
        assert!(fac.is_consistent());
    }

    #[test]
    fn rectangular_updates() {
        let f = Prime::new(101).unwrap();
        let mut rng = rng_from_seed(2);
        let mut m = FMatrix::zeros(f, 3, 5);
        let mut fac = rank_factorization(&m);
        for _ in 0..50 {
            let u: Vec<Fp> = (0..3).map(|_| f.sample(&mut rng)).collect();
            let v: Vec<Fp> = (0..5).map(|_| f.sample(&mut rng)).collect();
            m = m.add(&outer(f, &u, &v));
            fac.rank1_update(&u, &v);
            assert_eq!(fac.reconstruct(), m);
        }
    }
}
