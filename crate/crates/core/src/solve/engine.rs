use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::instance::{HalfVector, LineSet};
use crate::linalg::{kron_vec, RankFactorization};
use crate::repr::{constrained_blowup_eval, Evaluation};

/// Tracks `ρ_A(y) = rank A^{2}(y)` under one shared [`Evaluation`].
///
/// Moving one coordinate of `y` by ½ adds or removes a single column `u` of
/// `U_i`, which changes the matrix by `±(u uᵀ) ⊗ (a_i ∧ b_i)`, a rank-two
/// term. Each query therefore costs O(n²) on the maintained factorization.
#[derive(Clone, Debug)]
pub struct RhoEngine<'a> {
    ls: &'a LineSet,
    ev: Evaluation,
    y: HalfVector,
    fac: RankFactorization,
    pending: Option<(HalfVector, RankFactorization)>,
    queries: usize,
}

impl<'a> RhoEngine<'a> {
    /// Factors `A^{2}(y)` from scratch; counts as one rank query.
    pub fn new(ls: &'a LineSet, ev: Evaluation, y: HalfVector) -> Result<Self> {
        if y.len() != ls.m() || ev.m() < ls.m() {
            return Err(Error::DimensionMismatch("engine: vector, evaluation and instance disagree".into()));
        }
        let fac = RankFactorization::new(&constrained_blowup_eval(ls, &y, &ev));
        Ok(RhoEngine {
            ls,
            ev,
            y,
            fac,
            pending: None,
            queries: 1,
        })
    }

    pub fn rank(&self) -> usize {
        self.fac.rank()
    }

    pub fn y(&self) -> &HalfVector {
        &self.y
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn evaluation(&self) -> &Evaluation {
        &self.ev
    }

    pub fn factorization(&self) -> &RankFactorization {
        &self.fac
    }

    /// Rank at `y_new`, which must differ from the current point in at most
    /// one coordinate and by exactly ½ there. The trial state is kept until
    /// [`RhoEngine::commit`] or the next query.
    pub fn rho(&mut self, y_new: &HalfVector) -> Result<usize> {
        self.queries += 1;
        self.pending = None;
        if y_new.len() != self.y.len() {
            return Err(Error::DimensionMismatch("engine: vector length".into()));
        }
        let diff: Vec<usize> = (0..self.y.len()).filter(|&i| self.y.get(i) != y_new.get(i)).collect();
        match diff.as_slice() {
            [] => Ok(self.rank()),
            &[i] => {
                let (from, to) = (self.y.get(i), y_new.get(i));
                if from.abs_diff(to) != 1 {
                    return Err(Error::DimensionMismatch(format!(
                        "engine: coordinate {} moves by more than 1/2",
                        i + 1
                    )));
                }
                let mut fac = self.fac.clone();
                let (u1, v1, u2, v2) = self.step_vectors(i, from, to);
                fac.rank2_update(&u1, &v1, &u2, &v2);
                let r = fac.rank();
                self.pending = Some((y_new.clone(), fac));
                Ok(r)
            }
            _ => Err(Error::DimensionMismatch("engine: more than one coordinate changes".into())),
        }
    }

    /// Makes the last queried point current. Returns false if nothing was pending.
    pub fn commit(&mut self) -> bool {
        match self.pending.take() {
            Some((y, fac)) => {
                self.y = y;
                self.fac = fac;
                true
            }
            None => false,
        }
    }

    /// Query and commit in one step.
    pub fn move_to(&mut self, y_new: &HalfVector) -> Result<usize> {
        let r = self.rho(y_new)?;
        self.commit();
        Ok(r)
    }

    // ±(u uᵀ) ⊗ (a bᵀ - b aᵀ) = ±(u⊗a)(u⊗b)ᵀ ∓ (u⊗b)(u⊗a)ᵀ
    fn step_vectors(&self, i: usize, from: u8, to: u8) -> (Vec<Fp>, Vec<Fp>, Vec<Fp>, Vec<Fp>) {
        let f: Prime = self.ls.prime();
        let wider = from.max(to);
        let narrower = from.min(to);
        let cols_w = self.ev.u_columns(i, wider);
        let cols_n = self.ev.u_columns(i, narrower);
        let u = cols_w
            .into_iter()
            .find(|c| !cols_n.contains(c))
            .expect("the wider set has one extra column");
        let ua = kron_vec(f, &u, self.ls.a(i));
        let ub = kron_vec(f, &u, self.ls.b(i));
        let neg = |v: &[Fp]| v.iter().map(|&x| f.neg(x)).collect::<Vec<_>>();
        if to > from {
            (ua.clone(), ub.clone(), neg(&ub), ua)
        } else {
            (neg(&ua), ub.clone(), ub, ua)
        }
    }
}
