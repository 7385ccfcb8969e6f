//! Subspaces of GF(p)^d in canonical form.
//!
//! A subspace is stored by its reduced column echelon basis: the transpose of
//! the RREF of the spanning vectors written as rows. Equal subspaces get
//! bit-identical bases, so `==` is subspace equality.

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};

use super::matrix::FMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: FMatrix,
}

impl Subspace {
    /// The span of the columns of `m`.
    pub fn span(m: &FMatrix) -> Self {
        let (r, piv) = m.transpose().rref();
        let k = piv.len();
        let basis = r.block(0, 0, k, m.rows()).transpose();
        Subspace {
            ambient: m.rows(),
            basis,
        }
    }

    pub fn from_vectors(field: Prime, ambient: usize, vectors: &[Vec<Fp>]) -> Self {
        Self::span(&FMatrix::from_columns(field, ambient, vectors))
    }

    pub fn zero(field: Prime, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FMatrix::zeros(field, ambient, 0),
        }
    }

    pub fn full(field: Prime, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FMatrix::identity(field, ambient),
        }
    }

    /// Column space of `m`.
    pub fn image(m: &FMatrix) -> Self {
        Self::span(m)
    }

    /// Right kernel of `m`.
    pub fn kernel(m: &FMatrix) -> Self {
        Self::span(&m.kernel_basis())
    }

    pub fn field(&self) -> Prime {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Fp>> {
        (0..self.dim()).map(|j| self.basis.col(j)).collect()
    }

    /// Pivot coordinate of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|j| (0..self.ambient).find(|&i| !self.basis[(i, j)].is_zero()).expect("basis column is nonzero"))
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of dimension {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Fp]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!("vector of length {} in GF(p)^{}", v.len(), self.ambient)));
        }
        // reduce v against the echelon basis: the pivot entries fix the coefficients
        let f = self.field();
        let mut r = v.to_vec();
        for (j, p) in self.pivots().into_iter().enumerate() {
            let c = r[p];
            if !c.is_zero() {
                for (i, x) in r.iter_mut().enumerate() {
                    *x = f.sub(*x, f.mul(c, self.basis[(i, j)]));
                }
            }
        }
        Ok(r.iter().all(|x| x.is_zero()))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Self::span(&self.basis.hstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Self::zero(self.field(), self.ambient));
        }
        // U α = V β  <=>  [U | -V] (α, β) = 0
        let ker = self.basis.hstack(&other.basis.neg()).kernel_basis();
        let alpha = ker.block(0, 0, k, ker.cols());
        Ok(Self::span(&self.basis.mul(&alpha)))
    }

    /// `{w : wᵀ u = 0 for all u in U}`.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Self::full(self.field(), self.ambient);
        }
        Self::kernel(&self.basis.transpose())
    }

    /// The coordinate complement: unit vectors on the non-pivot coordinates.
    pub fn complement(&self) -> Subspace {
        let f = self.field();
        let piv = self.pivots();
        let free: Vec<Vec<Fp>> = (0..self.ambient)
            .filter(|i| !piv.contains(i))
            .map(|i| {
                let mut e = vec![Fp::ZERO; self.ambient];
                e[i] = Fp::ONE;
                e
            })
            .collect();
        Self::from_vectors(f, self.ambient, &free)
    }

    /// `M(U) = {M u : u in U}`.
    pub fn apply(&self, m: &FMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("apply: operator width".into()));
        }
        Ok(Self::span(&m.mul(&self.basis)))
    }

    /// `M⁻¹(W) = {u : M u in W}` as the kernel of `Annᵀ M`.
    pub fn preimage(m: &FMatrix, w: &Subspace) -> Result<Subspace> {
        if m.rows() != w.ambient {
            return Err(Error::DimensionMismatch("preimage: operator height".into()));
        }
        let ann = w.annihilator();
        if ann.dim() == 0 {
            return Ok(Self::full(m.field(), m.cols()));
        }
        Ok(Self::kernel(&ann.basis.transpose().mul(m)))
    }
}

/// `span{A u : A in ops, u in U}`.
pub fn apply_space(ops: &[FMatrix], u: &Subspace) -> Result<Subspace> {
    let f = u.field();
    let Some(first) = ops.first() else {
        return Ok(Subspace::zero(f, u.ambient_dim()));
    };
    let rows = first.rows();
    let mut acc = FMatrix::zeros(f, rows, 0);
    for a in ops {
        if a.rows() != rows || a.cols() != u.ambient_dim() {
            return Err(Error::DimensionMismatch("apply_space: operator shapes".into()));
        }
        acc = acc.hstack(&a.mul(u.basis()));
        // keep the accumulator small
        if acc.cols() > 2 * rows {
            acc = Subspace::span(&acc).basis.clone();
        }
    }
    Ok(Subspace::span(&acc))
}
