use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};

/// A dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: Prime,
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} over GF({})", self.rows, self.cols, self.field.modulus())?;
        for i in 0..self.rows.min(16) {
            let row: Vec<String> = self.row(i).iter().take(16).map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl FMatrix {
    pub fn zeros(field: Prime, rows: usize, cols: usize) -> Self {
        FMatrix {
            field,
            rows,
            cols,
            data: vec![Fp::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Prime, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Fp::ONE;
        }
        m
    }

    pub fn from_fn(field: Prime, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fp) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        FMatrix { field, rows, cols, data }
    }

    /// Builds a matrix from signed integer rows, reducing each entry mod p.
    pub fn from_i64_rows(field: Prime, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    /// A column vector.
    pub fn column(field: Prime, v: &[Fp]) -> Self {
        FMatrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// The matrix whose columns are `vectors` (each of length `rows`).
    pub fn from_columns(field: Prime, rows: usize, vectors: &[Vec<Fp>]) -> Self {
        Self::from_fn(field, rows, vectors.len(), |i, j| vectors[j][i])
    }

    pub fn random(field: Prime, rows: usize, cols: usize, rng: &mut crate::field::SeededRng) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.sample(rng))
    }

    #[inline]
    pub fn field(&self) -> Prime {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Fp] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Fp] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fp> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Fp]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FMatrix { data, rows: self.rows, cols: self.cols, field: self.field })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(FMatrix { data, rows: self.rows, cols: self.cols, field: self.field })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in a_row.iter().enumerate() {
                if !a.is_zero() {
                    axpy(f, out_row, other.row(k), a);
                }
            }
        }
        Ok(out)
    }

    /// Panicking `+`, for internal code whose shapes are fixed by construction.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("shape mismatch in add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("shape mismatch in sub")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shape mismatch in mul")
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    /// `vᵀ M` as a vector.
    pub fn vec_mul(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut out = vec![Fp::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if !a.is_zero() {
                axpy(f, &mut out, self.row(i), a);
            }
        }
        out
    }

    pub fn scale(&self, s: Fp) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        FMatrix { data, rows: self.rows, cols: self.cols, field: self.field }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        FMatrix { data, rows: self.rows, cols: self.cols, field: self.field }
    }

    /// `A[I, J]`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// The principal submatrix `A[I]`.
    pub fn principal(&self, idx: &[usize]) -> Self {
        self.submatrix(idx, idx)
    }

    /// Contiguous block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(self.field, rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: Fp) {
        debug_assert_ne!(dst, src);
        let cols = self.cols;
        let f = self.field;
        let (d, s) = if dst < src {
            let (head, tail) = self.data.split_at_mut(src * cols);
            (&mut head[dst * cols..(dst + 1) * cols], &tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(dst * cols);
            (&mut tail[..cols], &head[src * cols..(src + 1) * cols])
        };
        axpy(f, d, s, factor);
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let f = self.field;
        (0..self.rows).all(|i| {
            self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == f.neg(self[(j, i)]))
        })
    }

    /// Reduces to reduced row echelon form in place, returning the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for v in &mut self.row_mut(r)[c..] {
                *v = f.mul(*v, inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let a = self[(i, c)];
                    if !a.is_zero() {
                        self.add_row_multiple(i, r, f.neg(a));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        // forward elimination only; cheaper than a full reduction
        let f = self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let a = m[(i, c)];
                if !a.is_zero() {
                    m.add_row_multiple(i, r, f.neg(f.mul(a, inv)));
                }
            }
            r += 1;
        }
        r
    }

    pub fn determinant(&self) -> Result<Fp> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = self.field;
        let mut m = self.clone();
        let mut det = Fp::ONE;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Fp::ZERO);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv)?;
            for i in c + 1..m.rows {
                let a = m[(i, c)];
                if !a.is_zero() {
                    m.add_row_multiple(i, c, f.neg(f.mul(a, inv)));
                }
            }
        }
        Ok(det)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by in-place Gauss–Jordan elimination with row pivoting.
    pub fn inverse(&self) -> Result<FMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut swaps = Vec::new();
        for k in 0..n {
            let pr = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(k, pr);
            swaps.push((k, pr));
            let inv = f.inv(a[(k, k)])?;
            a[(k, k)] = Fp::ONE;
            for v in a.row_mut(k) {
                *v = f.mul(*v, inv);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let c = a[(i, k)];
                if c.is_zero() {
                    continue;
                }
                a[(i, k)] = Fp::ZERO;
                a.add_row_multiple(i, k, f.neg(c));
            }
        }
        for &(k, pr) in swaps.iter().rev() {
            a.swap_cols(k, pr);
        }
        Ok(a)
    }

    /// Basis of the right kernel `{x : A x = 0}` as columns of the returned matrix.
    pub fn kernel_basis(&self) -> FMatrix {
        let (r, piv) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = FMatrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = Fp::ONE;
            for (pi, &pc) in piv.iter().enumerate() {
                out[(pc, k)] = f.neg(r[(pi, fc)]);
            }
        }
        out
    }

    /// A nonsingular `M⁺` with `M M⁺ M = M`.
    ///
    /// With `P M Q = diag(I_r, 0)` from elimination, `M⁺ = Q P` works: it is a
    /// product of invertible matrices, and `M Q P M = P⁻¹ D Q⁻¹ Q P P⁻¹ D Q⁻¹ = M`.
    pub fn pseudoinverse(&self) -> Result<FMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("pseudoinverse of a non-square matrix".into()));
        }
        let (p, q, _) = super::factor::diagonalizing_transforms(self);
        Ok(q.mul(&p))
    }

    /// Kronecker product: the block matrix of `a_ij * B` blocks.
    pub fn kronecker(&self, other: &FMatrix) -> FMatrix {
        let f = self.field;
        let (p, q) = (other.rows, other.cols);
        FMatrix::from_fn(f, self.rows * p, self.cols * q, |i, j| {
            f.mul(self[(i / p, j / q)], other[(i % p, j % q)])
        })
    }

    pub fn entries(&self) -> &[Fp] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for FMatrix {
    type Output = Fp;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fp {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fp {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// `dst += factor * src`, elementwise.
#[inline]
pub(crate) fn axpy(f: Prime, dst: &mut [Fp], src: &[Fp], factor: Fp) {
    debug_assert_eq!(dst.len(), src.len());
    f.axpy_slice(dst, src, factor);
}

#[inline]
pub(crate) fn dot(f: Prime, a: &[Fp], b: &[Fp]) -> Fp {
    a.iter().zip(b).fold(Fp::ZERO, |acc, (&x, &y)| f.mul_add(acc, x, y))
}

/// `a ⊗ b` for column vectors, `(a ⊗ b)[i * len(b) + j] = a_i b_j`.
pub fn kron_vec(f: Prime, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(f.mul(x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rng_from_seed;

    fn f7() -> Prime {
        Prime::new(7).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f7();
        assert_eq!(FMatrix::identity(f, 4).rank(), 4);
        assert_eq!(FMatrix::zeros(f, 3, 5).rank(), 0);
        assert_eq!(FMatrix::zeros(f, 0, 5).rank(), 0);
        let m = FMatrix::from_i64_rows(f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_of_transpose_matches() {
        let f = Prime::new(11).unwrap();
        let mut rng = rng_from_seed(4);
        for t in 0..200 {
            let (r, c) = (1 + t % 6, 1 + (t / 6) % 7);
            // low-rank products exercise rank deficiency
            let k = t % 4;
            let a = FMatrix::random(f, r, k, &mut rng).mul(&FMatrix::random(f, k, c, &mut rng));
            assert_eq!(a.rank(), a.transpose().rank());
            assert!(a.rank() <= k);
        }
    }

    #[test]
    fn inverse_examples() {
        let f = f7();
        assert_eq!(FMatrix::identity(f, 5).inverse().unwrap(), FMatrix::identity(f, 5));
        let d = FMatrix::from_i64_rows(f, &[&[2, 0], &[0, 3]]);
        assert_eq!(d.inverse().unwrap(), FMatrix::from_i64_rows(f, &[&[4, 0], &[0, 5]]));
        let s = FMatrix::from_i64_rows(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn random_inverse_multiplies_back() {
        let f = Prime::default();
        let mut rng = rng_from_seed(17);
        let mut done = 0;
        while done < 50 {
            let m = FMatrix::random(f, 10, 10, &mut rng);
            let Ok(inv) = m.inverse() else { continue };
            assert_eq!(m.mul(&inv), FMatrix::identity(f, 10));
            assert_eq!(inv.mul(&m), FMatrix::identity(f, 10));
            done += 1;
        }
    }

    #[test]
    fn inverse_needs_row_swaps() {
        let f = f7();
        let m = FMatrix::from_i64_rows(f, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FMatrix::identity(f, 3));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let f = Prime::new(101).unwrap();
        let m = FMatrix::from_i64_rows(f, &[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3*-2 - 4*5) - (-1)(1*-2 - 0) + 0 = -52 - 2 = -54
        assert_eq!(m.determinant().unwrap(), f.from_i64(-54));
    }

    #[test]
    fn kernel_basis_is_annihilated() {
        let f = Prime::new(13).unwrap();
        let mut rng = rng_from_seed(5);
        for _ in 0..50 {
            let a = FMatrix::random(f, 4, 2, &mut rng).mul(&FMatrix::random(f, 2, 7, &mut rng));
            let k = a.kernel_basis();
            assert_eq!(k.cols(), 7 - a.rank());
            assert!(a.mul(&k).is_zero());
            assert_eq!(k.rank(), k.cols());
        }
    }

    #[test]
    fn pseudoinverse_examples() {
        let f = f7();
        let d = FMatrix::from_i64_rows(f, &[&[1, 0], &[0, 0]]);
        let pinv = d.pseudoinverse().unwrap();
        assert_eq!(d.mul(&pinv).mul(&d), d);
        assert!(pinv.is_nonsingular());

        let m = FMatrix::from_i64_rows(f, &[&[2, 0], &[0, 3]]);
        let pinv = m.pseudoinverse().unwrap();
        assert_eq!(pinv, m.inverse().unwrap());
    }

    #[test]
    fn pseudoinverse_of_random_singular() {
        let f = Prime::default();
        let mut rng = rng_from_seed(33);
        for _ in 0..50 {
            let m = FMatrix::random(f, 8, 5, &mut rng).mul(&FMatrix::random(f, 5, 8, &mut rng));
            let pinv = m.pseudoinverse().unwrap();
            assert_eq!(m.mul(&pinv).mul(&m), m);
            assert_eq!(pinv.rank(), 8);
        }
    }

    #[test]
    fn kronecker_examples() {
        let f = f7();
        assert_eq!(FMatrix::identity(f, 2).kronecker(&FMatrix::identity(f, 3)), FMatrix::identity(f, 6));
        let col = FMatrix::from_i64_rows(f, &[&[1], &[1]]);
        let row = FMatrix::from_i64_rows(f, &[&[1, 1]]);
        assert_eq!(col.kronecker(&row), FMatrix::from_i64_rows(f, &[&[1, 1], &[1, 1]]));
        let a = [Fp::ONE, f.elem(2)];
        let b = [f.elem(3), f.elem(4), f.elem(5)];
        let kv = kron_vec(f, &a, &b);
        let km = FMatrix::column(f, &a).kronecker(&FMatrix::column(f, &b));
        assert_eq!(kv, km.col(0));
    }

    #[test]
    fn mixed_product_property() {
        let f = Prime::default();
        let mut rng = rng_from_seed(99);
        for _ in 0..20 {
            let a = FMatrix::random(f, 2, 3, &mut rng);
            let b = FMatrix::random(f, 3, 2, &mut rng);
            let c = FMatrix::random(f, 3, 2, &mut rng);
            let d = FMatrix::random(f, 2, 3, &mut rng);
            assert_eq!(a.mul(&b).kronecker(&c.mul(&d)), a.kronecker(&c).mul(&b.kronecker(&d)));
        }
    }

    #[test]
    fn shape_errors() {
        let f = f7();
        let a = FMatrix::zeros(f, 2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.inverse(), Err(Error::DimensionMismatch(_))));
    }
}
