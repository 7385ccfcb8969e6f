//! Block inverse formulas: the Schur-complement inverse of a matrix with a
//! zero top-left block, and the low-rank principal update of an inverse.

use crate::error::{Error, Result};

use super::matrix::FMatrix;

/// Inverse of `Z = [[O, Q1], [Q2, T]]`, assembled from the four blocks
///
/// ```text
/// [[ M⁻¹,          -M⁻¹ Q1 T⁻¹                 ],
///  [ -T⁻¹ Q2 M⁻¹,  T⁻¹ + T⁻¹ Q2 M⁻¹ Q1 T⁻¹ ]]
/// ```
///
/// with `M = -Q1 T⁻¹ Q2`.
pub fn schur_inverse(q1: &FMatrix, q2: &FMatrix, t: &FMatrix) -> Result<FMatrix> {
    let (a, b) = (q1.rows(), q1.cols());
    if q2.rows() != b || q2.cols() != a || t.rows() != b || t.cols() != b {
        return Err(Error::DimensionMismatch(format!(
            "schur_inverse: Q1 {}x{}, Q2 {}x{}, T {}x{}",
            q1.rows(),
            q1.cols(),
            q2.rows(),
            q2.cols(),
            t.rows(),
            t.cols()
        )));
    }
    let t_inv = t.inverse()?;
    let q1t = q1.mul(&t_inv);
    let tq2 = t_inv.mul(q2);
    let m_inv = q1t.mul(q2).neg().inverse()?;
    let top_right = m_inv.mul(&q1t).neg();
    let bottom_left = tq2.mul(&m_inv).neg();
    let bottom_right = t_inv.add(&tq2.mul(&m_inv).mul(&q1t));

    let mut out = FMatrix::zeros(q1.field(), a + b, a + b);
    out.set_block(0, 0, &m_inv);
    out.set_block(0, a, &top_right);
    out.set_block(a, 0, &bottom_left);
    out.set_block(a, a, &bottom_right);
    Ok(out)
}

/// `I + D[S] M[S]`, whose nonsingularity decides whether `Z + D` is nonsingular.
pub fn update_core(m_s: &FMatrix, d_s: &FMatrix) -> FMatrix {
    FMatrix::identity(m_s.field(), m_s.rows()).add(&d_s.mul(m_s))
}

/// True iff `Z + D` stays nonsingular, for `D` supported on `S × S`.
pub fn update_is_nonsingular(m_s: &FMatrix, d_s: &FMatrix) -> bool {
    update_core(m_s, d_s).determinant().map_or(false, |d| !d.is_zero())
}

/// `(Z + D)⁻¹[S']` from blocks of `M = Z⁻¹`, for `D` supported on `S × S`:
///
/// ```text
/// M[S'] - M[S', S] (I + D[S] M[S])⁻¹ D[S] M[S, S']
/// ```
///
/// Costs O(|S|³ + |S|·|S'|²).
pub fn low_rank_update_inverse(
    m_s: &FMatrix,
    m_s_sp: &FMatrix,
    m_sp_s: &FMatrix,
    m_sp: &FMatrix,
    d_s: &FMatrix,
) -> Result<FMatrix> {
    let s = m_s.rows();
    let sp = m_sp.rows();
    let shapes_ok = m_s.cols() == s
        && d_s.rows() == s
        && d_s.cols() == s
        && m_s_sp.rows() == s
        && m_s_sp.cols() == sp
        && m_sp_s.rows() == sp
        && m_sp_s.cols() == s
        && m_sp.cols() == sp;
    if !shapes_ok {
        return Err(Error::DimensionMismatch("low_rank_update_inverse block shapes".into()));
    }
    if d_s.is_zero() {
        return Ok(m_sp.clone());
    }
    let core_inv = update_core(m_s, d_s).inverse()?;
    let corr = m_sp_s.mul(&core_inv).mul(&d_s.mul(m_s_sp));
    Ok(m_sp.sub(&corr))
}

/// [`low_rank_update_inverse`] with the blocks cut out of a full `Z⁻¹`.
pub fn low_rank_update_inverse_at(minv: &FMatrix, d_s: &FMatrix, s: &[usize], sp: &[usize]) -> Result<FMatrix> {
    low_rank_update_inverse(
        &minv.principal(s),
        &minv.submatrix(s, sp),
        &minv.submatrix(sp, s),
        &minv.principal(sp),
        d_s,
    )
}

/// Embeds `D[S]` into an `n × n` zero matrix.
pub fn embed_principal(n: usize, s: &[usize], d_s: &FMatrix) -> FMatrix {
    let mut d = FMatrix::zeros(d_s.field(), n, n);
    for (a, &i) in s.iter().enumerate() {
        for (b, &j) in s.iter().enumerate() {
            d[(i, j)] = d_s[(a, b)];
        }
    }
    d
}
