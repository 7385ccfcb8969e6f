//! Parity-base solvers built on the nonsingularity of `Z(y)`.
//!
//! `Z(y)` is nonsingular iff `y` extends to a parity base. The recursive
//! builder fixes one coordinate at a time, keeping the inverse of `Z(y)`
//! restricted to the undecided line blocks up to date with low-rank updates.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::instance::{HalfVector, LineSet};
use crate::linalg::{low_rank_update_inverse_at, update_is_nonsingular, FMatrix};
use crate::repr::{z_diagonal_block, z_line_offset, z_y_matrix, Evaluation};

use super::{Algorithm, SolveReport};

fn block_delta(ev: &Evaluation, i: usize, from: u8, to: u8) -> FMatrix {
    z_diagonal_block(ev, i, to).sub(&z_diagonal_block(ev, i, from))
}

fn block_indices(blocks: impl IntoIterator<Item = usize>) -> Vec<usize> {
    blocks.into_iter().flat_map(|p| 4 * p..4 * p + 4).collect()
}

fn block_diag(f: crate::field::Prime, blocks: &[FMatrix]) -> FMatrix {
    let mut d = FMatrix::zeros(f, 4 * blocks.len(), 4 * blocks.len());
    for (p, b) in blocks.iter().enumerate() {
        d.set_block(4 * p, 4 * p, b);
    }
    d
}

fn lost(what: &str) -> Error {
    Error::MonteCarloFailure(format!("{what} became singular"))
}

/// Decides `y` on `lines`, which must all be 0 in `y` on entry.
///
/// `m` is `Z(y)⁻¹` restricted to the blocks of `lines`, in that order. The
/// result is the lex-max `z ≥ y` among parity-base extensions, restricted to
/// `lines`. Returns the number of nonsingularity tests.
pub fn build_fractional_parity_base(ev: &Evaluation, lines: &[usize], y: &mut HalfVector, m: FMatrix) -> Result<usize> {
    if m.rows() != 4 * lines.len() || !m.is_square() {
        return Err(Error::DimensionMismatch("builder: inverse block size".into()));
    }
    if lines.iter().any(|&i| y.get(i) != 0) {
        return Err(Error::DimensionMismatch("builder: lines must start at 0".into()));
    }
    bfpb(ev, lines, y, m)
}

fn bfpb(ev: &Evaluation, lines: &[usize], y: &mut HalfVector, m: FMatrix) -> Result<usize> {
    match lines.len() {
        0 => Ok(0),
        1 => {
            let i = lines[0];
            let one = update_is_nonsingular(&m, &block_delta(ev, i, 0, 2));
            let half = update_is_nonsingular(&m, &block_delta(ev, i, 0, 1));
            if one && !half {
                return Err(Error::MonteCarloFailure(format!(
                    "line {} extends at 1 but not at 1/2",
                    i + 1
                )));
            }
            y.set(
                i,
                match (one, half) {
                    (true, _) => 2,
                    (false, true) => 1,
                    (false, false) => 0,
                },
            );
            Ok(2)
        }
        k => {
            let h = (k - 1) / 2 + 1;
            let (l1, l2) = lines.split_at(h);
            let before: Vec<u8> = l1.iter().map(|&i| y.get(i)).collect();
            let mut q = bfpb(ev, l1, y, m.principal(&block_indices(0..h)))?;
            let changed: Vec<usize> = (0..h).filter(|&p| y.get(l1[p]) != before[p]).collect();
            let rest = block_indices(h..k);
            let m2 = if changed.is_empty() {
                m.principal(&rest)
            } else {
                let d: Vec<FMatrix> = changed
                    .iter()
                    .map(|&p| block_delta(ev, l1[p], before[p], y.get(l1[p])))
                    .collect();
                q += 1;
                low_rank_update_inverse_at(&m, &block_diag(m.field(), &d), &block_indices(changed), &rest)
                    .map_err(|_| lost("Z(y) after the first half"))?
            };
            q += bfpb(ev, l2, y, m2)?;
            Ok(q)
        }
    }
}

fn check_instance(ls: &LineSet) -> Result<()> {
    ls.validate_lines()?;
    ls.prime().check_instance_size(ls.n(), ls.m())
}

/// Lex-max parity base from a dense inverse of `Z(0)`. O(m³) overall.
pub fn sparse_solve(ls: &LineSet, seed: u64) -> Result<SolveReport> {
    let start = Instant::now();
    check_instance(ls)?;
    let (n, m) = (ls.n(), ls.m());
    let ev = Evaluation::for_instance(ls, seed);
    let mut y = HalfVector::zeros(m);
    let zinv = z_y_matrix(ls, &y, &ev).inverse().map_err(|_| Error::NoParityBase)?;
    let idx: Vec<usize> = (z_line_offset(n, 0)..z_line_offset(n, m)).collect();
    let lines: Vec<usize> = (0..m).collect();
    let q = 1 + bfpb(&ev, &lines, &mut y, zinv.principal(&idx))?;
    finish(y, n, Algorithm::Sparse, seed, q, start)
}

fn finish(y: HalfVector, want: usize, algorithm: Algorithm, seed: u64, q: usize, start: Instant) -> Result<SolveReport> {
    if y.value_doubled() != want {
        return Err(Error::MonteCarloFailure(format!(
            "builder ended at 2|y| = {}, expected {want}",
            y.value_doubled()
        )));
    }
    Ok(SolveReport {
        value_doubled: y.value_doubled(),
        y,
        algorithm,
        seed,
        rank_queries: q,
        elapsed: start.elapsed(),
    })
}

/// Appends copies of lines `0, 1, …` until `m` is a multiple of `n`.
pub fn padded_instance(ls: &LineSet) -> LineSet {
    let (n, m) = (ls.n().max(1), ls.m());
    if m == 0 || m % n == 0 {
        return ls.clone();
    }
    let extra: Vec<usize> = (0..n - m % n).map(|t| t % m).collect();
    ls.with_copies(&extra)
}

/// Block inverse of `Z(0)` with only the top rows `rows` kept, via the
/// Schur complement of the block-diagonal part `T`.
struct SchurView {
    t_inv: Vec<FMatrix>,
    // H_i = T_i⁻¹ Q2_i   (4 × r)
    h: Vec<FMatrix>,
    // M⁻¹ G_j = M⁻¹ Q1_j T_j⁻¹   (r × 4)
    w: Vec<FMatrix>,
}

impl SchurView {
    /// Returns the view and the Schur complement `M = -Σ Q1_i T_i⁻¹ Q2_i`.
    fn schur(ls: &LineSet, ev: &Evaluation, rows: &[usize]) -> Result<(Vec<FMatrix>, Vec<FMatrix>, Vec<FMatrix>, FMatrix)> {
        let f = ls.prime();
        let n = ls.n();
        let r = rows.len();
        let mut t_inv = Vec::with_capacity(ls.m());
        let mut g = Vec::with_capacity(ls.m());
        let mut h = Vec::with_capacity(ls.m());
        let mut schur = FMatrix::zeros(f, r, r);
        for i in 0..ls.m() {
            let ti = z_diagonal_block(ev, i, 0).inverse().map_err(|_| lost("a diagonal block of Z(0)"))?;
            // rows of I_2 ⊗ B_i, 2-major
            let q1 = FMatrix::from_fn(f, r, 4, |a, c| {
                let (k, j) = (rows[a] / n, rows[a] % n);
                match c {
                    _ if c / 2 != k => Fp::ZERO,
                    _ if c % 2 == 0 => ls.a(i)[j],
                    _ => ls.b(i)[j],
                }
            });
            let q2 = q1.transpose().neg();
            let hi = ti.mul(&q2);
            schur = schur.sub(&q1.mul(&hi));
            g.push(q1.mul(&ti));
            h.push(hi);
            t_inv.push(ti);
        }
        Ok((t_inv, g, h, schur))
    }

    fn new(t_inv: Vec<FMatrix>, g: Vec<FMatrix>, h: Vec<FMatrix>, schur_inv: &FMatrix) -> Self {
        let w = g.iter().map(|gj| schur_inv.mul(gj)).collect();
        SchurView { t_inv, h, w }
    }

    /// `Z(0)⁻¹` on the blocks of lines `a` × lines `b`.
    fn blocks(&self, a: &[usize], b: &[usize]) -> FMatrix {
        let f = self.t_inv[0].field();
        let mut out = FMatrix::zeros(f, 4 * a.len(), 4 * b.len());
        for (p, &i) in a.iter().enumerate() {
            for (q, &j) in b.iter().enumerate() {
                let mut blk = self.h[i].mul(&self.w[j]);
                if i == j {
                    blk = blk.add(&self.t_inv[i]);
                }
                out.set_block(4 * p, 4 * q, &blk);
            }
        }
        out
    }
}

/// Runs the builder block by block over chunks of `chunk` lines, refreshing
/// `Z(y)⁻¹` on each chunk from `Z(0)⁻¹` and the support of `y` so far.
fn blockwise(ls: &LineSet, ev: &Evaluation, view: &SchurView, chunk: usize) -> Result<(HalfVector, usize)> {
    let f = ls.prime();
    let m = ls.m();
    let mut y = HalfVector::zeros(m);
    let mut q = 0;
    let all: Vec<usize> = (0..m).collect();
    for l in all.chunks(chunk.max(1)) {
        let supp: Vec<usize> = (0..m).filter(|&i| y.get(i) != 0).collect();
        let m_l = if supp.is_empty() {
            view.blocks(l, l)
        } else {
            // Z(y)⁻¹[L] from Z(0)⁻¹ on S ∪ L, with S = supp y
            let sl: Vec<usize> = supp.iter().chain(l).copied().collect();
            let local = view.blocks(&sl, &sl);
            let d: Vec<FMatrix> = supp.iter().map(|&i| block_delta(ev, i, 0, y.get(i))).collect();
            q += 1;
            low_rank_update_inverse_at(
                &local,
                &block_diag(f, &d),
                &block_indices(0..supp.len()),
                &block_indices(supp.len()..sl.len()),
            )
            .map_err(|_| lost("Z(y) on a new block"))?
        };
        q += bfpb(ev, l, &mut y, m_l)?;
    }
    Ok((y, q))
}

fn strip_padding(y: &HalfVector, m: usize) -> Result<HalfVector> {
    if y.doubled()[m..].iter().any(|&d| d != 0) {
        return Err(Error::MonteCarloFailure("a padding line took a nonzero value".into()));
    }
    Ok(y.truncated(m))
}

/// Lex-max parity base in O(m n²) field operations, working on chunks of `n`
/// lines against the Schur complement of `Z(0)`.
pub fn faster_solve(ls: &LineSet, seed: u64) -> Result<SolveReport> {
    let start = Instant::now();
    check_instance(ls)?;
    let n = ls.n();
    let padded = padded_instance(ls);
    let ev = Evaluation::for_instance(&padded, seed);
    let rows: Vec<usize> = (0..2 * n).collect();
    let (t_inv, g, h, schur) = SchurView::schur(&padded, &ev, &rows)?;
    let schur_inv = schur.inverse().map_err(|_| Error::NoParityBase)?;
    let view = SchurView::new(t_inv, g, h, &schur_inv);
    let (y, q) = blockwise(&padded, &ev, &view, n)?;
    finish(strip_padding(&y, ls.m())?, n, Algorithm::Faster, seed, q + 1, start)
}

/// Rows kept by a greedy row-basis scan of `m`, visiting 2-major indices in
/// n-major order.
fn greedy_rows(m: &FMatrix, n: usize) -> Vec<usize> {
    let f = m.field();
    let mut basis: Vec<(usize, Vec<Fp>)> = Vec::new();
    let mut kept = Vec::new();
    for v in 0..2 * n {
        let idx = (v % 2) * n + v / 2;
        let mut row = m.row(idx).to_vec();
        for (p, b) in &basis {
            let c = row[*p];
            if !c.is_zero() {
                crate::linalg::axpy(f, &mut row, b, f.neg(c));
            }
        }
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            let s = f.inv(row[p]).expect("nonzero pivot");
            row.iter_mut().for_each(|x| *x = f.mul(*x, s));
            basis.push((p, row));
            kept.push(idx);
        }
    }
    kept.sort_unstable();
    kept
}

/// Maximizer of `|y|` from a maximum nonsingular principal submatrix of the
/// Schur complement of `Z(0)`.
///
/// The kept rows `I` are chosen greedily; the answer is the lex-max parity
/// base of the instance seen through the rows `I`, which is a maximizer but
/// not in general the lex-max one.
pub fn max_matching_solve(ls: &LineSet, seed: u64) -> Result<SolveReport> {
    let start = Instant::now();
    check_instance(ls)?;
    let n = ls.n();
    let padded = padded_instance(ls);
    let ev = Evaluation::for_instance(&padded, seed);
    let all: Vec<usize> = (0..2 * n).collect();
    let (_, _, _, full) = SchurView::schur(&padded, &ev, &all)?;
    let rows = greedy_rows(&full, n);
    let (t_inv, g, h, schur) = SchurView::schur(&padded, &ev, &rows)?;
    let schur_inv = schur.inverse().map_err(|_| lost("the chosen principal submatrix"))?;
    let view = SchurView::new(t_inv, g, h, &schur_inv);
    let (y, q) = blockwise(&padded, &ev, &view, n)?;
    finish(strip_padding(&y, ls.m())?, rows.len() / 2, Algorithm::MaxMatching, seed, q + 2, start)
}
