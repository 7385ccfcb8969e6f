//! Evaluated matrix representations of an instance.
//!
//! Indeterminates never appear symbolically; an [`Evaluation`] holds the
//! random field values substituted for them. Blow-ups built here follow the
//! `X ⊗ A` layout, where entry `(j, k)` of GF(p)^n ⊗ GF(p)² sits at flat index
//! `k·n + j` ("2-major"). The factored form and the dual module use the
//! swapped `A ⊗ X` layout (index `2j + k`, "n-major"); [`to_n_major`] converts.

use crate::field::{derive_seed_indexed, rng_from_seed, Fp, Prime};
use crate::instance::{HalfVector, LineSet};
use crate::linalg::{kron_vec, FMatrix};

/// `Δ = [[0, 1], [-1, 0]]`.
pub fn delta(f: Prime) -> FMatrix {
    FMatrix::from_i64_rows(f, &[&[0, 1], &[-1, 0]])
}

/// `a ∧ b = a bᵀ - b aᵀ`.
pub fn wedge(f: Prime, a: &[Fp], b: &[Fp]) -> FMatrix {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    FMatrix::from_fn(f, n, n, |i, j| f.sub(f.mul(a[i], b[j]), f.mul(b[i], a[j])))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LineSample {
    x: Fp,
    blowup: FMatrix,
    u: FMatrix,
    v: FMatrix,
}

/// Random values for one solver run, drawn per line from `(seed, line index)`.
///
/// Per line: a nonzero scalar `x_i`, a 2×2 blow-up point `X_i`, the 2×2
/// matrix `U_i` whose columns build `Y_i` for the constrained blow-up and
/// `B(y)`, and a separate 2×2 matrix for the blocks of `Z(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    prime: Prime,
    seed: u64,
    lines: Vec<LineSample>,
}

impl Evaluation {
    pub fn new(prime: Prime, m: usize, seed: u64) -> Self {
        let lines = (0..m)
            .map(|i| {
                let mut rng = rng_from_seed(derive_seed_indexed(seed, "line", i as u64));
                let x = prime.sample_nonzero(&mut rng);
                let blowup = FMatrix::random(prime, 2, 2, &mut rng);
                let u = FMatrix::random(prime, 2, 2, &mut rng);
                let v = FMatrix::random(prime, 2, 2, &mut rng);
                LineSample { x, blowup, u, v }
            })
            .collect();
        Evaluation { prime, seed, lines }
    }

    pub fn for_instance(ls: &LineSet, seed: u64) -> Self {
        Self::new(ls.prime(), ls.m(), seed)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn m(&self) -> usize {
        self.lines.len()
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    /// The scalars `x_i`, all nonzero.
    pub fn scalars(&self) -> Vec<Fp> {
        self.lines.iter().map(|l| l.x).collect()
    }

    /// The blow-up points `X_i`.
    pub fn blowup_points(&self) -> Vec<FMatrix> {
        self.lines.iter().map(|l| l.blowup.clone()).collect()
    }

    /// Columns of `U_i` in use at doubled value `d`: both for 2, the second
    /// for 1, none for 0. Lowering `y_i` drops the first column first.
    pub fn u_columns(&self, i: usize, d: u8) -> Vec<Vec<Fp>> {
        let u = &self.lines[i].u;
        match d {
            0 => vec![],
            1 => vec![u.col(1)],
            _ => vec![u.col(0), u.col(1)],
        }
    }

    /// Columns of the `Z(y)` block matrix at doubled value `d`: `2 - d` of them,
    /// the first one dropped first.
    pub fn z_columns(&self, i: usize, d: u8) -> Vec<Vec<Fp>> {
        let v = &self.lines[i].v;
        match d {
            0 => vec![v.col(0), v.col(1)],
            1 => vec![v.col(1)],
            _ => vec![],
        }
    }

    /// `Y_i = U_i U_iᵀ` at doubled value `d`.
    pub fn y_matrix(&self, i: usize, d: u8) -> FMatrix {
        gram(self.prime, &self.u_columns(i, d))
    }

    /// The `Z(y)` block generator `U_i U_iᵀ`, with `U_i` of width `2 - d`.
    pub fn z_matrix(&self, i: usize, d: u8) -> FMatrix {
        gram(self.prime, &self.z_columns(i, d))
    }
}

fn gram(f: Prime, cols: &[Vec<Fp>]) -> FMatrix {
    let mut y = FMatrix::zeros(f, 2, 2);
    for c in cols {
        for k in 0..2 {
            for l in 0..2 {
                y[(k, l)] = f.mul_add(y[(k, l)], c[k], c[l]);
            }
        }
    }
    y
}

/// `A = Σ x_i (a_i ∧ b_i)`.
pub fn lovasz_eval(ls: &LineSet, x: &[Fp]) -> FMatrix {
    assert_eq!(x.len(), ls.m());
    let f = ls.prime();
    let n = ls.n();
    let mut out = FMatrix::zeros(f, n, n);
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            add_wedge(&mut out, 0, 0, xi, ls.a(i), ls.b(i));
        }
    }
    out
}

// out[r0 + ., c0 + .] += c (a bᵀ - b aᵀ)
fn add_wedge(out: &mut FMatrix, r0: usize, c0: usize, c: Fp, a: &[Fp], b: &[Fp]) {
    let f = out.field();
    let n = a.len();
    for i in 0..n {
        let (ca, cb) = (f.mul(c, a[i]), f.mul(c, b[i]));
        if ca.is_zero() && cb.is_zero() {
            continue;
        }
        let row = &mut out.row_mut(r0 + i)[c0..c0 + n];
        for j in 0..n {
            row[j] = f.sub(f.mul_add(row[j], ca, b[j]), f.mul(cb, a[j]));
        }
    }
}

/// `Σ X_i ⊗ (a_i ∧ b_i)`, a `2n × 2n` matrix in the 2-major layout.
pub fn blowup2_eval(ls: &LineSet, xs: &[FMatrix]) -> FMatrix {
    assert_eq!(xs.len(), ls.m());
    let f = ls.prime();
    let n = ls.n();
    let mut out = FMatrix::zeros(f, 2 * n, 2 * n);
    for (i, x) in xs.iter().enumerate() {
        for k in 0..2 {
            for l in 0..2 {
                if !x[(k, l)].is_zero() {
                    add_wedge(&mut out, k * n, l * n, x[(k, l)], ls.a(i), ls.b(i));
                }
            }
        }
    }
    out
}

/// `A^{2}(y) = Σ Y_i ⊗ (a_i ∧ b_i)` with `Y_i = U_i U_iᵀ` of rank `2 y_i`.
pub fn constrained_blowup_eval(ls: &LineSet, y: &HalfVector, ev: &Evaluation) -> FMatrix {
    assert_eq!(y.len(), ls.m());
    let ys: Vec<FMatrix> = (0..ls.m()).map(|i| ev.y_matrix(i, y.get(i))).collect();
    blowup2_eval(ls, &ys)
}

/// `B(y) = [U_1 ⊗ B_1 … U_m ⊗ B_m]`, of size `2n × 4|y|`.
pub fn b_matrix(ls: &LineSet, y: &HalfVector, ev: &Evaluation) -> FMatrix {
    assert_eq!(y.len(), ls.m());
    let f = ls.prime();
    let mut cols = Vec::with_capacity(2 * y.value_doubled());
    for i in 0..ls.m() {
        for u in ev.u_columns(i, y.get(i)) {
            cols.push(kron_vec(f, &u, ls.a(i)));
            cols.push(kron_vec(f, &u, ls.b(i)));
        }
    }
    FMatrix::from_columns(f, 2 * ls.n(), &cols)
}

/// The sparse representation: top-right blocks `B_i`, bottom-left `-B_iᵀ`,
/// diagonal blocks `x_i Δ`, of size `n + 2m`.
pub fn sparse_eval(ls: &LineSet, x: &[Fp]) -> FMatrix {
    assert_eq!(x.len(), ls.m());
    let f = ls.prime();
    let (n, m) = (ls.n(), ls.m());
    let mut z = FMatrix::zeros(f, n + 2 * m, n + 2 * m);
    for i in 0..m {
        let c = n + 2 * i;
        for j in 0..n {
            z[(j, c)] = ls.a(i)[j];
            z[(j, c + 1)] = ls.b(i)[j];
            z[(c, j)] = f.neg(ls.a(i)[j]);
            z[(c + 1, j)] = f.neg(ls.b(i)[j]);
        }
        z[(c, c + 1)] = x[i];
        z[(c + 1, c)] = f.neg(x[i]);
    }
    z
}

/// Index of the first row of line `i`'s block in `Z(y)`.
pub fn z_line_offset(n: usize, i: usize) -> usize {
    2 * n + 4 * i
}

/// The `4 × 4` diagonal block `Y'_i ⊗ Δ` of `Z(y)` at doubled value `d`.
pub fn z_diagonal_block(ev: &Evaluation, i: usize, d: u8) -> FMatrix {
    ev.z_matrix(i, d).kronecker(&delta(ev.prime()))
}

/// `Z(y)`: top-right blocks `I_2 ⊗ B_i`, bottom-left `-(I_2 ⊗ B_i)ᵀ`, diagonal
/// blocks `Y'_i ⊗ Δ` with `Y'_i` of rank `2 - 2y_i`. Size `2n + 4m`.
pub fn z_y_matrix(ls: &LineSet, y: &HalfVector, ev: &Evaluation) -> FMatrix {
    assert_eq!(y.len(), ls.m());
    let f = ls.prime();
    let (n, m) = (ls.n(), ls.m());
    let mut z = FMatrix::zeros(f, 2 * n + 4 * m, 2 * n + 4 * m);
    for i in 0..m {
        let o = z_line_offset(n, i);
        for k in 0..2 {
            for j in 0..n {
                let (a, b) = (ls.a(i)[j], ls.b(i)[j]);
                z[(k * n + j, o + 2 * k)] = a;
                z[(k * n + j, o + 2 * k + 1)] = b;
                z[(o + 2 * k, k * n + j)] = f.neg(a);
                z[(o + 2 * k + 1, k * n + j)] = f.neg(b);
            }
        }
        z.set_block(o, o, &z_diagonal_block(ev, i, y.get(i)));
    }
    z
}

/// `(B, E)` with `B = [B_1 ⊗ I_2 … B_m ⊗ I_2]` and `E = diag(Δ ⊗ X_i)`, so that
/// `B E Bᵀ = Σ (a_i ∧ b_i) ⊗ X_i`, the n-major form of [`blowup2_eval`].
pub fn blowup2_factored(ls: &LineSet, xs: &[FMatrix]) -> (FMatrix, FMatrix) {
    assert_eq!(xs.len(), ls.m());
    let f = ls.prime();
    let (n, m) = (ls.n(), ls.m());
    let i2 = FMatrix::identity(f, 2);
    let mut b = FMatrix::zeros(f, 2 * n, 4 * m);
    let mut e = FMatrix::zeros(f, 4 * m, 4 * m);
    let d = delta(f);
    for (i, x) in xs.iter().enumerate() {
        b.set_block(0, 4 * i, &ls.generator(i).kronecker(&i2));
        e.set_block(4 * i, 4 * i, &d.kronecker(x));
    }
    (b, e)
}

/// The permutation taking 2-major index `k·n + j` to n-major index `2j + k`.
pub fn n_major_index(n: usize, idx: usize) -> usize {
    let (k, j) = (idx / n, idx % n);
    2 * j + k
}

/// Re-indexes a `2n × 2n` matrix from the 2-major to the n-major layout.
pub fn to_n_major(m: &FMatrix) -> FMatrix {
    let n = m.rows() / 2;
    let mut out = FMatrix::zeros(m.field(), m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out[(n_major_index(n, r), n_major_index(n, c))] = m[(r, c)];
        }
    }
    out
}
