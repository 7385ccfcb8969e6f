//! Dual certificates: nested 2-covers from the Wong sequence of a generic
//! point of the blow-up.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{derive_seed, Fp, Prime};
use crate::instance::LineSet;
use crate::linalg::{apply_space, FMatrix, Subspace};
use crate::repr::{blowup2_factored, wedge, Evaluation};

/// A pair `S ≤ T` of subspaces of GF(p)^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedTwoCover {
    pub s: Subspace,
    pub t: Subspace,
}

impl NestedTwoCover {
    /// `dim S + dim T`, which bounds `2|y|` from above when the pair covers.
    pub fn value_doubled(&self) -> usize {
        self.s.dim() + self.t.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub nested: bool,
    /// Lines (0-based) with `dim(S ∩ ℓ) + dim(T ∩ ℓ) < 2`.
    pub uncovered: Vec<usize>,
    pub value_doubled: usize,
}

impl CoverCheck {
    pub fn is_valid(&self) -> bool {
        self.nested && self.uncovered.is_empty()
    }
}

/// The operators `A_i = a_i ∧ b_i` spanning the instance's matrix space.
pub fn line_operators(ls: &LineSet) -> Vec<FMatrix> {
    (0..ls.m()).map(|i| wedge(ls.prime(), ls.a(i), ls.b(i))).collect()
}

/// `𝒜(U) = span{A_i u}` for `U ≤ GF(p)^n`.
pub fn apply_matrix_space(ls: &LineSet, u: &Subspace) -> Result<Subspace> {
    apply_space(&line_operators(ls), u)
}

/// `𝒜^{2}(U)` for `U ≤ GF(p)^{2n}` in the n-major layout.
///
/// The blow-up space is spanned by `A_i ⊗ E_kl`, which sends `u` to
/// `(A_i u_l) ⊗ e_k` with `u_l` the `l`-th slice of `u`. So the result is
/// `V ⊗ GF(p)²` with `V = span{A_i u_l}`.
pub fn apply_blowup_space(ls: &LineSet, u: &Subspace) -> Result<Subspace> {
    let f = ls.prime();
    let n = ls.n();
    if u.ambient_dim() != 2 * n {
        return Err(Error::DimensionMismatch("blow-up space acts on GF(p)^2n".into()));
    }
    let mut slices = Vec::with_capacity(2 * u.dim());
    for v in u.basis_vectors() {
        for l in 0..2 {
            slices.push((0..n).map(|j| v[2 * j + l]).collect::<Vec<_>>());
        }
    }
    let v = apply_matrix_space(ls, &Subspace::from_vectors(f, n, &slices))?;
    Ok(tensor_with_plane(&v))
}

/// `V ⊗ GF(p)²` in the n-major layout.
fn tensor_with_plane(v: &Subspace) -> Subspace {
    let n = v.ambient_dim();
    let mut gens = Vec::with_capacity(2 * v.dim());
    for b in v.basis_vectors() {
        for k in 0..2 {
            let mut w = vec![Fp::ZERO; 2 * n];
            for j in 0..n {
                w[2 * j + k] = b[j];
            }
            gens.push(w);
        }
    }
    Subspace::from_vectors(v.field(), 2 * n, &gens)
}

/// `{u : u ⊗ e_1, u ⊗ e_2 ∈ U}`.
fn tensor_core(f: Prime, n: usize, u: &Subspace) -> Result<Subspace> {
    let embed = |k: usize| FMatrix::from_fn(f, 2 * n, n, |r, c| if r == 2 * c + k { Fp::ONE } else { Fp::ZERO });
    Subspace::preimage(&embed(0), u)?.intersection(&Subspace::preimage(&embed(1), u)?)
}

/// The Wong sequence `W_0 = 0`, `W_{i+1} = 𝒜^{2}(M⁻¹(W_i))` up to its limit.
///
/// Returns every term; the sequence is nondecreasing and stabilises within
/// `2n + 1` steps.
pub fn wong_sequence(ls: &LineSet, m: &FMatrix) -> Result<Vec<Subspace>> {
    let f = ls.prime();
    let d = 2 * ls.n();
    if m.rows() != d || m.cols() != d {
        return Err(Error::DimensionMismatch("Wong sequence: M must be 2n × 2n".into()));
    }
    let mut seq = vec![Subspace::zero(f, d)];
    loop {
        let last = seq.last().expect("nonempty");
        let next = apply_blowup_space(ls, &Subspace::preimage(m, last)?)?;
        if !next.contains_subspace(last)? {
            return Err(Error::MonteCarloFailure("Wong sequence decreased".into()));
        }
        if next == *last {
            return Ok(seq);
        }
        seq.push(next);
        if seq.len() > d + 2 {
            return Err(Error::MonteCarloFailure("Wong sequence did not stabilise".into()));
        }
    }
}

/// The limit `W_∞`.
pub fn wong_limit(ls: &LineSet, m: &FMatrix) -> Result<Subspace> {
    Ok(wong_sequence(ls, m)?.pop().expect("nonempty"))
}

/// The dominant nested 2-cover, computed from the minimum shrunk subspace
/// `U* = M⁻¹(W_∞)` of a random point `M` of the blow-up.
///
/// With `U₀ = {u : u ⊗ GF(p)² ≤ U*}`, the cover is `S = 𝒜(U₀)`, `T = U₀^⊥`.
/// Both are canonical subspaces, so the result does not depend on the seed
/// once the point has maximum rank.
pub fn dominant_two_cover(ls: &LineSet, seed: u64) -> Result<NestedTwoCover> {
    ls.validate_lines()?;
    ls.prime().check_instance_size(ls.n(), ls.m())?;
    let ev = Evaluation::for_instance(ls, derive_seed(seed, "dual"));
    two_cover_at(ls, &ev.blowup_points())
}

/// [`dominant_two_cover`] at the blow-up point `Σ A_i ⊗ X_i` for given `X_i`.
pub fn two_cover_at(ls: &LineSet, xs: &[FMatrix]) -> Result<NestedTwoCover> {
    if xs.len() != ls.m() || xs.iter().any(|x| x.rows() != 2 || x.cols() != 2) {
        return Err(Error::DimensionMismatch("one 2×2 point per line".into()));
    }
    let f = ls.prime();
    let n = ls.n();
    let (b, e) = blowup2_factored(ls, xs);
    let m = b.mul(&e).mul(&b.transpose());
    let w = wong_limit(ls, &m)?;
    if !Subspace::image(&m).contains_subspace(&w)? {
        return Err(Error::MaxRankNotAttained);
    }
    let u_star = Subspace::preimage(&m, &w)?;
    let u0 = tensor_core(f, n, &u_star)?;
    if u_star.dim() != 2 * u0.dim() {
        return Err(Error::MonteCarloFailure(format!(
            "shrunk subspace of dimension {} is not a tensor with the plane (core {})",
            u_star.dim(),
            u0.dim()
        )));
    }
    // minimum c-shrunk: dim U* - dim 𝒜(U*) = 2n - rank M
    let shrink = u_star.dim() - apply_blowup_space(ls, &u_star)?.dim().min(u_star.dim());
    if shrink + m.rank() != 2 * n {
        return Err(Error::MonteCarloFailure("shrunk subspace has the wrong corank".into()));
    }
    Ok(NestedTwoCover {
        s: apply_matrix_space(ls, &u0)?,
        t: u0.annihilator(),
    })
}

/// Checks nestedness and the covering condition line by line.
pub fn verify_two_cover(ls: &LineSet, cover: &NestedTwoCover) -> Result<CoverCheck> {
    let n = ls.n();
    if cover.s.ambient_dim() != n || cover.t.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!("cover is not in GF(p)^{n}")));
    }
    let nested = cover.t.contains_subspace(&cover.s)?;
    let mut uncovered = Vec::new();
    for i in 0..ls.m() {
        let l = ls.line_space(i);
        if l.intersection(&cover.s)?.dim() + l.intersection(&cover.t)?.dim() < 2 {
            uncovered.push(i);
        }
    }
    Ok(CoverCheck {
        nested,
        uncovered,
        value_doubled: cover.value_doubled(),
    })
}

pub fn write_cover(cover: &NestedTwoCover) -> String {
    let n = cover.s.ambient_dim();
    let mut out = format!("cover n {n}\n");
    for (name, sub) in [("S", &cover.s), ("T", &cover.t)] {
        let _ = writeln!(out, "{name} dim {}", sub.dim());
        for v in sub.basis_vectors() {
            let _ = writeln!(out, "{}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
    out
}

pub fn parse_cover(prime: Prime, text: &str) -> Result<NestedTwoCover> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty());
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(text.lines().count() + 1, 1, format!("unexpected end of input, expected {what}")))
    };
    let number = |line: usize, tok: &str| {
        tok.parse::<u64>()
            .map_err(|_| Error::parse(line, 1, format!("expected a nonnegative integer, found `{tok}`")))
    };
    let (ln, head) = next("the header")?;
    if head.len() != 3 || head[0] != "cover" || head[1] != "n" {
        return Err(Error::parse(ln, 1, "expected `cover n <n>`"));
    }
    let n = number(ln, head[2])? as usize;
    let mut parts = Vec::with_capacity(2);
    for name in ["S", "T"] {
        let (ln, h) = next(&format!("the {name} header"))?;
        if h.len() != 3 || h[0] != name || h[1] != "dim" {
            return Err(Error::parse(ln, 1, format!("expected `{name} dim <k>`")));
        }
        let k = number(ln, h[2])? as usize;
        let mut vecs = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, row) = next(&format!("a basis vector of {name}"))?;
            if row.len() != n {
                return Err(Error::parse(ln, 1, format!("expected {n} entries, found {}", row.len())));
            }
            vecs.push(row.iter().map(|t| prime.checked(number(ln, t)?)).collect::<Result<Vec<_>>>()?);
        }
        let sub = Subspace::from_vectors(prime, n, &vecs);
        if sub.dim() != k {
            return Err(Error::parse(ln, 1, format!("{name} basis is linearly dependent")));
        }
        parts.push(sub);
    }
    if let Some((ln, _)) = next("nothing").ok() {
        return Err(Error::parse(ln, 1, "trailing input"));
    }
    let t = parts.pop().expect("two parts");
    let s = parts.pop().expect("two parts");
    Ok(NestedTwoCover { s, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::examples::{double_line, single_line, triangle};
    use crate::instance::{from_graph, random_instance, Graph};

    #[test]
    fn triangle_cover() {
        let t = triangle(Prime::default());
        let c = dominant_two_cover(&t, 1).unwrap();
        assert_eq!((c.s.dim(), c.t.dim()), (0, 3));
        assert!(verify_two_cover(&t, &c).unwrap().is_valid());
    }

    #[test]
    fn complement_first_reading_is_not_nested() {
        // S = complement of U₀, T = 𝒜(U₀): on the triangle U₀ = 0, so S is
        // everything and T is zero
        let t = triangle(Prime::default());
        let u0 = Subspace::zero(t.prime(), 3);
        let swapped = NestedTwoCover {
            s: u0.complement(),
            t: apply_matrix_space(&t, &u0).unwrap(),
        };
        assert!(!verify_two_cover(&t, &swapped).unwrap().nested);
    }

    #[test]
    fn path_cover_has_value_two() {
        let f = Prime::default();
        let p3 = from_graph(f, &Graph::path(3)).unwrap();
        let c = dominant_two_cover(&p3, 4).unwrap();
        let chk = verify_two_cover(&p3, &c).unwrap();
        assert!(chk.is_valid());
        assert_eq!(chk.value_doubled, 2);
        // the middle vertex
        assert_eq!(c.s, Subspace::from_vectors(f, 3, &[vec![Fp::ZERO, Fp::ONE, Fp::ZERO]]));
    }

    #[test]
    fn full_rank_cases() {
        let f = Prime::default();
        for ls in [single_line(f), double_line(f)] {
            let c = dominant_two_cover(&ls, 2).unwrap();
            assert_eq!(c.value_doubled(), 2);
            assert!(verify_two_cover(&ls, &c).unwrap().is_valid());
        }
    }

    #[test]
    fn seed_independent_and_round_trips() {
        let f = Prime::default();
        for s in 0..8 {
            let ls = random_instance(f, 5, 3, s).unwrap();
            let a = dominant_two_cover(&ls, 1).unwrap();
            let b = dominant_two_cover(&ls, 2).unwrap();
            assert_eq!(a, b);
            assert!(verify_two_cover(&ls, &a).unwrap().is_valid());
            assert_eq!(parse_cover(f, &write_cover(&a)).unwrap(), a);
        }
    }

    #[test]
    fn degenerate_point_is_detected() {
        // X_i = x_i E_11 gives M = A(x) ⊗ E_11, of rank 2 instead of 6
        let t = triangle(Prime::default());
        let f = t.prime();
        let xs: Vec<FMatrix> = (1..=3)
            .map(|v| FMatrix::from_i64_rows(f, &[&[v, 0], &[0, 0]]))
            .collect();
        assert_eq!(two_cover_at(&t, &xs), Err(Error::MaxRankNotAttained));
    }

    #[test]
    fn wong_sequence_grows() {
        let f = Prime::default();
        let p3 = from_graph(f, &Graph::path(3)).unwrap();
        let ev = Evaluation::for_instance(&p3, 3);
        let (b, e) = blowup2_factored(&p3, &ev.blowup_points());
        let seq = wong_sequence(&p3, &b.mul(&e).mul(&b.transpose())).unwrap();
        for w in seq.windows(2) {
            assert!(w[1].contains_subspace(&w[0]).unwrap());
            assert!(w[1].dim() > w[0].dim());
        }
    }
}
