//! Problem instances: lines over GF(p), graphs, and half-integral vectors.

mod io;

use std::cmp::Ordering;
use std::fmt;

use rand::seq::index::sample;

use crate::error::{Error, Result};
use crate::field::{derive_seed, rng_from_seed, Fp, Prime};
use crate::linalg::{FMatrix, Subspace};

pub use io::{
    parse_graph, parse_half_vector, parse_line_set, parse_matrix, write_graph, write_half_vector, write_line_set,
    write_matrix,
};

/// `m` lines in GF(p)^n, line `i` spanned by the columns of `B_i = [a_i b_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSet {
    prime: Prime,
    n: usize,
    lines: Vec<(Vec<Fp>, Vec<Fp>)>,
}

impl LineSet {
    /// Builds an instance, checking vector lengths only. Use [`LineSet::validate`]
    /// for the rank and dimension invariants.
    pub fn new(prime: Prime, n: usize, lines: Vec<(Vec<Fp>, Vec<Fp>)>) -> Result<Self> {
        for (i, (a, b)) in lines.iter().enumerate() {
            if a.len() != n || b.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "line {} has generators of length {} and {}, expected {n}",
                    i + 1,
                    a.len(),
                    b.len()
                )));
            }
        }
        Ok(LineSet { prime, n, lines })
    }

    /// Convenience constructor from signed integer generators.
    pub fn from_i64(prime: Prime, n: usize, lines: &[(&[i64], &[i64])]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| prime.from_i64(x)).collect::<Vec<_>>();
        Self::new(prime, n, lines.iter().map(|(a, b)| (conv(a), conv(b))).collect())
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.lines.len()
    }

    pub fn a(&self, i: usize) -> &[Fp] {
        &self.lines[i].0
    }

    pub fn b(&self, i: usize) -> &[Fp] {
        &self.lines[i].1
    }

    pub fn lines(&self) -> &[(Vec<Fp>, Vec<Fp>)] {
        &self.lines
    }

    /// `B_i` as an `n × 2` matrix.
    pub fn generator(&self, i: usize) -> FMatrix {
        let (a, b) = &self.lines[i];
        FMatrix::from_columns(self.prime, self.n, &[a.clone(), b.clone()])
    }

    /// The line `ℓ_i` as a subspace.
    pub fn line_space(&self, i: usize) -> Subspace {
        Subspace::span(&self.generator(i))
    }

    /// Checks that every line is two-dimensional and that `n <= 2m`.
    pub fn validate(&self) -> Result<()> {
        self.validate_lines()?;
        if self.n > 2 * self.m() {
            return Err(Error::AmbientTooLarge { n: self.n, m: self.m() });
        }
        Ok(())
    }

    /// The rank-two check alone. Reports the first degenerate line, 1-based.
    pub fn validate_lines(&self) -> Result<()> {
        for i in 0..self.m() {
            if self.generator(i).rank() < 2 {
                return Err(Error::DegenerateLine(i + 1));
            }
        }
        Ok(())
    }

    /// Rewrites the instance in coordinates of the span of all lines.
    ///
    /// The span gets its canonical echelon basis; a vector of the span is
    /// determined by its entries at the pivot coordinates, so those entries
    /// are the new coordinates. If the lines span GF(p)^n nothing changes.
    pub fn restrict_to_span(&self) -> LineSet {
        let all: Vec<Vec<Fp>> = self.lines.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let span = Subspace::from_vectors(self.prime, self.n, &all);
        let piv = span.pivots();
        let project = |v: &Vec<Fp>| piv.iter().map(|&p| v[p]).collect::<Vec<_>>();
        LineSet {
            prime: self.prime,
            n: piv.len(),
            lines: self.lines.iter().map(|(a, b)| (project(a), project(b))).collect(),
        }
    }

    /// Appends a copy of line `i`.
    pub fn with_copies(&self, indices: &[usize]) -> LineSet {
        let mut lines = self.lines.clone();
        lines.extend(indices.iter().map(|&i| self.lines[i].clone()));
        LineSet { lines, ..self.clone() }
    }

    /// The sub-instance on the given lines, in the given order.
    pub fn select(&self, indices: &[usize]) -> LineSet {
        LineSet {
            prime: self.prime,
            n: self.n,
            lines: indices.iter().map(|&i| self.lines[i].clone()).collect(),
        }
    }
}

/// A loopless multigraph with vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Rejects loops and out-of-range endpoints. Vertex numbers in errors are 1-based.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::DimensionMismatch(format!(
                    "edge ({}, {}) on {vertices} vertices",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::LoopEdge(u + 1));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn path(k: usize) -> Self {
        Graph::new(k, (1..k).map(|v| (v - 1, v)).collect()).expect("path is loopless")
    }

    pub fn cycle(k: usize) -> Self {
        Graph::new(k, (0..k).map(|v| (v, (v + 1) % k)).collect()).expect("cycle is loopless")
    }
}

/// The line `⟨e_u, e_v⟩` for every edge `{u, v}`.
pub fn from_graph(prime: Prime, g: &Graph) -> Result<LineSet> {
    let n = g.vertices();
    let unit = |k: usize| {
        let mut e = vec![Fp::ZERO; n];
        e[k] = Fp::ONE;
        e
    };
    let mut lines = Vec::with_capacity(g.edges().len());
    for &(u, v) in g.edges() {
        if u == v {
            return Err(Error::LoopEdge(u + 1));
        }
        lines.push((unit(u), unit(v)));
    }
    LineSet::new(prime, n, lines)
}

/// Uniformly random rank-two generators, resampled until nondegenerate.
pub fn random_instance(prime: Prime, n: usize, m: usize, seed: u64) -> Result<LineSet> {
    random_sparse_instance(prime, n, m, n, seed)
}

/// Like [`random_instance`], but each line lives on `support` random
/// coordinates. Small supports give graph-like instances whose optima are
/// often genuinely half-integral.
pub fn random_sparse_instance(prime: Prime, n: usize, m: usize, support: usize, seed: u64) -> Result<LineSet> {
    if n < 2 || support < 2 || support > n {
        return Err(Error::DimensionMismatch(format!(
            "random lines need 2 <= support <= n, got support {support}, n {n}"
        )));
    }
    if n > 2 * m {
        return Err(Error::AmbientTooLarge { n, m });
    }
    let mut rng = rng_from_seed(derive_seed(seed, "instance"));
    let mut lines = Vec::with_capacity(m);
    while lines.len() < m {
        let coords = sample(&mut rng, n, support).into_vec();
        let mut a = vec![Fp::ZERO; n];
        let mut b = vec![Fp::ZERO; n];
        for &c in &coords {
            a[c] = prime.sample(&mut rng);
            b[c] = prime.sample(&mut rng);
        }
        let g = FMatrix::from_columns(prime, n, &[a.clone(), b.clone()]);
        if g.rank() == 2 {
            lines.push((a, b));
        }
    }
    LineSet::new(prime, n, lines)
}

/// A point of `{0, ½, 1}^m` stored as doubled values in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfVector {
    doubled: Vec<u8>,
}

impl HalfVector {
    pub fn new(doubled: Vec<u8>) -> Result<Self> {
        if let Some(i) = doubled.iter().position(|&d| d > 2) {
            return Err(Error::InvalidHalfValue {
                index: i + 1,
                value: u64::from(doubled[i]),
            });
        }
        Ok(HalfVector { doubled })
    }

    pub fn zeros(m: usize) -> Self {
        HalfVector { doubled: vec![0; m] }
    }

    pub fn ones(m: usize) -> Self {
        HalfVector { doubled: vec![2; m] }
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    pub fn doubled(&self) -> &[u8] {
        &self.doubled
    }

    pub fn get(&self, i: usize) -> u8 {
        self.doubled[i]
    }

    pub fn set(&mut self, i: usize, d: u8) {
        assert!(d <= 2, "doubled value {d} out of range");
        self.doubled[i] = d;
    }

    /// `2 |y|`.
    pub fn value_doubled(&self) -> usize {
        self.doubled.iter().map(|&d| usize::from(d)).sum()
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &HalfVector) -> bool {
        self.len() == other.len() && self.doubled.iter().zip(&other.doubled).all(|(a, b)| a <= b)
    }

    /// Lexicographic comparison over coordinates in instance order.
    pub fn lex_cmp(&self, other: &HalfVector) -> Ordering {
        self.doubled.cmp(&other.doubled)
    }

    pub fn truncated(&self, m: usize) -> HalfVector {
        HalfVector {
            doubled: self.doubled[..m].to_vec(),
        }
    }

    /// Every vector of `{0, ½, 1}^m` in lexicographic order.
    pub fn all(m: usize) -> impl Iterator<Item = HalfVector> {
        let total = 3usize.pow(m as u32);
        (0..total).map(move |mut k| {
            let mut d = vec![0u8; m];
            for slot in d.iter_mut().rev() {
                *slot = (k % 3) as u8;
                k /= 3;
            }
            HalfVector { doubled: d }
        })
    }
}

impl fmt::Display for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .doubled
            .iter()
            .map(|d| match d {
                0 => "0",
                1 => "1/2",
                _ => "1",
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Test instances used throughout the crate.
pub mod examples {
    use super::*;

    /// The triangle `C_3` as three lines in GF(p)³.
    pub fn triangle(prime: Prime) -> LineSet {
        from_graph(prime, &Graph::cycle(3)).expect("triangle is loopless")
    }

    /// One line spanning GF(p)².
    pub fn single_line(prime: Prime) -> LineSet {
        LineSet::from_i64(prime, 2, &[(&[1, 0], &[0, 1])]).expect("well formed")
    }

    /// Two copies of the line spanning GF(p)².
    pub fn double_line(prime: Prime) -> LineSet {
        LineSet::from_i64(prime, 2, &[(&[1, 0], &[0, 1]), (&[1, 0], &[0, 1])]).expect("well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn validate_examples() {
        let f = Prime::new(7).unwrap();
        assert!(single_line(f).validate().is_ok());
        let bad = LineSet::from_i64(f, 2, &[(&[1, 3], &[2, 6])]).unwrap();
        assert_eq!(bad.validate(), Err(Error::DegenerateLine(1)));
        assert!(triangle(Prime::default()).validate().is_ok());
        let wide = LineSet::from_i64(f, 3, &[(&[1, 0, 0], &[0, 1, 0])]).unwrap();
        assert_eq!(wide.validate(), Err(Error::AmbientTooLarge { n: 3, m: 1 }));
    }

    #[test]
    fn graph_lines() {
        let f = Prime::default();
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let ls = from_graph(f, &g).unwrap();
        assert_eq!((ls.n(), ls.m()), (2, 1));
        assert_eq!(ls, single_line(f));
        let t = triangle(f);
        assert_eq!(t.m(), 3);
        assert_eq!(Graph::new(2, vec![(1, 1)]), Err(Error::LoopEdge(2)));
    }

    #[test]
    fn restrict_keeps_full_span_and_shrinks_small_span() {
        let f = Prime::default();
        let t = triangle(f);
        assert_eq!(t.restrict_to_span(), t);
        let one = LineSet::from_i64(f, 5, &[(&[1, 2, 0, 0, 1], &[0, 1, 1, 0, 0])]).unwrap();
        let r = one.restrict_to_span();
        assert_eq!(r.n(), 2);
        assert!(r.validate().is_ok());
    }

    #[test]
    fn random_instances_are_deterministic_and_valid() {
        let f = Prime::default();
        assert_eq!(random_instance(f, 4, 3, 9).unwrap(), random_instance(f, 4, 3, 9).unwrap());
        assert_ne!(random_instance(f, 4, 3, 9).unwrap(), random_instance(f, 4, 3, 10).unwrap());
        for s in 0..100 {
            assert!(random_instance(f, 4, 3, s).unwrap().validate().is_ok());
        }
        let small = Prime::new(3).unwrap();
        for s in 0..20 {
            assert!(random_sparse_instance(small, 5, 4, 2, s).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn half_vector_basics() {
        let y = HalfVector::new(vec![2, 1, 0]).unwrap();
        assert_eq!(y.value_doubled(), 3);
        assert_eq!(y.to_string(), "(1, 1/2, 0)");
        assert!(HalfVector::zeros(3).le(&y));
        assert!(!y.le(&HalfVector::zeros(3)));
        assert!(HalfVector::new(vec![3]).is_err());
        let all: Vec<_> = HalfVector::all(2).collect();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0].lex_cmp(&w[1]) == Ordering::Less));
    }
}
