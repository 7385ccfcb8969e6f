//! Exhaustive reference answers for small instances.
//!
//! The brute force never touches the solvers: it enumerates every
//! half-integral vector and certifies feasibility directly from `B(z)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{derive_seed_indexed, rng_from_seed, Fp};
use crate::instance::{Graph, HalfVector, LineSet};
use crate::linalg::FMatrix;
use crate::repr::{b_matrix, blowup2_eval, lovasz_eval, sparse_eval, Evaluation};

/// Largest `m` for the 3^m enumeration.
pub const BRUTE_FORCE_CAP: usize = 10;
/// Largest `m` for the 2^m integral enumeration.
pub const INTEGRAL_CAP: usize = 16;

const EVALUATIONS: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Twice the optimum of the fractional problem.
    pub optimum_doubled: usize,
    pub lex_min_maximizer: HalfVector,
    /// Present iff `optimum_doubled == n`.
    pub lex_max_parity_base: Option<HalfVector>,
    pub max_integral_matching: usize,
}

/// `z` is feasible if `B(z)` has full column rank under one of three
/// evaluations derived from `seed`. Full rank is a proof; rank deficiency in all of them is a
/// miss with probability below `(4mn/p)^3`.
pub fn is_feasible(ls: &LineSet, z: &HalfVector, seed: u64) -> bool {
    if z.value_doubled() > ls.n() {
        return false;
    }
    (0..EVALUATIONS).any(|t| {
        let ev = Evaluation::for_instance(ls, derive_seed_indexed(seed, "oracle", t));
        let b = b_matrix(ls, z, &ev);
        b.rank() == b.cols()
    })
}

pub fn brute_force(ls: &LineSet, seed: u64) -> Result<OracleReport> {
    ls.validate_lines()?;
    if ls.m() > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            what: "lines for the brute force",
            value: ls.m(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    let m = ls.m();
    let mut best = 0;
    let mut lex_min = HalfVector::zeros(m);
    let mut lex_max: Option<HalfVector> = None;
    for z in HalfVector::all(m) {
        let v = z.value_doubled();
        if v < best || !is_feasible(ls, &z, seed) {
            continue;
        }
        if v > best {
            best = v;
            lex_min = z.clone();
        } else if z.lex_cmp(&lex_min).is_lt() {
            lex_min = z.clone();
        }
        if v == ls.n() && lex_max.as_ref().map_or(true, |w| z.lex_cmp(w).is_gt()) {
            lex_max = Some(z);
        }
    }
    Ok(OracleReport {
        optimum_doubled: best,
        lex_min_maximizer: lex_min,
        lex_max_parity_base: lex_max,
        max_integral_matching: brute_force_integral(ls)?,
    })
}

/// Largest number of lines whose union has dimension twice their count.
pub fn brute_force_integral(ls: &LineSet) -> Result<usize> {
    let m = ls.m();
    if m > INTEGRAL_CAP {
        return Err(Error::TooLarge {
            what: "lines for the integral brute force",
            value: m,
            cap: INTEGRAL_CAP,
        });
    }
    let f = ls.prime();
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as usize;
        if k <= best || 2 * k > ls.n() {
            continue;
        }
        let cols: Vec<Vec<Fp>> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| [ls.a(i).to_vec(), ls.b(i).to_vec()])
            .collect();
        if FMatrix::from_columns(f, ls.n(), &cols).rank() == 2 * k {
            best = k;
        }
    }
    Ok(best)
}

/// Maximum matching in the bipartite double cover of `g`, which equals twice
/// the fractional matching number of `g`.
pub fn double_cover_fractional_matching(g: &Graph) -> usize {
    let v = g.vertices();
    let mut adj = vec![Vec::new(); v];
    for &(a, b) in g.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut mate: Vec<Option<usize>> = vec![None; v];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                if mate[w].map_or(true, |x| augment(x, adj, seen, mate)) {
                    mate[w] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    (0..v)
        .filter(|&u| augment(u, &adj, &mut vec![false; v], &mut mate))
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankChecks {
    pub lovasz_rank: usize,
    pub sparse_rank: usize,
    pub blowup_rank: usize,
    pub integral: usize,
    pub violations: Vec<String>,
}

impl RankChecks {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares evaluated ranks with the brute-force integral optimum:
/// `rank A = 2ν`, `rank` of the sparse form `= 2ν + 2m`, and
/// `rank A ≤ rank A^{2} / 2 ≤ 2 rank A`.
pub fn rank_checks(ls: &LineSet, seed: u64) -> Result<RankChecks> {
    ls.validate_lines()?;
    let f = ls.prime();
    let m = ls.m();
    let mut rng = rng_from_seed(seed);
    let x: Vec<Fp> = (0..m).map(|_| f.sample_nonzero(&mut rng)).collect();
    let xs: Vec<FMatrix> = (0..m).map(|_| FMatrix::random(f, 2, 2, &mut rng)).collect();
    let lovasz_rank = lovasz_eval(ls, &x).rank();
    let inv: Vec<Fp> = x.iter().map(|&v| f.inv(v).expect("nonzero")).collect();
    let sparse_rank = sparse_eval(ls, &inv).rank();
    let blowup_rank = blowup2_eval(ls, &xs).rank();
    let integral = brute_force_integral(ls)?;
    let mut violations = Vec::new();
    if lovasz_rank != 2 * integral {
        violations.push(format!("rank A = {lovasz_rank}, expected {}", 2 * integral));
    }
    if sparse_rank != 2 * integral + 2 * m {
        violations.push(format!("sparse rank = {sparse_rank}, expected {}", 2 * integral + 2 * m));
    }
    if lovasz_rank > blowup_rank / 2 || blowup_rank / 2 > 2 * lovasz_rank {
        violations.push(format!("blow-up rank {blowup_rank} outside [2·{lovasz_rank}, 4·{lovasz_rank}]"));
    }
    Ok(RankChecks {
        lovasz_rank,
        sparse_rank,
        blowup_rank,
        integral,
        violations,
    })
}

/// Connected simple graphs on `2..=max_vertices` labelled vertices with at
/// most `max_edges` edges.
pub fn connected_graphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for v in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            let k = mask.count_ones() as usize;
            if k + 1 < v || k > max_edges {
                continue;
            }
            let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            if is_connected(v, &edges) {
                out.push(Graph::new(v, edges).expect("no loops"));
            }
        }
    }
    out
}

fn is_connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut root: Vec<usize> = (0..v).collect();
    fn find(r: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while r[x] != x {
            r[x] = r[r[x]];
            x = r[x];
        }
        x
    }
    let mut parts = v;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        if ra != rb {
            root[ra] = rb;
            parts -= 1;
        }
    }
    parts == 1
}

fn doubled_row(y: &HalfVector) -> String {
    y.doubled().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

/// Vectors are written doubled, as in the solution format.
pub fn write_oracle_report(r: &OracleReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "optimum {}/2", r.optimum_doubled);
    let _ = writeln!(out, "lexmin {}", doubled_row(&r.lex_min_maximizer));
    match &r.lex_max_parity_base {
        Some(y) => {
            let _ = writeln!(out, "paritybase {}", doubled_row(y));
        }
        None => out.push_str("paritybase none\n"),
    }
    let _ = writeln!(out, "integral {}", r.max_integral_matching);
    out
}

pub fn parse_oracle_report(text: &str) -> Result<OracleReport> {
    let rows: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let find = |key: &str| {
        rows.iter()
            .find(|(_, t)| t[0] == key)
            .ok_or_else(|| Error::parse(1, 1, format!("missing `{key}` line")))
    };
    let vector = |(ln, t): &(usize, Vec<&str>)| -> Result<HalfVector> {
        let d = t[1..]
            .iter()
            .map(|s| s.parse::<u8>().map_err(|_| Error::parse(*ln, 1, format!("bad entry `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        HalfVector::new(d)
    };
    let (ln, opt) = find("optimum")?;
    let optimum_doubled = opt
        .get(1)
        .and_then(|s| s.strip_suffix("/2"))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(*ln, 1, "expected `optimum <k>/2`"))?;
    let lex_min_maximizer = vector(find("lexmin")?)?;
    let pb = find("paritybase")?;
    let lex_max_parity_base = if pb.1.get(1) == Some(&"none") { None } else { Some(vector(pb)?) };
    let (ln, int) = find("integral")?;
    let max_integral_matching = int
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(*ln, 1, "expected `integral <k>`"))?;
    Ok(OracleReport {
        optimum_doubled,
        lex_min_maximizer,
        lex_max_parity_base,
        max_integral_matching,
    })
}
