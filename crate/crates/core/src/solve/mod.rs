//! Solvers for the fractional linear matroid parity problem.
//!
//! All solvers are Monte Carlo over a random [`Evaluation`](crate::Evaluation)
//! drawn from the given seed, except [`las_vegas_solve`], which certifies its
//! answer with a dual cover.

mod engine;
mod lasvegas;
mod parity;
mod simple;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::instance::HalfVector;

pub use engine::RhoEngine;
pub use lasvegas::{las_vegas_solve, LasVegasReport, LAS_VEGAS_CAP};
pub use parity::{
    build_fractional_parity_base, faster_solve, max_matching_solve, padded_instance, sparse_solve,
};
pub use simple::{simple_solve, simple_solve_confirmed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Simple,
    Sparse,
    Faster,
    MaxMatching,
    LasVegas,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Simple,
        Algorithm::Sparse,
        Algorithm::Faster,
        Algorithm::MaxMatching,
        Algorithm::LasVegas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Simple => "simple",
            Algorithm::Sparse => "sparse",
            Algorithm::Faster => "faster",
            Algorithm::MaxMatching => "maxmatch",
            Algorithm::LasVegas => "lasvegas",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub y: HalfVector,
    /// `2|y|`.
    pub value_doubled: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Rank or nonsingularity tests performed.
    pub rank_queries: usize,
    pub elapsed: Duration,
}

/// Runs `alg` on `ls`.
pub fn solve(ls: &crate::LineSet, alg: Algorithm, seed: u64) -> crate::Result<SolveReport> {
    match alg {
        Algorithm::Simple => simple_solve(ls, seed),
        Algorithm::Sparse => sparse_solve(ls, seed),
        Algorithm::Faster => faster_solve(ls, seed),
        Algorithm::MaxMatching => max_matching_solve(ls, seed),
        Algorithm::LasVegas => las_vegas_solve(ls, seed).map(|r| r.report),
    }
}
