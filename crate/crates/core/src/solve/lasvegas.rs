use std::time::Instant;

use crate::dual::{dominant_two_cover, verify_two_cover, NestedTwoCover};
use crate::error::{Error, Result};
use crate::field::{derive_seed, derive_seed_indexed};
use crate::instance::LineSet;
use crate::repr::{b_matrix, Evaluation};

use super::parity::max_matching_solve;
use super::{Algorithm, SolveReport};

pub const LAS_VEGAS_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct LasVegasReport {
    pub report: SolveReport,
    pub cover: NestedTwoCover,
    pub iterations: usize,
}

/// Repeats the max-matching solver and the dual cover with fresh randomness
/// until they certify each other: `2|y| = dim S + dim T`, the cover is
/// valid, and `B(y)` has full column rank (so `y` is feasible). The answer
/// is then optimal regardless of the random draws.
pub fn las_vegas_solve(ls: &LineSet, seed: u64) -> Result<LasVegasReport> {
    let start = Instant::now();
    ls.validate_lines()?;
    ls.prime().check_instance_size(ls.n(), ls.m())?;
    let mut queries = 0;
    for t in 0..LAS_VEGAS_CAP {
        let s = derive_seed_indexed(seed, "lasvegas", t as u64);
        let attempt = max_matching_solve(ls, derive_seed(s, "primal"))
            .and_then(|rep| dominant_two_cover(ls, derive_seed(s, "dual")).map(|c| (rep, c)));
        let (rep, cover) = match attempt {
            Ok(x) => x,
            Err(e) if e.is_retryable() => continue,
            Err(e) => return Err(e),
        };
        queries += rep.rank_queries;
        let check = verify_two_cover(ls, &cover)?;
        if !check.is_valid() || check.value_doubled != rep.value_doubled {
            continue;
        }
        let ev = Evaluation::for_instance(ls, derive_seed(s, "certificate"));
        let b = b_matrix(ls, &rep.y, &ev);
        if b.rank() != b.cols() {
            continue;
        }
        return Ok(LasVegasReport {
            report: SolveReport {
                algorithm: Algorithm::LasVegas,
                seed,
                rank_queries: queries,
                elapsed: start.elapsed(),
                ..rep
            },
            cover,
            iterations: t + 1,
        });
    }
    Err(Error::IterationCap(LAS_VEGAS_CAP))
}
