//! Text-table benchmark suites.

use std::time::Instant;

use anyhow::Result;
use fracparity::field::{derive_seed, derive_seed_indexed};
use fracparity::instance::{random_instance, random_sparse_instance};
use fracparity::oracle::brute_force;
use fracparity::solve::{solve, Algorithm, SolveReport};
use fracparity::{Error, LineSet, Prime};

const RETRIES: u64 = 3;

/// Runs `alg`, retrying retryable failures with derived seeds.
fn solve_retrying(ls: &LineSet, alg: Algorithm, seed: u64) -> fracparity::Result<SolveReport> {
    let mut last = Error::IterationCap(RETRIES as usize);
    for t in 0..RETRIES {
        match solve(ls, alg, derive_seed_indexed(seed, "retry", t)) {
            Err(e) if e.is_retryable() => last = e,
            other => return other,
        }
    }
    Err(last)
}

/// Wall-clock milliseconds of each solver on growing random instances.
pub fn scaling(seed: u64, max_m: usize) -> Result<bool> {
    let f = Prime::default();
    let algs = [Algorithm::Simple, Algorithm::Sparse, Algorithm::Faster, Algorithm::MaxMatching];
    println!("{:>4} {:>6} {:>12} {:>12} {:>12} {:>12}", "n", "m", "simple", "sparse", "faster", "maxmatch");
    let mut ok = true;
    for n in [8, 16] {
        let mut m = 32;
        while m <= max_m {
            let ls = random_instance(f, n, m, derive_seed_indexed(seed, "scaling", (n * 100_000 + m) as u64))?;
            let mut cells = Vec::new();
            let mut values = Vec::new();
            for alg in algs {
                let t = Instant::now();
                let r = solve_retrying(&ls, alg, seed)?;
                cells.push(format!("{:.2}", t.elapsed().as_secs_f64() * 1e3));
                values.push(r.value_doubled);
            }
            ok &= values.windows(2).all(|w| w[0] == w[1]);
            println!("{n:>4} {m:>6} {:>12} {:>12} {:>12} {:>12}", cells[0], cells[1], cells[2], cells[3]);
            m *= 2;
        }
    }
    println!("times in ms; values agree: {}", if ok { "yes" } else { "no" });
    Ok(ok)
}

/// Every solver against the brute force on small random instances.
pub fn crosscheck(seed: u64, count: usize) -> Result<bool> {
    let f = Prime::default();
    println!(
        "{:>4} {:>3} {:>3} {:>7} {:>7} {:>7} {:>7} {:>8} {:>8}  agree",
        "id", "n", "m", "oracle", "simple", "sparse", "faster", "maxmatch", "lasvegas"
    );
    let mut agreed = 0;
    for k in 0..count as u64 {
        let s = derive_seed_indexed(seed, "crosscheck", k);
        let n = 2 + (s % 7) as usize;
        let m = n.div_ceil(2) + (s / 7 % 4) as usize;
        let support = 2 + (s / 28) as usize % (n - 1);
        let ls = random_sparse_instance(f, n, m, support, derive_seed(s, "instance"))?;
        let o = brute_force(&ls, derive_seed(s, "oracle"))?;
        let mut cells = Vec::new();
        let mut agree = true;
        for alg in Algorithm::ALL {
            match solve_retrying(&ls, alg, s) {
                Ok(r) => {
                    agree &= r.value_doubled == o.optimum_doubled;
                    if alg == Algorithm::Simple {
                        agree &= r.y == o.lex_min_maximizer;
                    }
                    if matches!(alg, Algorithm::Sparse | Algorithm::Faster) {
                        agree &= Some(&r.y) == o.lex_max_parity_base.as_ref();
                    }
                    cells.push(format!("{}/2", r.value_doubled));
                }
                Err(Error::NoParityBase) => {
                    agree &= o.lex_max_parity_base.is_none();
                    cells.push("none".into());
                }
                Err(e) => return Err(e.into()),
            }
        }
        agreed += usize::from(agree);
        println!(
            "{k:>4} {n:>3} {m:>3} {:>7} {:>7} {:>7} {:>7} {:>8} {:>8}  {}",
            format!("{}/2", o.optimum_doubled),
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            cells[4],
            if agree { "yes" } else { "NO" }
        );
    }
    println!("agreement {agreed}/{count}");
    Ok(agreed == count)
}
