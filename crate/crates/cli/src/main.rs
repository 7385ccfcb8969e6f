//! `fracparity`: generate instances, solve, extract dual covers, verify
//! certificates and run benchmark suites.
//!
//! Exit codes: 0 on success, 1 on errors and failed certification, 2 on bad
//! usage, 3 on retryable Monte Carlo failures (rerun with another seed).

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fracparity::dual::{dominant_two_cover, parse_cover, verify_two_cover, write_cover};
use fracparity::field::{derive_seed, DEFAULT_PRIME};
use fracparity::instance::{
    from_graph, parse_graph, parse_half_vector, parse_line_set, random_instance, write_half_vector, write_line_set,
};
use fracparity::oracle::{brute_force, is_feasible, write_oracle_report};
use fracparity::solve::{las_vegas_solve, solve, Algorithm};
use fracparity::{LineSet, Prime};

#[derive(Parser)]
#[command(name = "fracparity", version, about = "Fractional linear matroid parity solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file
    Gen {
        #[command(subcommand)]
        source: GenSource,
    },
    /// Solve an instance and print the solution vector
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        alg: Alg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the solution here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// With `--alg lasvegas`, also write the certifying cover here
        #[arg(long)]
        cover_out: Option<PathBuf>,
    },
    /// Compute the dominant nested 2-cover
    Dual {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a solution and a cover against each other
    Verify {
        file: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive reference answers for small instances
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Timing and agreement tables
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of lines in the scaling suite
        #[arg(long, default_value_t = 256)]
        max_m: usize,
        /// Instances in the crosscheck suite
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum GenSource {
    /// Uniformly random lines
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One line per edge of a graph file
    Graph {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Simple,
    Sparse,
    Faster,
    Maxmatch,
    Lasvegas,
}

impl From<Alg> for Algorithm {
    fn from(a: Alg) -> Self {
        match a {
            Alg::Simple => Algorithm::Simple,
            Alg::Sparse => Algorithm::Sparse,
            Alg::Faster => Algorithm::Faster,
            Alg::Maxmatch => Algorithm::MaxMatching,
            Alg::Lasvegas => Algorithm::LasVegas,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Scaling,
    Crosscheck,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_instance(path: &Path) -> Result<LineSet> {
    let ls = parse_line_set(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    ls.validate()?;
    Ok(ls)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn half(doubled: usize) -> String {
    format!("{doubled}/2")
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { source } => match source {
            GenSource::Random {
                n,
                m,
                seed,
                prime,
                output,
            } => {
                let ls = random_instance(Prime::new(prime)?, n, m, seed)?;
                emit(output.as_deref(), &write_line_set(&ls))?;
            }
            GenSource::Graph { file, prime, output } => {
                let g = parse_graph(&read(&file)?).with_context(|| format!("parsing {}", file.display()))?;
                let ls = from_graph(Prime::new(prime)?, &g)?;
                emit(output.as_deref(), &write_line_set(&ls))?;
            }
        },
        Command::Solve {
            file,
            alg,
            seed,
            output,
            cover_out,
        } => {
            let ls = read_instance(&file)?;
            let alg = Algorithm::from(alg);
            let report = if alg == Algorithm::LasVegas {
                let lv = las_vegas_solve(&ls, seed)?;
                if let Some(p) = &cover_out {
                    emit(Some(p), &write_cover(&lv.cover))?;
                }
                lv.report
            } else {
                if cover_out.is_some() {
                    bail!("--cover-out needs --alg lasvegas");
                }
                solve(&ls, alg, seed)?
            };
            eprintln!(
                "{}: value {}, {} rank queries, {:.3} ms",
                report.algorithm,
                half(report.value_doubled),
                report.rank_queries,
                report.elapsed.as_secs_f64() * 1e3
            );
            emit(output.as_deref(), &write_half_vector(&report.y))?;
        }
        Command::Dual { file, seed, output } => {
            let ls = read_instance(&file)?;
            emit(output.as_deref(), &write_cover(&dominant_two_cover(&ls, seed)?))?;
        }
        Command::Verify {
            file,
            solution,
            cover,
            seed,
        } => {
            let ls = read_instance(&file)?;
            let y = parse_half_vector(&read(&solution)?).with_context(|| format!("parsing {}", solution.display()))?;
            let c = parse_cover(ls.prime(), &read(&cover)?).with_context(|| format!("parsing {}", cover.display()))?;
            if y.len() != ls.m() {
                bail!("solution has {} entries, instance has {} lines", y.len(), ls.m());
            }
            let feasible = is_feasible(&ls, &y, derive_seed(seed, "verify"));
            let chk = verify_two_cover(&ls, &c)?;
            let yes = |b: bool| if b { "yes" } else { "no" };
            println!("solution {} feasible {}", half(y.value_doubled()), yes(feasible));
            println!(
                "cover nested {} covering {} value {}",
                yes(chk.nested),
                yes(chk.uncovered.is_empty()),
                half(chk.value_doubled)
            );
            let pass = feasible && chk.is_valid() && chk.value_doubled == y.value_doubled();
            println!("certification {}", if pass { "PASS" } else { "FAIL" });
            if !pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Oracle { file, seed, output } => {
            let ls = read_instance(&file)?;
            emit(output.as_deref(), &write_oracle_report(&brute_force(&ls, seed)?))?;
        }
        Command::Bench {
            suite,
            seed,
            max_m,
            count,
        } => {
            let ok = match suite {
                Suite::Scaling => bench::scaling(seed, max_m)?,
                Suite::Crosscheck => bench::crosscheck(seed, count)?,
            };
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let retryable = e
        .chain()
        .filter_map(|c| c.downcast_ref::<fracparity::Error>())
        .any(|fe| fe.is_retryable());
    if retryable {
        3
    } else {
        1
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn retryable_errors_exit_3() {
        let e = anyhow::Error::new(fracparity::Error::MonteCarloFailure("test".into())).context("solving");
        assert_eq!(exit_code(&e), 3);
        let e = anyhow::Error::new(fracparity::Error::MaxRankNotAttained);
        assert_eq!(exit_code(&e), 3);
        let e = anyhow::Error::new(fracparity::Error::NoParityBase);
        assert_eq!(exit_code(&e), 1);
        assert_eq!(exit_code(&anyhow::anyhow!("plain")), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
