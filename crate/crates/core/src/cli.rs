//! The `bdiag` command line.
//!
//! Exit codes: 0 success or feasible, 1 infeasible or no partition, 2 usage
//! or input error, 3 internal diagnostic (the pipeline trace goes to
//! stderr).

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::decompose::{decompose_traced, DecomposeError, DecomposeOptions, Decomposition};
use crate::grid::{check_feasibility, verify_partition, BicoloredGrid, DiagonalPartition};
use crate::oracle::{
    oracle_decompose, random_grid, GridSpec, OracleError, OracleVerdict, DEFAULT_N_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable supplying the default `--seed`.
pub const SEED_ENV: &str = "BDIAG_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "bdiag",
    version,
    about = "Balanced-diagonal partitions of two-colored square arrays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether each color class has a proper set of n cells.
    Check { file: PathBuf },
    /// Build a partition into balanced diagonals, or print a certificate.
    Decompose {
        file: PathBuf,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Write the pipeline trace as JSON to stderr.
        #[arg(long)]
        trace: bool,
        /// Render the grid with diagonal labels instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Run the rectangle stages even when an earlier stage is already
        /// balanced.
        #[arg(long)]
        full: bool,
    },
    /// Check a partition file against a grid.
    Verify { file: PathBuf, partition: PathBuf },
    /// Exhaustive search for a partition.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_N_LIMIT)]
        limit: usize,
        #[arg(long)]
        pretty: bool,
    },
    /// Print a random grid.
    Gen {
        #[arg(long)]
        n: usize,
        /// uniform:P, blue:M, feasible, cross, atleast:M or diagonals:K.
        #[arg(long, default_value = "feasible")]
        spec: String,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
    /// Time decompose over random condition-satisfying grids.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        full: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_grid(path: &Path) -> Result<BicoloredGrid, Failure> {
    read_input(path)?
        .parse()
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "bdiag: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io_fail = |e: io::Error| usage(format!("write failed: {e}"));
    match command {
        Command::Check { file } => {
            let grid = read_grid(&file)?;
            let w = check_feasibility(&grid);
            let verdict = if w.is_feasible() {
                "feasible"
            } else {
                "infeasible"
            };
            writeln!(out, "{verdict}\n{}", json(&w)).map_err(io_fail)?;
            Ok(if w.is_feasible() {
                EXIT_OK
            } else {
                EXIT_INFEASIBLE
            })
        }
        Command::Decompose {
            file,
            seed,
            trace,
            pretty,
            full,
        } => {
            let grid = read_grid(&file)?;
            let opts = DecomposeOptions {
                seed,
                full_construction: full,
                ..DecomposeOptions::default()
            };
            match decompose_traced(&grid, &opts) {
                Ok((d, t)) => {
                    if trace {
                        writeln!(err, "{}", json(&t)).map_err(io_fail)?;
                    }
                    report_decomposition(&grid, &d, pretty, out).map_err(io_fail)
                }
                Err(DecomposeError::Diagnostic { message, trace }) => {
                    writeln!(err, "bdiag: internal error: {message}\n{}", json(&trace))
                        .map_err(io_fail)?;
                    Ok(EXIT_INTERNAL)
                }
                Err(e) => Err(usage(e.to_string())),
            }
        }
        Command::Verify { file, partition } => {
            let grid = read_grid(&file)?;
            let p = DiagonalPartition::from_json(&read_input(&partition)?)
                .map_err(|e| usage(format!("{}: {e}", partition.display())))?;
            let report = verify_partition(&grid, &p);
            write!(out, "{report}").map_err(io_fail)?;
            Ok(if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_INFEASIBLE
            })
        }
        Command::Oracle {
            file,
            limit,
            pretty,
        } => {
            let grid = read_grid(&file)?;
            match oracle_decompose(&grid, limit) {
                Ok(OracleVerdict::Found(p)) => {
                    write_partition(&grid, &p, pretty, out).map_err(io_fail)?;
                    Ok(EXIT_OK)
                }
                Ok(OracleVerdict::NoneExists) => {
                    writeln!(out, "none exists").map_err(io_fail)?;
                    Ok(EXIT_INFEASIBLE)
                }
                Err(e) => Err(usage(e.to_string())),
            }
        }
        Command::Gen { n, spec, seed } => {
            let spec: GridSpec = spec
                .parse()
                .map_err(|e: OracleError| usage(e.to_string()))?;
            let grid = random_grid(n, spec, seed).map_err(|e| usage(e.to_string()))?;
            write!(out, "{grid}").map_err(io_fail)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            n,
            count,
            seed,
            full,
        } => bench(n, count, seed, full, out, err),
    }
}

fn write_partition(
    grid: &BicoloredGrid,
    p: &DiagonalPartition,
    pretty: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    if pretty {
        write!(out, "{}", p.render(grid))
    } else {
        writeln!(out, "{}", p.to_json())
    }
}

fn report_decomposition(
    grid: &BicoloredGrid,
    d: &Decomposition,
    pretty: bool,
    out: &mut dyn Write,
) -> io::Result<i32> {
    match d {
        Decomposition::Partition(p) => {
            write_partition(grid, p, pretty, out)?;
            Ok(EXIT_OK)
        }
        Decomposition::Infeasible(w) => {
            writeln!(out, "infeasible\n{}", json(w))?;
            Ok(EXIT_INFEASIBLE)
        }
        Decomposition::NoneExists => {
            writeln!(out, "none exists")?;
            Ok(EXIT_INFEASIBLE)
        }
    }
}

fn bench(
    n: usize,
    count: usize,
    seed: u64,
    full: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if count == 0 {
        return Err(usage("--count must be positive"));
    }
    let grids: Vec<BicoloredGrid> = (0..count as u64)
        .map(|k| random_grid(n, GridSpec::ConditionSatisfying, seed.wrapping_add(k)))
        .collect::<Result<_, _>>()
        .map_err(|e| usage(e.to_string()))?;
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(count);
    let chunk = count.div_ceil(threads);
    let results: Vec<(f64, Result<bool, String>)> = std::thread::scope(|s| {
        let handles: Vec<_> = grids
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                s.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(k, g)| {
                            let opts = DecomposeOptions {
                                seed: seed.wrapping_add((c * chunk + k) as u64),
                                full_construction: full,
                                ..DecomposeOptions::default()
                            };
                            let start = Instant::now();
                            let r = decompose_traced(g, &opts);
                            let secs = start.elapsed().as_secs_f64();
                            (
                                secs,
                                r.map(|(d, _)| d.partition().is_some())
                                    .map_err(|e| e.to_string()),
                            )
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("bench worker panicked"))
            .collect()
    });
    let mut times: Vec<f64> = results.iter().map(|r| r.0).collect();
    times.sort_by(f64::total_cmp);
    let found = results.iter().filter(|r| matches!(r.1, Ok(true))).count();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.1.as_ref().err()).collect();
    let ms = |x: f64| x * 1e3;
    let write = |out: &mut dyn Write| -> io::Result<()> {
        writeln!(out, "n {n} count {count} seed {seed}")?;
        writeln!(out, "partitions {found} errors {}", failures.len())?;
        writeln!(
            out,
            "ms min {:.3} median {:.3} mean {:.3} max {:.3}",
            ms(times[0]),
            ms(times[count / 2]),
            ms(times.iter().sum::<f64>() / count as f64),
            ms(times[count - 1])
        )
    };
    write(out).map_err(|e| usage(format!("write failed: {e}")))?;
    for f in &failures {
        let _ = writeln!(err, "bdiag: {f}");
    }
    Ok(if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    })
}
