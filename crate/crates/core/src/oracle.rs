//! Ground truth for small orders: exhaustive search for a balanced
//! partition, exhaustive sweeps over all colorings, and seeded instance
//! generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::grid::{
    check_feasibility, BicoloredGrid, Cell, Color, Cross, DiagonalPartition, FeasibilityWitness,
    GridError,
};

/// Largest order the exhaustive search accepts unless told otherwise.
pub const DEFAULT_N_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {n} exceeds the exhaustive-search limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("cannot sweep all colorings of order {0}; at most 4 is supported")]
    SweepTooLarge(usize),
    #[error("unsatisfiable generator request: {0}")]
    Unsatisfiable(String),
    #[error("bad generator spec {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Found(DiagonalPartition),
    /// The search space was exhausted.
    NoneExists,
}

impl OracleVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self, OracleVerdict::Found(_))
    }
}

/// Exhaustive search for a balanced partition.
///
/// Builds a Latin square row by row, each symbol class being one diagonal,
/// with the first row fixed to the identity (symbols are interchangeable).
/// A symbol class that can no longer reach one of the colors in the rows
/// still to be filled is cut.
pub fn oracle_decompose(
    grid: &BicoloredGrid,
    n_limit: usize,
) -> Result<OracleVerdict, OracleError> {
    search(grid, n_limit, true)
}

/// [`oracle_decompose`] without the reachability cut; balance is only
/// checked on complete squares.
pub fn oracle_decompose_unpruned(
    grid: &BicoloredGrid,
    n_limit: usize,
) -> Result<OracleVerdict, OracleError> {
    search(grid, n_limit, false)
}

fn search(grid: &BicoloredGrid, n_limit: usize, prune: bool) -> Result<OracleVerdict, OracleError> {
    let n = grid.n();
    if n > n_limit {
        return Err(OracleError::TooLarge { n, limit: n_limit });
    }
    let mut s = OracleSearch::new(grid, prune);
    for c in 0..n {
        s.place(0, c, c);
    }
    if s.row_done(0) && s.fill(1, 0) {
        let mut cells = vec![Vec::with_capacity(n); n];
        for r in 0..n {
            for c in 0..n {
                cells[s.symbol[r * n + c]].push(Cell::new(r, c));
            }
        }
        Ok(OracleVerdict::Found(DiagonalPartition::from_raw(n, cells)))
    } else {
        Ok(OracleVerdict::NoneExists)
    }
}

struct OracleSearch {
    n: usize,
    prune: bool,
    /// Column masks of each color per row: `by_color[color][row]`.
    by_color: [Vec<u64>; 2],
    symbol: Vec<usize>,
    col_mask: Vec<u64>,
    row_mask: u64,
    hits: [Vec<u32>; 2],
}

impl OracleSearch {
    fn new(grid: &BicoloredGrid, prune: bool) -> Self {
        let n = grid.n();
        let mask_of = |color: Color| -> Vec<u64> {
            (0..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| grid.get(r, c) == color)
                        .fold(0u64, |m, c| m | 1 << c)
                })
                .collect()
        };
        OracleSearch {
            n,
            prune,
            by_color: [mask_of(Color::Blue), mask_of(Color::Red)],
            symbol: vec![usize::MAX; n * n],
            col_mask: vec![0; n],
            row_mask: 0,
            hits: [vec![0; n], vec![0; n]],
        }
    }

    fn color_index(&self, r: usize, c: usize) -> usize {
        if self.by_color[0][r] >> c & 1 == 1 {
            0
        } else {
            1
        }
    }

    fn place(&mut self, r: usize, c: usize, sym: usize) {
        self.symbol[r * self.n + c] = sym;
        self.col_mask[sym] |= 1 << c;
        self.row_mask |= 1 << sym;
        let k = self.color_index(r, c);
        self.hits[k][sym] += 1;
    }

    fn unplace(&mut self, r: usize, c: usize, sym: usize) {
        self.symbol[r * self.n + c] = usize::MAX;
        self.col_mask[sym] &= !(1 << c);
        self.row_mask &= !(1 << sym);
        let k = self.color_index(r, c);
        self.hits[k][sym] -= 1;
    }

    /// Can `sym` still pick up every color it lacks in rows after `r`?
    fn reachable(&self, sym: usize, r: usize) -> bool {
        (0..2).all(|k| {
            self.hits[k][sym] > 0
                || (r + 1..self.n).any(|rr| self.by_color[k][rr] & !self.col_mask[sym] != 0)
        })
    }

    /// Called when row `r` is complete.
    fn row_done(&mut self, r: usize) -> bool {
        self.row_mask = 0;
        if r + 1 == self.n {
            return (0..self.n).all(|s| self.hits[0][s] > 0 && self.hits[1][s] > 0);
        }
        !self.prune || (0..self.n).all(|s| self.reachable(s, r))
    }

    fn fill(&mut self, r: usize, c: usize) -> bool {
        let n = self.n;
        if r == n {
            return true;
        }
        for sym in 0..n {
            if self.row_mask >> sym & 1 == 1 || self.col_mask[sym] >> c & 1 == 1 {
                continue;
            }
            self.place(r, c, sym);
            if !self.prune || self.reachable(sym, r) {
                let done = if c + 1 == n {
                    let saved = self.row_mask;
                    let ok = self.row_done(r) && self.fill(r + 1, 0);
                    self.row_mask = saved;
                    ok
                } else {
                    self.fill(r, c + 1)
                };
                if done {
                    return true;
                }
            }
            self.unplace(r, c, sym);
        }
        false
    }
}

/// One coloring of a sweep: the blue bitmask (bit `row * n + col`), the
/// oracle verdict and the feasibility certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub mask: u64,
    pub found: bool,
    pub certificate: FeasibilityWitness,
}

impl SweepRecord {
    pub fn grid(&self) -> BicoloredGrid {
        BicoloredGrid::from_blue_mask(self.n, self.mask).expect("sweep orders fit a mask")
    }

    /// A single JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "n": self.n,
            "mask": self.mask,
            "verdict": if self.found { "found" } else { "none" },
            "certificate": self.certificate,
        })
        .to_string()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub colorings: u64,
    pub oracle_found: u64,
    pub condition_holds: u64,
    /// Oracle found a partition but the condition fails.
    pub counterexamples: Vec<SweepRecord>,
    /// Condition holds but no partition exists.
    pub frontier: Vec<SweepRecord>,
}

impl SweepReport {
    /// Combines reports over disjoint mask ranges.
    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        self.n = self.n.max(other.n);
        self.colorings += other.colorings;
        self.oracle_found += other.oracle_found;
        self.condition_holds += other.condition_holds;
        self.counterexamples.extend(other.counterexamples);
        self.frontier.extend(other.frontier);
        self.counterexamples.sort_by_key(|r| r.mask);
        self.frontier.sort_by_key(|r| r.mask);
        self
    }

    fn add(&mut self, grid: &BicoloredGrid, mask: u64) {
        let found = oracle_decompose(grid, DEFAULT_N_LIMIT)
            .expect("sweep orders are small")
            .is_found();
        let certificate = check_feasibility(grid);
        let feasible = certificate.is_feasible();
        self.colorings += 1;
        self.oracle_found += found as u64;
        self.condition_holds += feasible as u64;
        let record = || SweepRecord {
            n: grid.n(),
            mask,
            found,
            certificate: certificate.clone(),
        };
        if found && !feasible {
            self.counterexamples.push(record());
        }
        if feasible && !found {
            self.frontier.push(record());
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} colorings={} partition_exists={} condition_holds={} counterexamples={} frontier={}",
            self.n,
            self.colorings,
            self.oracle_found,
            self.condition_holds,
            self.counterexamples.len(),
            self.frontier.len()
        )
    }
}

/// Runs the oracle and the feasibility check on all `2^(n^2)` colorings,
/// split across the available cores.
pub fn exhaustive_necessity_sweep(n: usize) -> Result<SweepReport, OracleError> {
    if n == 0 || n > 4 {
        return Err(OracleError::SweepTooLarge(n));
    }
    let total = 1u64 << (n * n);
    let workers = std::thread::available_parallelism()
        .map(|w| w.get())
        .unwrap_or(1)
        .min(total as usize) as u64;
    let chunk = total.div_ceil(workers);
    let report = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut part = SweepReport {
                        n,
                        ..Default::default()
                    };
                    for mask in w * chunk..((w + 1) * chunk).min(total) {
                        let grid = BicoloredGrid::from_blue_mask(n, mask).unwrap();
                        part.add(&grid, mask);
                    }
                    part
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .fold(
                SweepReport {
                    n,
                    ..Default::default()
                },
                SweepReport::merge,
            )
    });
    Ok(report)
}

/// Sampled variant of the sweep for orders too large to enumerate. The blue
/// count is drawn uniformly from `n..=n*n - n` and the blue cells uniformly
/// among sets of that size, so sparse colorings near the condition's
/// boundary are common.
pub fn sampled_sweep(n: usize, samples: usize, seed: u64) -> Result<SweepReport, OracleError> {
    if n > DEFAULT_N_LIMIT {
        return Err(OracleError::TooLarge {
            n,
            limit: DEFAULT_N_LIMIT,
        });
    }
    let mut report = SweepReport {
        n,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = n * n;
    for _ in 0..samples {
        let m = rng.random_range(n.min(cells)..=cells - n);
        let grid = BicoloredGrid::from_blue_cells(
            n,
            index::sample(&mut rng, cells, m)
                .into_iter()
                .map(|k| Cell::new(k / n, k % n)),
        )?;
        let mask = grid.blue_mask().unwrap_or(0);
        report.add(&grid, mask);
    }
    Ok(report)
}

/// Instance families for [`random_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    /// Each cell blue with probability `p`.
    Uniform(f64),
    /// Exactly `m` blue cells.
    ExactBlue(usize),
    /// Uniform `p = 1/2` colorings, resampled until both color classes
    /// contain a proper set of `n` cells.
    ConditionSatisfying,
    /// Blue is exactly one cross, everything else red.
    CrossCounterexample,
    /// At least `m` cells of each color; the remaining cells are fair coins.
    AtLeastEach(usize),
    /// Blue is the union of `k` disjoint diagonals.
    DiagonalUnion(usize),
}

impl FromStr for GridSpec {
    type Err = OracleError;

    /// `uniform:P`, `blue:M`, `feasible`, `cross`, `atleast:M`, `diagonals:K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OracleError::BadSpec(s.to_string());
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let int = |a: Option<&str>| a.and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad);
        match name {
            "uniform" => {
                let p: f64 = arg.and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                Ok(GridSpec::Uniform(p))
            }
            "blue" => Ok(GridSpec::ExactBlue(int(arg)?)),
            "feasible" if arg.is_none() => Ok(GridSpec::ConditionSatisfying),
            "cross" if arg.is_none() => Ok(GridSpec::CrossCounterexample),
            "atleast" => Ok(GridSpec::AtLeastEach(int(arg)?)),
            "diagonals" => Ok(GridSpec::DiagonalUnion(int(arg)?)),
            _ => Err(bad()),
        }
    }
}

fn uniform(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<BicoloredGrid, OracleError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(OracleError::Unsatisfiable(format!("probability {p}")));
    }
    Ok(BicoloredGrid::from_fn(n, |_| {
        if rng.random_bool(p) {
            Color::Blue
        } else {
            Color::Red
        }
    })?)
}

/// Deterministic for a fixed `(n, spec, seed)`.
pub fn random_grid(n: usize, spec: GridSpec, seed: u64) -> Result<BicoloredGrid, OracleError> {
    crate::grid::check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = n * n;
    let from_blue_indices = |idx: &mut dyn Iterator<Item = usize>| {
        BicoloredGrid::from_blue_cells(n, idx.map(|k| Cell::new(k / n, k % n)))
    };
    match spec {
        GridSpec::Uniform(p) => uniform(n, p, &mut rng),
        GridSpec::ExactBlue(m) => {
            if m > cells {
                return Err(OracleError::Unsatisfiable(format!(
                    "{m} blue cells in a {n}x{n} grid"
                )));
            }
            Ok(from_blue_indices(
                &mut index::sample(&mut rng, cells, m).into_iter(),
            )?)
        }
        GridSpec::ConditionSatisfying => {
            if n < 2 {
                return Err(OracleError::Unsatisfiable(
                    "no coloring of order 1 satisfies the condition".into(),
                ));
            }
            for _ in 0..100_000 {
                let grid = uniform(n, 0.5, &mut rng)?;
                if check_feasibility(&grid).is_feasible() {
                    return Ok(grid);
                }
            }
            Err(OracleError::Unsatisfiable(
                "no condition-satisfying sample found".into(),
            ))
        }
        GridSpec::CrossCounterexample => {
            let cross = Cross::new(rng.random_range(0..n), rng.random_range(0..n));
            Ok(BicoloredGrid::from_blue_cells(n, cross.cells(n).iter())?)
        }
        GridSpec::AtLeastEach(m) => {
            if 2 * m > cells {
                return Err(OracleError::Unsatisfiable(format!(
                    "{m} cells of each color in a {n}x{n} grid"
                )));
            }
            let mut order: Vec<usize> = (0..cells).collect();
            order.shuffle(&mut rng);
            let mut blue = order[..m].to_vec();
            blue.extend(order[2 * m..].iter().filter(|_| rng.random_bool(0.5)));
            Ok(from_blue_indices(&mut blue.into_iter())?)
        }
        GridSpec::DiagonalUnion(k) => {
            if k > n {
                return Err(OracleError::Unsatisfiable(format!(
                    "{k} disjoint diagonals of order {n}"
                )));
            }
            // Symbol classes of a cyclic square with shuffled rows and columns.
            let mut rows: Vec<usize> = (0..n).collect();
            let mut cols: Vec<usize> = (0..n).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            let chosen: Vec<usize> = index::sample(&mut rng, n, k).into_vec();
            Ok(BicoloredGrid::from_fn(n, |c| {
                if chosen.contains(&((rows[c.row] + cols[c.col]) % n)) {
                    Color::Blue
                } else {
                    Color::Red
                }
            })?)
        }
    }
}
