//! Completion of a filled `r x s` corner block to a Latin square.
//!
//! The block extends to a full square exactly when every symbol occurs at
//! least `r + s - n` times in it. The construction is polynomial: the
//! missing `(row, symbol)` incidences are edge-colored with `n - s` colors
//! to form the new columns, then the remaining rows are added one at a time
//! as systems of distinct representatives of the per-column missing symbols.

use thiserror::Error;

use crate::latin::{LatinError, LatinSquare};
use crate::matching::{edge_color_bipartite, find_sdr, BipartiteMultigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RyserError {
    #[error("block dimensions {r}x{s} must satisfy 0 < r, s <= n = {n}")]
    BadDimensions { n: usize, r: usize, s: usize },
    #[error("expected {expected} entries, got {found}")]
    WrongEntryCount { expected: usize, found: usize },
    #[error("symbol {symbol} outside 1..={n}")]
    SymbolOutOfRange { symbol: usize, n: usize },
    #[error("symbol {symbol} repeats in {line}")]
    Repeat { symbol: usize, line: String },
    #[error("symbols {symbols:?} occur fewer than {threshold} times")]
    ConditionViolated {
        symbols: Vec<usize>,
        threshold: usize,
    },
    #[error(transparent)]
    Latin(#[from] LatinError),
}

/// A fully filled `r x s` block meant for the top-left corner of an order-`n`
/// square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CornerBlock {
    n: usize,
    r: usize,
    s: usize,
    block: Vec<usize>,
}

fn check_lines(n: usize, rows: usize, cols: usize, entries: &[usize]) -> Result<(), RyserError> {
    for &x in entries {
        if x == 0 || x > n {
            return Err(RyserError::SymbolOutOfRange { symbol: x, n });
        }
    }
    for i in 0..rows {
        let mut seen = 0u64;
        for j in 0..cols {
            let bit = 1u64 << (entries[i * cols + j] - 1);
            if seen & bit != 0 {
                return Err(RyserError::Repeat {
                    symbol: entries[i * cols + j],
                    line: format!("row {i}"),
                });
            }
            seen |= bit;
        }
    }
    for j in 0..cols {
        let mut seen = 0u64;
        for i in 0..rows {
            let bit = 1u64 << (entries[i * cols + j] - 1);
            if seen & bit != 0 {
                return Err(RyserError::Repeat {
                    symbol: entries[i * cols + j],
                    line: format!("column {j}"),
                });
            }
            seen |= bit;
        }
    }
    Ok(())
}

impl CornerBlock {
    /// Row-major `r x s` entries. `s == n` is allowed (a Latin rectangle).
    pub fn new(n: usize, r: usize, s: usize, block: Vec<usize>) -> Result<Self, RyserError> {
        crate::grid::check_order(n).map_err(LatinError::from)?;
        if r == 0 || s == 0 || r > n || s > n {
            return Err(RyserError::BadDimensions { n, r, s });
        }
        if block.len() != r * s {
            return Err(RyserError::WrongEntryCount {
                expected: r * s,
                found: block.len(),
            });
        }
        check_lines(n, r, s, &block)?;
        Ok(CornerBlock { n, r, s, block })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.r
    }

    pub fn cols(&self) -> usize {
        self.s
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.block[i * self.s + j]
    }

    /// `counts[k]` is the number of occurrences of symbol `k + 1`.
    pub fn symbol_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for &x in &self.block {
            counts[x - 1] += 1;
        }
        counts
    }

    /// `r + s - n`, floored at zero.
    pub fn threshold(&self) -> usize {
        (self.r + self.s).saturating_sub(self.n)
    }
}

/// Lists every symbol occurring fewer than `r + s - n` times; `Ok` when none.
pub fn check_ryser_condition(b: &CornerBlock) -> Result<(), RyserError> {
    let threshold = b.threshold();
    let symbols: Vec<usize> = b
        .symbol_counts()
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c < threshold)
        .map(|(k, _)| k + 1)
        .collect();
    if symbols.is_empty() {
        Ok(())
    } else {
        Err(RyserError::ConditionViolated { symbols, threshold })
    }
}

/// An `r x n` array whose rows are permutations of `1..=n` and whose columns
/// are repetition-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinRectangle {
    n: usize,
    r: usize,
    entries: Vec<usize>,
}

impl LatinRectangle {
    pub fn new(n: usize, r: usize, entries: Vec<usize>) -> Result<Self, RyserError> {
        crate::grid::check_order(n).map_err(LatinError::from)?;
        if r > n {
            return Err(RyserError::BadDimensions { n, r, s: n });
        }
        if entries.len() != r * n {
            return Err(RyserError::WrongEntryCount {
                expected: r * n,
                found: entries.len(),
            });
        }
        check_lines(n, r, n, &entries)?;
        Ok(LatinRectangle { n, r, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.r
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

/// Fills columns `s..n` of the block so that every row becomes a permutation
/// and the new columns stay repetition-free.
pub fn extend_block_to_latin_rectangle(b: &CornerBlock) -> Result<LatinRectangle, RyserError> {
    check_ryser_condition(b)?;
    let (n, r, s) = (b.n, b.r, b.s);
    let mut g = BipartiteMultigraph::new(r, n);
    for i in 0..r {
        let present = (0..s).fold(0u64, |m, j| m | 1 << (b.get(i, j) - 1));
        for x in 0..n {
            if present >> x & 1 == 0 {
                g.add_edge(i, x).expect("indices in range");
            }
        }
    }
    // Row degree is n - s; symbol x has degree r - N(x) <= n - s.
    let colors = edge_color_bipartite(&g, n - s).expect("Ryser condition bounds the degree");
    let mut entries = vec![0usize; r * n];
    for i in 0..r {
        entries[i * n..i * n + s].copy_from_slice(&b.block[i * s..(i + 1) * s]);
    }
    for (&(i, x), &c) in g.edges().iter().zip(&colors) {
        entries[i * n + s + c] = x + 1;
    }
    LatinRectangle::new(n, r, entries)
}

/// Adds the remaining rows, each a system of distinct representatives of the
/// symbols still missing from every column.
pub fn extend_rectangle_to_square(rect: &LatinRectangle) -> Result<LatinSquare, RyserError> {
    let n = rect.n;
    let mut entries = rect.entries.clone();
    let mut col_used: Vec<u64> = (0..n)
        .map(|c| (0..rect.r).fold(0u64, |m, i| m | 1 << (entries[i * n + c] - 1)))
        .collect();
    for _ in rect.r..n {
        let missing: Vec<Vec<usize>> = col_used
            .iter()
            .map(|&used| (0..n).filter(|&x| used >> x & 1 == 0).collect())
            .collect();
        // The family is (n - rows)-regular, so Hall's condition holds.
        let reps = find_sdr(&missing).expect("a Latin rectangle always extends by one row");
        for (c, &x) in reps.iter().enumerate() {
            col_used[c] |= 1 << x;
            entries.push(x + 1);
        }
    }
    Ok(LatinSquare::new(n, entries)?)
}

/// Completes the corner block to a Latin square agreeing with it on the
/// first `r` rows and `s` columns.
pub fn complete_corner(b: &CornerBlock) -> Result<LatinSquare, RyserError> {
    let rect = extend_block_to_latin_rectangle(b)?;
    extend_rectangle_to_square(&rect)
}
