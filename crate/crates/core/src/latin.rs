//! Partial Latin squares: validation, an exact completer, symbol diagonals,
//! and detection of the size-`n` configurations that admit no completion.
//!
//! Symbols are `1..=n`. Text format: a line with `n`, then `n` lines of `n`
//! whitespace-separated tokens, each `.` (empty) or a symbol.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::grid::{check_order, Cell, CellSet, Diagonal, DiagonalPartition, GridError};

/// Search budget used when callers do not pick one.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("symbol {symbol} at ({row}, {col}) is outside 1..={n}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        n: usize,
    },
    #[error("not a partial Latin square: {0}")]
    Invalid(LatinViolation),
    #[error("expected {expected} cells, got {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("not a Latin square: {0}")]
    NotLatin(String),
}

/// First repeated symbol found by a row-major scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LatinViolation {
    Row { row: usize, symbol: usize },
    Column { col: usize, symbol: usize },
}

impl fmt::Display for LatinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinViolation::Row { row, symbol } => {
                write!(f, "symbol {symbol} repeats in row {row}")
            }
            LatinViolation::Column { col, symbol } => {
                write!(f, "symbol {symbol} repeats in column {col}")
            }
        }
    }
}

/// An `n x n` array of optional symbols. Row and column distinctness is not
/// enforced on mutation; see [`PartialLatinSquare::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialLatinSquare {
    n: usize,
    entries: Vec<Option<usize>>,
}

impl PartialLatinSquare {
    pub fn new(n: usize) -> Result<Self, LatinError> {
        check_order(n)?;
        Ok(PartialLatinSquare {
            n,
            entries: vec![None; n * n],
        })
    }

    /// Row-major entries; symbols must lie in `1..=n`.
    pub fn from_entries(n: usize, entries: Vec<Option<usize>>) -> Result<Self, LatinError> {
        check_order(n)?;
        if entries.len() != n * n {
            return Err(LatinError::WrongSize {
                expected: n * n,
                found: entries.len(),
            });
        }
        for (k, e) in entries.iter().enumerate() {
            if let Some(s) = *e {
                if s == 0 || s > n {
                    return Err(LatinError::SymbolOutOfRange {
                        row: k / n,
                        col: k % n,
                        symbol: s,
                        n,
                    });
                }
            }
        }
        Ok(PartialLatinSquare { n, entries })
    }

    pub fn from_cells(
        n: usize,
        filled: impl IntoIterator<Item = (Cell, usize)>,
    ) -> Result<Self, LatinError> {
        let mut pls = Self::new(n)?;
        for (cell, symbol) in filled {
            pls.set(cell, Some(symbol))?;
        }
        Ok(pls)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, cell: Cell) -> Option<usize> {
        self.entries[cell.row * self.n + cell.col]
    }

    pub fn set(&mut self, cell: Cell, symbol: Option<usize>) -> Result<(), LatinError> {
        let n = self.n;
        if cell.row >= n || cell.col >= n {
            return Err(GridError::OutOfBounds {
                row: cell.row,
                col: cell.col,
                n,
            }
            .into());
        }
        if let Some(s) = symbol {
            if s == 0 || s > n {
                return Err(LatinError::SymbolOutOfRange {
                    row: cell.row,
                    col: cell.col,
                    symbol: s,
                    n,
                });
            }
        }
        self.entries[cell.row * n + cell.col] = symbol;
        Ok(())
    }

    /// Number of filled cells.
    pub fn size(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    pub fn filled(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(k, e)| e.map(|s| (Cell::new(k / n, k % n), s)))
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.entries
    }

    /// Reports the first repeated symbol in row-major scan order.
    pub fn validate(&self) -> Result<(), LatinViolation> {
        let n = self.n;
        let mut rows = vec![0u64; n];
        let mut cols = vec![0u64; n];
        for r in 0..n {
            for c in 0..n {
                if let Some(s) = self.entries[r * n + c] {
                    let bit = 1u64 << (s - 1);
                    if rows[r] & bit != 0 {
                        return Err(LatinViolation::Row { row: r, symbol: s });
                    }
                    if cols[c] & bit != 0 {
                        return Err(LatinViolation::Column { col: c, symbol: s });
                    }
                    rows[r] |= bit;
                    cols[c] |= bit;
                }
            }
        }
        Ok(())
    }

    /// Transposed copy.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        PartialLatinSquare {
            n,
            entries: (0..n * n)
                .map(|k| self.entries[(k % n) * n + k / n])
                .collect(),
        }
    }
}

impl FromStr for PartialLatinSquare {
    type Err = LatinError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_error = |line: usize, column: usize, message: String| {
            LatinError::Grid(GridError::Parse {
                line,
                column,
                message,
            })
        };
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_error(1, 1, "empty input, expected the order n".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| parse_error(1, 1, format!("expected the order n, found {header:?}")))?;
        check_order(n).map_err(|e| parse_error(1, 1, e.to_string()))?;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            let line_no = r + 2;
            let line = lines
                .next()
                .ok_or_else(|| parse_error(line_no, 1, format!("expected {n} rows, found {r}")))?;
            let mut count = 0;
            for (start, token) in tokens(line) {
                if count == n {
                    return Err(parse_error(
                        line_no,
                        start + 1,
                        format!("row longer than {n}"),
                    ));
                }
                let entry = match token {
                    "." => None,
                    t => match t.parse::<usize>() {
                        Ok(s) if (1..=n).contains(&s) => Some(s),
                        _ => {
                            return Err(parse_error(
                                line_no,
                                start + 1,
                                format!("expected '.' or a symbol in 1..={n}, found {t:?}"),
                            ))
                        }
                    },
                };
                entries.push(entry);
                count += 1;
            }
            if count < n {
                return Err(parse_error(
                    line_no,
                    line.len() + 1,
                    format!("row has {count} entries, expected {n}"),
                ));
            }
        }
        Self::from_entries(n, entries)
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize, t))
}

impl fmt::Display for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|c| match self.entries[r * self.n + c] {
                    Some(s) => s.to_string(),
                    None => ".".to_string(),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_partial().fmt(f)
    }
}

/// A completely filled Latin square: every row and column is a permutation
/// of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    entries: Vec<usize>,
}

impl LatinSquare {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self, LatinError> {
        let pls = PartialLatinSquare::from_entries(n, entries.iter().map(|&s| Some(s)).collect())?;
        pls.validate().map_err(LatinError::Invalid)?;
        Ok(LatinSquare { n, entries })
    }

    /// `(r, c) -> ((r + c) mod n) + 1`.
    pub fn cyclic(n: usize) -> Result<Self, LatinError> {
        Self::new(n, (0..n * n).map(|k| (k / n + k % n) % n + 1).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, cell: Cell) -> usize {
        self.entries[cell.row * self.n + cell.col]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn to_partial(&self) -> PartialLatinSquare {
        PartialLatinSquare {
            n: self.n,
            entries: self.entries.iter().map(|&s| Some(s)).collect(),
        }
    }

    /// True when every filled cell of `pls` carries the same symbol here.
    pub fn extends(&self, pls: &PartialLatinSquare) -> bool {
        pls.n == self.n && pls.filled().all(|(c, s)| self.get(c) == s)
    }
}

/// The `n` cells carrying one symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolDiagonal {
    pub symbol: usize,
    pub diagonal: Diagonal,
}

/// The symbol diagonals of a Latin square, ordered by symbol.
pub fn symbol_diagonals(ls: &LatinSquare) -> Vec<SymbolDiagonal> {
    let n = ls.n;
    let mut cols = vec![vec![0usize; n]; n];
    for r in 0..n {
        for c in 0..n {
            cols[ls.entries[r * n + c] - 1][r] = c;
        }
    }
    cols.into_iter()
        .enumerate()
        .map(|(k, perm)| SymbolDiagonal {
            symbol: k + 1,
            diagonal: Diagonal::from_permutation(&perm).expect("Latin property"),
        })
        .collect()
}

/// The symbol diagonals as a [`DiagonalPartition`], diagonal `k` holding
/// symbol `k + 1`.
pub fn symbol_partition(ls: &LatinSquare) -> DiagonalPartition {
    DiagonalPartition::from_diagonals(
        ls.n,
        symbol_diagonals(ls)
            .into_iter()
            .map(|s| s.diagonal)
            .collect(),
    )
    .expect("symbol diagonals partition the square")
}

/// Places symbols `1..=n` on the `n` cells in lexicographic order.
pub fn embed_distinct_symbols(cells: &CellSet) -> Result<PartialLatinSquare, LatinError> {
    let n = cells.n();
    if cells.len() != n {
        return Err(LatinError::WrongSize {
            expected: n,
            found: cells.len(),
        });
    }
    PartialLatinSquare::from_cells(n, cells.iter().zip(1..))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completion {
    Completed(LatinSquare),
    /// The search space was exhausted without finding a completion.
    ProvenInfeasible,
    BudgetExceeded {
        nodes: u64,
    },
}

impl Completion {
    pub fn into_square(self) -> Option<LatinSquare> {
        match self {
            Completion::Completed(ls) => Some(ls),
            _ => None,
        }
    }
}

/// Exact backtracking completion.
///
/// Cells are chosen most-constrained first (lexicographic tie-break) and
/// symbols tried in ascending order. After every placement each row and
/// column must still have room for each of its missing symbols.
pub fn complete(pls: &PartialLatinSquare, node_budget: u64) -> Result<Completion, LatinError> {
    pls.validate().map_err(LatinError::Invalid)?;
    let mut search = Search::new(pls);
    match search.run(node_budget) {
        Some(true) => {
            let entries = search.entries.iter().map(|&s| s as usize + 1).collect();
            let ls = LatinSquare { n: pls.n, entries };
            debug_assert!(ls.to_partial().validate().is_ok() && ls.extends(pls));
            Ok(Completion::Completed(ls))
        }
        Some(false) => Ok(Completion::ProvenInfeasible),
        None => Ok(Completion::BudgetExceeded {
            nodes: search.nodes,
        }),
    }
}

const EMPTY: u8 = u8::MAX;

struct Search {
    n: usize,
    full: u64,
    /// 0-based symbols, `EMPTY` for unfilled cells.
    entries: Vec<u8>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    nodes: u64,
}

impl Search {
    fn new(pls: &PartialLatinSquare) -> Self {
        let n = pls.n;
        let mut s = Search {
            n,
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            entries: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            nodes: 0,
        };
        for (cell, sym) in pls.filled() {
            s.place(cell.row, cell.col, (sym - 1) as u8);
        }
        s
    }

    fn place(&mut self, r: usize, c: usize, s: u8) {
        self.entries[r * self.n + c] = s;
        self.row_used[r] |= 1 << s;
        self.col_used[c] |= 1 << s;
    }

    fn unplace(&mut self, r: usize, c: usize, s: u8) {
        self.entries[r * self.n + c] = EMPTY;
        self.row_used[r] &= !(1 << s);
        self.col_used[c] &= !(1 << s);
    }

    fn candidates(&self, r: usize, c: usize) -> u64 {
        self.full & !(self.row_used[r] | self.col_used[c])
    }

    /// Every missing symbol of every line still has an empty cell accepting
    /// it, and every empty cell has a candidate.
    fn consistent(&self) -> bool {
        let n = self.n;
        let mut col_reach = vec![0u64; n];
        for r in 0..n {
            let mut row_reach = 0u64;
            for c in 0..n {
                if self.entries[r * n + c] == EMPTY {
                    let cand = self.candidates(r, c);
                    if cand == 0 {
                        return false;
                    }
                    row_reach |= cand;
                    col_reach[c] |= cand;
                }
            }
            if row_reach | self.row_used[r] != self.full {
                return false;
            }
        }
        (0..n).all(|c| col_reach[c] | self.col_used[c] == self.full)
    }

    /// `Some(found)` when the search finished, `None` on budget exhaustion.
    fn run(&mut self, budget: u64) -> Option<bool> {
        if !self.consistent() {
            return Some(false);
        }
        self.descend(budget)
    }

    fn descend(&mut self, budget: u64) -> Option<bool> {
        let n = self.n;
        let mut best: Option<(usize, usize, u64)> = None;
        for r in 0..n {
            for c in 0..n {
                if self.entries[r * n + c] != EMPTY {
                    continue;
                }
                let cand = self.candidates(r, c);
                if best.is_none_or(|(_, _, b)| cand.count_ones() < b.count_ones()) {
                    best = Some((r, c, cand));
                }
            }
        }
        let Some((r, c, mut cand)) = best else {
            return Some(true);
        };
        while cand != 0 {
            let s = cand.trailing_zeros() as u8;
            cand &= cand - 1;
            self.nodes += 1;
            if self.nodes > budget {
                return None;
            }
            self.place(r, c, s);
            if self.consistent() {
                match self.descend(budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.unplace(r, c, s);
        }
        Some(false)
    }
}

/// The two shapes (up to row and column permutation and transposition) of a
/// size-`n` partial Latin square that cannot be completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExceptionalForm {
    /// Some symbol is barred from an entire line: a row (or, transposed, a
    /// column) lacks symbol `s`, and each of its cells is either filled or
    /// lies in a column already holding `s`. The extreme case is `s` on
    /// `n - 1` cells of a partial diagonal plus a different symbol in the
    /// one row and column that diagonal misses.
    A,
    /// Some empty cell sees all `n` symbols in its row and column. The
    /// extreme case is a row with `n - 1` distinct symbols plus the absent
    /// symbol placed elsewhere in the remaining column.
    B,
}

/// Detects the non-completable size-`n` configurations.
///
/// Both shapes are invariant under row and column permutations, symbol
/// renaming and transposition, so they are tested directly on the
/// structure rather than on a canonical form.
pub fn is_exceptional_form(
    pls: &PartialLatinSquare,
) -> Result<Option<ExceptionalForm>, LatinError> {
    pls.validate().map_err(LatinError::Invalid)?;
    let n = pls.n;
    if pls.size() != n {
        return Err(LatinError::WrongSize {
            expected: n,
            found: pls.size(),
        });
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut row_used = vec![0u64; n];
    let mut col_used = vec![0u64; n];
    for (cell, s) in pls.filled() {
        row_used[cell.row] |= 1 << (s - 1);
        col_used[cell.col] |= 1 << (s - 1);
    }
    for r in 0..n {
        for c in 0..n {
            if pls.get(Cell::new(r, c)).is_none() && row_used[r] | col_used[c] == full {
                return Ok(Some(ExceptionalForm::B));
            }
        }
    }
    let barred_line = |p: &PartialLatinSquare, used_cross: &[u64]| {
        (0..n).any(|r| {
            let row_symbols = (0..n)
                .filter_map(|c| p.get(Cell::new(r, c)))
                .fold(0u64, |m, s| m | 1 << (s - 1));
            (0..n).any(|s| {
                row_symbols >> s & 1 == 0
                    && (0..n)
                        .all(|c| p.get(Cell::new(r, c)).is_some() || used_cross[c] >> s & 1 == 1)
            })
        })
    };
    if barred_line(pls, &col_used) || barred_line(&pls.transpose(), &row_used) {
        return Ok(Some(ExceptionalForm::A));
    }
    Ok(None)
}
