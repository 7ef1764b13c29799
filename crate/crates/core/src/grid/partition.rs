use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{check_order, BicoloredGrid, Cell, Color, GridError};

/// `n` cells with pairwise distinct rows and pairwise distinct columns,
/// stored in row order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Diagonal {
    cells: Vec<Cell>,
}

impl Diagonal {
    pub fn new(n: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self, GridError> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        if let Some(reason) = diagonal_defect(n, &cells) {
            return Err(GridError::NotDiagonal(reason));
        }
        cells.sort_unstable();
        Ok(Diagonal { cells })
    }

    /// The diagonal `{(r, cols[r])}` of a permutation.
    pub fn from_permutation(cols: &[usize]) -> Result<Self, GridError> {
        Self::new(
            cols.len(),
            cols.iter().enumerate().map(|(r, &c)| Cell::new(r, c)),
        )
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn col_of_row(&self, row: usize) -> usize {
        self.cells[row].col
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.get(cell.row) == Some(&cell)
    }

    pub fn intersection(&self, other: &Diagonal) -> Vec<Cell> {
        self.cells
            .iter()
            .copied()
            .filter(|&c| other.contains(c))
            .collect()
    }

    /// True when every cell of the diagonal has the given color.
    pub fn is_monochromatic(&self, grid: &BicoloredGrid, color: Color) -> bool {
        self.cells.iter().all(|&c| grid.color(c) == color)
    }

    pub fn is_balanced(&self, grid: &BicoloredGrid) -> bool {
        Color::BOTH
            .iter()
            .all(|&color| self.cells.iter().any(|&c| grid.color(c) == color))
    }
}

fn diagonal_defect(n: usize, cells: &[Cell]) -> Option<String> {
    if cells.len() != n {
        return Some(format!("has {} cells, expected {n}", cells.len()));
    }
    let mut rows = vec![false; n];
    let mut cols = vec![false; n];
    for &c in cells {
        if c.row >= n || c.col >= n {
            return Some(format!("cell {c} is outside the grid"));
        }
        if std::mem::replace(&mut rows[c.row], true) {
            return Some(format!("row {} repeats", c.row));
        }
        if std::mem::replace(&mut cols[c.col], true) {
            return Some(format!("column {} repeats", c.col));
        }
    }
    None
}

/// A candidate partition of the grid into diagonals.
///
/// The structure is not validated on construction from raw data; use
/// [`verify_partition`] (partitions produced by this crate always pass).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiagonalPartition {
    n: usize,
    diagonals: Vec<Vec<Cell>>,
}

impl DiagonalPartition {
    /// Builds a partition from checked diagonals, verifying disjoint cover.
    pub fn from_diagonals(n: usize, diagonals: Vec<Diagonal>) -> Result<Self, GridError> {
        check_order(n)?;
        let p = DiagonalPartition {
            n,
            diagonals: diagonals.into_iter().map(|d| d.cells).collect(),
        };
        let report = p.structural_violations();
        if let Some(v) = report.first() {
            return Err(GridError::BadPartition(v.to_string()));
        }
        Ok(p)
    }

    /// Wraps raw cell lists without checks.
    pub fn from_raw(n: usize, diagonals: Vec<Vec<Cell>>) -> Self {
        DiagonalPartition { n, diagonals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[Vec<Cell>] {
        &self.diagonals
    }

    /// Index of the diagonal holding each cell, row-major; `None` for cells
    /// not covered. Later diagonals win on overlap.
    pub fn labels(&self) -> Vec<Option<usize>> {
        let mut labels = vec![None; self.n * self.n];
        for (d, cells) in self.diagonals.iter().enumerate() {
            for c in cells.iter().filter(|c| c.row < self.n && c.col < self.n) {
                labels[c.row * self.n + c.col] = Some(d);
            }
        }
        labels
    }

    /// Parses the JSON array-of-arrays format `[[[r, c], ...], ...]`. The
    /// order is taken from the number of diagonals.
    pub fn from_json(text: &str) -> Result<Self, GridError> {
        let raw: Vec<Vec<Cell>> = serde_json::from_str(text).map_err(|e| GridError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(DiagonalPartition {
            n: raw.len(),
            diagonals: raw,
        })
    }

    /// One diagonal per line, cells as `[row,col]`.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        for (d, cells) in self.diagonals.iter().enumerate() {
            out.push_str("  [");
            for (k, c) in cells.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write!(out, "[{},{}]", c.row, c.col).unwrap();
            }
            out.push(']');
            if d + 1 < self.diagonals.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }

    /// Human-readable rendering: each cell shows its color letter followed by
    /// the index of its diagonal.
    pub fn render(&self, grid: &BicoloredGrid) -> String {
        let labels = self.labels();
        let width = self.diagonals.len().saturating_sub(1).to_string().len();
        let mut out = String::new();
        for r in 0..grid.n() {
            let line: Vec<String> = (0..grid.n())
                .map(|c| {
                    let label = labels
                        .get(r * self.n + c)
                        .copied()
                        .flatten()
                        .map_or_else(|| "?".repeat(width), |d| format!("{d:>width$}"));
                    format!("{}{}", grid.get(r, c).to_char(), label)
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        if self.diagonals.len() != n {
            out.push(Violation::DiagonalCount {
                expected: n,
                found: self.diagonals.len(),
            });
        }
        for (index, cells) in self.diagonals.iter().enumerate() {
            if let Some(reason) = diagonal_defect(n, cells) {
                out.push(Violation::NotDiagonal { index, reason });
            }
        }
        let mut owner: BTreeMap<Cell, usize> = BTreeMap::new();
        for (index, cells) in self.diagonals.iter().enumerate() {
            for &cell in cells.iter().filter(|c| c.row < n && c.col < n) {
                if let Some(&first) = owner.get(&cell) {
                    out.push(Violation::Overlap {
                        cell,
                        first,
                        second: index,
                    });
                } else {
                    owner.insert(cell, index);
                }
            }
        }
        for r in 0..n {
            for c in 0..n {
                let cell = Cell::new(r, c);
                if !owner.contains_key(&cell) {
                    out.push(Violation::Uncovered { cell });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    GridSizeMismatch {
        grid: usize,
        partition: usize,
    },
    DiagonalCount {
        expected: usize,
        found: usize,
    },
    NotDiagonal {
        index: usize,
        reason: String,
    },
    Overlap {
        cell: Cell,
        first: usize,
        second: usize,
    },
    Uncovered {
        cell: Cell,
    },
    Unbalanced {
        index: usize,
        missing: Color,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::GridSizeMismatch { grid, partition } => {
                write!(
                    f,
                    "grid has order {grid} but partition has order {partition}"
                )
            }
            Violation::DiagonalCount { expected, found } => {
                write!(f, "expected {expected} diagonals, found {found}")
            }
            Violation::NotDiagonal { index, reason } => {
                write!(f, "member {index} is not a diagonal: {reason}")
            }
            Violation::Overlap {
                cell,
                first,
                second,
            } => write!(f, "cell {cell} is in diagonals {first} and {second}"),
            Violation::Uncovered { cell } => write!(f, "cell {cell} is not covered"),
            Violation::Unbalanced { index, missing } => {
                write!(f, "diagonal {index} is missing {missing}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub violations: Vec<Violation>,
}

impl PartitionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid balanced partition");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that `p` partitions the grid into `n` diagonals each holding both
/// colors. An empty report means a valid balanced partition.
pub fn verify_partition(grid: &BicoloredGrid, p: &DiagonalPartition) -> PartitionReport {
    if grid.n() != p.n {
        return PartitionReport {
            violations: vec![Violation::GridSizeMismatch {
                grid: grid.n(),
                partition: p.n,
            }],
        };
    }
    let mut violations = p.structural_violations();
    for (index, cells) in p.diagonals.iter().enumerate() {
        for color in Color::BOTH {
            let present = cells
                .iter()
                .filter(|c| c.row < p.n && c.col < p.n)
                .any(|&c| grid.color(c) == color);
            if !present {
                violations.push(Violation::Unbalanced {
                    index,
                    missing: color,
                });
            }
        }
    }
    PartitionReport { violations }
}
