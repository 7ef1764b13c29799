//! Instance model: two-colored square arrays, cell sets and their
//! properness, diagonal partitions and their verification, and the
//! edge-coloring view of the complete bipartite graph `K_{n,n}`.
//!
//! Cells are 0-based `(row, col)` pairs and order lexicographically, which is
//! the tie-break used by every "pick some" operation in this crate.

mod knn;
mod partition;
mod properness;
mod text;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use knn::{
    from_edge_coloring, is_balanced_matching, matchings_to_partition, to_balanced_matchings,
    to_edge_coloring, Edge, EdgeColoring,
};
pub use partition::{verify_partition, Diagonal, DiagonalPartition, PartitionReport, Violation};
pub use properness::{check_feasibility, Cross, FeasibilityWitness};

/// Largest supported order. Symbol and column sets are packed into `u64`.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("order must be in 1..={MAX_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("expected {expected} cells, got {found}")]
    WrongCellCount { expected: usize, found: usize },
    #[error("cell ({row}, {col}) lies outside a {n}x{n} grid")]
    OutOfBounds { row: usize, col: usize, n: usize },
    #[error("cannot take a subset of size {k} from a set of {len} cells")]
    SubsetTooLarge { k: usize, len: usize },
    #[error("not a diagonal: {0}")]
    NotDiagonal(String),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub(crate) fn check_order(n: usize) -> Result<(), GridError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GridError::BadOrder(n));
    }
    Ok(())
}

/// A cell of an `n x n` array. Serialized as a `[row, col]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// True when the two cells share neither a row nor a column.
    pub fn independent_of(self, other: Cell) -> bool {
        self.row != other.row && self.col != other.col
    }
}

impl From<[usize; 2]> for Cell {
    fn from([row, col]: [usize; 2]) -> Self {
        Cell { row, col }
    }
}

impl From<Cell> for [usize; 2] {
    fn from(c: Cell) -> Self {
        [c.row, c.col]
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Blue, Color::Red];

    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Color::Blue => 'B',
            Color::Red => 'R',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Blue => f.write_str("Blue"),
            Color::Red => f.write_str("Red"),
        }
    }
}

/// An `n x n` array whose cells are each colored blue or red.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicoloredGrid {
    n: usize,
    colors: Vec<Color>,
}

impl BicoloredGrid {
    /// Builds a grid from row-major colors.
    pub fn new(n: usize, colors: Vec<Color>) -> Result<Self, GridError> {
        check_order(n)?;
        if colors.len() != n * n {
            return Err(GridError::WrongCellCount {
                expected: n * n,
                found: colors.len(),
            });
        }
        Ok(BicoloredGrid { n, colors })
    }

    pub fn filled(n: usize, color: Color) -> Result<Self, GridError> {
        Self::new(n, vec![color; n * n])
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Cell) -> Color) -> Result<Self, GridError> {
        check_order(n)?;
        let colors = (0..n * n).map(|k| f(Cell::new(k / n, k % n))).collect();
        Ok(BicoloredGrid { n, colors })
    }

    /// Red grid with the listed cells painted blue.
    pub fn from_blue_cells(
        n: usize,
        blue: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, GridError> {
        let mut grid = Self::filled(n, Color::Red)?;
        for cell in blue {
            grid.check_cell(cell)?;
            grid.colors[cell.row * n + cell.col] = Color::Blue;
        }
        Ok(grid)
    }

    /// Decodes a blue bitmask (bit `row * n + col` set means blue).
    pub fn from_blue_mask(n: usize, mask: u64) -> Result<Self, GridError> {
        if n * n > 64 {
            return Err(GridError::BadOrder(n));
        }
        Self::from_fn(n, |c| {
            if mask >> (c.row * n + c.col) & 1 == 1 {
                Color::Blue
            } else {
                Color::Red
            }
        })
    }

    /// Inverse of [`BicoloredGrid::from_blue_mask`]; `None` when `n * n > 64`.
    pub fn blue_mask(&self) -> Option<u64> {
        if self.n * self.n > 64 {
            return None;
        }
        Some(
            self.colors
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == Color::Blue)
                .fold(0u64, |m, (k, _)| m | 1 << k),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, cell: Cell) -> Color {
        self.colors[cell.row * self.n + cell.col]
    }

    pub fn get(&self, row: usize, col: usize) -> Color {
        self.colors[row * self.n + col]
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let n = self.n;
        (0..n * n).map(move |k| Cell::new(k / n, k % n))
    }

    /// All cells of one color.
    pub fn class(&self, color: Color) -> CellSet {
        CellSet {
            n: self.n,
            cells: self.cells().filter(|&c| self.color(c) == color).collect(),
        }
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// The same grid with the two colors exchanged.
    pub fn swapped(&self) -> Self {
        BicoloredGrid {
            n: self.n,
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }

    fn check_cell(&self, cell: Cell) -> Result<(), GridError> {
        if cell.row >= self.n || cell.col >= self.n {
            return Err(GridError::OutOfBounds {
                row: cell.row,
                col: cell.col,
                n: self.n,
            });
        }
        Ok(())
    }
}

/// A set of cells inside an `n x n` array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CellSet {
    n: usize,
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn new(n: usize) -> Self {
        CellSet {
            n,
            cells: BTreeSet::new(),
        }
    }

    pub fn from_cells(n: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self, GridError> {
        let mut set = CellSet::new(n);
        for cell in cells {
            set.insert(cell)?;
        }
        Ok(set)
    }

    /// Inserts a cell; returns whether it was new.
    pub fn insert(&mut self, cell: Cell) -> Result<bool, GridError> {
        if cell.row >= self.n || cell.col >= self.n {
            return Err(GridError::OutOfBounds {
                row: cell.row,
                col: cell.col,
                n: self.n,
            });
        }
        Ok(self.cells.insert(cell))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    /// Cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Cell> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.cells.is_subset(&other.cells)
    }
}

impl<'a> IntoIterator for &'a CellSet {
    type Item = &'a Cell;
    type IntoIter = std::collections::btree_set::Iter<'a, Cell>;

    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}
