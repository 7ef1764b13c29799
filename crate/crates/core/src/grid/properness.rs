//! Proper and improper cell sets, and the feasibility certificate built on
//! them.
//!
//! A set is improper when some row `i` and column `j` exist such that every
//! cell lies in row `i` or in column `j` but not in both; the witness is a
//! [`Cross`]. Every proper set contains a minimal proper "core" of one of
//! three shapes:
//!
//! * a triple (three cells with no covering cross; either an L-shape
//!   `{(r,c), (r,y), (x,c)}` or two independent cells plus one escaping both
//!   of their crosses),
//! * a quadruple `{x, y, z1, z2}` with `x, y` independent, `z1` escaping the
//!   cross `(x.row, y.col)` and `z2` escaping `(y.row, x.col)`,
//! * a complete row or column (the only proper sets with no independent pair
//!   and no L-shape).
//!
//! Properness is upward-closed, so any core extends to a proper set of any
//! larger size inside the original set.

use serde::Serialize;

use super::{BicoloredGrid, Cell, CellSet, Color, GridError};

/// The cell set `(row i ∪ column j) \ {(i, j)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cross {
    pub i: usize,
    pub j: usize,
}

impl Cross {
    pub fn new(i: usize, j: usize) -> Self {
        Cross { i, j }
    }

    pub fn contains(self, cell: Cell) -> bool {
        (cell.row == self.i) != (cell.col == self.j)
    }

    pub fn covers(self, set: &CellSet) -> bool {
        set.iter().all(|c| self.contains(c))
    }

    /// The `2n - 2` cells of the cross.
    pub fn cells(self, n: usize) -> CellSet {
        let mut set = CellSet::new(n);
        for k in 0..n {
            if k != self.j {
                set.cells.insert(Cell::new(self.i, k));
            }
            if k != self.i {
                set.cells.insert(Cell::new(k, self.j));
            }
        }
        set
    }
}

impl CellSet {
    /// Returns the lexicographically smallest cross containing the whole set,
    /// or `None` when the set is proper. The empty set is improper.
    pub fn is_improper(&self) -> Option<Cross> {
        let Some(first) = self.iter().next() else {
            return Some(Cross::new(0, 0));
        };
        // Any covering cross must cover `first`, so it shares its row or its
        // column (but not both).
        let mut candidates: Vec<Cross> = (0..self.n)
            .filter(|&j| j != first.col)
            .map(|j| Cross::new(first.row, j))
            .chain(
                (0..self.n)
                    .filter(|&i| i != first.row)
                    .map(|i| Cross::new(i, first.col)),
            )
            .collect();
        candidates.sort_unstable();
        candidates.into_iter().find(|cross| cross.covers(self))
    }

    pub fn is_proper(&self) -> bool {
        self.is_improper().is_none()
    }

    /// A proper subset of exactly `k` cells, if one exists.
    ///
    /// The subset is a minimal proper core extended by the lexicographically
    /// smallest remaining cells.
    pub fn find_proper_subset(&self, k: usize) -> Result<Option<CellSet>, GridError> {
        if k > self.len() {
            return Err(GridError::SubsetTooLarge { k, len: self.len() });
        }
        if self.is_improper().is_some() {
            return Ok(None);
        }
        let Some(core) = self.proper_core(k) else {
            return Ok(None);
        };
        let mut out = CellSet::new(self.n);
        out.cells.extend(core);
        for cell in self.iter() {
            if out.len() == k {
                break;
            }
            out.cells.insert(cell);
        }
        debug_assert!(out.is_proper());
        Ok(Some(out))
    }

    /// A minimal proper subset of at most `k` cells. Assumes `self` is proper.
    fn proper_core(&self, k: usize) -> Option<Vec<Cell>> {
        let cells = self.to_vec();
        if k >= 3 {
            for &a in &cells {
                let same_row = cells.iter().find(|c| c.row == a.row && c.col != a.col);
                let same_col = cells.iter().find(|c| c.col == a.col && c.row != a.row);
                if let (Some(&b), Some(&d)) = (same_row, same_col) {
                    return Some(vec![a, b, d]);
                }
            }
            let mut quad = None;
            for (p, &x) in cells.iter().enumerate() {
                for &y in cells[p + 1..].iter().filter(|y| y.independent_of(x)) {
                    let a = Cross::new(x.row, y.col);
                    let b = Cross::new(y.row, x.col);
                    if let Some(&z) = cells.iter().find(|&&z| !a.contains(z) && !b.contains(z)) {
                        return Some(vec![x, y, z]);
                    }
                    if k >= 4 {
                        // `self` is proper, so both crosses are escaped.
                        let z1 = cells.iter().copied().find(|&z| !a.contains(z));
                        let z2 = cells.iter().copied().find(|&z| !b.contains(z));
                        if let (Some(z1), Some(z2)) = (z1, z2) {
                            quad = Some(vec![x, y, z1, z2]);
                            break;
                        }
                    }
                }
                if quad.is_some() {
                    break;
                }
            }
            if quad.is_some() {
                return quad;
            }
        }
        if self.n > k {
            return None;
        }
        let n = self.n;
        (0..n)
            .map(|r| (0..n).map(|c| Cell::new(r, c)).collect::<Vec<_>>())
            .chain((0..n).map(|c| (0..n).map(|r| Cell::new(r, c)).collect()))
            .find(|line| line.iter().all(|&c| self.contains(c)))
    }
}

/// Certificate for the existence (or not) of a balanced-diagonal partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FeasibilityWitness {
    /// A proper `n`-subset of each color class.
    Feasible { blue: CellSet, red: CellSet },
    /// The class has fewer than `n` cells.
    TooFewCells { color: Color, count: usize },
    /// Every cell of the class lies in the cross.
    ImproperColorClass { color: Color, cross: Cross },
}

impl FeasibilityWitness {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityWitness::Feasible { .. })
    }

    /// Re-checks the certificate against the grid.
    pub fn verify(&self, grid: &BicoloredGrid) -> bool {
        let n = grid.n();
        match self {
            FeasibilityWitness::Feasible { blue, red } => [(blue, Color::Blue), (red, Color::Red)]
                .iter()
                .all(|(set, color)| {
                    set.len() == n && set.is_proper() && set.iter().all(|c| grid.color(c) == *color)
                }),
            FeasibilityWitness::TooFewCells { color, count } => {
                grid.count(*color) == *count && *count < n
            }
            FeasibilityWitness::ImproperColorClass { color, cross } => grid
                .cells()
                .all(|c| grid.color(c) != *color || cross.contains(c)),
        }
    }
}

/// Decides whether each color class contains a proper set of `n` cells.
/// Blue is examined first, so an instance failing for both colors reports
/// the blue certificate.
pub fn check_feasibility(grid: &BicoloredGrid) -> FeasibilityWitness {
    let n = grid.n();
    let mut subsets = Vec::with_capacity(2);
    for color in Color::BOTH {
        let class = grid.class(color);
        if class.len() < n {
            return FeasibilityWitness::TooFewCells {
                color,
                count: class.len(),
            };
        }
        if let Some(cross) = class.is_improper() {
            return FeasibilityWitness::ImproperColorClass { color, cross };
        }
        let subset = class
            .find_proper_subset(n)
            .expect("class has at least n cells")
            .expect("a proper class of at least n cells has a proper n-subset");
        subsets.push(subset);
    }
    let red = subsets.pop().unwrap();
    let blue = subsets.pop().unwrap();
    FeasibilityWitness::Feasible { blue, red }
}
