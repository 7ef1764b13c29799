//! The Latin-square stages: covering by diagonals that each meet a color,
//! two blue diagonals meeting in one cell, and a blue cell outside both.

use super::{diagnostic, DecomposeError};
use crate::grid::{BicoloredGrid, Cell, CellSet, Color, Diagonal, DiagonalPartition};
use crate::latin::{
    complete, embed_distinct_symbols, symbol_diagonals, symbol_partition, Completion, LatinSquare,
};
use crate::matching::{max_matching, BipartiteGraph};

fn complete_distinct(cells: &CellSet, node_budget: u64) -> Result<LatinSquare, DecomposeError> {
    let pls = embed_distinct_symbols(cells).map_err(|e| diagnostic(e.to_string()))?;
    match complete(&pls, node_budget).map_err(|e| diagnostic(e.to_string()))? {
        Completion::Completed(ls) => Ok(ls),
        Completion::ProvenInfeasible => Err(diagnostic(format!(
            "{} distinct symbols on a proper set did not complete",
            cells.len()
        ))),
        Completion::BudgetExceeded { nodes } => Err(diagnostic(format!(
            "completion gave up after {nodes} nodes"
        ))),
    }
}

fn first_monochromatic(ls: &LatinSquare, grid: &BicoloredGrid, color: Color) -> Option<Diagonal> {
    symbol_diagonals(ls)
        .into_iter()
        .map(|s| s.diagonal)
        .find(|d| d.is_monochromatic(grid, color))
}

/// A Latin square whose symbol diagonals each meet `color`: `n` distinct
/// symbols on a proper `n`-subset of the color class, then completed.
pub fn cover_with_color(
    grid: &BicoloredGrid,
    color: Color,
    node_budget: u64,
) -> Result<LatinSquare, DecomposeError> {
    let n = grid.n();
    let class = grid.class(color);
    if class.len() < n {
        return Err(DecomposeError::Precondition(
            crate::grid::FeasibilityWitness::TooFewCells {
                color,
                count: class.len(),
            },
        ));
    }
    let Some(subset) = class
        .find_proper_subset(n)
        .map_err(|e| diagnostic(e.to_string()))?
    else {
        let cross = class.is_improper().expect("no proper subset");
        return Err(DecomposeError::Precondition(
            crate::grid::FeasibilityWitness::ImproperColorClass { color, cross },
        ));
    };
    complete_distinct(&subset, node_budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BluePair {
    /// The first cover had no all-blue diagonal, so it is balanced.
    FirstCover(DiagonalPartition),
    /// Completing around the all-blue `t1` gave a balanced partition.
    SecondCover {
        t1: Diagonal,
        partition: DiagonalPartition,
    },
    /// Two all-blue diagonals meeting exactly in `shared`.
    Pair {
        t1: Diagonal,
        t2: Diagonal,
        shared: Cell,
    },
}

/// Covers by diagonals meeting blue, so the unbalanced ones are all blue,
/// then continues with [`pair_with`] from the first of them.
pub fn find_blue_pair(grid: &BicoloredGrid, node_budget: u64) -> Result<BluePair, DecomposeError> {
    let ls = cover_with_color(grid, Color::Blue, node_budget)?;
    match first_monochromatic(&ls, grid, Color::Blue) {
        None => Ok(BluePair::FirstCover(symbol_partition(&ls))),
        Some(t1) => pair_with(grid, t1, node_budget),
    }
}

/// Re-embeds distinct symbols on the all-blue diagonal `t1` and completes.
/// Each symbol diagonal of the result holds exactly one cell of `t1`, so a
/// second all-blue diagonal (if any) meets `t1` in exactly one cell.
pub fn pair_with(
    grid: &BicoloredGrid,
    t1: Diagonal,
    node_budget: u64,
) -> Result<BluePair, DecomposeError> {
    if !t1.is_monochromatic(grid, Color::Blue) {
        return Err(DecomposeError::Argument("T1 must be all blue".into()));
    }
    let cells = CellSet::from_cells(grid.n(), t1.cells().iter().copied())
        .map_err(|e| diagnostic(e.to_string()))?;
    let ls = complete_distinct(&cells, node_budget)?;
    let Some(t2) = first_monochromatic(&ls, grid, Color::Blue) else {
        return Ok(BluePair::SecondCover {
            t1,
            partition: symbol_partition(&ls),
        });
    };
    match t1.intersection(&t2)[..] {
        [shared] => Ok(BluePair::Pair { t1, t2, shared }),
        ref other => Err(diagnostic(format!(
            "blue diagonals meet in {} cells",
            other.len()
        ))),
    }
}

/// The columns holding the cells re-embedded by [`find_external_blue_cell`]:
/// `n / 2` columns other than `j` for even `n`, `j` and `(n - 1) / 2` others
/// for odd `n`, smallest first.
pub fn external_columns(n: usize, j: usize) -> Vec<usize> {
    let others = (0..n).filter(|&c| c != j);
    let mut cols: Vec<usize> = if n.is_multiple_of(2) {
        others.take(n / 2).collect()
    } else {
        others.take((n - 1) / 2).chain([j]).collect()
    };
    cols.sort_unstable();
    cols
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExternalCell {
    Balanced(DiagonalPartition),
    /// A blue cell outside `T1 ∪ T2`, avoiding the row and column of the
    /// shared cell, found on the all-blue diagonal `t3`.
    Cell {
        cell: Cell,
        t3: Diagonal,
    },
}

/// Re-embeds the `n` cells of `T1 ∪ T2` lying in [`external_columns`] and
/// completes. If some symbol diagonal is all blue, its cells in those
/// columns cannot all come from `T1 ∪ T2`, which yields the external cell.
pub fn find_external_blue_cell(
    grid: &BicoloredGrid,
    t1: &Diagonal,
    t2: &Diagonal,
    shared: Cell,
    node_budget: u64,
) -> Result<ExternalCell, DecomposeError> {
    let n = grid.n();
    if n < 7 {
        return Err(DecomposeError::Argument(format!(
            "external cell search needs n >= 7, got {n}"
        )));
    }
    let cols = external_columns(n, shared.col);
    let d: Vec<Cell> = t1
        .cells()
        .iter()
        .chain(t2.cells())
        .copied()
        .filter(|c| cols.contains(&c.col))
        .collect();
    let d = CellSet::from_cells(n, d).map_err(|e| diagnostic(e.to_string()))?;
    if d.len() != n {
        return Err(diagnostic(format!(
            "{} cells of the two diagonals in the chosen columns",
            d.len()
        )));
    }
    let ls = complete_distinct(&d, node_budget)?;
    let Some(t3) = first_monochromatic(&ls, grid, Color::Blue) else {
        return Ok(ExternalCell::Balanced(symbol_partition(&ls)));
    };
    let cell = t3
        .cells()
        .iter()
        .copied()
        .find(|&c| {
            cols.contains(&c.col) && !t1.contains(c) && !t2.contains(c) && c.independent_of(shared)
        })
        .ok_or_else(|| diagnostic("all-blue diagonal has no cell outside the pair"))?;
    Ok(ExternalCell::Cell { cell, t3 })
}

fn blue_perfect_matching(
    grid: &BicoloredGrid,
    allowed: impl Fn(Cell) -> bool,
    skip: Option<Cell>,
) -> Option<Vec<usize>> {
    let n = grid.n();
    let rows: Vec<usize> = (0..n)
        .filter(|&r| skip.is_none_or(|s| s.row != r))
        .collect();
    let mut g = BipartiteGraph::new(rows.len(), n);
    for (a, &r) in rows.iter().enumerate() {
        for c in 0..n {
            let cell = Cell::new(r, c);
            if skip.is_none_or(|s| s.col != c) && grid.color(cell) == Color::Blue && allowed(cell) {
                g.add_edge(a, c).expect("indices in range");
            }
        }
    }
    let m = max_matching(&g);
    if m.len() < rows.len() {
        return None;
    }
    let mut perm = vec![usize::MAX; n];
    for &(a, c) in &m.pairs {
        perm[rows[a]] = c;
    }
    if let Some(s) = skip {
        perm[s.row] = s.col;
    }
    Some(perm)
}

/// A configuration for the rectangle stages found directly by matchings,
/// bypassing the Latin-square shortcuts: a blue diagonal `T1`, a second
/// blue diagonal meeting it only in `shared`, and the smallest blue cell
/// outside both that avoids the row and column of `shared`.
pub fn direct_configuration(grid: &BicoloredGrid) -> Option<(Diagonal, Diagonal, Cell, Cell)> {
    let t1 = Diagonal::from_permutation(&blue_perfect_matching(grid, |_| true, None)?).ok()?;
    for &shared in t1.cells() {
        let Some(perm) = blue_perfect_matching(grid, |c| !t1.contains(c), Some(shared)) else {
            continue;
        };
        let t2 = Diagonal::from_permutation(&perm).ok()?;
        let cell = grid.cells().find(|&c| {
            grid.color(c) == Color::Blue
                && !t1.contains(c)
                && !t2.contains(c)
                && c.independent_of(shared)
        });
        if let Some(cell) = cell {
            return Some((t1, t2, shared, cell));
        }
    }
    None
}
