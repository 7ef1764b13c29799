//! The same object seen as a 2-edge-coloring of `K_{n,n}`: cell `(r, c)` is
//! the edge between row vertex `r` and column vertex `c`, blue is color 1,
//! red is color 2, and a diagonal is a perfect matching.

use serde::Serialize;

use super::{check_order, BicoloredGrid, Cell, Color, DiagonalPartition, GridError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub row_vertex: usize,
    pub col_vertex: usize,
}

impl From<Cell> for Edge {
    fn from(c: Cell) -> Self {
        Edge {
            row_vertex: c.row,
            col_vertex: c.col,
        }
    }
}

impl From<Edge> for Cell {
    fn from(e: Edge) -> Self {
        Cell::new(e.row_vertex, e.col_vertex)
    }
}

/// `f: E(K_{n,n}) -> {1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<u8>,
}

impl EdgeColoring {
    pub fn new(n: usize, mut f: impl FnMut(Edge) -> u8) -> Result<Self, GridError> {
        check_order(n)?;
        let mut colors = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let value = f(Edge {
                    row_vertex: r,
                    col_vertex: c,
                });
                if !(1..=2).contains(&value) {
                    return Err(GridError::BadPartition(format!(
                        "edge ({r}, {c}) has color {value}, expected 1 or 2"
                    )));
                }
                colors.push(value);
            }
        }
        Ok(EdgeColoring { n, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, e: Edge) -> u8 {
        self.colors[e.row_vertex * self.n + e.col_vertex]
    }
}

fn color_value(color: Color) -> u8 {
    match color {
        Color::Blue => 1,
        Color::Red => 2,
    }
}

pub fn from_edge_coloring(f: &EdgeColoring) -> BicoloredGrid {
    BicoloredGrid::from_fn(f.n, |c| match f.get(c.into()) {
        1 => Color::Blue,
        _ => Color::Red,
    })
    .expect("edge coloring has a valid order")
}

pub fn to_edge_coloring(grid: &BicoloredGrid) -> EdgeColoring {
    EdgeColoring::new(grid.n(), |e| color_value(grid.color(e.into())))
        .expect("grid has a valid order")
}

/// Maps each diagonal to the perfect matching on the same cells. Fails when
/// `p` is not a partition of the grid into diagonals.
pub fn to_balanced_matchings(
    grid: &BicoloredGrid,
    p: &DiagonalPartition,
) -> Result<Vec<Vec<Edge>>, GridError> {
    let report = super::verify_partition(grid, p);
    if let Some(v) = report
        .violations
        .iter()
        .find(|v| !matches!(v, super::Violation::Unbalanced { .. }))
    {
        return Err(GridError::BadPartition(v.to_string()));
    }
    Ok(p.diagonals()
        .iter()
        .map(|d| d.iter().map(|&c| Edge::from(c)).collect())
        .collect())
}

pub fn matchings_to_partition(n: usize, matchings: &[Vec<Edge>]) -> DiagonalPartition {
    DiagonalPartition::from_raw(
        n,
        matchings
            .iter()
            .map(|m| m.iter().map(|&e| Cell::from(e)).collect())
            .collect(),
    )
}

/// A matching is balanced when it uses edges of both colors.
pub fn is_balanced_matching(f: &EdgeColoring, matching: &[Edge]) -> bool {
    matching.iter().any(|&e| f.get(e) == 1) && matching.iter().any(|&e| f.get(e) == 2)
}
