//! Rectangles of the array: the first rectangle spanned by the cycle
//! subgraph, the sliding search for a rectangle holding `n` cells of each
//! color, and the balanced filling of that rectangle.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cycles::{Subgraph, Vertex};
use super::{diagnostic, DecomposeError};
use crate::grid::{BicoloredGrid, Cell, Color};
use crate::matching::{max_matching, BipartiteGraph};

/// The cells in the chosen rows and columns. Both lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Rect {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Rect {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Rect { rows, cols }
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.cols.len()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.rows.binary_search(&cell.row).is_ok() && self.cols.binary_search(&cell.col).is_ok()
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .flat_map(|&r| self.cols.iter().map(move |&c| Cell::new(r, c)))
    }

    pub fn count(&self, grid: &BicoloredGrid, color: Color) -> usize {
        self.cells().filter(|&c| grid.color(c) == color).count()
    }

    /// The smallest rectangle containing both.
    pub fn union(&self, other: &Rect) -> Rect {
        Rect::new(
            self.rows.iter().chain(&other.rows).copied().collect(),
            self.cols.iter().chain(&other.cols).copied().collect(),
        )
    }

    /// A `p x q` rectangle with `p + q = n + 1`, `|p - q| <= 2`, and at least
    /// `n` cells of each color: the shape the balanced fill needs.
    pub fn is_fillable(&self, grid: &BicoloredGrid) -> bool {
        let n = grid.n();
        let (p, q) = (self.height(), self.width());
        p + q == n + 1
            && p.abs_diff(q) <= 2
            && self.count(grid, Color::Blue) >= n
            && self.count(grid, Color::Red) >= n
    }

    /// All rectangles obtained by exchanging one row (first) or one column
    /// for one outside, in lexicographic order of the exchange.
    fn neighbors(&self, n: usize, lines: Lines) -> Vec<Rect> {
        let mut out = Vec::new();
        if lines != Lines::Cols {
            for (k, _) in self.rows.iter().enumerate() {
                for r in (0..n).filter(|r| self.rows.binary_search(r).is_err()) {
                    let mut rows = self.rows.clone();
                    rows[k] = r;
                    out.push(Rect::new(rows, self.cols.clone()));
                }
            }
        }
        if lines != Lines::Rows {
            for (k, _) in self.cols.iter().enumerate() {
                for c in (0..n).filter(|c| self.cols.binary_search(c).is_err()) {
                    let mut cols = self.cols.clone();
                    cols[k] = c;
                    out.push(Rect::new(self.rows.clone(), cols));
                }
            }
        }
        out
    }
}

/// The rectangle spanned by the subgraph, which already holds `n - 1`
/// blue edges, plus the extra blue cell `e` at one of its row/column
/// crossings. When it spans only `n - 1` lines the smallest unused row (or
/// column, if rows outnumber columns) is added, so that `s + t = n` and
/// `|s - t| <= 1`.
pub fn build_r1(n: usize, h: &Subgraph, e: Cell) -> Result<Rect, DecomposeError> {
    let mut rows = h.rows();
    let mut cols = h.cols();
    if !h.vertices.contains(&Vertex::Row(e.row)) || !h.vertices.contains(&Vertex::Col(e.col)) {
        return Err(DecomposeError::Argument(format!(
            "cell {e} is not spanned by the subgraph"
        )));
    }
    if rows.len() + cols.len() == n - 1 {
        if rows.len() <= cols.len() {
            let r = (0..n)
                .find(|r| !rows.contains(r))
                .expect("fewer than n rows");
            rows.push(r);
        } else {
            let c = (0..n)
                .find(|c| !cols.contains(c))
                .expect("fewer than n columns");
            cols.push(c);
        }
    }
    let rect = Rect::new(rows, cols);
    if rect.height() + rect.width() != n || rect.height().abs_diff(rect.width()) > 1 {
        return Err(diagnostic(format!(
            "first rectangle is {}x{}",
            rect.height(),
            rect.width()
        )));
    }
    Ok(rect)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lines {
    Both,
    Rows,
    Cols,
}

/// How the fillable rectangle was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SlideMethod {
    /// Greedy walk maximizing red count, exchanging rows and columns.
    Steepest,
    /// Greedy walk preferring row exchanges.
    RowsFirst,
    /// Greedy walk preferring column exchanges.
    ColsFirst,
    /// Seeded random walks.
    RandomWalk,
    /// Seeded sampling of rectangles of the right shape.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slide {
    /// Two windows differing in one line whose union is fillable.
    pub before: Rect,
    pub after: Rect,
    pub rect: Rect,
    pub method: SlideMethod,
    pub steps: usize,
}

/// Looks for a fillable rectangle, starting from `r1` (which must hold at
/// least `n` blue cells).
///
/// Windows of the size of `r1` are moved one row or column exchange at a
/// time, always to the neighbor with the most red cells; before each move
/// every neighbor is tried as the second half of a union. When the greedy
/// walks stall, seeded random walks and finally seeded sampling of
/// rectangles of the target shape are tried.
pub fn slide_to_balanced_rect(
    grid: &BicoloredGrid,
    r1: &Rect,
    seed: u64,
) -> Result<Slide, DecomposeError> {
    let n = grid.n();
    if r1.count(grid, Color::Blue) < n || r1.height() + r1.width() != n {
        return Err(DecomposeError::Argument(
            "start rectangle must span n lines and hold n blue cells".into(),
        ));
    }
    for (lines, method) in [
        (Lines::Both, SlideMethod::Steepest),
        (Lines::Rows, SlideMethod::RowsFirst),
        (Lines::Cols, SlideMethod::ColsFirst),
    ] {
        if let Some(found) = steepest_walk(grid, r1, lines, method) {
            return Ok(found);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        if let Some(found) = random_walk(grid, r1, &mut rng) {
            return Ok(found);
        }
    }
    sample_rect(grid, r1, &mut rng)
        .ok_or_else(|| diagnostic("no fillable rectangle found by sliding or sampling"))
}

fn fillable_union(grid: &BicoloredGrid, w: &Rect, lines: Lines) -> Option<(Rect, Rect)> {
    w.neighbors(grid.n(), lines).into_iter().find_map(|w2| {
        let u = w.union(&w2);
        u.is_fillable(grid).then_some((w2, u))
    })
}

fn steepest_walk(
    grid: &BicoloredGrid,
    start: &Rect,
    lines: Lines,
    method: SlideMethod,
) -> Option<Slide> {
    let n = grid.n();
    let mut w = start.clone();
    let mut red = w.count(grid, Color::Red);
    for steps in 0..=n * n {
        if let Some((after, rect)) = fillable_union(grid, &w, Lines::Both) {
            return Some(Slide {
                before: w,
                after,
                rect,
                method,
                steps,
            });
        }
        let mut best = None;
        for order in [lines, Lines::Both] {
            for cand in w.neighbors(n, order) {
                let r = cand.count(grid, Color::Red);
                if r > best.as_ref().map_or(red, |&(br, _)| br) {
                    best = Some((r, cand));
                }
            }
            if best.is_some() {
                break;
            }
        }
        let (r, next) = best?;
        red = r;
        w = next;
    }
    None
}

fn random_walk(grid: &BicoloredGrid, start: &Rect, rng: &mut ChaCha8Rng) -> Option<Slide> {
    let n = grid.n();
    let mut w = start.clone();
    let mut seen = HashSet::new();
    for steps in 0..4 * n {
        if let Some((after, rect)) = fillable_union(grid, &w, Lines::Both) {
            return Some(Slide {
                before: w,
                after,
                rect,
                method: SlideMethod::RandomWalk,
                steps,
            });
        }
        seen.insert(w.clone());
        let red = w.count(grid, Color::Red);
        let all = w.neighbors(n, Lines::Both);
        let uphill: Vec<&Rect> = all
            .iter()
            .filter(|c| !seen.contains(*c) && c.count(grid, Color::Red) >= red)
            .collect();
        w = if uphill.is_empty() {
            all[rng.random_range(0..all.len())].clone()
        } else {
            uphill[rng.random_range(0..uphill.len())].clone()
        };
    }
    None
}

fn sample_rect(grid: &BicoloredGrid, start: &Rect, rng: &mut ChaCha8Rng) -> Option<Slide> {
    let n = grid.n();
    let shapes: Vec<(usize, usize)> = (1..=n)
        .map(|p| (p, n + 1 - p))
        .filter(|&(p, q)| q >= 1 && q <= n && p.abs_diff(q) <= 2)
        .collect();
    for _ in 0..50_000 {
        let (p, q) = shapes[rng.random_range(0..shapes.len())];
        let rect = Rect::new(
            index::sample(rng, n, p).into_vec(),
            index::sample(rng, n, q).into_vec(),
        );
        if rect.is_fillable(grid) {
            return Some(Slide {
                before: start.clone(),
                after: start.clone(),
                rect,
                method: SlideMethod::Sampled,
                steps: 0,
            });
        }
    }
    None
}

/// A filled `p x q` block over a fillable rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilledBlock {
    pub rect: Rect,
    /// Row-major symbols `1..=n`, indexed by position inside the rectangle.
    pub entries: Vec<usize>,
    /// `pairs[k]` is the blue and red cell carrying symbol `k + 1`.
    pub pairs: Vec<(Cell, Cell)>,
}

impl FilledBlock {
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.rect.width() + b]
    }
}

/// Fills the rectangle so that every symbol sits on one blue and one red
/// cell and occurs at least twice.
///
/// The first `n` blue and first `n` red cells are perfectly matched by
/// independence (sharing neither row nor column); pair `k` gets symbol
/// `k + 1`; the rest is filled greedily in row-major order with the
/// smallest symbol absent from its row and column of the block.
pub fn balanced_fill(grid: &BicoloredGrid, rect: &Rect) -> Result<FilledBlock, DecomposeError> {
    let n = grid.n();
    if !rect.is_fillable(grid) {
        return Err(DecomposeError::Argument("rectangle is not fillable".into()));
    }
    let blue: Vec<Cell> = rect
        .cells()
        .filter(|&c| grid.color(c) == Color::Blue)
        .take(n)
        .collect();
    let red: Vec<Cell> = rect
        .cells()
        .filter(|&c| grid.color(c) == Color::Red)
        .take(n)
        .collect();
    let mut g = BipartiteGraph::new(n, n);
    for (a, x) in blue.iter().enumerate() {
        for (b, y) in red.iter().enumerate() {
            if x.independent_of(*y) {
                g.add_edge(a, b).expect("indices in range");
            }
        }
    }
    let m = max_matching(&g);
    if m.len() < n {
        return Err(diagnostic(format!(
            "only {} of {n} blue cells matched to independent red cells",
            m.len()
        )));
    }
    let (p, q) = (rect.height(), rect.width());
    let pos = |c: Cell| {
        let a = rect.rows.binary_search(&c.row).expect("cell in rectangle");
        let b = rect.cols.binary_search(&c.col).expect("cell in rectangle");
        a * q + b
    };
    let mut entries = vec![0usize; p * q];
    let mut pairs = Vec::with_capacity(n);
    for &(a, b) in &m.pairs {
        let symbol = pairs.len() + 1;
        entries[pos(blue[a])] = symbol;
        entries[pos(red[b])] = symbol;
        pairs.push((blue[a], red[b]));
    }
    for a in 0..p {
        for b in 0..q {
            if entries[a * q + b] != 0 {
                continue;
            }
            let used = (0..q)
                .map(|b2| entries[a * q + b2])
                .chain((0..p).map(|a2| entries[a2 * q + b]))
                .fold(0u64, |m, x| if x == 0 { m } else { m | 1 << (x - 1) });
            let symbol = (0..n)
                .find(|&x| used >> x & 1 == 0)
                .ok_or_else(|| diagnostic("no free symbol for a block cell"))?;
            entries[a * q + b] = symbol + 1;
        }
    }
    Ok(FilledBlock {
        rect: rect.clone(),
        entries,
        pairs,
    })
}
