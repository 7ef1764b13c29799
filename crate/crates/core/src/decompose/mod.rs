//! Construction of a balanced-diagonal partition for feasible instances of
//! order at least 7.
//!
//! The pipeline, with blue the smaller color class:
//!
//! 1. cover by diagonals meeting blue; stop if none is all blue, otherwise
//!    find two all-blue diagonals `T1`, `T2` meeting in one cell;
//! 2. find a blue cell outside `T1 ∪ T2` avoiding the row and column of
//!    the shared cell (or stop on a balanced completion);
//! 3. pick `n - 1` edges of the cycles of `(T1 ∪ T2) \ {shared}` and span a
//!    rectangle `R1` with `s + t = n` holding `n` blue cells;
//! 4. slide `R1` to a `p x q` rectangle with `p + q = n + 1` holding `n`
//!    cells of each color;
//! 5. fill it so every symbol lies on one blue and one red cell, move it to
//!    the corner, complete the square and read off the symbol diagonals.
//!
//! Each stage is exposed on its own so it can be tested and traced.

mod cycles;
mod rect;
mod stages;

use serde::Serialize;
use thiserror::Error;

pub use cycles::{build_cycle_graph, find_h, Cycle, CycleGraph, Subgraph, Vertex};
pub use rect::{
    balanced_fill, build_r1, slide_to_balanced_rect, FilledBlock, Rect, Slide, SlideMethod,
};
pub use stages::{
    cover_with_color, direct_configuration, external_columns, find_blue_pair,
    find_external_blue_cell, pair_with, BluePair, ExternalCell,
};

use crate::grid::{
    check_feasibility, verify_partition, BicoloredGrid, Cell, Color, Diagonal, DiagonalPartition,
    FeasibilityWitness,
};
use crate::latin::{symbol_partition, LatinSquare, DEFAULT_NODE_BUDGET};
use crate::oracle::{oracle_decompose, OracleError, OracleVerdict};
use crate::ryser::{complete_corner, CornerBlock};

/// Below this order the construction does not apply and the exhaustive
/// oracle decides.
pub const MIN_CONSTRUCTIVE_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("precondition failed: {0:?}")]
    Precondition(FeasibilityWitness),
    #[error("internal error: {message}")]
    Diagnostic {
        message: String,
        trace: Box<PipelineTrace>,
    },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl DecomposeError {
    pub fn trace(&self) -> Option<&PipelineTrace> {
        match self {
            DecomposeError::Diagnostic { trace, .. } => Some(trace),
            _ => None,
        }
    }

    fn with_trace(self, t: &PipelineTrace) -> Self {
        match self {
            DecomposeError::Diagnostic { message, .. } => DecomposeError::Diagnostic {
                message,
                trace: Box::new(t.clone()),
            },
            other => other,
        }
    }
}

pub(crate) fn diagnostic(message: impl Into<String>) -> DecomposeError {
    DecomposeError::Diagnostic {
        message: message.into(),
        trace: Box::default(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Seeds the randomized fallbacks of the rectangle search.
    pub seed: u64,
    /// Node budget for each partial Latin square completion.
    pub node_budget: u64,
    /// Skip the early exits and find `T1`, `T2` and the external cell by
    /// matchings, so the rectangle stages always run when such a
    /// configuration exists.
    pub full_construction: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            seed: 0,
            node_budget: DEFAULT_NODE_BUDGET,
            full_construction: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Partition(DiagonalPartition),
    /// A color class has no proper set of `n` cells; no partition exists.
    Infeasible(FeasibilityWitness),
    /// Below order 7 only: the condition holds but the exhaustive search
    /// found no partition.
    NoneExists,
}

impl Decomposition {
    pub fn partition(&self) -> Option<&DiagonalPartition> {
        match self {
            Decomposition::Partition(p) => Some(p),
            _ => None,
        }
    }
}

/// The furthest stage reached.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Stage {
    #[default]
    Feasibility,
    Oracle,
    FirstCover,
    SecondCover,
    ExternalCell,
    CycleGraph,
    Subgraph,
    FirstRect,
    Slide,
    Fill,
    Corner,
}

/// What each stage produced, in the coordinates of the grid with blue the
/// smaller class (`colors_swapped` tells whether that is the input grid
/// with colors exchanged).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub n: usize,
    pub seed: u64,
    pub stage: Stage,
    pub colors_swapped: bool,
    pub full_construction: bool,
    pub t1: Option<Diagonal>,
    pub t2: Option<Diagonal>,
    pub shared: Option<Cell>,
    pub t3: Option<Diagonal>,
    pub external: Option<Cell>,
    pub cycle_lengths: Option<Vec<usize>>,
    pub h: Option<Subgraph>,
    pub r1: Option<Rect>,
    pub slide: Option<Slide>,
    pub block: Option<FilledBlock>,
    pub notes: Vec<String>,
}

impl PipelineTrace {
    /// Re-checks every recorded object against its stage postcondition.
    pub fn check(&self, grid: &BicoloredGrid) -> Result<(), String> {
        if self.colors_swapped {
            self.check_working(&grid.swapped())
        } else {
            self.check_working(grid)
        }
    }

    fn check_working(&self, grid: &BicoloredGrid) -> Result<(), String> {
        let n = self.n;
        let blue = |d: &Diagonal| d.is_monochromatic(grid, Color::Blue);
        if let Some(t1) = &self.t1 {
            if !blue(t1) {
                return Err("T1 is not all blue".into());
            }
        }
        if let (Some(t1), Some(t2), Some(shared)) = (&self.t1, &self.t2, self.shared) {
            if !blue(t2) || t1.intersection(t2) != [shared] {
                return Err("T2 is not all blue or does not meet T1 in one cell".into());
            }
            if let Some(e) = self.external {
                if grid.color(e) != Color::Blue
                    || t1.contains(e)
                    || t2.contains(e)
                    || !e.independent_of(shared)
                {
                    return Err(format!("external cell {e} violates its conditions"));
                }
            }
        }
        if let Some(lens) = &self.cycle_lengths {
            if lens.iter().sum::<usize>() != 2 * n - 2 || lens.iter().any(|&l| l < 4 || l % 2 == 1)
            {
                return Err(format!("cycle lengths {lens:?}"));
            }
        }
        if let Some(h) = &self.h {
            if h.edges.len() != n - 1 || !(n - 1..=n).contains(&h.vertices.len()) {
                return Err("subgraph has wrong edge or vertex count".into());
            }
        }
        if let Some(r1) = &self.r1 {
            if r1.height() + r1.width() != n
                || r1.height().abs_diff(r1.width()) > 1
                || r1.count(grid, Color::Blue) < n
            {
                return Err("first rectangle has wrong shape or too few blue cells".into());
            }
        }
        if let Some(slide) = &self.slide {
            if !slide.rect.is_fillable(grid) {
                return Err("slid rectangle is not fillable".into());
            }
        }
        if let Some(block) = &self.block {
            let mut counts = vec![0usize; n + 1];
            for &x in &block.entries {
                counts[x] += 1;
            }
            if counts[1..].iter().any(|&c| c < 2) {
                return Err("a symbol occurs fewer than twice in the block".into());
            }
            for &(b, r) in &block.pairs {
                if grid.color(b) != Color::Blue
                    || grid.color(r) != Color::Red
                    || !b.independent_of(r)
                {
                    return Err(format!("bad symbol pair {b} {r}"));
                }
            }
        }
        Ok(())
    }
}

/// [`decompose_with`] with default options.
pub fn decompose(grid: &BicoloredGrid) -> Result<Decomposition, DecomposeError> {
    decompose_with(grid, &DecomposeOptions::default())
}

pub fn decompose_with(
    grid: &BicoloredGrid,
    opts: &DecomposeOptions,
) -> Result<Decomposition, DecomposeError> {
    decompose_traced(grid, opts).map(|(d, _)| d)
}

/// Decides the instance and, when feasible, returns a verified partition
/// together with the record of every stage.
pub fn decompose_traced(
    grid: &BicoloredGrid,
    opts: &DecomposeOptions,
) -> Result<(Decomposition, PipelineTrace), DecomposeError> {
    let n = grid.n();
    let mut trace = PipelineTrace {
        n,
        seed: opts.seed,
        full_construction: opts.full_construction,
        ..PipelineTrace::default()
    };
    let witness = check_feasibility(grid);
    if !witness.is_feasible() {
        return Ok((Decomposition::Infeasible(witness), trace));
    }
    if n < MIN_CONSTRUCTIVE_ORDER {
        trace.stage = Stage::Oracle;
        let outcome = match oracle_decompose(grid, MIN_CONSTRUCTIVE_ORDER - 1)? {
            OracleVerdict::Found(p) => Decomposition::Partition(p),
            OracleVerdict::NoneExists => Decomposition::NoneExists,
        };
        return Ok((outcome, trace));
    }
    trace.colors_swapped = grid.count(Color::Blue) > grid.count(Color::Red);
    let work = if trace.colors_swapped {
        grid.swapped()
    } else {
        grid.clone()
    };
    let p = match run(&work, opts, &mut trace) {
        Ok(p) => p,
        Err(e) => return Err(e.with_trace(&trace)),
    };
    let report = verify_partition(grid, &p);
    if !report.is_valid() {
        return Err(diagnostic(format!("constructed partition fails: {report}")).with_trace(&trace));
    }
    if let Err(message) = trace.check(grid) {
        return Err(diagnostic(message).with_trace(&trace));
    }
    Ok((Decomposition::Partition(p), trace))
}

fn run(
    grid: &BicoloredGrid,
    opts: &DecomposeOptions,
    trace: &mut PipelineTrace,
) -> Result<DiagonalPartition, DecomposeError> {
    let direct = if opts.full_construction {
        let found = direct_configuration(grid);
        if found.is_none() {
            trace
                .notes
                .push("no direct configuration; using the covering stages".into());
        }
        found
    } else {
        None
    };
    let (t1, t2, shared, external) = match direct {
        Some((t1, t2, shared, smallest)) => {
            trace.stage = Stage::ExternalCell;
            match find_external_blue_cell(grid, &t1, &t2, shared, opts.node_budget)? {
                ExternalCell::Cell { cell, t3 } => {
                    trace.t3 = Some(t3);
                    (t1, t2, shared, cell)
                }
                ExternalCell::Balanced(_) => {
                    trace
                        .notes
                        .push("column cover balanced; using the smallest external cell".into());
                    (t1, t2, shared, smallest)
                }
            }
        }
        None => {
            trace.stage = Stage::FirstCover;
            let (t1, t2, shared) = match find_blue_pair(grid, opts.node_budget)? {
                BluePair::FirstCover(p) => return Ok(p),
                BluePair::SecondCover { t1, partition } => {
                    trace.stage = Stage::SecondCover;
                    trace.t1 = Some(t1);
                    return Ok(partition);
                }
                BluePair::Pair { t1, t2, shared } => (t1, t2, shared),
            };
            trace.t1 = Some(t1.clone());
            trace.t2 = Some(t2.clone());
            trace.shared = Some(shared);
            trace.stage = Stage::ExternalCell;
            match find_external_blue_cell(grid, &t1, &t2, shared, opts.node_budget)? {
                ExternalCell::Balanced(p) => return Ok(p),
                ExternalCell::Cell { cell, t3 } => {
                    trace.t3 = Some(t3);
                    (t1, t2, shared, cell)
                }
            }
        }
    };
    rectangle_stages(grid, &t1, &t2, shared, external, opts.seed, trace)
}

/// Runs the rectangle stages from two all-blue diagonals meeting only in
/// `shared` and a blue cell `external` outside both that avoids the row
/// and column of `shared`. Blue must not be the larger class.
pub fn construct_from(
    grid: &BicoloredGrid,
    t1: &Diagonal,
    t2: &Diagonal,
    shared: Cell,
    external: Cell,
    seed: u64,
) -> Result<(DiagonalPartition, PipelineTrace), DecomposeError> {
    let n = grid.n();
    if n < MIN_CONSTRUCTIVE_ORDER || grid.count(Color::Blue) > grid.count(Color::Red) {
        return Err(DecomposeError::Argument(
            "needs n >= 7 and blue not the larger class".into(),
        ));
    }
    let mut trace = PipelineTrace {
        n,
        seed,
        full_construction: true,
        ..PipelineTrace::default()
    };
    let p = match rectangle_stages(grid, t1, t2, shared, external, seed, &mut trace) {
        Ok(p) => p,
        Err(e) => return Err(e.with_trace(&trace)),
    };
    if let Err(message) = trace.check(grid) {
        return Err(diagnostic(message).with_trace(&trace));
    }
    Ok((p, trace))
}

fn rectangle_stages(
    grid: &BicoloredGrid,
    t1: &Diagonal,
    t2: &Diagonal,
    shared: Cell,
    external: Cell,
    seed: u64,
    trace: &mut PipelineTrace,
) -> Result<DiagonalPartition, DecomposeError> {
    trace.t1 = Some(t1.clone());
    trace.t2 = Some(t2.clone());
    trace.shared = Some(shared);
    trace.external = Some(external);
    if let Err(message) = trace.check_working(grid) {
        return Err(DecomposeError::Argument(message));
    }

    trace.stage = Stage::CycleGraph;
    let g = build_cycle_graph(t1, t2, shared)?;
    trace.cycle_lengths = Some(g.cycles.iter().map(Cycle::len).collect());

    trace.stage = Stage::Subgraph;
    let h = find_h(&g, Vertex::Row(external.row), Vertex::Col(external.col))?;
    trace.h = Some(h.clone());

    trace.stage = Stage::FirstRect;
    let r1 = build_r1(grid.n(), &h, external)?;
    trace.r1 = Some(r1.clone());

    trace.stage = Stage::Slide;
    let slide = slide_to_balanced_rect(grid, &r1, seed)?;
    let rect = slide.rect.clone();
    trace.slide = Some(slide);

    trace.stage = Stage::Fill;
    let block = balanced_fill(grid, &rect)?;
    trace.block = Some(block.clone());

    trace.stage = Stage::Corner;
    let ls = complete_block(grid.n(), &block)?;
    let p = symbol_partition(&ls);
    let report = verify_partition(grid, &p);
    if !report.is_valid() {
        return Err(diagnostic(format!("constructed partition fails: {report}")));
    }
    Ok(p)
}

/// Moves the block to the top-left corner, completes the square there and
/// moves it back.
pub fn complete_block(n: usize, block: &FilledBlock) -> Result<LatinSquare, DecomposeError> {
    let rect = &block.rect;
    let order = |chosen: &[usize]| -> Vec<usize> {
        let mut v = chosen.to_vec();
        v.extend((0..n).filter(|x| !chosen.contains(x)));
        v
    };
    let rows = order(&rect.rows);
    let cols = order(&rect.cols);
    let corner = CornerBlock::new(n, rect.height(), rect.width(), block.entries.clone())
        .map_err(|e| diagnostic(e.to_string()))?;
    let ls = complete_corner(&corner).map_err(|e| diagnostic(e.to_string()))?;
    let mut entries = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            entries[rows[a] * n + cols[b]] = ls.get(Cell::new(a, b));
        }
    }
    LatinSquare::new(n, entries).map_err(|e| diagnostic(e.to_string()))
}
