//! Drives the construction stage by stage on a grid built so that every
//! shortcut fails: two blue diagonals meeting in one cell, and a third that
//! supplies a blue cell outside both.

use balanced_diagonals::decompose::{
    build_cycle_graph, construct_from, external_columns, find_external_blue_cell, pair_with,
    BluePair, ExternalCell,
};
use balanced_diagonals::latin::{
    complete, embed_distinct_symbols, symbol_diagonals, DEFAULT_NODE_BUDGET,
};
use balanced_diagonals::{verify_partition, BicoloredGrid, CellSet, Diagonal};

fn symbol_diagonals_around(
    n: usize,
    cells: impl IntoIterator<Item = balanced_diagonals::Cell>,
) -> Vec<Diagonal> {
    let set = CellSet::from_cells(n, cells).unwrap();
    let ls = complete(&embed_distinct_symbols(&set).unwrap(), DEFAULT_NODE_BUDGET)
        .unwrap()
        .into_square()
        .unwrap();
    symbol_diagonals(&ls)
        .into_iter()
        .map(|s| s.diagonal)
        .collect()
}

fn main() {
    let n = 9;
    let t1 = Diagonal::from_permutation(&[3, 0, 7, 1, 8, 2, 5, 4, 6]).unwrap();
    let t2 = symbol_diagonals_around(n, t1.cells().iter().copied()).swap_remove(4);
    let two =
        BicoloredGrid::from_blue_cells(n, t1.cells().iter().chain(t2.cells()).copied()).unwrap();
    let BluePair::Pair { t1, t2, shared } = pair_with(&two, t1, DEFAULT_NODE_BUDGET).unwrap()
    else {
        unreachable!("the completion is fixed by t1")
    };
    println!("T1 and T2 share {shared:?}");

    let cols = external_columns(n, shared.col);
    let d: Vec<_> = t1
        .cells()
        .iter()
        .chain(t2.cells())
        .copied()
        .filter(|c| cols.contains(&c.col))
        .collect();
    let t3 = symbol_diagonals_around(n, d)
        .into_iter()
        .find(|t| {
            t.cells().iter().any(|&c| {
                cols.contains(&c.col)
                    && !t1.contains(c)
                    && !t2.contains(c)
                    && c.independent_of(shared)
            })
        })
        .unwrap();
    let grid = BicoloredGrid::from_blue_cells(
        n,
        [&t1, &t2, &t3]
            .iter()
            .flat_map(|t| t.cells().iter().copied()),
    )
    .unwrap();
    print!("{grid}");

    let ExternalCell::Cell { cell, .. } =
        find_external_blue_cell(&grid, &t1, &t2, shared, DEFAULT_NODE_BUDGET).unwrap()
    else {
        unreachable!("t3 is all blue")
    };
    println!("external blue cell {cell:?} in columns {cols:?}");
    let g = build_cycle_graph(&t1, &t2, shared).unwrap();
    println!(
        "cycle lengths {:?}",
        g.cycles
            .iter()
            .map(|c| c.vertices.len())
            .collect::<Vec<_>>()
    );

    let (p, trace) = construct_from(&grid, &t1, &t2, shared, cell, 0).unwrap();
    println!("first rectangle {:?}", trace.r1);
    if let Some(s) = &trace.slide {
        println!(
            "balanced rectangle {:?} x {:?} via {:?}",
            s.rect.rows, s.rect.cols, s.method
        );
    }
    println!("{}", p.render(&grid));
    println!("valid: {}", verify_partition(&grid, &p).is_valid());
}
