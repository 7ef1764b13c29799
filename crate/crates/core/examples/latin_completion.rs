//! Completes partial Latin squares and recognizes the two blocked shapes of
//! size `n`.

use balanced_diagonals::latin::{
    complete, is_exceptional_form, Completion, PartialLatinSquare, DEFAULT_NODE_BUDGET,
};
use balanced_diagonals::Cell;

fn show(name: &str, p: &PartialLatinSquare) {
    println!("{name}:");
    print!("{p}");
    if p.size() == p.n() {
        println!("shape: {:?}", is_exceptional_form(p).unwrap());
    }
    match complete(p, DEFAULT_NODE_BUDGET).unwrap() {
        Completion::Completed(ls) => print!("completes to\n{ls}"),
        Completion::ProvenInfeasible => println!("cannot be completed"),
        Completion::BudgetExceeded { nodes } => println!("gave up after {nodes} nodes"),
    }
    println!();
}

fn main() {
    let n = 5;
    let diagonal =
        PartialLatinSquare::from_cells(n, (0..n - 1).map(|i| (Cell::new(i, i), 1))).unwrap();
    show("symbol 1 on four diagonal cells", &diagonal);

    let mut blocked = diagonal.clone();
    blocked.set(Cell::new(4, 4), Some(2)).unwrap();
    show("plus symbol 2 where 1 must go", &blocked);

    let row = PartialLatinSquare::from_cells(
        n,
        (0..n - 1)
            .map(|j| (Cell::new(0, j), j + 1))
            .chain([(Cell::new(3, 4), 5)]),
    )
    .unwrap();
    show("row missing 5, with 5 below the gap", &row);
}
