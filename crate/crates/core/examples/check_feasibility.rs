//! Decides whether a grid can possibly split into balanced diagonals.
//!
//! `cargo run --example check_feasibility [FILE]` reads a grid file, or
//! checks a few built-in grids when no file is given.

use balanced_diagonals::{check_feasibility, BicoloredGrid, Cell, Color};

fn report(name: &str, grid: &BicoloredGrid) {
    let w = check_feasibility(grid);
    let verdict = if w.is_feasible() {
        "feasible"
    } else {
        "infeasible"
    };
    println!("{name}: {verdict}");
    println!("  {}", serde_json::to_string(&w).unwrap());
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        match text.parse::<BicoloredGrid>() {
            Ok(grid) => report(&path, &grid),
            Err(e) => eprintln!("{path}: {e}"),
        }
        return;
    }

    // Blue fills row 2 and column 5 except their crossing.
    let cross = BicoloredGrid::from_fn(7, |c| {
        if (c.row == 2) != (c.col == 5) {
            Color::Blue
        } else {
            Color::Red
        }
    })
    .unwrap();
    report("cross", &cross);

    let sparse = BicoloredGrid::from_blue_cells(7, (0..5).map(|i| Cell::new(i, i))).unwrap();
    report("five blue cells", &sparse);

    let rows =
        BicoloredGrid::from_fn(7, |c| if c.row < 2 { Color::Blue } else { Color::Red }).unwrap();
    report("two blue rows", &rows);
}
