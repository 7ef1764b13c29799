//! Embeds an `r x s` corner block in a full Latin square when every symbol
//! appears often enough.

use balanced_diagonals::ryser::{check_ryser_condition, complete_corner, CornerBlock};

fn main() {
    let n = 6;
    let good = CornerBlock::new(n, 3, 4, vec![1, 2, 3, 4, 2, 3, 4, 5, 3, 4, 5, 6]).unwrap();
    println!(
        "threshold {} counts {:?}",
        good.threshold(),
        good.symbol_counts()
    );
    match complete_corner(&good) {
        Ok(ls) => print!("{ls}"),
        Err(e) => println!("{e}"),
    }

    let bad = CornerBlock::new(n, 3, 4, vec![1, 2, 3, 4, 2, 1, 4, 3, 3, 4, 1, 2]).unwrap();
    println!(
        "\nthreshold {} counts {:?}",
        bad.threshold(),
        bad.symbol_counts()
    );
    if let Err(e) = check_ryser_condition(&bad) {
        println!("rejected: {e}");
    }
}
