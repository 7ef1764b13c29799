//! Runs the exhaustive search over every coloring of a small order and
//! compares it with the color-class condition. Prints one JSON summary line,
//! then any coloring where the two disagree.
//!
//! `cargo run --release --example oracle_sweep [N]` with `N <= 4` sweeps
//! exhaustively; larger orders sample 5000 colorings stratified by blue
//! count.

use balanced_diagonals::oracle::{exhaustive_necessity_sweep, sampled_sweep};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let report = if n <= 4 {
        exhaustive_necessity_sweep(n).unwrap()
    } else {
        sampled_sweep(n, 5000, 0).unwrap()
    };
    let summary = serde_json::json!({
        "n": report.n,
        "colorings": report.colorings,
        "partitioned": report.oracle_found,
        "condition": report.condition_holds,
        "counterexamples": report.counterexamples.len(),
        "frontier": report.frontier.len(),
    });
    println!("{summary}");
    for r in report.counterexamples.iter().chain(&report.frontier) {
        println!("{}", r.to_json_line());
    }
}
