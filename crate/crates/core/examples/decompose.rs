//! Splits a grid into balanced diagonals and shows how far the pipeline ran.
//!
//! `cargo run --example decompose [N] [SEED]` decomposes a random grid
//! satisfying the color-class condition; `--full` forces the rectangle
//! stages.

use balanced_diagonals::decompose::{decompose_traced, DecomposeOptions, Decomposition};
use balanced_diagonals::oracle::{random_grid, GridSpec};
use balanced_diagonals::verify_partition;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let full = args.iter().any(|a| a == "--full");
    let mut nums = args.iter().filter_map(|a| a.parse::<u64>().ok());
    let n = nums.next().unwrap_or(9) as usize;
    let seed = nums.next().unwrap_or(1);

    let grid = random_grid(n, GridSpec::ConditionSatisfying, seed).unwrap();
    print!("{grid}");
    let opts = DecomposeOptions {
        seed,
        full_construction: full,
        ..DecomposeOptions::default()
    };
    let (d, trace) = match decompose_traced(&grid, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(3);
        }
    };
    match d {
        Decomposition::Partition(p) => {
            println!("\n{}", p.render(&grid));
            println!("valid: {}", verify_partition(&grid, &p).is_valid());
        }
        Decomposition::Infeasible(w) => {
            println!("infeasible: {}", serde_json::to_string(&w).unwrap())
        }
        Decomposition::NoneExists => println!("no partition exists"),
    }
    println!("finished at {:?}", trace.stage);
    if let Some(slide) = &trace.slide {
        println!(
            "rectangle {:?} x {:?} after {} steps ({:?})",
            slide.rect.rows, slide.rect.cols, slide.steps, slide.method
        );
    }
    for note in &trace.notes {
        println!("note: {note}");
    }
}
