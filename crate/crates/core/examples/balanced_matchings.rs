//! The same problem stated on the complete bipartite graph: a red/blue edge
//! coloring of `K_{n,n}` and a split of its edges into perfect matchings
//! that each use both colors.

use balanced_diagonals::decompose::decompose;
use balanced_diagonals::grid::{
    from_edge_coloring, is_balanced_matching, matchings_to_partition, to_balanced_matchings,
    EdgeColoring,
};
use balanced_diagonals::verify_partition;

fn main() {
    let n = 8;
    // Color 1 on edges between low rows and low columns.
    let f = EdgeColoring::new(n, |e| {
        if e.row_vertex < 3 && e.col_vertex < 5 {
            1
        } else {
            2
        }
    })
    .unwrap();
    let grid = from_edge_coloring(&f);
    let d = decompose(&grid).unwrap();
    let p = d.partition().expect("condition holds");
    let matchings = to_balanced_matchings(&grid, p).unwrap();
    for (k, m) in matchings.iter().enumerate() {
        let edges: Vec<String> = m
            .iter()
            .map(|e| {
                format!(
                    "{}{}{}",
                    e.row_vertex,
                    if f.get(*e) == 1 { '=' } else { '-' },
                    e.col_vertex
                )
            })
            .collect();
        println!(
            "M{k} balanced={} {}",
            is_balanced_matching(&f, m),
            edges.join(" ")
        );
    }
    let back = matchings_to_partition(n, &matchings);
    println!(
        "round trip valid: {}",
        verify_partition(&grid, &back).is_valid()
    );
}
