//! Bipartite matching, distinct representatives with a Hall violator, and
//! edge coloring of a bipartite multigraph.

use balanced_diagonals::matching::{
    edge_color_bipartite, find_sdr, max_matching, BipartiteGraph, BipartiteMultigraph,
};

fn main() {
    let g = BipartiteGraph::from_adjacency(4, vec![vec![0, 1], vec![0], vec![1, 2, 3], vec![0]])
        .unwrap();
    println!("maximum matching {:?}", max_matching(&g).pairs);

    let sets = vec![vec![10, 20], vec![20, 30], vec![10, 30]];
    println!("representatives {:?}", find_sdr(&sets));
    let blocked = vec![vec![1, 2], vec![1], vec![2], vec![3, 4]];
    match find_sdr(&blocked) {
        Ok(reps) => println!("representatives {reps:?}"),
        Err(v) => println!("sets {:?} only cover {:?}", v.family, v.union),
    }

    let mut m = BipartiteMultigraph::new(3, 3);
    for (u, v) in [
        (0, 0),
        (0, 0),
        (0, 1),
        (1, 1),
        (1, 2),
        (2, 2),
        (2, 0),
        (1, 0),
    ] {
        m.add_edge(u, v).unwrap();
    }
    let colors = edge_color_bipartite(&m, m.max_degree()).unwrap();
    for (e, (u, v)) in m.edges().iter().enumerate() {
        println!("edge {u}-{v}: color {}", colors[e]);
    }
}
