//! The union of two diagonals meeting in one cell, viewed as a subgraph of
//! `K_{n,n}`, and the selection of a subgraph of it with `n - 1` edges made
//! of whole cycles plus at most one path.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{diagnostic, DecomposeError};
use crate::grid::{Cell, Diagonal};

/// A vertex of `K_{n,n}`: a row or a column of the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Vertex {
    Row(usize),
    Col(usize),
}

/// A simple even cycle. `edges[k]` joins `vertices[k]` and
/// `vertices[(k + 1) % len]`; the walk starts at the smallest row vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Cell>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// The path of `len` edges starting at vertex position `start`.
    fn path(&self, start: usize, len: usize) -> (Vec<Vertex>, Vec<Cell>) {
        let l = self.len();
        debug_assert!(len < l);
        let vertices = (0..=len).map(|k| self.vertices[(start + k) % l]).collect();
        let edges = (0..len).map(|k| self.edges[(start + k) % l]).collect();
        (vertices, edges)
    }
}

/// `(T1 ∪ T2) \ {shared}` as a bipartite graph: the row and column of the
/// shared cell are isolated, every other vertex has degree two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleGraph {
    pub n: usize,
    pub shared: Cell,
    pub cycles: Vec<Cycle>,
}

impl CycleGraph {
    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(Cycle::len).sum()
    }

    fn component_of(&self, v: Vertex) -> Option<(usize, usize)> {
        self.cycles
            .iter()
            .enumerate()
            .find_map(|(k, c)| c.position(v).map(|p| (k, p)))
    }
}

/// Builds the cycle decomposition of `(T1 ∪ T2) \ {shared}`.
pub fn build_cycle_graph(
    t1: &Diagonal,
    t2: &Diagonal,
    shared: Cell,
) -> Result<CycleGraph, DecomposeError> {
    let n = t1.n();
    if t2.n() != n || t1.intersection(t2) != [shared] {
        return Err(DecomposeError::Argument(format!(
            "diagonals must meet exactly in {shared}"
        )));
    }
    let mut t2_row_of_col = vec![0; n];
    for c in t2.cells() {
        t2_row_of_col[c.col] = c.row;
    }
    let mut seen = vec![false; n];
    seen[shared.row] = true;
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut r = start;
        loop {
            seen[r] = true;
            let c = t1.col_of_row(r);
            vertices.push(Vertex::Row(r));
            edges.push(Cell::new(r, c));
            vertices.push(Vertex::Col(c));
            let next = t2_row_of_col[c];
            edges.push(Cell::new(next, c));
            r = next;
            if r == start {
                break;
            }
        }
        cycles.push(Cycle { vertices, edges });
    }
    let g = CycleGraph { n, shared, cycles };
    debug_assert_eq!(g.edge_count(), 2 * n - 2);
    debug_assert!(g.cycles.iter().all(|c| c.len() >= 4 && c.len() % 2 == 0));
    Ok(g)
}

/// Whole cycles of a [`CycleGraph`] plus at most one path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subgraph {
    pub whole_cycles: Vec<usize>,
    /// `(cycle index, path vertices)`; a single vertex is a path of length 0.
    pub path: Option<(usize, Vec<Vertex>)>,
    pub edges: Vec<Cell>,
    pub vertices: BTreeSet<Vertex>,
}

impl Subgraph {
    fn new() -> Self {
        Subgraph {
            whole_cycles: Vec::new(),
            path: None,
            edges: Vec::new(),
            vertices: BTreeSet::new(),
        }
    }

    fn add_cycle(&mut self, g: &CycleGraph, k: usize) {
        self.whole_cycles.push(k);
        self.edges.extend(&g.cycles[k].edges);
        self.vertices.extend(&g.cycles[k].vertices);
    }

    fn add_path(&mut self, g: &CycleGraph, k: usize, start: usize, len: usize) {
        let (vs, es) = g.cycles[k].path(start, len);
        self.edges.extend(es);
        self.vertices.extend(&vs);
        self.path = Some((k, vs));
    }

    /// Tops up with whole cycles in index order, cutting a path from the
    /// first cycle that does not fit.
    fn fill(&mut self, g: &CycleGraph, target: usize) {
        for k in 0..g.cycles.len() {
            let rest = target - self.edges.len();
            if rest == 0 {
                break;
            }
            if self.whole_cycles.contains(&k) {
                continue;
            }
            if g.cycles[k].len() <= rest {
                self.add_cycle(g, k);
            } else {
                self.add_path(g, k, 0, rest);
                break;
            }
        }
    }

    pub fn rows(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Row(r) => Some(*r),
                Vertex::Col(_) => None,
            })
            .collect()
    }

    pub fn cols(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Col(c) => Some(*c),
                Vertex::Row(_) => None,
            })
            .collect()
    }
}

/// A subgraph containing `u` and `v` with exactly `n - 1` edges, built from
/// whole cycles and at most one path, hence with `n - 1` or `n` vertices.
///
/// Same cycle: the cycle plus filler when it has at most `n - 1` edges,
/// otherwise a window of `n - 1` edges through both. Different cycles: the
/// shorter one whole plus a path through the other vertex, or both whole
/// plus filler when they fit.
pub fn find_h(g: &CycleGraph, u: Vertex, v: Vertex) -> Result<Subgraph, DecomposeError> {
    let target = g.n - 1;
    let (cu, pu) = g
        .component_of(u)
        .ok_or_else(|| DecomposeError::Argument(format!("{u:?} is isolated")))?;
    let (cv, pv) = g
        .component_of(v)
        .ok_or_else(|| DecomposeError::Argument(format!("{v:?} is isolated")))?;
    let mut h = Subgraph::new();
    if cu == cv {
        let l = g.cycles[cu].len();
        if l <= target {
            h.add_cycle(g, cu);
            h.fill(g, target);
        } else {
            // l <= 2n - 2, so one of the two arcs between u and v has at
            // most n - 1 edges.
            let forward = (pv + l - pu) % l;
            let start = if forward <= target { pu } else { pv };
            h.add_path(g, cu, start, target);
        }
    } else {
        let (small, big, big_pos) = if g.cycles[cu].len() <= g.cycles[cv].len() {
            (cu, cv, pv)
        } else {
            (cv, cu, pu)
        };
        let ls = g.cycles[small].len();
        let lb = g.cycles[big].len();
        h.add_cycle(g, small);
        if ls + lb > target {
            h.add_path(g, big, big_pos, target - ls);
        } else {
            h.add_cycle(g, big);
            h.fill(g, target);
        }
    }
    if h.edges.len() != target
        || !(target..=target + 1).contains(&h.vertices.len())
        || !h.vertices.contains(&u)
        || !h.vertices.contains(&v)
    {
        return Err(diagnostic(format!(
            "subgraph selection produced {} edges and {} vertices",
            h.edges.len(),
            h.vertices.len()
        )));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_diag(p: &[usize]) -> Diagonal {
        Diagonal::from_permutation(p).unwrap()
    }

    fn identity(n: usize) -> Diagonal {
        perm_diag(&(0..n).collect::<Vec<_>>())
    }

    fn degrees(g: &CycleGraph) -> Vec<usize> {
        let mut deg = vec![0; 2 * g.n];
        for c in &g.cycles {
            for e in &c.edges {
                deg[e.row] += 1;
                deg[g.n + e.col] += 1;
            }
        }
        deg
    }

    #[test]
    fn transposition_pairs_give_four_cycles() {
        // Identity and (1 2)(3 4)(5 6) share only (0, 0).
        let g = build_cycle_graph(
            &identity(7),
            &perm_diag(&[0, 2, 1, 4, 3, 6, 5]),
            Cell::new(0, 0),
        )
        .unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(
            g.cycles.iter().map(Cycle::len).collect::<Vec<_>>(),
            vec![4, 4, 4]
        );
        let deg = degrees(&g);
        assert_eq!(deg[0], 0);
        assert_eq!(deg[7], 0);
        assert!(deg.iter().all(|&d| d == 0 || d == 2));
    }

    #[test]
    fn rejects_diagonals_meeting_twice() {
        assert!(
            build_cycle_graph(&identity(5), &perm_diag(&[0, 1, 3, 4, 2]), Cell::new(0, 0)).is_err()
        );
    }

    #[test]
    fn same_short_cycle_plus_filler() {
        let g = build_cycle_graph(
            &identity(7),
            &perm_diag(&[0, 2, 1, 4, 3, 6, 5]),
            Cell::new(0, 0),
        )
        .unwrap();
        let h = find_h(&g, Vertex::Row(3), Vertex::Col(4)).unwrap();
        assert_eq!(h.edges.len(), 6);
        assert!(h.vertices.len() <= 7);
        assert_eq!(h.whole_cycles[0], 1);
        assert!(h.vertices.contains(&Vertex::Row(3)) && h.vertices.contains(&Vertex::Col(4)));
    }

    #[test]
    fn long_cycle_gives_a_window_path() {
        // 0 fixed, (1 2 3 4 5 6) one long cycle of 12 edges.
        let g = build_cycle_graph(
            &identity(7),
            &perm_diag(&[0, 2, 3, 4, 5, 6, 1]),
            Cell::new(0, 0),
        )
        .unwrap();
        assert_eq!(g.cycles.len(), 1);
        assert_eq!(g.cycles[0].len(), 12);
        for (u, v) in [(1, 1), (1, 4), (6, 2), (2, 6), (4, 1)] {
            let h = find_h(&g, Vertex::Row(u), Vertex::Col(v)).unwrap();
            assert_eq!(h.edges.len(), 6);
            assert_eq!(h.vertices.len(), 7);
            assert!(h.whole_cycles.is_empty() && h.path.is_some());
        }
    }

    #[test]
    fn disjoint_cycles_four_and_eight() {
        // (1 2) gives a 4-cycle, (3 4 5 6) an 8-cycle.
        let g = build_cycle_graph(
            &identity(7),
            &perm_diag(&[0, 2, 1, 4, 5, 6, 3]),
            Cell::new(0, 0),
        )
        .unwrap();
        let lens: Vec<usize> = g.cycles.iter().map(Cycle::len).collect();
        assert_eq!(lens, vec![4, 8]);
        let h = find_h(&g, Vertex::Row(1), Vertex::Col(5)).unwrap();
        assert_eq!(h.whole_cycles, vec![0]);
        let (k, path) = h.path.clone().unwrap();
        assert_eq!(k, 1);
        assert_eq!(path.len(), 3);
        assert_eq!(path[0], Vertex::Col(5));
        assert_eq!(h.edges.len(), 6);
        assert_eq!(h.vertices.len(), 7);
    }

    #[test]
    fn exhaustive_partner_permutations_order_seven() {
        // Every T2 meeting the identity exactly in (0, 0), every (u, v).
        let n = 7;
        let mut perm: Vec<usize> = (1..n).collect();
        let mut count = 0;
        loop {
            if perm.iter().enumerate().all(|(k, &p)| p != k + 1) {
                let mut full = vec![0];
                full.extend(&perm);
                let g =
                    build_cycle_graph(&identity(n), &perm_diag(&full), Cell::new(0, 0)).unwrap();
                for r in 1..n {
                    for c in 1..n {
                        let h = find_h(&g, Vertex::Row(r), Vertex::Col(c)).unwrap();
                        let (s, t) = (h.rows().len(), h.cols().len());
                        assert!(s.abs_diff(t) <= 1);
                    }
                }
                count += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        assert_eq!(count, 265); // derangements of 6
    }

    fn next_permutation(a: &mut [usize]) -> bool {
        let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
            return false;
        };
        let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }
}
