//! Bipartite matching, systems of distinct representatives, and proper edge
//! coloring of bipartite multigraphs.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("vertex {vertex} out of range for a side of size {size}")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("{colors} colors cannot properly color a graph of maximum degree {max_degree}")]
    TooFewColors { colors: usize, max_degree: usize },
}

/// A simple bipartite graph given by left-side adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn from_adjacency(right: usize, adj: Vec<Vec<usize>>) -> Result<Self, MatchingError> {
        for &v in adj.iter().flatten() {
            if v >= right {
                return Err(MatchingError::VertexOutOfRange {
                    vertex: v,
                    size: right,
                });
            }
        }
        Ok(BipartiteGraph { right, adj })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), MatchingError> {
        if u >= self.adj.len() {
            return Err(MatchingError::VertexOutOfRange {
                vertex: u,
                size: self.adj.len(),
            });
        }
        if v >= self.right {
            return Err(MatchingError::VertexOutOfRange {
                vertex: v,
                size: self.right,
            });
        }
        if !self.adj[u].contains(&v) {
            self.adj[u].push(v);
        }
        Ok(())
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }
}

/// `(left, right)` pairs sorted by left vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner_of_left(&self, u: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == u).map(|p| p.1)
    }
}

struct Kuhn<'a> {
    g: &'a BipartiteGraph,
    match_right: Vec<Option<usize>>,
    visited: Vec<bool>,
}

impl Kuhn<'_> {
    fn augment(&mut self, u: usize) -> bool {
        for &v in &self.g.adj[u] {
            if self.visited[v] {
                continue;
            }
            self.visited[v] = true;
            if self.match_right[v].is_none_or(|w| self.augment(w)) {
                self.match_right[v] = Some(u);
                return true;
            }
        }
        false
    }
}

/// Maximum-cardinality matching by augmenting paths, left vertices in
/// ascending order and neighbors in adjacency order.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let mut kuhn = Kuhn {
        g,
        match_right: vec![None; g.right],
        visited: vec![false; g.right],
    };
    for u in 0..g.left() {
        kuhn.visited.iter_mut().for_each(|x| *x = false);
        kuhn.augment(u);
    }
    let mut pairs: Vec<(usize, usize)> = kuhn
        .match_right
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.map(|u| (u, v)))
        .collect();
    pairs.sort_unstable();
    Matching { pairs }
}

/// A family of sets violating Hall's condition: their union is smaller than
/// the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolation {
    /// Indices into the family.
    pub family: Vec<usize>,
    /// Union of the sets in `family`.
    pub union: Vec<usize>,
}

/// Distinct representatives `reps[k] ∈ sets[k]`, or a Hall violator.
///
/// Elements are arbitrary `usize` labels.
pub fn find_sdr(sets: &[Vec<usize>]) -> Result<Vec<usize>, HallViolation> {
    let mut ground: Vec<usize> = sets.iter().flatten().copied().collect();
    ground.sort_unstable();
    ground.dedup();
    let index = |x: usize| ground.binary_search(&x).unwrap();
    let adj: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut a: Vec<usize> = s.iter().map(|&x| index(x)).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let g = BipartiteGraph {
        right: ground.len(),
        adj,
    };
    let m = max_matching(&g);
    if m.len() == sets.len() {
        return Ok(m.pairs.iter().map(|&(_, v)| ground[v]).collect());
    }
    // Left vertices reachable by alternating paths from an unmatched one
    // form a family whose neighborhood is matched into strictly fewer sets.
    let mut match_left = vec![None; sets.len()];
    let mut match_right = vec![None; ground.len()];
    for &(u, v) in &m.pairs {
        match_left[u] = Some(v);
        match_right[v] = Some(u);
    }
    let start = (0..sets.len()).find(|&u| match_left[u].is_none()).unwrap();
    let mut in_family = vec![false; sets.len()];
    let mut in_union = vec![false; ground.len()];
    let mut stack = vec![start];
    in_family[start] = true;
    while let Some(u) = stack.pop() {
        for &v in &g.adj[u] {
            if !in_union[v] {
                in_union[v] = true;
                let w = match_right[v].expect("no augmenting path in a maximum matching");
                if !in_family[w] {
                    in_family[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    Err(HallViolation {
        family: (0..sets.len()).filter(|&u| in_family[u]).collect(),
        union: (0..ground.len())
            .filter(|&v| in_union[v])
            .map(|v| ground[v])
            .collect(),
    })
}

/// A bipartite multigraph; edge `k` is `edges[k]` and the index is its
/// stable identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteMultigraph {
            left,
            right,
            edges: Vec::new(),
        }
    }

    /// Adds an edge and returns its identifier.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, MatchingError> {
        if u >= self.left {
            return Err(MatchingError::VertexOutOfRange {
                vertex: u,
                size: self.left,
            });
        }
        if v >= self.right {
            return Err(MatchingError::VertexOutOfRange {
                vertex: v,
                size: self.right,
            });
        }
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_degree(&self) -> usize {
        let mut deg_l = vec![0usize; self.left];
        let mut deg_r = vec![0usize; self.right];
        for &(u, v) in &self.edges {
            deg_l[u] += 1;
            deg_r[v] += 1;
        }
        deg_l.into_iter().chain(deg_r).max().unwrap_or(0)
    }
}

/// Proper edge coloring with colors `0..colors`, indexed by edge identifier.
///
/// Edges are inserted in identifier order. When the edge `uv` finds no color
/// free at both ends, pick `a` free at `u` and `b` free at `v`, swap `a` and
/// `b` along the alternating path leaving `v` on color `a` (it cannot reach
/// `u` in a bipartite graph), then color `uv` with `a`.
pub fn edge_color_bipartite(
    g: &BipartiteMultigraph,
    colors: usize,
) -> Result<Vec<usize>, MatchingError> {
    let max_degree = g.max_degree();
    if colors < max_degree {
        return Err(MatchingError::TooFewColors { colors, max_degree });
    }
    // at[side][vertex][color] = edge using that color at the vertex
    let mut at_left = vec![vec![None::<usize>; colors]; g.left];
    let mut at_right = vec![vec![None::<usize>; colors]; g.right];
    let mut color_of = vec![usize::MAX; g.edges.len()];

    for (e, &(u, v)) in g.edges.iter().enumerate() {
        let a = (0..colors)
            .find(|&c| at_left[u][c].is_none())
            .expect("degree bound leaves a free color");
        if at_right[v][a].is_some() {
            let b = (0..colors)
                .find(|&c| at_right[v][c].is_none())
                .expect("degree bound leaves a free color");
            // Collect the a/b alternating path starting at v with color a.
            let mut path = Vec::new();
            let mut on_right = true;
            let mut vertex = v;
            let mut want = a;
            loop {
                let next = if on_right {
                    at_right[vertex][want]
                } else {
                    at_left[vertex][want]
                };
                let Some(edge) = next else { break };
                path.push(edge);
                let (eu, ev) = g.edges[edge];
                vertex = if on_right { eu } else { ev };
                on_right = !on_right;
                want = if want == a { b } else { a };
            }
            for &edge in &path {
                let (eu, ev) = g.edges[edge];
                let c = color_of[edge];
                at_left[eu][c] = None;
                at_right[ev][c] = None;
            }
            for &edge in &path {
                let (eu, ev) = g.edges[edge];
                let c = if color_of[edge] == a { b } else { a };
                color_of[edge] = c;
                at_left[eu][c] = Some(edge);
                at_right[ev][c] = Some(edge);
            }
            debug_assert!(at_left[u][a].is_none() && at_right[v][a].is_none());
        }
        color_of[e] = a;
        at_left[u][a] = Some(e);
        at_right[v][a] = Some(e);
    }
    Ok(color_of)
}
