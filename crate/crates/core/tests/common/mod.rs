//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use balanced_diagonals::latin::PartialLatinSquare;
use balanced_diagonals::Cell;
use rand::seq::SliceRandom;
use rand::Rng;

/// Maximum matching size by dynamic programming over subsets of the right
/// side. `adj[u]` is a bitmask of right neighbors.
pub fn brute_max_matching(adj: &[u64]) -> usize {
    fn go(
        adj: &[u64],
        u: usize,
        used: u64,
        memo: &mut std::collections::HashMap<(usize, u64), usize>,
    ) -> usize {
        if u == adj.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(u, used)) {
            return v;
        }
        let mut best = go(adj, u + 1, used, memo);
        let mut free = adj[u] & !used;
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free ^= bit;
            best = best.max(1 + go(adj, u + 1, used | bit, memo));
        }
        memo.insert((u, used), best);
        best
    }
    go(adj, 0, 0, &mut std::collections::HashMap::new())
}

/// A uniformly placed valid partial Latin square with `size` filled cells,
/// built by rejection.
pub fn random_pls(n: usize, size: usize, rng: &mut impl Rng) -> PartialLatinSquare {
    'outer: loop {
        let mut cells: Vec<usize> = (0..n * n).collect();
        cells.shuffle(rng);
        let mut p = PartialLatinSquare::new(n).unwrap();
        for &k in &cells[..size] {
            let cell = Cell::new(k / n, k % n);
            let mut symbols: Vec<usize> = (1..=n).collect();
            symbols.shuffle(rng);
            let ok = symbols.into_iter().find(|&s| {
                (0..n).all(|c| p.get(Cell::new(cell.row, c)) != Some(s))
                    && (0..n).all(|r| p.get(Cell::new(r, cell.col)) != Some(s))
            });
            match ok {
                Some(s) => p.set(cell, Some(s)).unwrap(),
                None => continue 'outer,
            }
        }
        return p;
    }
}

/// A size-`n` partial Latin square whose entries are confined to the first
/// two rows and two columns, where blocked configurations are common.
pub fn crowded_pls(n: usize, rng: &mut impl Rng) -> PartialLatinSquare {
    'outer: loop {
        let mut cells: Vec<Cell> = (0..n)
            .flat_map(|r| (0..n).map(move |c| Cell::new(r, c)))
            .filter(|c| c.row < 2 || c.col < 2)
            .collect();
        cells.shuffle(rng);
        let mut p = PartialLatinSquare::new(n).unwrap();
        for &cell in &cells[..n] {
            let s = rng.random_range(1..=n);
            if (0..n).any(|c| p.get(Cell::new(cell.row, c)) == Some(s))
                || (0..n).any(|r| p.get(Cell::new(r, cell.col)) == Some(s))
            {
                continue 'outer;
            }
            p.set(cell, Some(s)).unwrap();
        }
        return p;
    }
}

/// Every `r x s` block over symbols `1..=n` with no repeat in a row or
/// column, row-major.
pub fn all_blocks(n: usize, r: usize, s: usize) -> Vec<Vec<usize>> {
    fn fill(n: usize, r: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == r * s {
            out.push(cur.clone());
            return;
        }
        let (i, j) = (k / s, k % s);
        for x in 1..=n {
            if (0..j).any(|b| cur[i * s + b] == x) || (0..i).any(|a| cur[a * s + j] == x) {
                continue;
            }
            cur.push(x);
            fill(n, r, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, r, s, &mut Vec::new(), &mut out);
    out
}

/// A random `r x s` block with no repeat in a row or column.
pub fn random_block(n: usize, r: usize, s: usize, rng: &mut impl Rng) -> Vec<usize> {
    'outer: loop {
        let mut b = vec![0usize; r * s];
        for i in 0..r {
            for j in 0..s {
                let free: Vec<usize> = (1..=n)
                    .filter(|&x| {
                        (0..j).all(|c| b[i * s + c] != x) && (0..i).all(|a| b[a * s + j] != x)
                    })
                    .collect();
                if free.is_empty() {
                    continue 'outer;
                }
                b[i * s + j] = free[rng.random_range(0..free.len())];
            }
        }
        return b;
    }
}

pub fn block_as_pls(n: usize, r: usize, s: usize, block: &[usize]) -> PartialLatinSquare {
    PartialLatinSquare::from_cells(
        n,
        (0..r).flat_map(|i| (0..s).map(move |j| (Cell::new(i, j), block[i * s + j]))),
    )
    .unwrap()
}

/// Restricted growth strings of length `len`: symbol labelings up to
/// renaming.
pub fn restricted_growth(len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let m = v.iter().map(|&x| x + 1).max().unwrap_or(0);
                (0..=m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}
