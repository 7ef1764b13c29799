mod common;

use balanced_diagonals::latin::{
    complete, is_exceptional_form, symbol_diagonals, symbol_partition, Completion, LatinSquare,
    PartialLatinSquare, DEFAULT_NODE_BUDGET,
};
use balanced_diagonals::matching::{
    edge_color_bipartite, find_sdr, max_matching, BipartiteGraph, BipartiteMultigraph,
};
use balanced_diagonals::ryser::{check_ryser_condition, complete_corner, CornerBlock};
use balanced_diagonals::Cell;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Plain cell-by-cell backtracking, no pruning beyond row and column checks.
fn brute_completable(p: &PartialLatinSquare) -> bool {
    fn go(n: usize, e: &mut [usize], k: usize) -> bool {
        if k == n * n {
            return true;
        }
        if e[k] != 0 {
            return go(n, e, k + 1);
        }
        let (r, c) = (k / n, k % n);
        for x in 1..=n {
            if (0..n).any(|j| e[r * n + j] == x) || (0..n).any(|i| e[i * n + c] == x) {
                continue;
            }
            e[k] = x;
            if go(n, e, k + 1) {
                return true;
            }
            e[k] = 0;
        }
        false
    }
    let mut e: Vec<usize> = p.entries().iter().map(|x| x.unwrap_or(0)).collect();
    go(p.n(), &mut e, 0)
}

fn is_latin(ls: &LatinSquare) -> bool {
    let n = ls.n();
    (0..n).all(|i| {
        let row: std::collections::BTreeSet<_> = (0..n).map(|j| ls.get(Cell::new(i, j))).collect();
        let col: std::collections::BTreeSet<_> = (0..n).map(|j| ls.get(Cell::new(j, i))).collect();
        row.len() == n && col.len() == n
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn below_order_always_completes(n in 2usize..=9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = (seed as usize) % n;
        let p = common::random_pls(n, size, &mut rng);
        let ls = complete(&p, DEFAULT_NODE_BUDGET).unwrap().into_square();
        prop_assert!(ls.as_ref().is_some_and(|ls| ls.extends(&p) && is_latin(ls)));
    }

    #[test]
    fn completer_agrees_with_backtracking(n in 2usize..=4, size_frac in 0.0f64..1.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = ((n * n) as f64 * size_frac) as usize;
        let p = common::random_pls(n, size.min(n * n - 1), &mut rng);
        match complete(&p, DEFAULT_NODE_BUDGET).unwrap() {
            Completion::Completed(ls) => prop_assert!(ls.extends(&p) && is_latin(&ls)),
            Completion::ProvenInfeasible => prop_assert!(!brute_completable(&p)),
            Completion::BudgetExceeded { .. } => prop_assert!(false, "budget at n <= 4"),
        }
    }

    #[test]
    fn exceptional_forms_are_exactly_the_blocked_ones(n in 2usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = if seed % 2 == 0 { common::crowded_pls(n, &mut rng) } else { common::random_pls(n, n, &mut rng) };
        let form = is_exceptional_form(&p).unwrap();
        prop_assert_eq!(form.is_none(), brute_completable(&p));
        prop_assert_eq!(form.is_some(), is_exceptional_form(&p.transpose()).unwrap().is_some());
    }

    #[test]
    fn symbol_diagonals_partition_the_square(n in 1usize..=10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_pls(n, n / 2, &mut rng);
        let ls = complete(&p, DEFAULT_NODE_BUDGET).unwrap().into_square().unwrap();
        let diags = symbol_diagonals(&ls);
        prop_assert_eq!(diags.len(), n);
        let mut seen = vec![false; n * n];
        for d in &diags {
            for c in d.diagonal.cells() {
                prop_assert!(!seen[c.row * n + c.col]);
                seen[c.row * n + c.col] = true;
                prop_assert_eq!(ls.get(*c), d.symbol);
            }
        }
        prop_assert_eq!(symbol_partition(&ls).diagonals().len(), n);
    }

    #[test]
    fn corner_completion_matches_the_count_condition(n in 2usize..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = 1 + (seed as usize) % n;
        let s = 1 + (seed as usize / 7) % n;
        let block = common::random_block(n, r, s, &mut rng);
        let b = CornerBlock::new(n, r, s, block.clone()).unwrap();
        let condition = check_ryser_condition(&b).is_ok();
        // The count condition is necessary and sufficient, so the generic
        // completer must agree with it.
        let pls = common::block_as_pls(n, r, s, &block);
        let brute = complete(&pls, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert_eq!(condition, matches!(brute, Completion::Completed(_)));
        match complete_corner(&b) {
            Ok(ls) => {
                prop_assert!(condition);
                prop_assert!(is_latin(&ls) && ls.extends(&pls));
            }
            Err(_) => prop_assert!(!condition),
        }
    }

    #[test]
    fn matching_size_is_maximum(left in 1usize..=8, right in 1usize..=8, bits in prop::collection::vec(any::<u64>(), 8)) {
        let mask = (1u64 << right) - 1;
        let adj: Vec<u64> = bits[..left].iter().map(|b| b & mask).collect();
        let mut g = BipartiteGraph::new(left, right);
        for (u, &a) in adj.iter().enumerate() {
            for v in 0..right {
                if a >> v & 1 == 1 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let m = max_matching(&g);
        prop_assert_eq!(m.len(), common::brute_max_matching(&adj));
        let mut rights: Vec<usize> = m.pairs.iter().map(|p| p.1).collect();
        rights.sort_unstable();
        rights.dedup();
        prop_assert_eq!(rights.len(), m.len());
        prop_assert!(m.pairs.iter().all(|&(u, v)| g.has_edge(u, v)));
    }

    #[test]
    fn sdr_or_hall_violator(sets in prop::collection::vec(prop::collection::vec(0usize..8, 0..4), 1..8)) {
        match find_sdr(&sets) {
            Ok(reps) => {
                prop_assert_eq!(reps.len(), sets.len());
                prop_assert!(reps.iter().zip(&sets).all(|(r, s)| s.contains(r)));
                let mut d = reps.clone();
                d.sort_unstable();
                d.dedup();
                prop_assert_eq!(d.len(), reps.len());
            }
            Err(v) => {
                let mut union: Vec<usize> = v.family.iter().flat_map(|&k| sets[k].iter().copied()).collect();
                union.sort_unstable();
                union.dedup();
                prop_assert_eq!(&union, &v.union);
                prop_assert!(union.len() < v.family.len());
            }
        }
    }

    #[test]
    fn edge_coloring_uses_max_degree_colors(left in 1usize..=6, right in 1usize..=6, edges in prop::collection::vec((0usize..6, 0usize..6), 0..40)) {
        let mut g = BipartiteMultigraph::new(left, right);
        for (u, v) in edges {
            g.add_edge(u % left, v % right).unwrap();
        }
        let delta = g.max_degree();
        let colors = edge_color_bipartite(&g, delta).unwrap();
        let mut used = std::collections::HashSet::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert!(colors[e] < delta);
            prop_assert!(used.insert((0, u, colors[e])));
            prop_assert!(used.insert((1, v, colors[e])));
        }
        if delta > 0 {
            prop_assert!(edge_color_bipartite(&g, delta - 1).is_err());
        }
    }
}
