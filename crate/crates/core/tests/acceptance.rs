//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use balanced_diagonals::decompose::{
    decompose, decompose_traced, decompose_with, DecomposeOptions, Decomposition,
};
use balanced_diagonals::grid::{matchings_to_partition, to_balanced_matchings};
use balanced_diagonals::latin::{
    complete, is_exceptional_form, Completion, PartialLatinSquare, DEFAULT_NODE_BUDGET,
};
use balanced_diagonals::matching::{
    edge_color_bipartite, max_matching, BipartiteGraph, BipartiteMultigraph,
};
use balanced_diagonals::oracle::{exhaustive_necessity_sweep, random_grid, GridSpec};
use balanced_diagonals::ryser::{check_ryser_condition, complete_corner, CornerBlock};
use balanced_diagonals::{verify_partition, BicoloredGrid, Cell, Cross, FeasibilityWitness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cross_infeasible() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 7..=12 {
        let grid = BicoloredGrid::from_blue_cells(n, Cross::new(0, 0).cells(n).iter()).unwrap();
        ensure(
            grid.count(balanced_diagonals::Color::Blue) == 2 * n - 2,
            || format!("n={n}: cross has wrong size"),
        )?;
        let start = Instant::now();
        let d = decompose(&grid).map_err(|e| format!("n={n}: {e}"))?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        match d {
            Decomposition::Infeasible(w @ FeasibilityWitness::ImproperColorClass { .. }) => {
                ensure(w.verify(&grid), || {
                    format!("n={n}: certificate does not verify")
                })?
            }
            other => return Err(format!("n={n}: expected improper class, got {other:?}")),
        }
        ensure(elapsed < Duration::from_secs(1), || {
            format!("n={n}: took {elapsed:?}")
        })?;
    }
    Ok(format!(
        "n=7..12 infeasible with cross certificate, slowest {slowest:.2?}"
    ))
}

fn necessity_sweeps() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let start = Instant::now();
        let report = exhaustive_necessity_sweep(n).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(report.colorings == 1 << (n * n), || {
            format!("n={n}: incomplete sweep")
        })?;
        ensure(report.counterexamples.is_empty(), || {
            format!("n={n}: {} counterexamples", report.counterexamples.len())
        })?;
        if n == 4 {
            ensure(elapsed < Duration::from_secs(30 * 60), || {
                format!("n=4 took {elapsed:?}")
            })?;
        }
        parts.push(format!(
            "n={n}: {} colorings 0 counterexamples ({elapsed:.1?})",
            report.colorings
        ));
    }
    Ok(parts.join("; "))
}

/// Runs decompose over seeded instances; returns the JSON of each partition.
fn solve_all(
    n: usize,
    count: u64,
    spec_for: impl Fn(u64) -> GridSpec,
    roundtrip: bool,
    times: &mut Vec<Duration>,
) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for seed in 0..count {
        let grid = random_grid(n, spec_for(seed), seed).map_err(|e| e.to_string())?;
        let opts = DecomposeOptions {
            seed,
            ..DecomposeOptions::default()
        };
        let start = Instant::now();
        let d = decompose_with(&grid, &opts).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
        times.push(start.elapsed());
        let Decomposition::Partition(p) = d else {
            return Err(format!("n={n} seed={seed}: no partition: {d:?}"));
        };
        let report = verify_partition(&grid, &p);
        ensure(report.is_valid(), || format!("n={n} seed={seed}: {report}"))?;
        if roundtrip {
            let matchings = to_balanced_matchings(&grid, &p).map_err(|e| e.to_string())?;
            ensure(matchings_to_partition(n, &matchings) == p, || {
                format!("n={n} seed={seed}: adapter round trip differs")
            })?;
        }
        out.push(p.to_json());
    }
    Ok(out)
}

fn sufficiency(outputs: &mut Vec<String>) -> Outcome {
    let mut parts = Vec::new();
    for n in [7, 8, 10, 12] {
        let mut times = Vec::new();
        outputs.extend(solve_all(
            n,
            500,
            |_| GridSpec::ConditionSatisfying,
            false,
            &mut times,
        )?);
        times.sort();
        let median = times[times.len() / 2];
        if n == 12 {
            ensure(median < Duration::from_secs(2), || {
                format!("n=12 median {median:?}")
            })?;
        }
        let full = full_construction_runs(n, 500)?;
        parts.push(format!(
            "n={n} 500/500 median {median:.2?} ({full} ran every stage)"
        ));
    }
    Ok(parts.join("; "))
}

/// The same grids with the early exits disabled; counts the instances on
/// which the rectangle stages ran.
fn full_construction_runs(n: usize, count: u64) -> Result<usize, String> {
    let mut full = 0;
    for seed in 0..count {
        let grid =
            random_grid(n, GridSpec::ConditionSatisfying, seed).map_err(|e| e.to_string())?;
        let opts = DecomposeOptions {
            seed,
            full_construction: true,
            ..DecomposeOptions::default()
        };
        let (d, trace) =
            decompose_traced(&grid, &opts).map_err(|e| format!("n={n} seed={seed} full: {e}"))?;
        let p = d
            .partition()
            .ok_or_else(|| format!("n={n} seed={seed} full: no partition"))?;
        ensure(verify_partition(&grid, p).is_valid(), || {
            format!("n={n} seed={seed} full: invalid")
        })?;
        full += trace.block.is_some() as usize;
    }
    Ok(full)
}

/// Alternates exactly `2n - 1` blue, exactly `2n - 1` red, and at least
/// `2n - 1` of each with the remaining cells random.
fn two_n_minus_one_spec(n: usize) -> impl Fn(u64) -> GridSpec {
    move |seed| match seed % 3 {
        0 => GridSpec::ExactBlue(2 * n - 1),
        1 => GridSpec::ExactBlue(n * n - (2 * n - 1)),
        _ => GridSpec::AtLeastEach(2 * n - 1),
    }
}

fn two_n_minus_one(outputs: &mut Vec<String>) -> Outcome {
    for n in 7..=12 {
        let mut times = Vec::new();
        outputs.extend(solve_all(n, 500, two_n_minus_one_spec(n), true, &mut times)?);
    }
    Ok("n=7..12 3000/3000 solved, verified, matching round trip exact".into())
}

fn small_completions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 4..=8 {
        for k in 0..1000 {
            let p = common::random_pls(n, n - 1, &mut rng);
            match complete(&p, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())? {
                Completion::Completed(ls) => ensure(ls.extends(&p), || {
                    format!("n={n} #{k}: completion disagrees")
                })?,
                other => return Err(format!("n={n} #{k}: {other:?} on\n{p}")),
            }
        }
    }
    Ok("n=4..8 5000/5000 size n-1 squares completed".into())
}

fn verdict(p: &PartialLatinSquare) -> Result<bool, String> {
    match complete(p, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())? {
        Completion::Completed(ls) if ls.extends(p) => Ok(true),
        Completion::ProvenInfeasible => Ok(false),
        other => Err(format!("inconclusive {other:?} on\n{p}")),
    }
}

fn exceptional_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut random = 0;
    let mut blocked = 0;
    for n in 4..=6 {
        for k in 0..2400 {
            let p = if k % 2 == 0 {
                common::random_pls(n, n, &mut rng)
            } else {
                common::crowded_pls(n, &mut rng)
            };
            let completes = verdict(&p)?;
            let form = is_exceptional_form(&p).map_err(|e| e.to_string())?;
            ensure(completes == form.is_none(), || {
                format!("n={n}: completer says {completes}, form {form:?} on\n{p}")
            })?;
            random += 1;
            blocked += !completes as usize;
        }
    }
    let mut patterns = 0;
    let mut exhaustive_blocked = 0;
    let labelings = common::restricted_growth(4);
    for cells in common::subsets(16, 4) {
        for lab in &labelings {
            let filled = cells
                .iter()
                .zip(lab)
                .map(|(&k, &x)| (Cell::new(k / 4, k % 4), x + 1));
            let Ok(p) = PartialLatinSquare::from_cells(4, filled) else {
                continue;
            };
            if p.validate().is_err() {
                continue;
            }
            let completes = verdict(&p)?;
            let form = is_exceptional_form(&p).map_err(|e| e.to_string())?;
            ensure(completes == form.is_none(), || {
                format!("n=4 exhaustive: completer says {completes}, form {form:?} on\n{p}")
            })?;
            patterns += 1;
            exhaustive_blocked += !completes as usize;
        }
    }
    Ok(format!(
        "{random} random (n=4..6, {blocked} non-completable) and {patterns} canonical n=4 patterns ({exhaustive_blocked} non-completable) agree"
    ))
}

fn check_block(n: usize, r: usize, s: usize, block: Vec<usize>) -> Result<bool, String> {
    let pls = common::block_as_pls(n, r, s, &block);
    let b = CornerBlock::new(n, r, s, block).map_err(|e| e.to_string())?;
    let ok = check_ryser_condition(&b).is_ok();
    if ok {
        let ls = complete_corner(&b).map_err(|e| format!("{e} on {b:?}"))?;
        ensure(
            ls.to_partial().validate().is_ok() && ls.extends(&pls),
            || format!("corner completion does not extend {b:?}"),
        )?;
    } else {
        ensure(complete_corner(&b).is_err(), || {
            format!("condition fails but completed {b:?}")
        })?;
    }
    ensure(verdict(&pls)? == ok, || {
        format!("exact solver disagrees on {b:?}")
    })?;
    Ok(ok)
}

fn corner_blocks() -> Outcome {
    let mut counts = [0usize; 2];
    let n = 4;
    for r in 1..n {
        for s in 1..n {
            for block in common::all_blocks(n, r, s) {
                counts[check_block(n, r, s, block)? as usize] += 1;
            }
        }
    }
    let exhaustive = counts;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 5;
    let mut sampled = [0usize; 2];
    for _ in 0..12_000 {
        let r = rng.random_range(1..n);
        let s = rng.random_range(1..n);
        let block = common::random_block(n, r, s, &mut rng);
        sampled[check_block(n, r, s, block)? as usize] += 1;
    }
    Ok(format!(
        "n=4 all {} blocks ({} violate); n=5 {} sampled ({} violate)",
        exhaustive[0] + exhaustive[1],
        exhaustive[0],
        sampled[0] + sampled[1],
        sampled[0]
    ))
}

fn check_matching(left: usize, right: usize, adj: &[u64]) -> Result<(), String> {
    let lists: Vec<Vec<usize>> = adj
        .iter()
        .map(|&m| (0..right).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    let g = BipartiteGraph::from_adjacency(right, lists).map_err(|e| e.to_string())?;
    let m = max_matching(&g);
    let mut used = 0u64;
    for &(u, v) in &m.pairs {
        ensure(
            u < left && adj[u] >> v & 1 == 1 && used >> v & 1 == 0,
            || format!("invalid matching on {adj:?}"),
        )?;
        used |= 1 << v;
    }
    let best = common::brute_max_matching(adj);
    ensure(m.len() == best, || {
        format!("size {} != {best} on {adj:?}", m.len())
    })
}

fn matching_cores() -> Outcome {
    let mut cases = 0;
    for (l, r) in [(3, 3), (4, 4), (2, 6), (6, 2)] {
        for bits in 0u64..1 << (l * r) {
            let adj: Vec<u64> = (0..l).map(|u| bits >> (u * r) & ((1 << r) - 1)).collect();
            check_matching(l, r, &adj)?;
            cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100_000 {
        let l = rng.random_range(0..=6);
        let r = rng.random_range(0..=6);
        let p: f64 = rng.random_range(0.05..0.95);
        let adj: Vec<u64> = (0..l)
            .map(|_| {
                (0..r)
                    .filter(|_| rng.random_bool(p))
                    .fold(0, |m, v| m | 1 << v)
            })
            .collect();
        check_matching(l, r, &adj)?;
        cases += 1;
    }
    let mut colorings = 0;
    for _ in 0..20_000 {
        let l = rng.random_range(1..=8);
        let r = rng.random_range(1..=8);
        let mut g = BipartiteMultigraph::new(l, r);
        for _ in 0..rng.random_range(0..40) {
            g.add_edge(rng.random_range(0..l), rng.random_range(0..r))
                .unwrap();
        }
        let delta = g.max_degree();
        let colors = edge_color_bipartite(&g, delta).map_err(|e| e.to_string())?;
        for (a, &(u1, v1)) in g.edges().iter().enumerate() {
            ensure(colors[a] < delta.max(1), || "color out of range".into())?;
            for (b, &(u2, v2)) in g.edges().iter().enumerate().skip(a + 1) {
                ensure(!(colors[a] == colors[b] && (u1 == u2 || v1 == v2)), || {
                    format!("edges {a} and {b} clash in {:?}", g.edges())
                })?;
            }
        }
        colorings += 1;
    }
    Ok(format!("{cases} matching cases equal brute force; {colorings} multigraphs properly colored with max-degree colors"))
}

fn determinism(first: &[String]) -> Outcome {
    let mut again = Vec::new();
    sufficiency(&mut again)?;
    two_n_minus_one(&mut again)?;
    ensure(again.len() == first.len(), || {
        "different instance counts".into()
    })?;
    let diff = first.iter().zip(&again).filter(|(a, b)| a != b).count();
    ensure(diff == 0, || format!("{diff} partitions differ on rerun"))?;
    Ok(format!(
        "{} partitions byte-identical on rerun",
        first.len()
    ))
}

fn main() {
    let mut outputs = Vec::new();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut record = |id: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let line = match &outcome {
            Ok(detail) => format!(
                "PASS criterion {id} ({name}): {detail} [{:.1?}]",
                start.elapsed()
            ),
            Err(detail) => format!("FAIL criterion {id} ({name}): {detail}"),
        };
        println!("{line}");
        results.push((id, name, outcome));
    };
    record(1, "cross counterexample", &mut cross_infeasible);
    record(2, "necessity sweeps", &mut necessity_sweeps);
    record(3, "sampled sufficiency", &mut || sufficiency(&mut outputs));
    record(4, "2n-1 cells of each color", &mut || {
        two_n_minus_one(&mut outputs)
    });
    record(5, "size n-1 completion", &mut small_completions);
    record(6, "exceptional forms", &mut exceptional_forms);
    record(7, "corner block completion", &mut corner_blocks);
    record(8, "matching and edge coloring", &mut matching_cores);
    let first = outputs.clone();
    record(9, "determinism", &mut || determinism(&first));
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
