//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use linchrom_core::colorings::is_linear;
use linchrom_core::exact::{chi_cen, chi_lin, find_uncentred_path, treedepth, SmallGraph};
use linchrom_core::gridcore::{random_spec, RandomSpecParams};
use linchrom_core::seed::{rng_from, split_seed};
use linchrom_core::witness::{
    build_witness, choose_representatives, classify_case, default_d, doubled_colour_set, packing_census, pick_up_two,
    prune_to_frequent, random_maximal_packing, CaseLabel, PickCase, WitnessError, WitnessParams,
};
use linchrom_core::{Colouring, Coord, Graph, GridGraph, GridObject, Pseudogrid, PseudogridSpec, VertexKind};
use rand::Rng;

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("witness soundness", witness_soundness),
        ("oracle agreement", oracle_agreement),
        ("pipeline success rate", pipeline_success_rate),
        ("packing bound", packing_bound),
        ("pick_up_two case coverage", pick_up_two_coverage),
        ("pruning and doubled-set bounds", pruning_and_doubled_set_bounds),
        ("determinism", determinism),
        ("small exact values", small_exact_values),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail} ({secs:.1}s)", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Independent witness check: a simple path of `g` on which no colour
/// occurs exactly once.
fn uncentred_path(g: &Graph, phi: &Colouring, path: &[usize]) -> bool {
    let n = g.vertex_count();
    if path.is_empty() || path.iter().any(|&v| v >= n) {
        return false;
    }
    let distinct: BTreeSet<usize> = path.iter().copied().collect();
    if distinct.len() != path.len() || !path.windows(2).all(|w| g.neighbors(w[0]).contains(&w[1])) {
        return false;
    }
    let mut counts = std::collections::HashMap::new();
    for &v in path {
        *counts.entry(phi.colour(v)).or_insert(0usize) += 1;
    }
    counts.values().all(|&c| c != 1)
}

fn instance(k: u32, random: bool, seed: u64) -> Pseudogrid {
    if random {
        let spec = random_spec(&RandomSpecParams::square(k), &mut rng_from(seed)).unwrap();
        Pseudogrid::build(&spec).unwrap()
    } else {
        Pseudogrid::plain(k, k).unwrap()
    }
}

/// Uniform over `c` colours, or with `skewed` the last colour is rare so
/// pruning has something to remove.
fn colouring(n: usize, c: u32, skewed: bool, seed: u64) -> Colouring {
    let mut rng = rng_from(seed);
    if !skewed || c < 2 {
        return Colouring::random(n, c, &mut rng);
    }
    let colours = (0..n)
        .map(|_| if rng.gen_bool(0.0005) { c - 1 } else { rng.gen_range(0..c - 1) })
        .collect();
    Colouring::from_colours(colours)
}

fn witness_soundness() -> Result<String, String> {
    // Weighted toward the smaller sides to keep the run short. Skewed
    // colourings only from k = 128 up: at k = 64 pruning leaves too little
    // grid for two (2r+1)-separated objects.
    let cells: [(u32, u32, u32); 6] = [(64, 2, 240), (64, 3, 140), (128, 2, 40), (128, 4, 70), (256, 4, 20), (256, 8, 20)];
    let (mut successes, mut runs, mut failures) = (0usize, 0usize, 0usize);
    let mut sizes = BTreeSet::new();
    for (k, c, trials) in cells {
        for t in 0..trials {
            let seed = split_seed(1, &[k as u64, c as u64, t as u64]);
            let pg = instance(k, t % 2 == 1, seed);
            let phi = colouring(pg.vertex_count(), c, k >= 128 && t % 3 == 2, seed ^ 1);
            let params = WitnessParams { r: 9, d: default_d(k, c, 9), budget: 64, seed };
            runs += 1;
            match build_witness(&pg, &phi, &params) {
                Ok(report) => {
                    ensure(uncentred_path(pg.graph(), &phi, &report.path), || {
                        format!("k={k} c={c} trial {t}: report does not re-verify")
                    })?;
                    successes += 1;
                    sizes.insert(k);
                }
                Err(WitnessError::BudgetExhausted { .. }) => failures += 1,
                Err(e) => return Err(format!("k={k} c={c} trial {t}: {e}")),
            }
        }
    }
    ensure(successes >= 500, || format!("only {successes} successes in {runs} runs"))?;
    ensure(sizes.len() == 3, || format!("sides covered: {sizes:?}"))?;
    Ok(format!("{successes}/{runs} runs produced witnesses, all re-verified ({failures} exhausted the budget)"))
}

fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn oracle_agreement() -> Result<String, String> {
    let mut rng = rng_from(2);
    for t in 0..200 {
        let n = rng.gen_range(1..=9);
        let g = random_graph(n, rng.gen_range(0.15..0.8), &mut rng);
        let small = SmallGraph::from_graph(&g).unwrap();
        let (cen, td, lin) = (chi_cen(&small).unwrap(), treedepth(&small).unwrap(), chi_lin(&small).unwrap());
        ensure(cen == td, || format!("graph {t}: chi_cen {cen} != treedepth {td}"))?;
        ensure(lin <= cen, || format!("graph {t}: chi_lin {lin} > chi_cen {cen}"))?;
    }
    let mut disagreements = 0;
    let mut linear = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(n, rng.gen_range(0.1..0.7), &mut rng);
        let phi = Colouring::random(n, rng.gen_range(1..=6), &mut rng);
        let found = find_uncentred_path(&SmallGraph::from_graph(&g).unwrap(), &phi).unwrap();
        let verdict = is_linear(&g, &phi).unwrap();
        linear += verdict.holds() as usize;
        if found.is_none() != verdict.holds() || found.is_some_and(|p| !uncentred_path(&g, &phi, &p)) {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || format!("{disagreements} of 500 pairs disagree"))?;
    Ok(format!("200 graphs agree; 500 pairs agree ({linear} linear)"))
}

fn pipeline_success_rate() -> Result<String, String> {
    let (k, c, r) = (256, 8, 9);
    let mut successes = 0;
    let mut slowest = Duration::ZERO;
    for t in 0..50u64 {
        let seed = split_seed(3, &[t]);
        let pg = Pseudogrid::plain(k, k).unwrap();
        let phi = Colouring::random(pg.vertex_count(), c, &mut rng_from(seed));
        let params = WitnessParams { r, d: default_d(k, c, r), budget: 64, seed };
        let start = Instant::now();
        let outcome = build_witness(&pg, &phi, &params);
        slowest = slowest.max(start.elapsed());
        if let Ok(report) = outcome {
            successes += uncentred_path(pg.graph(), &phi, &report.path) as usize;
        }
    }
    ensure(successes >= 45, || format!("{successes}/50 successes"))?;
    ensure(slowest < Duration::from_secs(60), || format!("slowest trial took {slowest:?}"))?;
    Ok(format!("{successes}/50 successes, slowest trial {} ms", slowest.as_millis()))
}

fn packing_bound() -> Result<String, String> {
    let g = GridGraph::square(200).unwrap();
    let mut worst = 0;
    for t in 0..10_000u64 {
        let q = random_maximal_packing(&g, 10, &mut rng_from(split_seed(4, &[t])));
        let census = packing_census(&q, 10, &g).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(census <= 16, || format!("trial {t}: census {census}"))?;
        worst = worst.max(census);
    }
    Ok(format!("10000 packings, largest census {worst}"))
}

/// Square pseudogrid of side `a` with every inner vertex of `kind` (path of
/// `len` vertices) and every edge subdivided `subdiv` times.
fn uniform_pseudogrid(a: u32, kind: VertexKind, len: u32, subdiv: u32) -> Pseudogrid {
    let mut spec = PseudogridSpec::new(a, a).unwrap();
    for e in spec.grid().edges().collect::<Vec<_>>() {
        spec.set_subdiv(e, subdiv).unwrap();
    }
    for i in 2..a {
        for j in 2..a {
            spec.set_vertex(Coord::new(i, j), kind, len).unwrap();
        }
    }
    Pseudogrid::build(&spec).unwrap()
}

/// Terminals on column `i`: the bottom corner, the top corner, the middle
/// vertex, and (if the edge is subdivided) an internal vertex of the edge
/// above the middle.
fn terminals(pg: &Pseudogrid, i: u32) -> Vec<(usize, usize)> {
    let a = pg.grid().width();
    let mid = a.div_ceil(2);
    let mut out = vec![
        (0, pg.part(GridObject::vertex(i, 1))[0]),
        (1, pg.part(GridObject::vertex(i, a))[0]),
        (2, pg.part(GridObject::vertex(i, mid))[0]),
    ];
    let edge = GridObject::edge(Coord::new(i, mid), Coord::new(i, mid + 1)).unwrap();
    if let Some(&x) = pg.part(edge).first() {
        out.push((3, x));
    }
    out
}

fn pick_up_two_coverage() -> Result<String, String> {
    let mut families = Vec::new();
    for a in [5u32, 6] {
        families.push(uniform_pseudogrid(a, VertexKind::Single, 1, 1));
        for kind in [VertexKind::Q1, VertexKind::Q2, VertexKind::Q3] {
            for len in [2, 3] {
                families.push(uniform_pseudogrid(a, kind, len, 1));
            }
        }
        // Mixed kinds and uneven subdivisions.
        let mut rng = rng_from(5 + a as u64);
        for _ in 0..2 {
            let params = RandomSpecParams { subdiv_prob: 0.7, path_prob: 0.8, ..RandomSpecParams::square(a) };
            families.push(Pseudogrid::build(&random_spec(&params, &mut rng).unwrap()).unwrap());
        }
    }
    // Every pair of targets is routed between one rotating pair of terminals,
    // plus any terminal pair its case label has not met yet.
    let mut covered: BTreeSet<(CaseLabel, usize, usize)> = BTreeSet::new();
    let (mut checked, mut rotation) = (0usize, 0usize);
    for pg in &families {
        let a = pg.grid().width();
        let (starts, ends) = (terminals(pg, 1), terminals(pg, a));
        let combos: Vec<((usize, usize), (usize, usize))> =
            starts.iter().flat_map(|&s| ends.iter().map(move |&t| (s, t))).collect();
        let inner = pg.interior_vertices(1);
        for (n, &v) in inner.iter().enumerate() {
            for &w in &inner[n..] {
                let label = classify_case(pg, v, w);
                rotation += 1;
                for (m, &((sc, s), (tc, t))) in combos.iter().enumerate() {
                    if m != rotation % combos.len() && covered.contains(&(label, sc, tc)) {
                        continue;
                    }
                    let path =
                        pick_up_two(pg, s, v, w, t).map_err(|e| format!("a={a} s={s} v={v} w={w} t={t}: {e}"))?;
                    let ok = path.first() == Some(&s)
                        && path.last() == Some(&t)
                        && path.contains(&v)
                        && path.contains(&w)
                        && simple_path(pg.graph(), &path);
                    ensure(ok, || format!("a={a} s={s} v={v} w={w} t={t}: invalid path {path:?}"))?;
                    covered.insert((label, sc, tc));
                    checked += 1;
                }
            }
        }
    }
    let cases = [
        PickCase::EdgesOnly,
        PickCase::VerticalIncident,
        PickCase::HorizontalIncident,
        PickCase::SameColumn,
        PickCase::DifferentColumns,
    ];
    let kinds = [VertexKind::Single, VertexKind::Q1, VertexKind::Q2, VertexKind::Q3];
    for case in cases {
        for kind in kinds {
            for (sc, tc) in (0..4).flat_map(|s| (0..4).map(move |t| (s, t))) {
                let seen = covered
                    .iter()
                    .any(|&(l, s, t)| l.case == case && (case == PickCase::EdgesOnly || l.first == Some(kind)) && (s, t) == (sc, tc));
                ensure(seen, || format!("case {case}, {kind:?} vertex, terminals {sc}/{tc} never exercised"))?;
            }
        }
    }
    let labels: BTreeSet<CaseLabel> = covered.iter().map(|c| c.0).collect();
    Ok(format!("{checked} paths over {} pseudogrids, {} case labels x 16 terminal pairs", families.len(), labels.len()))
}

fn simple_path(g: &Graph, path: &[usize]) -> bool {
    let distinct: BTreeSet<usize> = path.iter().copied().collect();
    distinct.len() == path.len() && path.windows(2).all(|w| g.neighbors(w[0]).contains(&w[1]))
}

fn pruning_and_doubled_set_bounds() -> Result<String, String> {
    let r = 9;
    let (mut runs, mut pruned, mut sets) = (0, 0, 0);
    for t in 0..120u64 {
        let seed = split_seed(6, &[t]);
        let k = if t % 4 == 3 { 128 } else { 64 };
        let c = 2 + (t % 3) as u32;
        let pg = instance(k, t % 2 == 1, seed);
        let phi = colouring(pg.vertex_count(), c, t % 3 != 0, seed ^ 1);
        let colours = phi.used().len() as u32;
        let d = default_d(k, colours, r).max(1);
        let out = match prune_to_frequent(&pg, &phi, d, r) {
            Ok(out) => out,
            Err(WitnessError::TooManyColours { .. }) => continue,
            Err(e) => return Err(format!("run {t}: {e}")),
        };
        runs += 1;
        let k_prime = out.k() as i64;
        let bound = k as i64 - ((d + 2 * r) * colours) as i64;
        ensure(k_prime >= bound, || format!("run {t}: k' = {k_prime} < {bound}"))?;
        pruned += (out.k() < k) as usize;

        let mut rng = rng_from(seed ^ 2);
        let rep = choose_representatives(&out.pg, &out.phi, d, r, &mut rng).map_err(|e| format!("run {t}: {e}"))?;
        let set = match doubled_colour_set(&out.pg, &out.phi, &rep, r, 64, &mut rng) {
            Ok(set) => set,
            Err(WitnessError::BudgetExhausted { .. }) => continue,
            Err(e) => return Err(format!("run {t}: {e}")),
        };
        doubled_set_holds(&out.pg, &out.phi, &set.s, r).map_err(|e| format!("run {t}: {e}"))?;
        sets += 1;
    }
    ensure(sets > 0 && pruned > 0, || format!("too few nontrivial runs: {pruned} pruned, {sets} sets"))?;
    Ok(format!("{runs} prunings within bound ({pruned} removed lines), {sets} doubled sets checked"))
}

/// Every colour exactly twice in `s`, `s` inside the `r`-interior, and no
/// `r`-box around a member holds more than two members.
fn doubled_set_holds(pg: &Pseudogrid, phi: &Colouring, s: &[usize], r: u32) -> Result<(), String> {
    let k = pg.grid().width() as i64;
    let r = r as i64;
    let rect = |x: usize| {
        let (p, q) = pg.owner(x).endpoints();
        (p.i.min(q.i) as i64, p.i.max(q.i) as i64, p.j.min(q.j) as i64, p.j.max(q.j) as i64)
    };
    for colour in phi.used() {
        let n = s.iter().filter(|&&v| phi.colour(v) == colour).count();
        ensure(n == 2, || format!("colour {colour} appears {n} times in S"))?;
    }
    for &v in s {
        let (i0, i1, j0, j1) = rect(v);
        ensure(i0 > r && j0 > r && i1 <= k - r && j1 <= k - r, || format!("{v} outside the interior"))?;
        let inside = s
            .iter()
            .filter(|&&u| {
                let (a0, a1, b0, b1) = rect(u);
                a0 >= i0 - r && a1 <= i1 + r && b0 >= j0 - r && b1 <= j1 + r
            })
            .count();
        ensure(inside <= 2, || format!("box around {v} holds {inside} members"))?;
    }
    Ok(())
}

fn linchrom(args: &[&str], dir: &std::path::Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_linchrom"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok(out.stdout)
}

fn determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = dir.path();
    let runs: [&[&str]; 3] = [
        &["witness", "--k", "128", "--colours", "4", "--r", "9", "--seed", "7"],
        &["witness", "--k", "96", "--colours", "3", "--seed", "11", "--pseudogrid"],
        &["experiment", "--k", "64,128", "--divisor", "32", "--trials", "10", "--seed", "9", "--instances", "mixed"],
    ];
    for args in runs {
        let first = linchrom(args, p)?;
        let second = linchrom(args, p)?;
        ensure(!first.is_empty() && first == second, || format!("{args:?} differs between runs"))?;
    }
    Ok("two witness reports and one CSV byte-identical across reruns".into())
}

/// Brute force straight from the definition: least number of colours such
/// that every simple path (resp. connected vertex set) has a colour that
/// occurs on it once.
fn brute_force(g: &Graph, connected_sets: bool) -> u32 {
    let n = g.vertex_count();
    let mut subjects: Vec<Vec<usize>> = Vec::new();
    if connected_sets {
        for mask in 1u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let mut seen = vec![set[0]];
            let mut stack = vec![set[0]];
            while let Some(v) = stack.pop() {
                for &w in g.neighbors(v) {
                    if set.contains(&w) && !seen.contains(&w) {
                        seen.push(w);
                        stack.push(w);
                    }
                }
            }
            if seen.len() == set.len() {
                subjects.push(set);
            }
        }
    } else {
        fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(path.clone());
            for &w in g.neighbors(*path.last().unwrap()) {
                if !path.contains(&w) {
                    path.push(w);
                    extend(g, path, out);
                    path.pop();
                }
            }
        }
        for v in 0..n {
            extend(g, &mut vec![v], &mut subjects);
        }
    }
    for c in 1..=n as u32 {
        let total = (c as usize).pow(n as u32);
        for code in 0..total {
            let colour: Vec<u32> = (0..n).map(|v| (code / (c as usize).pow(v as u32) % c as usize) as u32).collect();
            let good = subjects.iter().all(|set| {
                set.iter().any(|&v| set.iter().filter(|&&u| colour[u] == colour[v]).count() == 1)
            });
            if good {
                return c;
            }
        }
    }
    n as u32
}

fn small_exact_values() -> Result<String, String> {
    // Frozen after the first oracle run: (a, b, chi_lin, chi_cen).
    const GOLDEN: [(u32, u32, u32, u32); 2] = [(2, 2, 3, 3), (2, 3, 4, 4)];
    for (a, b, lin, cen) in GOLDEN {
        let g = Pseudogrid::plain(a, b).unwrap().graph().clone();
        let small = SmallGraph::from_graph(&g).unwrap();
        let got = (chi_lin(&small).unwrap(), chi_cen(&small).unwrap());
        let brute = (brute_force(&g, false), brute_force(&g, true));
        ensure(got == (lin, cen) && brute == (lin, cen), || {
            format!("G_{a}x{b}: solver {got:?}, brute force {brute:?}, golden {:?}", (lin, cen))
        })?;
    }
    Ok("G_2x2: chi_lin 3, chi_cen 3; G_2x3: chi_lin 4, chi_cen 4".into())
}
