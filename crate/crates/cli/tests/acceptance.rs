//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use halin_book::embedder::embed_wheel;
use halin_book::graph::{chromatic_index, is_bipartite, max_degree};
use halin_book::halin::{enumerate_halin, random_halin, wheel};
use halin_book::verification::min_pages_for_spine;
use halin_book::{
    embed_halin, exact_mbt, validate, CircularOrder, Edge, Graph, HalinGraph, VertexId,
};
use itertools::Itertools;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn formula(h: &HalinGraph) -> usize {
    if h.max_degree() == 3 {
        4
    } else {
        h.max_degree()
    }
}

fn corpus() -> Vec<HalinGraph> {
    enumerate_halin(9)
        .expect("within the enumeration guard")
        .collect()
}

fn wheel_theorem() -> Outcome {
    let start = Instant::now();
    let expected = [4, 4, 5, 6, 7, 8, 9, 10, 11];
    for (m, want) in (4..=12).zip(expected) {
        let h = wheel(m).map_err(|e| e.to_string())?;
        let emb = embed_wheel(m).map_err(|e| e.to_string())?;
        let report = validate(h.graph(), &emb).map_err(|e| e.to_string())?;
        ensure(report.is_clean(), || format!("W_{m}: {report}"))?;
        ensure(emb.page_count() == want, || {
            format!("W_{m}: {} pages, expected {want}", emb.page_count())
        })?;
        if m <= 8 {
            let (mbt, _) = exact_mbt(h.graph()).map_err(|e| e.to_string())?;
            ensure(mbt == want, || {
                format!("W_{m}: oracle says {mbt}, expected {want}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "m = 4..12 clean with 4,4,5,..,11 pages; oracle agrees for m <= 8 ({elapsed:.2?})"
    ))
}

fn theorem_check() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_halin-book"))
        .args(["theorem-check", "--max-vertices", "9"])
        .env_remove("HALIN_BOOK_ORACLE_LIMIT")
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || {
        format!(
            "exit {:?}\n{text}{}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    let rows: Vec<&str> = text.lines().filter(|l| l.contains(" n=")).collect();
    let expected = corpus().len();
    ensure(rows.len() == expected, || {
        format!("{} rows, enumeration has {expected}", rows.len())
    })?;
    for row in &rows {
        ensure(row.contains("PASS") && !row.contains("mbt=- "), || {
            format!("row: {row}")
        })?;
    }
    ensure(
        text.lines().last() == Some(&format!("PASS {expected} graphs")),
        || format!("summary: {:?}", text.lines().last()),
    )?;
    // In-process confirmation of what each row claims.
    for h in corpus() {
        let emb = embed_halin(&h).map_err(|e| e.to_string())?;
        let clean = validate(h.graph(), &emb)
            .map_err(|e| e.to_string())?
            .is_clean();
        let (mbt, _) = exact_mbt(h.graph()).map_err(|e| e.to_string())?;
        ensure(
            clean && emb.page_count() == formula(&h) && mbt == formula(&h),
            || {
                format!(
                    "graph {:?}: pages {} mbt {mbt}",
                    h.leaf_cycle(),
                    emb.page_count()
                )
            },
        )?;
    }
    Ok(format!(
        "{expected} Halin graphs with <= 9 vertices, zero discrepancies"
    ))
}

fn scale_smoke() -> Outcome {
    let mut accepted = 0;
    let mut largest = 0;
    let mut slowest = Duration::ZERO;
    let mut seed = 0u64;
    while accepted < 200 {
        let p = 1 + (seed % 20) as usize;
        let max_child = 3 + (seed % 5) as usize;
        let h = random_halin(p, max_child, seed).map_err(|e| e.to_string())?;
        seed += 1;
        if h.vertex_count() > 60 {
            continue;
        }
        let start = Instant::now();
        let emb = embed_halin(&h).map_err(|e| format!("seed {}: {e}", seed - 1))?;
        let report = validate(h.graph(), &emb).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(report.is_clean(), || format!("seed {}: {report}", seed - 1))?;
        ensure(emb.page_count() == formula(&h), || {
            format!(
                "seed {}: {} pages, formula {}",
                seed - 1,
                emb.page_count(),
                formula(&h)
            )
        })?;
        ensure(elapsed < Duration::from_secs(1), || {
            format!("seed {}: {elapsed:?}", seed - 1)
        })?;
        largest = largest.max(h.vertex_count());
        slowest = slowest.max(elapsed);
        accepted += 1;
    }
    Ok(format!(
        "200 graphs up to {largest} vertices, slowest {slowest:.2?}"
    ))
}

fn cycles_and_cliques() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = (4..=7)
        .map(|n| (format!("C_{n}"), Graph::cycle(n)))
        .collect();
    out.extend((4..=5).map(|n| (format!("K_{n}"), Graph::complete(n))));
    out
}

fn lower_bound_chain() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = corpus()
        .into_iter()
        .map(|h| {
            (
                format!("{:?}", h.leaf_cycle().as_slice()),
                h.graph().clone(),
            )
        })
        .collect();
    graphs.extend(cycles_and_cliques());
    for (name, g) in &graphs {
        let delta = max_degree(g).map_err(|e| e.to_string())?;
        let chi = chromatic_index(g).map_err(|e| e.to_string())?;
        let (mbt, _) = exact_mbt(g).map_err(|e| e.to_string())?;
        ensure(delta <= chi && chi <= mbt, || {
            format!("{name}: {delta} {chi} {mbt}")
        })?;
    }
    Ok(format!("delta <= chi' <= mbt on {} graphs", graphs.len()))
}

fn known_values() -> Outcome {
    let mut cases: Vec<(String, Graph, usize)> = Vec::new();
    for n in 2..=4 {
        cases.push((format!("C_{}", 2 * n), Graph::cycle(2 * n), 2));
        cases.push((format!("C_{}", 2 * n - 1), Graph::cycle(2 * n - 1), 3));
    }
    for n in 3..=6 {
        cases.push((format!("K_{n}"), Graph::complete(n), n as usize));
    }
    for (name, g, want) in &cases {
        let (mbt, _) = exact_mbt(g).map_err(|e| e.to_string())?;
        ensure(mbt == *want, || format!("{name}: {mbt}, expected {want}"))?;
    }
    Ok(format!("{} values reproduced exactly", cases.len()))
}

fn cubic_non_dispersable() -> Outcome {
    let cubic: Vec<HalinGraph> = corpus().into_iter().filter(HalinGraph::is_cubic).collect();
    ensure(!cubic.is_empty(), || "no cubic graphs enumerated".into())?;
    for h in &cubic {
        ensure(!is_bipartite(h.graph()), || {
            format!("{:?} is bipartite", h.leaf_cycle())
        })?;
        let (mbt, _) = exact_mbt(h.graph()).map_err(|e| e.to_string())?;
        ensure(mbt == 4, || format!("{:?}: mbt {mbt}", h.leaf_cycle()))?;
    }
    Ok(format!(
        "{} cubic Halin graphs, all non-bipartite with mbt 4",
        cubic.len()
    ))
}

/// Every graph on `1..=max_n` vertices up to isomorphism, by adding one
/// vertex at a time and keeping the lexicographically smallest adjacency
/// code over all relabellings.
#[allow(clippy::needless_range_loop)]
fn all_small_graphs(max_n: usize) -> Vec<Graph> {
    fn code(n: usize, adj: &[u8], perm: &[usize]) -> u64 {
        let mut c = 0u64;
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if adj[perm[a]] >> perm[b] & 1 == 1 {
                    c |= 1 << bit;
                }
                bit += 1;
            }
        }
        c
    }
    fn decode(n: usize, c: u64) -> Vec<u8> {
        let mut adj = vec![0u8; n];
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if c >> bit & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
                bit += 1;
            }
        }
        adj
    }
    let mut out = Vec::new();
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for n in 1..=max_n {
        if n > 1 {
            let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
            let mut next = BTreeSet::new();
            for &c in &level {
                let base = decode(n - 1, c);
                for subset in 0u32..(1 << (n - 1)) {
                    let mut adj = base.clone();
                    adj.push(0);
                    for v in 0..n - 1 {
                        if subset >> v & 1 == 1 {
                            adj[v] |= 1 << (n - 1);
                            adj[n - 1] |= 1 << v;
                        }
                    }
                    next.insert(perms.iter().map(|p| code(n, &adj, p)).min().unwrap());
                }
            }
            level = next;
        }
        for &c in &level {
            let adj = decode(n, c);
            let mut g = Graph::new();
            for v in 0..n as u32 {
                g.add_vertex(v);
            }
            for a in 0..n {
                for b in a + 1..n {
                    if adj[a] >> b & 1 == 1 {
                        g.add_edge(Edge::new(a as u32, b as u32)).unwrap();
                    }
                }
            }
            out.push(g);
        }
    }
    out
}

fn rotation_reflection_invariance() -> Outcome {
    let mut embeddings = 0;
    let mut seed = 0u64;
    while embeddings < 1000 {
        let p = 1 + (seed % 8) as usize;
        let max_child = 3 + (seed % 4) as usize;
        let h = random_halin(p, max_child, seed).map_err(|e| e.to_string())?;
        seed += 1;
        let emb = embed_halin(&h).map_err(|e| e.to_string())?;
        for shift in 0..emb.spine().len() as i64 {
            for moved in [emb.rotate(shift), emb.rotate(shift).reflect()] {
                let report = validate(h.graph(), &moved).map_err(|e| e.to_string())?;
                ensure(
                    report.is_clean() && moved.page_count() == emb.page_count(),
                    || format!("seed {}, shift {shift}: {report}", seed - 1),
                )?;
            }
        }
        embeddings += 1;
    }

    let graphs = all_small_graphs(7);
    let counts: Vec<usize> = (1..=7)
        .map(|n| graphs.iter().filter(|g| g.vertex_count() == n).count())
        .collect();
    ensure(counts == [1, 2, 4, 11, 34, 156, 1044], || {
        format!("graph counts {counts:?}")
    })?;
    let mut spines = 0usize;
    for g in &graphs {
        let n = g.vertex_count();
        let mut pages: HashMap<Vec<VertexId>, usize> = HashMap::new();
        for perm in (0..n as u32).map(VertexId).permutations(n) {
            let spine = CircularOrder::new(perm.clone()).map_err(|e| e.to_string())?;
            let k = min_pages_for_spine(g, &spine).map_err(|e| e.to_string())?;
            pages.insert(perm, k);
        }
        for (perm, &k) in &pages {
            let spine = CircularOrder::new(perm.clone()).map_err(|e| e.to_string())?;
            let rotated = spine.rotate(1).as_slice().to_vec();
            let reflected = spine.reflect().as_slice().to_vec();
            ensure(pages[&rotated] == k && pages[&reflected] == k, || {
                format!("{:?} on spine {perm:?}", g.edge_set())
            })?;
        }
        spines += pages.len();
    }
    Ok(format!(
        "1000 embeddings stable under every rotation and reflection; {} graphs with <= 7 vertices invariant over {spines} spines",
        graphs.len()
    ))
}

fn witness_soundness() -> Outcome {
    let mut graphs: Vec<Graph> = corpus().iter().map(|h| h.graph().clone()).collect();
    graphs.extend(cycles_and_cliques().into_iter().map(|(_, g)| g));
    graphs.extend((3..=8).map(Graph::cycle));
    graphs.extend((2..=6).map(Graph::complete));
    graphs.extend(
        all_small_graphs(6)
            .into_iter()
            .filter(|g| g.edge_count() > 0),
    );
    for g in &graphs {
        let (mbt, witness) = exact_mbt(g).map_err(|e| e.to_string())?;
        let report = validate(g, &witness).map_err(|e| e.to_string())?;
        ensure(report.is_clean() && witness.page_count() == mbt, || {
            format!("{:?}: {report}", g.edge_set())
        })?;
    }
    Ok(format!(
        "{} witnesses validate with empty reports",
        graphs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("wheel theorem", wheel_theorem),
        ("main theorem up to 9 vertices", theorem_check),
        ("scale smoke test", scale_smoke),
        ("lower-bound chain", lower_bound_chain),
        ("known thickness values", known_values),
        (
            "cubic Halin graphs are not dispersable",
            cubic_non_dispersable,
        ),
        (
            "rotation and reflection invariance",
            rotation_reflection_invariance,
        ),
        ("oracle witness soundness", witness_soundness),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
