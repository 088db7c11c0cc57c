//! Cross-checks the Halin enumerator against an independent construction:
//! labelled trees from Prüfer sequences, every planar rotation system of
//! each tree, and isomorphism classes computed by petgraph.

use std::collections::{BTreeMap, BTreeSet};

use halin_book::halin::{enumerate_halin, make_halin};
use halin_book::{Edge, HalinGraph, VertexId};
use itertools::Itertools;
use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

type Adjacency = Vec<Vec<usize>>;

/// Decodes every Prüfer sequence whose tree has no degree-2 vertex.
fn labelled_hits(n: usize) -> Vec<Adjacency> {
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let mut count = vec![0usize; n];
        for &s in &seq {
            count[s] += 1;
        }
        // Degree = count + 1; forbid degree 2.
        if count.iter().all(|&c| c != 1) {
            out.push(decode(n, &seq));
        }
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn decode(n: usize, seq: &[usize]) -> Adjacency {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        adj[leaf].push(s);
        adj[s].push(leaf);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    adj[rest[0]].push(rest[1]);
    adj[rest[1]].push(rest[0]);
    adj
}

fn rooted_code(adj: &Adjacency, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| rooted_code(adj, c, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical string of an unrooted tree: rooted codes at its centres.
fn tree_code(adj: &Adjacency) -> String {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_code(adj, c, usize::MAX))
        .min()
        .unwrap()
}

/// Leaf cycles of every planar embedding of the tree, found by walking
/// the outer face of each rotation system.
fn leaf_cycles(adj: &Adjacency) -> Vec<Vec<usize>> {
    let n = adj.len();
    let per_vertex: Vec<Vec<Vec<usize>>> = adj
        .iter()
        .map(|nbrs| {
            let (first, rest) = nbrs.split_first().unwrap();
            rest.iter()
                .copied()
                .permutations(rest.len())
                .map(|p| std::iter::once(*first).chain(p).collect())
                .collect()
        })
        .collect();
    let leaves: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
    let mut cycles = Vec::new();
    for rotation in per_vertex
        .iter()
        .map(|opts| opts.iter())
        .multi_cartesian_product()
    {
        let next_after = |v: usize, from: usize| {
            let r = rotation[v];
            let i = r.iter().position(|&x| x == from).unwrap();
            r[(i + 1) % r.len()]
        };
        let start = leaves[0];
        let mut cycle = vec![start];
        let (mut from, mut at) = (start, adj[start][0]);
        loop {
            let to = next_after(at, from);
            from = at;
            at = to;
            if adj[at].len() == 1 {
                if at == start {
                    break;
                }
                cycle.push(at);
                let only = adj[at][0];
                from = at;
                at = only;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

fn halin_edges(adj: &Adjacency, cycle: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for (v, nbrs) in adj.iter().enumerate() {
        for &u in nbrs {
            edges.insert((v.min(u), v.max(u)));
        }
    }
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        edges.insert((a.min(b), a.max(b)));
    }
    edges
}

fn to_petgraph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> UnGraph<(), ()> {
    let mut g = UnGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (a, b) in edges {
        g.add_edge((a as u32).into(), (b as u32).into(), ());
    }
    g
}

fn from_halin(h: &HalinGraph) -> UnGraph<(), ()> {
    let index: BTreeMap<VertexId, usize> = h
        .graph()
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    to_petgraph(
        h.vertex_count(),
        h.graph().edges().map(|e| {
            let (a, b) = e.endpoints();
            (index[&a], index[&b])
        }),
    )
}

fn degree_signature(g: &UnGraph<(), ()>) -> Vec<usize> {
    let mut d: Vec<usize> = g.node_indices().map(|v| g.neighbors(v).count()).collect();
    d.sort();
    d
}

/// Isomorphism classes of Halin graphs on `n` vertices.
fn oracle_classes(n: usize) -> Vec<UnGraph<(), ()>> {
    let mut trees: BTreeMap<String, Adjacency> = BTreeMap::new();
    for t in labelled_hits(n) {
        trees.entry(tree_code(&t)).or_insert(t);
    }
    let mut classes: Vec<UnGraph<(), ()>> = Vec::new();
    for tree in trees.values() {
        let edge_sets: BTreeSet<_> = leaf_cycles(tree)
            .iter()
            .map(|c| halin_edges(tree, c))
            .collect();
        for edges in edge_sets {
            let g = to_petgraph(n, edges);
            if !classes
                .iter()
                .any(|c| degree_signature(c) == degree_signature(&g) && is_isomorphic(c, &g))
            {
                classes.push(g);
            }
        }
    }
    classes
}

#[test]
fn prufer_filter_finds_only_hits() {
    for t in labelled_hits(7) {
        assert!(t.iter().all(|nbrs| nbrs.len() != 2));
        assert_eq!(t.iter().map(Vec::len).sum::<usize>(), 12);
    }
    // Stars on 6 vertices: one per centre label.
    assert_eq!(
        labelled_hits(6)
            .iter()
            .filter(|t| t.iter().any(|n| n.len() == 5))
            .count(),
        6
    );
}

#[test]
fn oracle_cycles_are_accepted_by_make_halin() {
    for n in 4..=8 {
        let mut seen = BTreeSet::new();
        for t in labelled_hits(n) {
            if !seen.insert(tree_code(&t)) {
                continue;
            }
            let tree_edges: Vec<Edge> = (0..n)
                .flat_map(|v| {
                    t[v].iter()
                        .filter(move |&&u| u > v)
                        .map(move |&u| Edge::new(v as u32, u as u32))
                })
                .collect();
            for cycle in leaf_cycles(&t) {
                let cycle = cycle.into_iter().map(|v| VertexId(v as u32)).collect();
                make_halin(tree_edges.clone(), cycle).expect("planar leaf order");
            }
        }
    }
}

#[test]
fn enumeration_matches_independent_classes() {
    let enumerated: Vec<HalinGraph> = enumerate_halin(9).unwrap().collect();
    for n in 4..=9 {
        let oracle = oracle_classes(n);
        let ours: Vec<UnGraph<(), ()>> = enumerated
            .iter()
            .filter(|h| h.vertex_count() == n)
            .map(from_halin)
            .collect();
        assert_eq!(ours.len(), oracle.len(), "class count for n = {n}");
        for g in &ours {
            let matches = oracle.iter().filter(|c| is_isomorphic(*c, g)).count();
            assert_eq!(matches, 1, "n = {n}");
        }
    }
}
