//! Exhaustive generation of small Halin graphs, one per plane structure up
//! to rotation and reflection of the leaf cycle.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{make_halin, side_of, HalinError, HalinGraph};
use crate::graph::{Edge, VertexId};

/// Default vertex bound for [`enumerate_halin`].
pub const ENUMERATION_VERTEX_LIMIT: usize = 10;

/// An ordered rooted tree shape.
#[derive(Debug, Clone)]
struct Shape(Vec<Shape>);

impl Shape {
    fn size(&self) -> usize {
        1 + self.0.iter().map(Shape::size).sum::<usize>()
    }
}

/// Ordered subtrees on `n` nodes whose nodes have 0 or at least 2 children.
fn subtrees(n: usize, memo: &mut HashMap<(usize, usize), Vec<Vec<Shape>>>) -> Vec<Shape> {
    if n == 1 {
        return vec![Shape(Vec::new())];
    }
    forests(n - 1, 2, memo).into_iter().map(Shape).collect()
}

/// Ordered sequences of at least `min_parts` subtrees with `n` nodes total.
fn forests(
    n: usize,
    min_parts: usize,
    memo: &mut HashMap<(usize, usize), Vec<Vec<Shape>>>,
) -> Vec<Vec<Shape>> {
    if let Some(hit) = memo.get(&(n, min_parts)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        if min_parts == 0 {
            out.push(Vec::new());
        }
    } else {
        for first in 1..=n {
            let heads = subtrees(first, memo);
            let tails = forests(n - first, min_parts.saturating_sub(1), memo);
            for head in &heads {
                for tail in &tails {
                    let mut f = Vec::with_capacity(tail.len() + 1);
                    f.push(head.clone());
                    f.extend(tail.iter().cloned());
                    out.push(f);
                }
            }
        }
    }
    memo.insert((n, min_parts), out.clone());
    out
}

/// Plane trees on `n` vertices rooted at an interior vertex of degree ≥ 3.
fn rooted_hits(n: usize) -> Vec<Shape> {
    let mut memo = HashMap::new();
    forests(n - 1, 3, &mut memo)
        .into_iter()
        .map(Shape)
        .collect()
}

fn shape_to_halin(shape: &Shape) -> HalinGraph {
    fn walk(s: &Shape, id: u32, next: &mut u32, edges: &mut Vec<Edge>, leaves: &mut Vec<VertexId>) {
        if s.0.is_empty() {
            leaves.push(VertexId(id));
        }
        for child in &s.0 {
            let c = *next;
            *next += 1;
            edges.push(Edge::new(id, c));
            walk(child, c, next, edges, leaves);
        }
    }
    let mut edges = Vec::with_capacity(shape.size());
    let mut leaves = Vec::new();
    let mut next = 1;
    walk(shape, 0, &mut next, &mut edges, &mut leaves);
    make_halin(edges, leaves).expect("plane HIT shapes give Halin graphs")
}

/// Neighbour order around every vertex, read off the leaf cycle.
fn rotation_system(h: &HalinGraph) -> HashMap<VertexId, Vec<VertexId>> {
    let tree = h.tree();
    let cycle = h.leaf_cycle();
    let seq = cycle.as_slice();
    let mut rotation = HashMap::with_capacity(h.vertex_count());
    for v in tree.vertices() {
        let mut keyed: Vec<(usize, VertexId)> = tree
            .neighbors(v)
            .map(|n| {
                let side = side_of(tree, v, n);
                let start = (0..seq.len())
                    .find(|&i| {
                        side.contains(&seq[i])
                            && !side.contains(&seq[(i + seq.len() - 1) % seq.len()])
                    })
                    .unwrap_or(0);
                (start, n)
            })
            .collect();
        keyed.sort();
        rotation.insert(v, keyed.into_iter().map(|(_, n)| n).collect());
    }
    rotation
}

struct Traversal<'a> {
    rotation: &'a HashMap<VertexId, Vec<VertexId>>,
    reversed: bool,
    code: String,
    visit: Vec<VertexId>,
}

impl Traversal<'_> {
    fn run(&mut self, v: VertexId, parent: Option<VertexId>) {
        self.visit.push(v);
        self.code.push('(');
        let rot = &self.rotation[&v];
        let len = rot.len();
        let start = parent.map_or(0, |p| rot.iter().position(|&n| n == p).unwrap());
        let skip = usize::from(parent.is_some());
        for i in skip..len {
            let j = if self.reversed {
                (start + len - i) % len
            } else {
                (start + i) % len
            };
            self.run(rot[j], Some(v));
        }
        self.code.push(')');
    }
}

fn best_traversal(h: &HalinGraph) -> (String, Vec<VertexId>) {
    let rotation = rotation_system(h);
    let mut best: Option<(String, Vec<VertexId>)> = None;
    for leaf in h.leaf_cycle().iter() {
        for reversed in [false, true] {
            let mut t = Traversal {
                rotation: &rotation,
                reversed,
                code: String::with_capacity(2 * h.vertex_count()),
                visit: Vec::with_capacity(h.vertex_count()),
            };
            t.run(leaf, None);
            if best.as_ref().is_none_or(|(c, _)| t.code < *c) {
                best = Some((t.code, t.visit));
            }
        }
    }
    best.expect("Halin graphs have leaves")
}

/// Canonical code of the plane tree of `h`, invariant under relabelling and
/// under rotation or reflection of the leaf cycle.
pub fn plane_code(h: &HalinGraph) -> String {
    best_traversal(h).0
}

/// Relabels `h` along its canonical traversal: interior vertices first in
/// visit order, then leaves in cycle order.
fn canonical_relabel(h: &HalinGraph) -> (String, HalinGraph) {
    let (code, visit) = best_traversal(h);
    let mut label = HashMap::with_capacity(visit.len());
    let interior = visit.iter().filter(|&&v| !h.is_leaf(v));
    let leaves = visit.iter().filter(|&&v| h.is_leaf(v));
    for (i, &v) in interior.chain(leaves.clone()).enumerate() {
        label.insert(v, VertexId(i as u32));
    }
    let edges = h.tree().edges().map(|e| {
        let (a, b) = e.endpoints();
        Edge::new(label[&a], label[&b])
    });
    let cycle = leaves.map(|v| label[v]).collect();
    let relabelled = make_halin(edges, cycle).expect("relabelling preserves validity");
    (code, relabelled)
}

fn halin_graphs_with(n: usize) -> Vec<HalinGraph> {
    let mut unique: BTreeMap<String, HalinGraph> = BTreeMap::new();
    for shape in rooted_hits(n) {
        let (code, h) = canonical_relabel(&shape_to_halin(&shape));
        unique.entry(code).or_insert(h);
    }
    unique.into_values().collect()
}

/// Lazily yields every Halin graph with at most `max_vertices` vertices,
/// ordered by vertex count and then canonical code.
#[derive(Debug, Clone)]
pub struct HalinEnumeration {
    next_size: usize,
    max_vertices: usize,
    pending: VecDeque<HalinGraph>,
}

impl Iterator for HalinEnumeration {
    type Item = HalinGraph;

    fn next(&mut self) -> Option<HalinGraph> {
        while self.pending.is_empty() && self.next_size <= self.max_vertices {
            self.pending.extend(halin_graphs_with(self.next_size));
            self.next_size += 1;
        }
        self.pending.pop_front()
    }
}

pub fn enumerate_halin(max_vertices: usize) -> Result<HalinEnumeration, HalinError> {
    enumerate_halin_with_limit(max_vertices, ENUMERATION_VERTEX_LIMIT)
}

pub fn enumerate_halin_with_limit(
    max_vertices: usize,
    limit: usize,
) -> Result<HalinEnumeration, HalinError> {
    if max_vertices > limit {
        return Err(HalinError::EnumerationLimit {
            requested: max_vertices,
            limit,
        });
    }
    Ok(HalinEnumeration {
        next_size: 4,
        max_vertices,
        pending: VecDeque::new(),
    })
}
