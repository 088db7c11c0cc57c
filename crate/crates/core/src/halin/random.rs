use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{make_halin, HalinError, HalinGraph};
use crate::graph::{Edge, VertexId};

enum Child {
    Interior(usize),
    Leaf,
}

/// Reproducible random Halin graph with `interior_count` interior vertices.
///
/// The interior tree is a random recursive tree. Every interior vertex then
/// draws a child count between its minimum (3 for the root, 2 elsewhere) and
/// `max_child`, topped up with leaves, and its children are shuffled to fix
/// the plane order. Interior vertices are labelled `0..interior_count` and
/// leaves follow in cycle order.
pub fn random_halin(
    interior_count: usize,
    max_child: usize,
    seed: u64,
) -> Result<HalinGraph, HalinError> {
    if interior_count == 0 {
        return Err(HalinError::Parameters(
            "at least one interior vertex is required".into(),
        ));
    }
    if max_child < 3 {
        return Err(HalinError::Parameters(format!(
            "max_child must be at least 3, got {max_child}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut children: Vec<Vec<Child>> = (0..interior_count).map(|_| Vec::new()).collect();
    for v in 1..interior_count {
        let parent = rng.random_range(0..v);
        children[parent].push(Child::Interior(v));
    }
    for (v, kids) in children.iter_mut().enumerate() {
        let min_children = if v == 0 { 3 } else { 2 };
        let target = rng.random_range(min_children..=max_child);
        while kids.len() < target {
            kids.push(Child::Leaf);
        }
        kids.shuffle(&mut rng);
    }

    let mut walk = Walk {
        children: &children,
        tree_edges: Vec::new(),
        cycle: Vec::new(),
        next_leaf: interior_count as u32,
    };
    walk.visit(0);
    let Walk {
        tree_edges, cycle, ..
    } = walk;
    make_halin(tree_edges, cycle)
}

struct Walk<'a> {
    children: &'a [Vec<Child>],
    tree_edges: Vec<Edge>,
    cycle: Vec<VertexId>,
    next_leaf: u32,
}

impl Walk<'_> {
    /// Preorder walk; leaves are numbered in the order they are reached,
    /// which is their order on the cycle.
    fn visit(&mut self, v: usize) {
        for child in &self.children[v] {
            match *child {
                Child::Interior(c) => {
                    self.tree_edges.push(Edge::new(v as u32, c as u32));
                    self.visit(c);
                }
                Child::Leaf => {
                    self.tree_edges.push(Edge::new(v as u32, self.next_leaf));
                    self.cycle.push(VertexId(self.next_leaf));
                    self.next_leaf += 1;
                }
            }
        }
    }
}
