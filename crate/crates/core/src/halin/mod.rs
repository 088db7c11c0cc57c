//! Halin graphs `H = T ∪ C`: a tree without degree-2 vertices plus the cycle
//! through its leaves in planar order.
//!
//! A [`HalinGraph`] is always validated on construction. The fan
//! contraction in [`contract_fan`] is the reduction step the embedder
//! recurses on; [`expand_fan`] undoes it structurally.

mod enumerate;
mod random;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{CircularOrder, Edge, Graph, GraphError, VertexId};

pub use enumerate::{
    enumerate_halin, enumerate_halin_with_limit, plane_code, HalinEnumeration,
    ENUMERATION_VERTEX_LIMIT,
};
pub use random::random_halin;

/// One reason a (tree, cycle) pair fails to describe a Halin graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalinViolation {
    TooFewVertices(usize),
    DuplicateTreeEdge(Edge),
    NotATree(String),
    DegreeTwoVertex(VertexId),
    CycleRepeatsVertex(VertexId),
    CycleMissingLeaf(VertexId),
    CycleHasNonLeaf(VertexId),
    NonContiguousSplit(Edge),
    CycleEdgeInTree(Edge),
}

impl fmt::Display for HalinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalinViolation::TooFewVertices(n) => {
                write!(f, "tree has {n} vertices, at least 4 are required")
            }
            HalinViolation::DuplicateTreeEdge(e) => write!(f, "tree edge {e} listed twice"),
            HalinViolation::NotATree(why) => write!(f, "tree edges do not form a tree: {why}"),
            HalinViolation::DegreeTwoVertex(v) => write!(f, "interior vertex {v} has degree 2"),
            HalinViolation::CycleRepeatsVertex(v) => {
                write!(f, "leaf cycle visits {v} more than once")
            }
            HalinViolation::CycleMissingLeaf(v) => write!(f, "leaf {v} is missing from the cycle"),
            HalinViolation::CycleHasNonLeaf(v) => {
                write!(f, "cycle vertex {v} is not a leaf of the tree")
            }
            HalinViolation::NonContiguousSplit(e) => write!(
                f,
                "removing tree edge {e} splits the leaves into non-contiguous arcs"
            ),
            HalinViolation::CycleEdgeInTree(e) => {
                write!(f, "cycle edge {e} is also a tree edge")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HalinError {
    #[error("not a Halin graph: {}", join_violations(.0))]
    Invalid(Vec<HalinViolation>),
    #[error("a wheel needs at least 4 vertices, got {0}")]
    WheelTooSmall(usize),
    #[error("underlying tree is a star; there is no fan to contract")]
    StarTree,
    #[error("vertex {0} cannot be contracted: {1}")]
    NotAFan(VertexId, String),
    #[error("invalid generator parameters: {0}")]
    Parameters(String),
    #[error("enumeration is limited to {limit} vertices, asked for {requested}")]
    EnumerationLimit { requested: usize, limit: usize },
}

fn join_violations(v: &[HalinViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A validated Halin graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalinGraph {
    tree: Graph,
    leaf_cycle: CircularOrder,
    graph: Graph,
    interior: BTreeSet<VertexId>,
}

impl HalinGraph {
    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn leaf_cycle(&self) -> &CircularOrder {
        &self.leaf_cycle
    }

    /// The full edge set `E(T) ∪ E(C)`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn interior_vertices(&self) -> &BTreeSet<VertexId> {
        &self.interior
    }

    pub fn interior_count(&self) -> usize {
        self.interior.len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.tree.degree(v) == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_star(&self) -> bool {
        self.interior.len() == 1
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree().expect("Halin graphs are non-empty")
    }

    pub fn is_cubic(&self) -> bool {
        self.max_degree() == 3
    }

    pub fn cycle_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let seq = self.leaf_cycle.as_slice();
        (0..seq.len()).map(move |i| Edge::new(seq[i], seq[(i + 1) % seq.len()]))
    }

    /// Page count of an optimal matching book embedding: 4 for cubic
    /// graphs, the maximum degree otherwise.
    pub fn optimal_page_count(&self) -> usize {
        match self.max_degree() {
            3 => 4,
            d => d,
        }
    }
}

/// Validates a tree and leaf cycle, reporting every violated condition.
pub fn make_halin(
    tree_edges: impl IntoIterator<Item = Edge>,
    leaf_cycle: Vec<VertexId>,
) -> Result<HalinGraph, HalinError> {
    let mut violations = Vec::new();
    let mut tree = Graph::new();
    for e in tree_edges {
        if let Err(GraphError::ParallelEdge(e)) = tree.add_edge(e) {
            violations.push(HalinViolation::DuplicateTreeEdge(e));
        }
    }
    let n = tree.vertex_count();
    if n < 4 {
        violations.push(HalinViolation::TooFewVertices(n));
    }

    let connected = n > 0 && reachable_count(&tree, tree.vertices().next().unwrap()) == n;
    let is_tree = connected && tree.edge_count() + 1 == n;
    if !is_tree {
        let why = if !connected {
            "not connected".to_string()
        } else {
            format!("{} edges on {} vertices", tree.edge_count(), n)
        };
        violations.push(HalinViolation::NotATree(why));
    }
    for v in tree.vertices() {
        if tree.degree(v) == 2 {
            violations.push(HalinViolation::DegreeTwoVertex(v));
        }
    }

    let leaves: BTreeSet<VertexId> = tree.vertices().filter(|&v| tree.degree(v) == 1).collect();
    let mut seen = BTreeSet::new();
    for &v in &leaf_cycle {
        if !seen.insert(v) {
            violations.push(HalinViolation::CycleRepeatsVertex(v));
        } else if !leaves.contains(&v) {
            violations.push(HalinViolation::CycleHasNonLeaf(v));
        }
    }
    for &v in &leaves {
        if !seen.contains(&v) {
            violations.push(HalinViolation::CycleMissingLeaf(v));
        }
    }
    if !violations.is_empty() {
        return Err(HalinError::Invalid(violations));
    }

    let cycle = CircularOrder::new(leaf_cycle).expect("duplicates were rejected above");
    for e in tree.edges() {
        if !split_is_contiguous(&tree, &cycle, e) {
            violations.push(HalinViolation::NonContiguousSplit(e));
        }
    }
    let seq = cycle.as_slice();
    let mut graph = tree.clone();
    for i in 0..seq.len() {
        let e = Edge::new(seq[i], seq[(i + 1) % seq.len()]);
        if tree.has_edge(e) {
            violations.push(HalinViolation::CycleEdgeInTree(e));
        } else if graph.add_edge(e).is_err() {
            // Only a 2-leaf cycle could repeat an edge, which the vertex
            // count rules out.
            violations.push(HalinViolation::TooFewVertices(n));
        }
    }
    if !violations.is_empty() {
        return Err(HalinError::Invalid(violations));
    }

    let interior = tree.vertices().filter(|&v| tree.degree(v) > 1).collect();
    Ok(HalinGraph {
        tree,
        leaf_cycle: cycle,
        graph,
        interior,
    })
}

fn reachable_count(g: &Graph, start: VertexId) -> usize {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for n in g.neighbors(v) {
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len()
}

/// Vertices on the `toward` side of the tree edge `{from, toward}`.
fn side_of(tree: &Graph, from: VertexId, toward: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([toward]);
    let mut stack = vec![toward];
    while let Some(v) = stack.pop() {
        for n in tree.neighbors(v) {
            if n != from && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen
}

fn split_is_contiguous(tree: &Graph, cycle: &CircularOrder, e: Edge) -> bool {
    let (a, b) = e.endpoints();
    let side = side_of(tree, a, b);
    let seq = cycle.as_slice();
    let boundaries = (0..seq.len())
        .filter(|&i| side.contains(&seq[i]) != side.contains(&seq[(i + 1) % seq.len()]))
        .count();
    boundaries <= 2
}

/// The wheel `W_m`: hub 0, rim vertices `1..m` in cycle order.
pub fn wheel(m: usize) -> Result<HalinGraph, HalinError> {
    if m < 4 {
        return Err(HalinError::WheelTooSmall(m));
    }
    let rim: Vec<VertexId> = (1..m as u32).map(VertexId).collect();
    let spokes: Vec<Edge> = rim.iter().map(|&v| Edge::new(0, v)).collect();
    make_halin(spokes, rim)
}

/// The triangular prism as a Halin graph: tree path 0–1, leaves 2, 3 on
/// vertex 0 and 4, 5 on vertex 1, leaf cycle (2, 4, 5, 3).
pub fn prism() -> HalinGraph {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)].map(|(a, b)| Edge::new(a, b));
    make_halin(edges, [2, 4, 5, 3].map(VertexId).to_vec()).expect("prism is a Halin graph")
}

/// Pages used by the three edges at the contracted vertex in an embedding
/// of the reduced graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanPages {
    pub third_neighbor: usize,
    pub predecessor: usize,
    pub successor: usize,
}

/// Everything needed to undo one fan contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionRecord {
    /// The leaf `w'` that replaced the fan.
    pub contracted: VertexId,
    /// The fan centre `w`.
    pub center: VertexId,
    /// `v_1..v_k` in leaf-cycle order.
    pub fan: Vec<VertexId>,
    /// `u`, the only interior tree neighbour of the centre.
    pub third_neighbor: VertexId,
    /// `x`, the cycle vertex before `v_1`.
    pub predecessor: VertexId,
    /// `y`, the cycle vertex after `v_k`.
    pub successor: VertexId,
    /// Filled in by the embedder from the reduced graph's embedding.
    pub pages: Option<FanPages>,
}

impl ExpansionRecord {
    pub fn fan_size(&self) -> usize {
        self.fan.len()
    }

    pub fn center_degree(&self) -> usize {
        self.fan.len() + 1
    }
}

/// Picks the fan centre for the next contraction: the neighbour of the
/// smallest-labelled endpoint of a longest tree path.
pub fn pick_fan_center(h: &HalinGraph) -> Result<VertexId, HalinError> {
    if h.is_star() {
        return Err(HalinError::StarTree);
    }
    let tree = h.tree();
    // Longest paths of a tree end in leaves, so only leaf eccentricities
    // matter.
    let mut best: Option<(usize, VertexId)> = None;
    for leaf in h.leaf_cycle().iter() {
        let ecc = eccentricity(tree, leaf);
        if best.is_none_or(|(d, v)| ecc > d || (ecc == d && leaf < v)) {
            best = Some((ecc, leaf));
        }
    }
    let (_, endpoint) = best.expect("Halin graphs have leaves");
    Ok(tree
        .neighbors(endpoint)
        .next()
        .expect("a leaf has one neighbour"))
}

fn eccentricity(tree: &Graph, start: VertexId) -> usize {
    let mut dist = HashMap::from([(start, 0usize)]);
    let mut queue = VecDeque::from([start]);
    let mut far = 0;
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        far = far.max(d);
        for n in tree.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(n) {
                slot.insert(d + 1);
                queue.push_back(n);
            }
        }
    }
    far
}

/// Contracts the centre `w` and its leaf neighbours into a single new leaf
/// `w'` attached to `w`'s remaining tree neighbour.
pub fn contract_fan(
    h: &HalinGraph,
    w: VertexId,
) -> Result<(HalinGraph, ExpansionRecord), HalinError> {
    let not_a_fan = |why: &str| HalinError::NotAFan(w, why.to_string());
    if !h.interior_vertices().contains(&w) {
        return Err(not_a_fan("not an interior vertex"));
    }
    let tree = h.tree();
    let (leaves, inner): (Vec<VertexId>, Vec<VertexId>) =
        tree.neighbors(w).partition(|&n| h.is_leaf(n));
    let [u] = inner[..] else {
        return Err(not_a_fan("needs exactly one interior neighbour"));
    };
    if leaves.len() < 2 {
        return Err(not_a_fan("needs at least two leaf neighbours"));
    }

    let cycle = h.leaf_cycle();
    let is_fan = |v: VertexId| tree.degree(v) == 1 && tree.neighbors(v).next() == Some(w);
    let first = leaves
        .iter()
        .copied()
        .find(|&v| !is_fan(cycle.predecessor(v).unwrap()))
        .ok_or_else(|| not_a_fan("fan covers the whole cycle"))?;
    let start = cycle.position(first).unwrap();
    let n = cycle.len();
    let fan: Vec<VertexId> = (0..leaves.len())
        .map(|i| cycle.as_slice()[(start + i) % n])
        .collect();
    if !fan.iter().all(|&v| is_fan(v)) {
        return Err(not_a_fan(
            "leaf neighbours are not consecutive on the cycle",
        ));
    }
    let x = cycle.predecessor(fan[0]).unwrap();
    let y = cycle.successor(*fan.last().unwrap()).unwrap();
    if x == y {
        return Err(not_a_fan("cycle neighbours of the fan coincide"));
    }

    let contracted = h.graph().fresh_vertex();
    let removed: BTreeSet<VertexId> = fan.iter().copied().chain([w]).collect();
    let tree_edges = tree
        .edges()
        .filter(|e| {
            let (a, b) = e.endpoints();
            !removed.contains(&a) && !removed.contains(&b)
        })
        .chain([Edge::new(u, contracted)]);
    let new_cycle: Vec<VertexId> = cycle
        .iter()
        .filter_map(|v| {
            if v == fan[0] {
                Some(contracted)
            } else if removed.contains(&v) {
                None
            } else {
                Some(v)
            }
        })
        .collect();
    let reduced = make_halin(tree_edges, new_cycle)?;
    let record = ExpansionRecord {
        contracted,
        center: w,
        fan,
        third_neighbor: u,
        predecessor: x,
        successor: y,
        pages: None,
    };
    Ok((reduced, record))
}

/// Re-inserts the fan described by `rec` into the reduced graph.
pub fn expand_fan(reduced: &HalinGraph, rec: &ExpansionRecord) -> Result<HalinGraph, HalinError> {
    let w_prime = rec.contracted;
    if !reduced.is_leaf(w_prime) {
        return Err(HalinError::NotAFan(
            w_prime,
            "not a leaf of the reduced graph".into(),
        ));
    }
    let tree_edges = reduced
        .tree()
        .edges()
        .filter(|e| !e.contains(w_prime))
        .chain([Edge::new(rec.center, rec.third_neighbor)])
        .chain(rec.fan.iter().map(|&v| Edge::new(rec.center, v)))
        .collect::<Vec<_>>();
    let mut cycle = Vec::with_capacity(reduced.leaf_cycle().len() + rec.fan.len());
    for v in reduced.leaf_cycle().iter() {
        if v == w_prime {
            cycle.extend_from_slice(&rec.fan);
        } else {
            cycle.push(v);
        }
    }
    make_halin(tree_edges, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(a, b)
    }

    fn ids(v: &[u32]) -> Vec<VertexId> {
        v.iter().map(|&x| VertexId(x)).collect()
    }

    #[test]
    fn wheel_four_is_k4() {
        let w4 = wheel(4).unwrap();
        assert_eq!(w4.graph(), &Graph::complete(4));
    }

    #[test]
    fn wheel_seven_shape() {
        let w7 = wheel(7).unwrap();
        assert_eq!(w7.vertex_count(), 7);
        assert_eq!(w7.graph().edge_count(), 12);
        assert_eq!(w7.max_degree(), 6);
        assert!(w7.is_star());
        assert_eq!(wheel(3), Err(HalinError::WheelTooSmall(3)));
    }

    #[test]
    fn prism_is_cubic() {
        let p = prism();
        assert!(p.is_cubic());
        assert_eq!(p.graph().edge_count(), 9);
        assert!(p.graph().is_regular());
        assert_eq!(p.interior_count(), 2);
    }

    #[test]
    fn degree_two_vertex_rejected() {
        // 0 - 1 - 2 path in the middle with 1 of degree two
        let edges = [e(0, 1), e(1, 2), e(0, 3), e(0, 4), e(2, 5), e(2, 6)];
        let err = make_halin(edges, ids(&[3, 5, 6, 4])).unwrap_err();
        assert_eq!(
            err,
            HalinError::Invalid(vec![HalinViolation::DegreeTwoVertex(VertexId(1))])
        );
    }

    #[test]
    fn violations_are_itemized() {
        let err = make_halin([e(0, 1), e(1, 2)], ids(&[0, 2, 5])).unwrap_err();
        let HalinError::Invalid(v) = err else {
            panic!("expected violations")
        };
        assert!(v.contains(&HalinViolation::TooFewVertices(3)));
        assert!(v.contains(&HalinViolation::DegreeTwoVertex(VertexId(1))));
        assert!(v.contains(&HalinViolation::CycleHasNonLeaf(VertexId(5))));
    }

    #[test]
    fn not_a_tree_rejected() {
        let edges = [
            e(0, 1),
            e(0, 2),
            e(0, 3),
            e(1, 2),
            e(4, 5),
            e(4, 6),
            e(4, 7),
        ];
        let err = make_halin(edges, ids(&[3, 5, 6, 7])).unwrap_err();
        let HalinError::Invalid(v) = err else {
            panic!()
        };
        assert!(matches!(v[0], HalinViolation::NotATree(_)));
    }

    #[test]
    fn crossing_leaf_order_rejected() {
        // prism leaves with the two fans interleaved on the cycle
        let edges = [e(0, 1), e(0, 2), e(0, 3), e(1, 4), e(1, 5)];
        let err = make_halin(edges, ids(&[2, 4, 3, 5])).unwrap_err();
        let HalinError::Invalid(v) = err else {
            panic!()
        };
        assert!(v.contains(&HalinViolation::NonContiguousSplit(e(0, 1))));
    }

    #[test]
    fn wrong_leaf_set_rejected() {
        let edges = [e(0, 1), e(0, 2), e(0, 3)];
        let err = make_halin(edges, ids(&[1, 2, 2])).unwrap_err();
        let HalinError::Invalid(v) = err else {
            panic!()
        };
        assert!(v.contains(&HalinViolation::CycleRepeatsVertex(VertexId(2))));
        assert!(v.contains(&HalinViolation::CycleMissingLeaf(VertexId(3))));
    }

    #[test]
    fn fan_center_on_prism_uses_smallest_endpoint() {
        // leaf 2 is the smallest endpoint of a longest path; it hangs off 0
        assert_eq!(pick_fan_center(&prism()), Ok(VertexId(0)));
    }

    #[test]
    fn fan_center_on_caterpillar_is_an_end() {
        // interior path 0 - 1 - 2, leaves 3,4 on 0; 5 on 1; 6,7 on 2
        let edges = [
            e(0, 1),
            e(1, 2),
            e(0, 3),
            e(0, 4),
            e(1, 5),
            e(2, 6),
            e(2, 7),
        ];
        let h = make_halin(edges, ids(&[3, 5, 6, 7, 4])).unwrap();
        let w = pick_fan_center(&h).unwrap();
        assert!(w == VertexId(0) || w == VertexId(2));
    }

    #[test]
    fn fan_center_of_star_is_an_error() {
        assert_eq!(
            pick_fan_center(&wheel(6).unwrap()),
            Err(HalinError::StarTree)
        );
    }

    #[test]
    fn contracting_prism_gives_k4() {
        let p = prism();
        let (reduced, rec) = contract_fan(&p, VertexId(1)).unwrap();
        assert!(reduced.is_star());
        assert_eq!(reduced.vertex_count(), 4);
        assert_eq!(rec.fan, ids(&[4, 5]));
        assert_eq!(rec.predecessor, VertexId(2));
        assert_eq!(rec.successor, VertexId(3));
        assert_eq!(rec.third_neighbor, VertexId(0));
        assert_eq!(rec.contracted, VertexId(6));
        assert_eq!(reduced.graph().degree(rec.contracted), 3);
        let expected = make_halin([e(0, 2), e(0, 6), e(0, 3)], ids(&[2, 6, 3])).unwrap();
        assert_eq!(reduced, expected);
    }

    #[test]
    fn contraction_handles_fan_across_cycle_start() {
        // fan of vertex 1 is {5, 4}; put 5 last and 4 first in the cycle
        let p = make_halin(
            [e(0, 1), e(0, 2), e(0, 3), e(1, 4), e(1, 5)],
            ids(&[4, 3, 2, 5]),
        )
        .unwrap();
        let (reduced, rec) = contract_fan(&p, VertexId(1)).unwrap();
        assert_eq!(rec.fan, ids(&[5, 4]));
        assert_eq!(rec.predecessor, VertexId(2));
        assert_eq!(rec.successor, VertexId(3));
        assert_eq!(expand_fan(&reduced, &rec).unwrap().graph(), p.graph());
    }

    #[test]
    fn contract_rejects_non_fans() {
        let edges = [
            e(0, 1),
            e(1, 2),
            e(0, 3),
            e(0, 4),
            e(1, 5),
            e(2, 6),
            e(2, 7),
        ];
        let h = make_halin(edges, ids(&[3, 5, 6, 7, 4])).unwrap();
        assert!(matches!(
            contract_fan(&h, VertexId(1)),
            Err(HalinError::NotAFan(..))
        ));
        assert!(matches!(
            contract_fan(&h, VertexId(3)),
            Err(HalinError::NotAFan(..))
        ));
    }

    #[test]
    fn expand_undoes_contract() {
        let edges = [
            e(0, 1),
            e(1, 2),
            e(0, 3),
            e(0, 4),
            e(1, 5),
            e(2, 6),
            e(2, 7),
        ];
        let h = make_halin(edges, ids(&[3, 5, 6, 7, 4])).unwrap();
        let w = pick_fan_center(&h).unwrap();
        let (reduced, rec) = contract_fan(&h, w).unwrap();
        assert_eq!(reduced.interior_count(), h.interior_count() - 1);
        let back = expand_fan(&reduced, &rec).unwrap();
        assert_eq!(back.graph(), h.graph());
        assert_eq!(back.tree(), h.tree());
        assert!(back.leaf_cycle().same_cycle(h.leaf_cycle()));
    }

    #[test]
    fn optimal_page_count_formula() {
        assert_eq!(wheel(4).unwrap().optimal_page_count(), 4);
        assert_eq!(wheel(5).unwrap().optimal_page_count(), 4);
        assert_eq!(wheel(9).unwrap().optimal_page_count(), 8);
        assert_eq!(prism().optimal_page_count(), 4);
    }
}
