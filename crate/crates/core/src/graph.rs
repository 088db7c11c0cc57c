//! Simple undirected graphs, circular vertex orders and the chord crossing
//! predicate that every page check is built on.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Largest edge count [`chromatic_index`] will search exhaustively.
pub const CHROMATIC_INDEX_EDGE_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self loop at vertex {0}")]
    Loop(VertexId),
    #[error("parallel edge {0}")]
    ParallelEdge(Edge),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("vertex {0} appears more than once in the circular order")]
    DuplicateInOrder(VertexId),
    #[error("edges {0} and {1} share an endpoint; crossing is only defined for disjoint edges")]
    SharedEndpoint(Edge, Edge),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {edges} edges, exact search is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Undirected edge with its endpoints stored smaller label first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for unchecked input.
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        Self::try_new(a, b).expect("edge endpoints must differ")
    }

    pub fn try_new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<Self, GraphError> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(GraphError::Loop(a)),
        }
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.contains(other.lo) || self.contains(other.hi)
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if self.lo == v {
            Some(self.hi)
        } else if self.hi == v {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A simple undirected graph. Vertices and edges are kept in sorted
/// containers so iteration order is deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list; endpoints are added as vertices.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for e in edges {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) {
        self.adjacency.entry(v.into()).or_default();
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        if !self.edges.insert(e) {
            return Err(GraphError::ParallelEdge(e));
        }
        let (a, b) = e.endpoints();
        self.adjacency.entry(a).or_default().insert(b);
        self.adjacency.entry(b).or_default().insert(a);
        Ok(())
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Degree of `v`, zero for vertices not in the graph.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.adjacency
            .values()
            .map(BTreeSet::len)
            .max()
            .ok_or(GraphError::Empty)
    }

    pub fn is_regular(&self) -> bool {
        let mut degrees = self.adjacency.values().map(BTreeSet::len);
        match degrees.next() {
            Some(d) => degrees.all(|x| x == d),
            None => true,
        }
    }

    /// Smallest label not used by any vertex.
    pub fn fresh_vertex(&self) -> VertexId {
        let mut next = 0u32;
        for v in self.vertices() {
            if v.0 != next {
                break;
            }
            next += 1;
        }
        VertexId(next)
    }

    /// Cycle on vertices `0..n`.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        Graph::from_edges((0..n).map(|i| Edge::new(i, (i + 1) % n))).expect("cycle is simple")
    }

    /// Complete graph on vertices `0..n`.
    pub fn complete(n: u32) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(Edge::new(a, b))
                    .expect("complete graph is simple");
            }
        }
        g
    }
}

/// A sequence of distinct vertices read cyclically: the printing cycle of a
/// book embedding or the leaf cycle of a Halin graph.
#[derive(Debug, Clone)]
pub struct CircularOrder {
    sequence: Vec<VertexId>,
    positions: HashMap<VertexId, usize>,
}

impl PartialEq for CircularOrder {
    fn eq(&self, other: &Self) -> bool {
        self.sequence == other.sequence
    }
}

impl Eq for CircularOrder {}

impl CircularOrder {
    pub fn new(sequence: Vec<VertexId>) -> Result<Self, GraphError> {
        let mut positions = HashMap::with_capacity(sequence.len());
        for (i, &v) in sequence.iter().enumerate() {
            if positions.insert(v, i).is_some() {
                return Err(GraphError::DuplicateInOrder(v));
            }
        }
        Ok(CircularOrder {
            sequence,
            positions,
        })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.sequence
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.sequence.iter().copied()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.positions.get(&v).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.positions.contains_key(&v)
    }

    pub fn successor(&self, v: VertexId) -> Option<VertexId> {
        let p = self.position(v)?;
        Some(self.sequence[(p + 1) % self.len()])
    }

    pub fn predecessor(&self, v: VertexId) -> Option<VertexId> {
        let p = self.position(v)?;
        Some(self.sequence[(p + self.len() - 1) % self.len()])
    }

    /// The same cyclic sequence read from position `shift` (taken modulo
    /// the length; negative shifts rotate the other way).
    pub fn rotate(&self, shift: i64) -> CircularOrder {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let start = shift.rem_euclid(n as i64) as usize;
        let mut seq = Vec::with_capacity(n);
        seq.extend_from_slice(&self.sequence[start..]);
        seq.extend_from_slice(&self.sequence[..start]);
        CircularOrder::new(seq).expect("rotation preserves distinctness")
    }

    pub fn reflect(&self) -> CircularOrder {
        let seq = self.sequence.iter().rev().copied().collect();
        CircularOrder::new(seq).expect("reflection preserves distinctness")
    }

    /// Rotation that places `v` first.
    pub fn starting_at(&self, v: VertexId) -> Option<CircularOrder> {
        self.position(v).map(|p| self.rotate(p as i64))
    }

    /// True when both orders describe the same cycle up to rotation and
    /// reflection.
    pub fn same_cycle(&self, other: &CircularOrder) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let Some(first) = self.sequence.first() else {
            return true;
        };
        match other.starting_at(*first) {
            Some(o) => o == *self || o.reflect().rotate(-1) == *self,
            None => false,
        }
    }

    /// Whether two vertex-disjoint chords cross when drawn on the same side
    /// of the spine: exactly one endpoint of `e2` lies strictly inside the
    /// arc spanned by `e1`.
    pub fn interleaves(&self, e1: Edge, e2: Edge) -> Result<bool, GraphError> {
        if e1.shares_endpoint(e2) {
            return Err(GraphError::SharedEndpoint(e1, e2));
        }
        let pos = |v: VertexId| self.position(v).ok_or(GraphError::MissingVertex(v));
        let (a, b) = e1.endpoints();
        let (c, d) = e2.endpoints();
        let (pa, pb) = (pos(a)?, pos(b)?);
        let (pc, pd) = (pos(c)?, pos(d)?);
        Ok(chords_cross(pa, pb, pc, pd))
    }
}

/// Crossing test on spine positions of two vertex-disjoint chords.
#[inline]
pub(crate) fn chords_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |p: usize| lo < p && p < hi;
    inside(c) != inside(d)
}

/// Maximum vertex degree.
pub fn max_degree(g: &Graph) -> Result<usize, GraphError> {
    g.max_degree()
}

/// Two-colourability by breadth-first search over every component.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut side: HashMap<VertexId, bool> = HashMap::with_capacity(g.vertex_count());
    let mut queue = VecDeque::new();
    for start in g.vertices() {
        if side.contains_key(&start) {
            continue;
        }
        side.insert(start, false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let s = side[&v];
            for n in g.neighbors(v) {
                match side.get(&n) {
                    Some(&t) if t == s => return false,
                    Some(_) => {}
                    None => {
                        side.insert(n, !s);
                        queue.push_back(n);
                    }
                }
            }
        }
    }
    true
}

/// Chromatic index by exhaustive backtracking, refusing graphs with more
/// than [`CHROMATIC_INDEX_EDGE_LIMIT`] edges.
pub fn chromatic_index(g: &Graph) -> Result<usize, GraphError> {
    chromatic_index_with_limit(g, CHROMATIC_INDEX_EDGE_LIMIT)
}

pub fn chromatic_index_with_limit(g: &Graph, edge_limit: usize) -> Result<usize, GraphError> {
    if g.edge_count() > edge_limit {
        return Err(GraphError::TooLarge {
            edges: g.edge_count(),
            limit: edge_limit,
        });
    }
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let delta = g.max_degree()?;

    // Dense vertex indices for the colour masks.
    let index: HashMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut order: Vec<Edge> = g.edges().collect();
    order.sort_by_key(|e| {
        let (a, b) = e.endpoints();
        std::cmp::Reverse(g.degree(a) + g.degree(b))
    });
    let ends: Vec<(usize, usize)> = order
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            (index[&a], index[&b])
        })
        .collect();

    // Vizing guarantees success at delta + 1; the loop keeps going past it
    // rather than assuming the theorem.
    let mut colors = delta;
    loop {
        let mut used = vec![0u64; g.vertex_count()];
        if edge_colorable(&ends, 0, colors, 0, &mut used) {
            return Ok(colors);
        }
        colors += 1;
    }
}

fn edge_colorable(
    ends: &[(usize, usize)],
    next: usize,
    colors: usize,
    highest_used: usize,
    used: &mut [u64],
) -> bool {
    let Some(&(a, b)) = ends.get(next) else {
        return true;
    };
    // Colours above highest_used are interchangeable, so only the first
    // fresh one is tried.
    let limit = colors.min(highest_used + 1);
    let busy = used[a] | used[b];
    for c in 0..limit {
        let bit = 1u64 << c;
        if busy & bit != 0 {
            continue;
        }
        used[a] |= bit;
        used[b] |= bit;
        let highest = highest_used.max(c + 1);
        if edge_colorable(ends, next + 1, colors, highest, used) {
            return true;
        }
        used[a] &= !bit;
        used[b] &= !bit;
    }
    false
}
