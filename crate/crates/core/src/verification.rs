//! Independent certification of matching book embeddings: an exhaustive
//! validator and an exact matching-book-thickness oracle.
//!
//! For a fixed spine, the pages of a matching book embedding are exactly
//! the colour classes of a proper colouring of the [`ConflictGraph`], whose
//! nodes are graph edges and whose conflicts are shared endpoints or
//! crossings. The oracle minimises that chromatic number over all circular
//! spines, with the first vertex pinned and mirror images skipped.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::coloring;
use crate::embedder::BookEmbedding;
use crate::graph::{chords_cross, CircularOrder, Edge, Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("spine does not match the vertex set (missing {missing:?}, unknown {unknown:?})")]
    SpineMismatch {
        missing: Vec<VertexId>,
        unknown: Vec<VertexId>,
    },
    #[error("graph has {actual} vertices; the oracle is limited to {limit}")]
    TooManyVertices { actual: usize, limit: usize },
    #[error("graph has {actual} edges; the oracle is limited to {limit}")]
    TooManyEdges { actual: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Size guards for the exact oracle. Cost grows factorially with the
/// vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 10,
            max_edges: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub page: usize,
    pub first: Edge,
    pub second: Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingViolation {
    pub page: usize,
    pub vertex: VertexId,
    pub incident: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeIssue {
    /// A graph edge assigned to no page.
    Missing(Edge),
    /// An edge assigned more than once.
    Duplicate(Edge),
    /// A page edge that is not in the graph.
    Unknown(Edge),
}

/// Itemised violations of a candidate embedding; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub crossings: Vec<Crossing>,
    pub matching_violations: Vec<MatchingViolation>,
    pub edge_issues: Vec<EdgeIssue>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.crossings.is_empty()
            && self.matching_violations.is_empty()
            && self.edge_issues.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.crossings.len() + self.matching_violations.len() + self.edge_issues.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "no violations");
        }
        for c in &self.crossings {
            writeln!(
                f,
                "page {}: edges {} and {} cross",
                c.page, c.first, c.second
            )?;
        }
        for m in &self.matching_violations {
            writeln!(
                f,
                "page {}: vertex {} has {} incident edges",
                m.page, m.vertex, m.incident
            )?;
        }
        for issue in &self.edge_issues {
            match issue {
                EdgeIssue::Missing(e) => writeln!(f, "edge {e} is on no page")?,
                EdgeIssue::Duplicate(e) => writeln!(f, "edge {e} is assigned more than once")?,
                EdgeIssue::Unknown(e) => writeln!(f, "edge {e} is not in the graph")?,
            }
        }
        Ok(())
    }
}

/// Crossing and matching checks on every page, ignoring which graph the
/// edges came from. Edges whose endpoints are missing from the spine are
/// skipped here; [`validate`] reports them.
pub fn check_pages(emb: &BookEmbedding) -> ValidationReport {
    let spine = emb.spine();
    let mut report = ValidationReport::default();
    for (page, edges) in emb.pages().iter().enumerate() {
        let mut incident: BTreeMap<VertexId, usize> = BTreeMap::new();
        for e in edges {
            let (a, b) = e.endpoints();
            *incident.entry(a).or_default() += 1;
            *incident.entry(b).or_default() += 1;
        }
        for (&vertex, &count) in &incident {
            if count > 1 {
                report.matching_violations.push(MatchingViolation {
                    page,
                    vertex,
                    incident: count,
                });
            }
        }
        let placed: Vec<(Edge, usize, usize)> = edges
            .iter()
            .filter_map(|&e| {
                let (a, b) = e.endpoints();
                Some((e, spine.position(a)?, spine.position(b)?))
            })
            .collect();
        for (i, &(e1, a, b)) in placed.iter().enumerate() {
            for &(e2, c, d) in &placed[i + 1..] {
                if !e1.shares_endpoint(e2) && chords_cross(a, b, c, d) {
                    report.crossings.push(Crossing {
                        page,
                        first: e1,
                        second: e2,
                    });
                }
            }
        }
    }
    report
}

fn spine_mismatch(g: &Graph, spine: &CircularOrder) -> Option<VerifyError> {
    let missing: Vec<VertexId> = g.vertices().filter(|&v| !spine.contains(v)).collect();
    let unknown: Vec<VertexId> = spine.iter().filter(|&v| !g.has_vertex(v)).collect();
    (!missing.is_empty() || !unknown.is_empty())
        .then_some(VerifyError::SpineMismatch { missing, unknown })
}

/// Exhaustive check of `emb` against `g`: every edge on exactly one page,
/// every page a matching, no two edges on a page crossing.
pub fn validate(g: &Graph, emb: &BookEmbedding) -> Result<ValidationReport, VerifyError> {
    if let Some(err) = spine_mismatch(g, emb.spine()) {
        return Err(err);
    }
    let mut report = check_pages(emb);
    let mut times: BTreeMap<Edge, usize> = BTreeMap::new();
    for e in emb.pages().iter().flatten() {
        *times.entry(*e).or_default() += 1;
    }
    for (&e, &n) in &times {
        if !g.has_edge(e) {
            report.edge_issues.push(EdgeIssue::Unknown(e));
        } else if n > 1 {
            report.edge_issues.push(EdgeIssue::Duplicate(e));
        }
    }
    for e in g.edges() {
        if !times.contains_key(&e) {
            report.edge_issues.push(EdgeIssue::Missing(e));
        }
    }
    Ok(report)
}

/// Edges of a graph with their pairwise conflicts for one fixed spine.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    edges: Vec<Edge>,
    adjacency: Vec<u64>,
}

impl ConflictGraph {
    pub fn new(g: &Graph, spine: &CircularOrder) -> Result<Self, VerifyError> {
        if let Some(err) = spine_mismatch(g, spine) {
            return Err(err);
        }
        if g.edge_count() > coloring::MAX_NODES {
            return Err(VerifyError::TooManyEdges {
                actual: g.edge_count(),
                limit: coloring::MAX_NODES,
            });
        }
        let edges: Vec<Edge> = g.edges().collect();
        let ends: Vec<(usize, usize)> = edges
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                (spine.position(a).unwrap(), spine.position(b).unwrap())
            })
            .collect();
        Ok(Self::from_positions(edges, &ends))
    }

    fn from_positions(edges: Vec<Edge>, ends: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![0u64; ends.len()];
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                let (a, b) = ends[i];
                let (c, d) = ends[j];
                let shared = a == c || a == d || b == c || b == d;
                if shared || chords_cross(a, b, c, d) {
                    adjacency[i] |= 1 << j;
                    adjacency[j] |= 1 << i;
                }
            }
        }
        ConflictGraph { edges, adjacency }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] & (1 << j) != 0
    }

    pub fn node_count(&self) -> usize {
        self.edges.len()
    }

    pub fn chromatic_number(&self) -> usize {
        coloring::chromatic_number(&self.adjacency).0
    }

    /// Minimum page assignment for this spine if it needs fewer than
    /// `bound` pages.
    fn pages_below(&self, bound: usize) -> Option<(usize, Vec<u8>)> {
        coloring::chromatic_number_below(&self.adjacency, bound)
    }
}

fn check_limits(g: &Graph, limits: &OracleLimits) -> Result<(), VerifyError> {
    if g.vertex_count() > limits.max_vertices {
        return Err(VerifyError::TooManyVertices {
            actual: g.vertex_count(),
            limit: limits.max_vertices,
        });
    }
    if g.edge_count() > limits.max_edges.min(coloring::MAX_NODES) {
        return Err(VerifyError::TooManyEdges {
            actual: g.edge_count(),
            limit: limits.max_edges.min(coloring::MAX_NODES),
        });
    }
    Ok(())
}

/// Fewest pages of a matching book embedding of `g` with the given spine.
pub fn min_pages_for_spine(g: &Graph, spine: &CircularOrder) -> Result<usize, VerifyError> {
    min_pages_for_spine_with_limits(g, spine, &OracleLimits::default())
}

pub fn min_pages_for_spine_with_limits(
    g: &Graph,
    spine: &CircularOrder,
    limits: &OracleLimits,
) -> Result<usize, VerifyError> {
    if g.edge_count() > limits.max_edges {
        return Err(VerifyError::TooManyEdges {
            actual: g.edge_count(),
            limit: limits.max_edges,
        });
    }
    Ok(ConflictGraph::new(g, spine)?.chromatic_number())
}

/// Exact matching book thickness with a witness embedding.
pub fn exact_mbt(g: &Graph) -> Result<(usize, BookEmbedding), VerifyError> {
    exact_mbt_with_limits(g, &OracleLimits::default())
}

pub fn exact_mbt_with_limits(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(usize, BookEmbedding), VerifyError> {
    check_limits(g, limits)?;
    let delta = g.max_degree()?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let index: HashMap<VertexId, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<Edge> = g.edges().collect();
    let edge_ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            (index[&a], index[&b])
        })
        .collect();

    let n = vertices.len();
    let mut best: Option<(usize, Vec<usize>, Vec<u8>)> = None;
    let mut position = vec![0usize; n];
    let mut ends = vec![(0usize, 0usize); edges.len()];
    // Spine = vertex 0 followed by a permutation of the rest; a
    // permutation and its reverse give mirror-image spines.
    for rest in (1..n).permutations(n.saturating_sub(1)) {
        if rest.len() >= 2 && rest[0] > rest[rest.len() - 1] {
            continue;
        }
        position[0] = 0;
        for (p, &v) in rest.iter().enumerate() {
            position[v] = p + 1;
        }
        for (slot, &(a, b)) in ends.iter_mut().zip(&edge_ends) {
            *slot = (position[a], position[b]);
        }
        let bound = best.as_ref().map_or(usize::MAX, |b| b.0);
        let conflicts = ConflictGraph::from_positions(Vec::new(), &ends);
        if let Some((pages, colors)) = conflicts.pages_below(bound) {
            let mut order = vec![0];
            order.extend(rest.iter().copied());
            best = Some((pages, order, colors));
            if pages <= delta {
                break;
            }
        }
    }

    let (pages, order, colors) = best.expect("at least one spine is examined");
    let spine = CircularOrder::new(order.into_iter().map(|i| vertices[i]).collect())?;
    let mut page_edges = vec![Vec::new(); pages];
    for (e, c) in edges.iter().zip(colors) {
        page_edges[c as usize].push(*e);
    }
    Ok((pages, BookEmbedding::new(spine, page_edges)))
}

/// Whether the matching book thickness equals the maximum degree.
pub fn is_dispersable(g: &Graph) -> Result<bool, VerifyError> {
    is_dispersable_with_limits(g, &OracleLimits::default())
}

pub fn is_dispersable_with_limits(g: &Graph, limits: &OracleLimits) -> Result<bool, VerifyError> {
    let (mbt, _) = exact_mbt_with_limits(g, limits)?;
    Ok(mbt == g.max_degree()?)
}
