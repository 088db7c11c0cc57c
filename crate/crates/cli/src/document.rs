//! JSON documents exchanged by the command-line tool.
//!
//! Vertices are named by string labels; internally the `i`-th declared
//! label becomes `VertexId(i)`. Spines are written starting at the
//! smallest label (numeric labels compare by value and sort before the
//! rest) and every page lists its edges in sorted order, so equal
//! embeddings serialise to identical text.

use std::cmp::Ordering;
use std::collections::HashMap;

use halin_book::halin::{make_halin, HalinViolation};
use halin_book::{BookEmbedding, CircularOrder, Edge, Graph, HalinError, HalinGraph, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0}, expected {SCHEMA_VERSION}")]
    SchemaVersion(u32),
    #[error("label {0:?} is declared more than once")]
    DuplicateLabel(String),
    #[error("label {0:?} is not declared")]
    UnknownLabel(String),
    #[error("label {0:?} is declared but used by no edge")]
    UnusedLabel(String),
    #[error("{0:?} is joined to itself")]
    Loop(String),
    #[error("{0:?} appears more than once in the spine")]
    RepeatedSpineLabel(String),
    #[error("not a Halin graph:\n{}", .0.join("\n"))]
    NotHalin(Vec<String>),
    #[error("{0}")]
    Halin(HalinError),
    #[error("edge {0}-{1} is listed twice")]
    DuplicateEdge(String, String),
}

/// Sort key for labels: numbers by value first, then other strings.
pub fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Two-way map between labels and vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl Labels {
    pub fn new(names: Vec<String>) -> Result<Self, DocumentError> {
        let mut ids = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if ids.insert(name.clone(), VertexId(i as u32)).is_some() {
                return Err(DocumentError::DuplicateLabel(name.clone()));
            }
        }
        Ok(Labels { names, ids })
    }

    /// Labels `"0".."n"` for the vertex ids `0..n`.
    pub fn numeric(n: usize) -> Self {
        Labels::new((0..n).map(|i| i.to_string()).collect()).expect("numbers are distinct")
    }

    pub fn id(&self, label: &str) -> Result<VertexId, DocumentError> {
        self.ids
            .get(label)
            .copied()
            .ok_or_else(|| DocumentError::UnknownLabel(label.to_string()))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge(&self, [a, b]: &[String; 2]) -> Result<Edge, DocumentError> {
        Edge::try_new(self.id(a)?, self.id(b)?).map_err(|_| DocumentError::Loop(a.clone()))
    }

    /// Label pair of an edge, smaller label first.
    pub fn pair(&self, e: Edge) -> [String; 2] {
        let (a, b) = e.endpoints();
        let (a, b) = (self.name(a), self.name(b));
        if label_order(a, b) == Ordering::Greater {
            [b.to_string(), a.to_string()]
        } else {
            [a.to_string(), b.to_string()]
        }
    }

    pub fn edge_text(&self, e: Edge) -> String {
        let [a, b] = self.pair(e);
        format!("{a}-{b}")
    }

    fn graph(&self, edges: &[[String; 2]]) -> Result<Graph, DocumentError> {
        let mut g = Graph::new();
        for pair in edges {
            let e = self.edge(pair)?;
            if g.has_edge(e) {
                return Err(DocumentError::DuplicateEdge(
                    pair[0].clone(),
                    pair[1].clone(),
                ));
            }
            g.add_edge(e).expect("loops were rejected above");
        }
        if let Some(unused) = self.names.iter().find(|n| !g.has_vertex(self.ids[*n])) {
            return Err(DocumentError::UnusedLabel(unused.clone()));
        }
        Ok(g)
    }

    /// Human-readable form of a Halin violation, in labels.
    pub fn describe(&self, v: &HalinViolation) -> String {
        let e = |e: &Edge| self.edge_text(*e);
        match v {
            HalinViolation::TooFewVertices(n) => {
                format!("tree has {n} vertices, at least 4 are required")
            }
            HalinViolation::DuplicateTreeEdge(x) => format!("tree edge {} listed twice", e(x)),
            HalinViolation::NotATree(why) => format!("tree edges do not form a tree: {why}"),
            HalinViolation::DegreeTwoVertex(x) => {
                format!("interior vertex {} has degree 2", self.name(*x))
            }
            HalinViolation::CycleRepeatsVertex(x) => {
                format!("leaf cycle visits {} more than once", self.name(*x))
            }
            HalinViolation::CycleMissingLeaf(x) => {
                format!("leaf {} is missing from the cycle", self.name(*x))
            }
            HalinViolation::CycleHasNonLeaf(x) => {
                format!("cycle vertex {} is not a leaf of the tree", self.name(*x))
            }
            HalinViolation::NonContiguousSplit(x) => format!(
                "removing tree edge {} splits the leaves into non-contiguous arcs",
                e(x)
            ),
            HalinViolation::CycleEdgeInTree(x) => {
                format!("cycle edge {} is also a tree edge", e(x))
            }
        }
    }
}

fn check_version(v: u32) -> Result<(), DocumentError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(DocumentError::SchemaVersion(v))
    }
}

/// A Halin graph as a tree plus the cyclic order of its leaves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub schema_version: u32,
    pub vertices: Vec<String>,
    pub tree_edges: Vec<[String; 2]>,
    pub leaf_cycle: Vec<String>,
}

impl GraphDocument {
    /// Document for `h` with each vertex labelled by its number.
    pub fn from_halin(h: &HalinGraph) -> Self {
        let n = h
            .graph()
            .vertices()
            .map(|v| v.index() + 1)
            .max()
            .unwrap_or(0);
        let labels = Labels::numeric(n);
        let mut tree_edges: Vec<[String; 2]> = h.tree().edges().map(|e| labels.pair(e)).collect();
        tree_edges.sort_by(pair_order);
        GraphDocument {
            schema_version: SCHEMA_VERSION,
            vertices: h
                .graph()
                .vertices()
                .map(|v| labels.name(v).to_string())
                .collect(),
            tree_edges,
            leaf_cycle: h
                .leaf_cycle()
                .iter()
                .map(|v| labels.name(v).to_string())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: GraphDocument = serde_json::from_str(text)?;
        check_version(doc.schema_version)?;
        Ok(doc)
    }

    pub fn labels(&self) -> Result<Labels, DocumentError> {
        Labels::new(self.vertices.clone())
    }

    /// Validates the document and builds the Halin graph it describes.
    pub fn to_halin(&self) -> Result<(HalinGraph, Labels), DocumentError> {
        check_version(self.schema_version)?;
        let labels = self.labels()?;
        labels.graph(&self.tree_edges)?;
        let tree_edges = self
            .tree_edges
            .iter()
            .map(|p| labels.edge(p))
            .collect::<Result<Vec<_>, _>>()?;
        let cycle = self
            .leaf_cycle
            .iter()
            .map(|l| labels.id(l))
            .collect::<Result<Vec<_>, _>>()?;
        match make_halin(tree_edges, cycle) {
            Ok(h) => Ok((h, labels)),
            Err(HalinError::Invalid(violations)) => Err(DocumentError::NotHalin(
                violations.iter().map(|v| labels.describe(v)).collect(),
            )),
            Err(other) => Err(DocumentError::Halin(other)),
        }
    }
}

/// Any simple graph as a flat edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainGraphDocument {
    pub schema_version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl PlainGraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.vertices().map(|v| v.index() + 1).max().unwrap_or(0);
        let labels = Labels::numeric(n);
        let mut edges: Vec<[String; 2]> = g.edges().map(|e| labels.pair(e)).collect();
        edges.sort_by(pair_order);
        PlainGraphDocument {
            schema_version: SCHEMA_VERSION,
            vertices: g.vertices().map(|v| labels.name(v).to_string()).collect(),
            edges,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: PlainGraphDocument = serde_json::from_str(text)?;
        check_version(doc.schema_version)?;
        Ok(doc)
    }

    pub fn to_graph(&self) -> Result<(Graph, Labels), DocumentError> {
        check_version(self.schema_version)?;
        let labels = Labels::new(self.vertices.clone())?;
        let g = labels.graph(&self.edges)?;
        Ok((g, labels))
    }
}

fn pair_order(a: &[String; 2], b: &[String; 2]) -> Ordering {
    label_order(&a[0], &b[0]).then_with(|| label_order(&a[1], &b[1]))
}

/// A matching book embedding: spine order and the edges of every page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    pub schema_version: u32,
    pub spine: Vec<String>,
    pub pages: Vec<Vec<[String; 2]>>,
}

impl EmbeddingDocument {
    pub fn from_embedding(emb: &BookEmbedding, labels: &Labels) -> Self {
        let spine = emb.spine();
        let first = spine
            .iter()
            .min_by(|&a, &b| label_order(labels.name(a), labels.name(b)));
        let spine = first
            .and_then(|v| spine.starting_at(v))
            .unwrap_or_else(|| spine.clone());
        let pages = emb
            .pages()
            .iter()
            .map(|page| {
                let mut pairs: Vec<[String; 2]> = page.iter().map(|&e| labels.pair(e)).collect();
                pairs.sort_by(pair_order);
                pairs
            })
            .collect();
        EmbeddingDocument {
            schema_version: SCHEMA_VERSION,
            spine: spine.iter().map(|v| labels.name(v).to_string()).collect(),
            pages,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: EmbeddingDocument = serde_json::from_str(text)?;
        check_version(doc.schema_version)?;
        Ok(doc)
    }

    /// The embedding in vertex ids. Labels must all be declared in
    /// `labels`; whether the spine covers the graph is left to the
    /// validator.
    pub fn to_embedding(&self, labels: &Labels) -> Result<BookEmbedding, DocumentError> {
        check_version(self.schema_version)?;
        let ids = self
            .spine
            .iter()
            .map(|l| labels.id(l))
            .collect::<Result<Vec<_>, _>>()?;
        let spine = CircularOrder::new(ids)
            .map_err(|_| DocumentError::RepeatedSpineLabel(first_repeat(&self.spine)))?;
        let pages = self
            .pages
            .iter()
            .map(|page| page.iter().map(|p| labels.edge(p)).collect())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BookEmbedding::new(spine, pages))
    }
}

fn first_repeat(labels: &[String]) -> String {
    let mut seen = std::collections::HashSet::new();
    labels
        .iter()
        .find(|l| !seen.insert(l.as_str()))
        .cloned()
        .unwrap_or_default()
}

/// Serialises a document as one line of compact JSON.
pub fn to_line<T: Serialize>(doc: &T) -> String {
    let mut line = serde_json::to_string(doc).expect("documents always serialise");
    line.push('\n');
    line
}
