//! Constructive matching book embeddings of Halin graphs.
//!
//! Wheels are embedded directly. Any other Halin graph is reduced by
//! contracting a fan (an interior vertex whose neighbours are all leaves
//! but one) into a single leaf, embedded recursively, and then expanded:
//! the contracted vertex is replaced on the spine by a block holding the
//! fan, and the fan's edges are placed by a fixed page table. The result
//! uses 4 pages when the graph is cubic and `Δ` pages otherwise.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{CircularOrder, Edge, GraphError, VertexId};
use crate::halin::{
    contract_fan, pick_fan_center, wheel, ExpansionRecord, FanPages, HalinError, HalinGraph,
};
use crate::verification::{check_pages, validate, ValidationReport, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("a wheel needs at least 4 vertices, got {0}")]
    WheelTooSmall(usize),
    #[error("vertex {0} is not on the spine")]
    NotOnSpine(VertexId),
    #[error("edge {0} at the contracted vertex is on no page")]
    MissingFanEdge(Edge),
    #[error("expansion needs {required} pages, target is {target}")]
    TooFewPages { required: usize, target: usize },
    #[error("no host pages for the fan edges among {pages} pages")]
    NoHostPages { pages: usize },
    #[error("block edge {inner} crosses edge {outer} outside the block")]
    BlockLocality { inner: Edge, outer: Edge },
    #[error("page repair failed: {0}")]
    RepairFailed(String),
    #[error("constructed embedding is invalid:\n{0}")]
    InvalidResult(ValidationReport),
    #[error("embedding failed for a Halin graph on {} vertices: {source}", .instance.vertex_count())]
    Construction {
        instance: Box<HalinGraph>,
        source: Box<EmbedError>,
    },
    #[error(transparent)]
    Halin(#[from] HalinError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl EmbedError {
    /// The Halin graph the failure occurred on, when known.
    pub fn instance(&self) -> Option<&HalinGraph> {
        match self {
            EmbedError::Construction { instance, .. } => Some(instance),
            _ => None,
        }
    }
}

/// A spine order plus an edge set per page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookEmbedding {
    spine: CircularOrder,
    pages: Vec<Vec<Edge>>,
}

impl BookEmbedding {
    /// Edges within each page are sorted; duplicates are kept so the
    /// validator can report them.
    pub fn new(spine: CircularOrder, mut pages: Vec<Vec<Edge>>) -> Self {
        for page in &mut pages {
            page.sort();
        }
        BookEmbedding { spine, pages }
    }

    pub fn spine(&self) -> &CircularOrder {
        &self.spine
    }

    pub fn pages(&self) -> &[Vec<Edge>] {
        &self.pages
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.pages.iter().flatten().copied()
    }

    pub fn page_of(&self, e: Edge) -> Option<usize> {
        self.pages.iter().position(|p| p.contains(&e))
    }

    /// Same pages, spine read from position `shift`.
    pub fn rotate(&self, shift: i64) -> BookEmbedding {
        BookEmbedding {
            spine: self.spine.rotate(shift),
            pages: self.pages.clone(),
        }
    }

    /// Same pages, spine reversed.
    pub fn reflect(&self) -> BookEmbedding {
        BookEmbedding {
            spine: self.spine.reflect(),
            pages: self.pages.clone(),
        }
    }
}

/// The wheel page table applied literally for any `m ≥ 4`, on the labels of
/// [`wheel`]. Valid for `m ≥ 5`; at `m = 4` it has one crossing.
pub fn wheel_page_table(m: usize) -> Result<BookEmbedding, EmbedError> {
    if m < 4 {
        return Err(EmbedError::WheelTooSmall(m));
    }
    let rim: Vec<VertexId> = (1..m as u32).map(VertexId).collect();
    Ok(wheel_table_on(VertexId(0), &rim))
}

fn wheel_spine(hub: VertexId, rim: &[VertexId]) -> CircularOrder {
    let split = rim.len() / 2;
    let mut spine: Vec<VertexId> = rim[..split].iter().rev().copied().collect();
    spine.push(hub);
    spine.extend_from_slice(&rim[split..]);
    CircularOrder::new(spine).expect("wheel vertices are distinct")
}

/// Rim `v_1..v_n` with `n = m - 1`. Spine `v_⌊n/2⌋ … v_1, u, v_⌊n/2⌋+1 … v_n`;
/// page `i < n - 1` holds `u v_i` and `v_{i+1} v_{i+2}`, page `n - 1` holds
/// `u v_{n-1}` and `v_n v_1`, page `n` holds `u v_n` and `v_1 v_2`.
fn wheel_table_on(hub: VertexId, rim: &[VertexId]) -> BookEmbedding {
    let n = rim.len();
    let v = |i: usize| rim[i - 1];
    let mut pages = Vec::with_capacity(n);
    for i in 1..=n - 2 {
        pages.push(vec![Edge::new(hub, v(i)), Edge::new(v(i + 1), v(i + 2))]);
    }
    pages.push(vec![Edge::new(hub, v(n - 1)), Edge::new(v(n), v(1))]);
    pages.push(vec![Edge::new(hub, v(n)), Edge::new(v(1), v(2))]);
    BookEmbedding::new(wheel_spine(hub, rim), pages)
}

/// `K_4` on the same spine as the table, with the crossing last page split
/// in two. Four pages are necessary for `K_4`.
fn k4_on(hub: VertexId, rim: &[VertexId]) -> BookEmbedding {
    let [a, b, c] = rim else {
        unreachable!("K4 has a three-vertex rim")
    };
    let pages = vec![
        vec![Edge::new(hub, *a), Edge::new(*b, *c)],
        vec![Edge::new(hub, *b), Edge::new(*c, *a)],
        vec![Edge::new(hub, *c)],
        vec![Edge::new(*a, *b)],
    ];
    BookEmbedding::new(wheel_spine(hub, rim), pages)
}

fn embed_wheel_on(hub: VertexId, rim: &[VertexId]) -> BookEmbedding {
    if rim.len() == 3 {
        k4_on(hub, rim)
    } else {
        wheel_table_on(hub, rim)
    }
}

/// Optimal matching book embedding of the wheel `W_m` (labels as in
/// [`wheel`]): `m - 1` pages for `m ≥ 5`, 4 pages for `W_4 = K_4`.
pub fn embed_wheel(m: usize) -> Result<BookEmbedding, EmbedError> {
    let w = wheel(m).map_err(|_| EmbedError::WheelTooSmall(m))?;
    let hub = *w.interior_vertices().first().unwrap();
    Ok(embed_wheel_on(hub, w.leaf_cycle().as_slice()))
}

/// Cyclic order of `x`, `w'` and `y` on the spine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `… x … w' … y …`
    Forward,
    /// `… y … w' … x …`
    Backward,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Forward => "x-w'-y",
            Orientation::Backward => "y-w'-x",
        })
    }
}

/// Rotates the spine (never changing pages) so that `w'` lies between `x`
/// and `y` in the linear reading, and reports which of the two cyclic
/// orders holds. Already-normalised embeddings are returned unchanged.
pub fn normalize_for_expansion(
    emb: &BookEmbedding,
    x: VertexId,
    w_prime: VertexId,
    y: VertexId,
) -> Result<(BookEmbedding, Orientation), EmbedError> {
    let spine = emb.spine();
    let pos = |v| spine.position(v).ok_or(EmbedError::NotOnSpine(v));
    let (px, pw, py) = (pos(x)?, pos(w_prime)?, pos(y)?);
    let between = |p: usize| px.min(py) < p && p < px.max(py);
    let normalized = if between(pw) {
        emb.clone()
    } else {
        emb.rotate(px.max(py) as i64)
    };
    let s = normalized.spine();
    let orientation = if s.position(x) < s.position(w_prime) {
        Orientation::Forward
    } else {
        Orientation::Backward
    };
    Ok((normalized, orientation))
}

fn fits(spine: &CircularOrder, page: &[Edge], new: &[Edge]) -> bool {
    new.iter().enumerate().all(|(i, &n)| {
        page.iter()
            .chain(&new[..i])
            .all(|&e| !e.shares_endpoint(n) && !spine.interleaves(e, n).unwrap_or(true))
    })
}

/// Assigns each group to a distinct page outside `taken`, trying pages in
/// ascending order and backtracking when a group fits nowhere.
fn place_groups(
    spine: &CircularOrder,
    pages: &[Vec<Edge>],
    groups: &[Vec<Edge>],
    taken: &mut Vec<usize>,
    out: &mut Vec<usize>,
) -> bool {
    let Some(group) = groups.get(out.len()) else {
        return true;
    };
    for p in 0..pages.len() {
        if taken.contains(&p) || !fits(spine, &pages[p], group) {
            continue;
        }
        taken.push(p);
        out.push(p);
        if place_groups(spine, pages, groups, taken, out) {
            return true;
        }
        out.pop();
        taken.pop();
    }
    false
}

/// Page table for the fan edges, by logical page. Logical pages 1, 2, 3
/// are those of `w'u`, `w'x`, `w'y`.
fn fan_page_table(rec: &ExpansionRecord) -> Vec<Vec<Edge>> {
    let w = rec.center;
    let k = rec.fan.len();
    let v = |i: usize| rec.fan[i - 1];
    let (u, x, y) = (rec.third_neighbor, rec.predecessor, rec.successor);
    if k == 2 {
        return vec![
            vec![Edge::new(w, u)],
            vec![Edge::new(v(1), x), Edge::new(w, v(2))],
            vec![Edge::new(v(2), y), Edge::new(w, v(1))],
            vec![Edge::new(v(1), v(2))],
        ];
    }
    let mut table = vec![
        vec![Edge::new(w, u), Edge::new(v(1), v(2))],
        vec![Edge::new(w, v(k)), Edge::new(v(1), x)],
        vec![Edge::new(w, v(k - 1)), Edge::new(v(k), y)],
    ];
    for i in 4..=k + 1 {
        table.push(vec![Edge::new(w, v(i - 3)), Edge::new(v(i - 2), v(i - 1))]);
    }
    table
}

/// Spine block replacing `w'`: `v_c, …, v_1, w, v_{c+1}, …, v_k` with
/// `c = ⌈k/2⌉`.
fn fan_block(rec: &ExpansionRecord) -> Vec<VertexId> {
    let c = rec.fan.len().div_ceil(2);
    let mut block: Vec<VertexId> = rec.fan[..c].iter().rev().copied().collect();
    block.push(rec.center);
    block.extend_from_slice(&rec.fan[c..]);
    block
}

/// Pages needed to expand `rec` into an embedding with `current` pages.
fn required_pages(rec: &ExpansionRecord, current: usize) -> usize {
    let table = if rec.fan.len() == 2 {
        4
    } else {
        rec.fan.len() + 1
    };
    table.max(current)
}

/// Outcome of one expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub embedding: BookEmbedding,
    /// True when the page table left violations that [`repair_pages`] had
    /// to resolve.
    pub repaired: bool,
}

/// Replaces the contracted vertex `w'` of `reduced` by the fan block and
/// places the fan's edges, producing an embedding of the expanded graph
/// with `target_pages` pages. Fills `rec.pages` from `reduced`.
pub fn expand_embedding(
    reduced: &BookEmbedding,
    rec: &mut ExpansionRecord,
    target_pages: usize,
) -> Result<BookEmbedding, EmbedError> {
    expand_with_report(reduced, rec, target_pages).map(|e| e.embedding)
}

pub fn expand_with_report(
    reduced: &BookEmbedding,
    rec: &mut ExpansionRecord,
    target_pages: usize,
) -> Result<Expansion, EmbedError> {
    let w_prime = rec.contracted;
    let page_of = |other: VertexId| {
        let e = Edge::new(w_prime, other);
        reduced.page_of(e).ok_or(EmbedError::MissingFanEdge(e))
    };
    let fan_pages = FanPages {
        third_neighbor: page_of(rec.third_neighbor)?,
        predecessor: page_of(rec.predecessor)?,
        successor: page_of(rec.successor)?,
    };
    rec.pages = Some(fan_pages);
    let required = required_pages(rec, reduced.page_count());
    if target_pages < required {
        return Err(EmbedError::TooFewPages {
            required,
            target: target_pages,
        });
    }

    let block = fan_block(rec);
    let mut sequence = Vec::with_capacity(reduced.spine().len() + block.len());
    for v in reduced.spine().iter() {
        if v == w_prime {
            sequence.extend_from_slice(&block);
        } else {
            sequence.push(v);
        }
    }
    let spine = CircularOrder::new(sequence)?;

    let mut pages: Vec<Vec<Edge>> = reduced
        .pages()
        .iter()
        .map(|p| p.iter().copied().filter(|e| !e.contains(w_prime)).collect())
        .collect();
    pages.resize(target_pages, Vec::new());

    let table = fan_page_table(rec);
    let fixed = [
        fan_pages.third_neighbor,
        fan_pages.predecessor,
        fan_pages.successor,
    ];
    for (&p, edges) in fixed.iter().zip(&table) {
        pages[p].extend_from_slice(edges);
    }
    let mut taken = fixed.to_vec();
    let mut hosts = Vec::new();
    if !place_groups(&spine, &pages, &table[3..], &mut taken, &mut hosts) {
        return Err(EmbedError::NoHostPages {
            pages: target_pages,
        });
    }
    for (&p, edges) in hosts.iter().zip(&table[3..]) {
        pages[p].extend_from_slice(edges);
    }

    check_block_locality(&spine, &pages, &block)?;

    let embedding = BookEmbedding::new(spine, pages);
    if check_pages(&embedding).is_clean() {
        return Ok(Expansion {
            embedding,
            repaired: false,
        });
    }
    let movable: BTreeSet<Edge> = table.into_iter().flatten().collect();
    Ok(Expansion {
        embedding: repair_pages(&embedding, &movable)?,
        repaired: true,
    })
}

/// Edges inside the block never cross edges that avoid it.
fn check_block_locality(
    spine: &CircularOrder,
    pages: &[Vec<Edge>],
    block: &[VertexId],
) -> Result<(), EmbedError> {
    let in_block = |v: VertexId| block.contains(&v);
    let all: Vec<Edge> = pages.iter().flatten().copied().collect();
    let inner = all.iter().filter(|e| {
        let (a, b) = e.endpoints();
        in_block(a) && in_block(b)
    });
    for &i in inner {
        for &o in &all {
            let (a, b) = o.endpoints();
            if !in_block(a) && !in_block(b) && spine.interleaves(i, o)? {
                return Err(EmbedError::BlockLocality { inner: i, outer: o });
            }
        }
    }
    Ok(())
}

/// Reassigns the `movable` edges over the existing pages so that every page
/// is a non-crossing matching. Page count is fixed; edges outside
/// `movable` never move. An already-valid embedding is returned as is.
pub fn repair_pages(
    emb: &BookEmbedding,
    movable: &BTreeSet<Edge>,
) -> Result<BookEmbedding, EmbedError> {
    if check_pages(emb).is_clean() {
        return Ok(emb.clone());
    }
    let fixed: Vec<Vec<Edge>> = emb
        .pages()
        .iter()
        .map(|p| p.iter().copied().filter(|e| !movable.contains(e)).collect())
        .collect();
    let fixed_emb = BookEmbedding::new(emb.spine().clone(), fixed.clone());
    let fixed_report = check_pages(&fixed_emb);
    if !fixed_report.is_clean() {
        return Err(EmbedError::RepairFailed(format!(
            "violations among fixed edges:\n{fixed_report}"
        )));
    }
    let order: Vec<(Edge, Option<usize>)> = emb
        .pages()
        .iter()
        .enumerate()
        .flat_map(|(p, page)| {
            page.iter()
                .filter(|e| movable.contains(e))
                .map(move |&e| (e, Some(p)))
        })
        .collect();
    let mut pages = fixed;
    if reassign(emb.spine(), &mut pages, &order) {
        Ok(BookEmbedding::new(emb.spine().clone(), pages))
    } else {
        Err(EmbedError::RepairFailed(format!(
            "no placement of {} movable edges fits in {} pages",
            order.len(),
            emb.page_count()
        )))
    }
}

fn reassign(
    spine: &CircularOrder,
    pages: &mut [Vec<Edge>],
    todo: &[(Edge, Option<usize>)],
) -> bool {
    let Some((&(edge, home), rest)) = todo.split_first() else {
        return true;
    };
    let candidates = home
        .into_iter()
        .chain((0..pages.len()).filter(|&p| Some(p) != home));
    for p in candidates.collect::<Vec<_>>() {
        if !fits(spine, &pages[p], &[edge]) {
            continue;
        }
        pages[p].push(edge);
        if reassign(spine, pages, rest) {
            return true;
        }
        pages[p].pop();
    }
    false
}

/// Which construction an expansion step used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionCase {
    /// Cubic graph, four pages.
    Cubic,
    /// Reduced graph has `Δ ≥ 4` and the fan centre has maximum degree.
    FullDegree,
    /// Reduced graph has `Δ ≥ 4` and the fan centre is below maximum degree.
    PartialDegree,
    /// Cubic reduced graph, fan centre is the unique vertex of degree ≥ 4.
    FromCubic,
}

/// One expansion of the recursion, innermost first.
#[derive(Debug, Clone)]
pub struct ExpansionStep {
    /// The graph this step embeds.
    pub graph: HalinGraph,
    pub record: ExpansionRecord,
    pub orientation: Orientation,
    pub case: ExpansionCase,
    pub repaired: bool,
    pub embedding: BookEmbedding,
}

/// Every intermediate embedding of one run of [`embed_halin`].
#[derive(Debug, Clone)]
pub struct EmbeddingTrace {
    /// The wheel the reduction ended on, with its embedding.
    pub base_graph: HalinGraph,
    pub base: BookEmbedding,
    pub steps: Vec<ExpansionStep>,
}

impl EmbeddingTrace {
    pub fn embedding(&self) -> &BookEmbedding {
        self.steps.last().map_or(&self.base, |s| &s.embedding)
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }
}

fn expansion_case(
    graph: &HalinGraph,
    reduced: &HalinGraph,
    rec: &ExpansionRecord,
) -> ExpansionCase {
    let delta = graph.max_degree();
    if delta == 3 {
        ExpansionCase::Cubic
    } else if reduced.max_degree() == 3 {
        ExpansionCase::FromCubic
    } else if rec.center_degree() == delta {
        ExpansionCase::FullDegree
    } else {
        ExpansionCase::PartialDegree
    }
}

/// Matching book embedding of `h` with 4 pages if `h` is cubic and
/// `Δ(h)` pages otherwise, certified by the validator.
pub fn embed_halin(h: &HalinGraph) -> Result<BookEmbedding, EmbedError> {
    embed_halin_traced(h).map(|t| t.embedding().clone())
}

pub fn embed_halin_traced(h: &HalinGraph) -> Result<EmbeddingTrace, EmbedError> {
    build_trace(h).map_err(|source| EmbedError::Construction {
        instance: Box::new(h.clone()),
        source: Box::new(source),
    })
}

fn build_trace(h: &HalinGraph) -> Result<EmbeddingTrace, EmbedError> {
    let mut reductions: Vec<(HalinGraph, ExpansionRecord)> = Vec::new();
    let mut current = h.clone();
    while !current.is_star() {
        let w = pick_fan_center(&current)?;
        let (reduced, rec) = contract_fan(&current, w)?;
        reductions.push((current, rec));
        current = reduced;
    }
    let hub = *current.interior_vertices().first().unwrap();
    let base = embed_wheel_on(hub, current.leaf_cycle().as_slice());
    certify(&current, &base)?;

    let mut steps: Vec<ExpansionStep> = Vec::with_capacity(reductions.len());
    let mut reduced_graph = current.clone();
    let base_graph = current;
    for (graph, mut record) in reductions.into_iter().rev() {
        let previous = steps.last().map_or(&base, |s| &s.embedding);
        let (normalized, orientation) = normalize_for_expansion(
            previous,
            record.predecessor,
            record.contracted,
            record.successor,
        )?;
        let case = expansion_case(&graph, &reduced_graph, &record);
        let expansion = expand_with_report(&normalized, &mut record, graph.optimal_page_count())?;
        certify(&graph, &expansion.embedding)?;
        reduced_graph = graph.clone();
        steps.push(ExpansionStep {
            graph,
            record,
            orientation,
            case,
            repaired: expansion.repaired,
            embedding: expansion.embedding,
        });
    }
    Ok(EmbeddingTrace {
        base_graph,
        base,
        steps,
    })
}

fn certify(h: &HalinGraph, emb: &BookEmbedding) -> Result<(), EmbedError> {
    let report = validate(h.graph(), emb)?;
    if !report.is_clean() {
        return Err(EmbedError::InvalidResult(report));
    }
    if emb.page_count() != h.optimal_page_count() {
        return Err(EmbedError::TooFewPages {
            required: h.optimal_page_count(),
            target: emb.page_count(),
        });
    }
    Ok(())
}
