use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use halin_book::halin::{
    enumerate_halin, plane_code, prism, random_halin, wheel, ENUMERATION_VERTEX_LIMIT,
};
use halin_book::verification::{exact_mbt_with_limits, EdgeIssue};
use halin_book::{
    embed_halin, validate, BookEmbedding, Graph, HalinError, HalinGraph, OracleLimits,
    ValidationReport, VerifyError,
};
use thiserror::Error;

use crate::document::{
    to_line, DocumentError, EmbeddingDocument, GraphDocument, Labels, PlainGraphDocument,
};
use crate::render;

pub const LIMIT_ENV: &str = "HALIN_BOOK_ORACLE_LIMIT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidCertificate(String),
    #[error("{0}")]
    BadInput(String),
    #[error("{message}\ncounterexample saved to {}", .path.display())]
    Construction { message: String, path: PathBuf },
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidCertificate(_) => 1,
            CliError::BadInput(_) => 2,
            CliError::Construction { .. } => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::BadInput(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::BadInput(e.to_string())
    }
}

/// Oracle guard written as `VERTICES` or `VERTICES,EDGES`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuardLimit(pub OracleLimits);

impl FromStr for GuardLimit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut limits = OracleLimits::default();
        let mut parts = s.split(',');
        let parse = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected VERTICES or VERTICES,EDGES, got {s:?}"))
        };
        limits.max_vertices = parse(parts.next().unwrap_or(""))?;
        if let Some(e) = parts.next() {
            limits.max_edges = parse(e)?;
        }
        if parts.next().is_some() {
            return Err(format!("expected VERTICES or VERTICES,EDGES, got {s:?}"));
        }
        Ok(GuardLimit(limits))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "halin-book",
    version,
    about = "Matching book embeddings of Halin graphs"
)]
pub struct Cli {
    /// Seed for `gen random`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Oracle guard as VERTICES or VERTICES,EDGES (overrides HALIN_BOOK_ORACLE_LIMIT).
    #[arg(long, global = true)]
    pub limit: Option<GuardLimit>,
    /// Where `mbt` writes its witness embedding.
    #[arg(long, global = true)]
    pub witness: Option<PathBuf>,
    /// Output format of `render`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Svg)]
    pub format: Format,
    /// Directory for counterexamples of failed constructions.
    #[arg(long, global = true)]
    pub counterexample_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Halin graph documents, one per line.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Embed a Halin graph document with the optimal number of pages.
    Embed {
        /// Graph document, or `-` for standard input.
        graph: PathBuf,
    },
    /// Check an embedding document against a graph document.
    Verify {
        graph: PathBuf,
        embedding: PathBuf,
        /// Read the graph as a plain edge list.
        #[arg(long)]
        no_halin: bool,
    },
    /// Exact matching book thickness by exhaustive search.
    Mbt {
        graph: PathBuf,
        /// Read the graph as a plain edge list.
        #[arg(long)]
        no_halin: bool,
    },
    /// Embed and verify every Halin graph up to a size.
    TheoremCheck {
        #[arg(long)]
        max_vertices: usize,
    },
    /// Draw a verified embedding.
    Render { graph: PathBuf, embedding: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Wheel with `m` vertices.
    Wheel { m: usize },
    /// Triangular prism.
    Prism,
    /// Random Halin graph with `p` interior vertices.
    Random {
        p: usize,
        #[arg(long, default_value_t = 5)]
        max_child: usize,
    },
    /// Every Halin graph with at most `n` vertices.
    Enumerate { n: usize },
}

impl Cli {
    /// Guard from `--limit`, else the environment, else the default.
    pub fn oracle_limits(&self) -> Result<OracleLimits, CliError> {
        if let Some(GuardLimit(l)) = self.limit {
            return Ok(l);
        }
        match std::env::var(LIMIT_ENV) {
            Ok(v) => v
                .parse::<GuardLimit>()
                .map(|g| g.0)
                .map_err(|e| CliError::BadInput(format!("{LIMIT_ENV}: {e}"))),
            Err(_) => Ok(OracleLimits::default()),
        }
    }

    fn counterexample_dir(&self) -> PathBuf {
        self.counterexample_dir
            .clone()
            .unwrap_or_else(std::env::temp_dir)
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
    }
}

fn load_graph(path: &Path, no_halin: bool) -> Result<(Graph, Labels), CliError> {
    let text = read_input(path)?;
    if no_halin {
        Ok(PlainGraphDocument::parse(&text)?.to_graph()?)
    } else {
        let (h, labels) = GraphDocument::parse(&text)?.to_halin()?;
        Ok((h.graph().clone(), labels))
    }
}

fn load_embedding(path: &Path, labels: &Labels) -> Result<BookEmbedding, CliError> {
    Ok(EmbeddingDocument::parse(&read_input(path)?)?.to_embedding(labels)?)
}

fn verify_error(e: VerifyError, labels: &Labels) -> CliError {
    match e {
        VerifyError::SpineMismatch { missing, unknown } => {
            let names = |vs: &[halin_book::VertexId]| {
                vs.iter()
                    .map(|&v| labels.name(v))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let mut parts = Vec::new();
            if !missing.is_empty() {
                parts.push(format!("spine is missing {}", names(&missing)));
            }
            if !unknown.is_empty() {
                parts.push(format!("spine has extra vertices {}", names(&unknown)));
            }
            CliError::BadInput(parts.join("; "))
        }
        VerifyError::TooManyVertices { .. } | VerifyError::TooManyEdges { .. } => CliError::Guard(
            format!("{e}; raise the guard with --limit VERTICES[,EDGES] or {LIMIT_ENV}"),
        ),
        other => CliError::BadInput(other.to_string()),
    }
}

/// One line per violation, in document labels.
pub fn describe_report(report: &ValidationReport, labels: &Labels) -> Vec<String> {
    let e = |e| labels.edge_text(e);
    let mut lines = Vec::new();
    for c in &report.crossings {
        lines.push(format!(
            "page {}: edges {} and {} cross",
            c.page,
            e(c.first),
            e(c.second)
        ));
    }
    for m in &report.matching_violations {
        lines.push(format!(
            "page {}: vertex {} has {} incident edges",
            m.page,
            labels.name(m.vertex),
            m.incident
        ));
    }
    for issue in &report.edge_issues {
        lines.push(match *issue {
            EdgeIssue::Missing(x) => format!("edge {} is on no page", e(x)),
            EdgeIssue::Duplicate(x) => format!("edge {} is assigned more than once", e(x)),
            EdgeIssue::Unknown(x) => format!("edge {} is not in the graph", e(x)),
        });
    }
    lines
}

fn checked(g: &Graph, emb: &BookEmbedding, labels: &Labels) -> Result<(), CliError> {
    let report = validate(g, emb).map_err(|e| verify_error(e, labels))?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::InvalidCertificate(format!(
            "INVALID {} violations\n{}",
            report.violation_count(),
            describe_report(&report, labels).join("\n")
        )))
    }
}

fn save_counterexample(dir: &Path, name_hint: &str, text: &str) -> Result<PathBuf, CliError> {
    let mut hasher = DefaultHasher::new();
    text.hash(&mut hasher);
    fs::create_dir_all(dir)?;
    let path = dir.join(format!(
        "counterexample-{name_hint}-{:016x}.json",
        hasher.finish()
    ));
    fs::write(&path, text)?;
    Ok(path)
}

fn gen_error(e: HalinError) -> CliError {
    match e {
        HalinError::EnumerationLimit { .. } => CliError::Guard(e.to_string()),
        other => CliError::BadInput(other.to_string()),
    }
}

/// Outcome of one graph in a theorem check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremRow {
    pub vertices: usize,
    pub max_degree: usize,
    pub formula: usize,
    /// Page count of the construction, or the error it raised.
    pub pages: Result<usize, String>,
    pub valid: bool,
    /// Exact thickness when the graph is within the oracle guard.
    pub mbt: Option<usize>,
    pub code: String,
}

impl TheoremRow {
    pub fn passed(&self) -> bool {
        self.valid && self.pages == Ok(self.formula) && self.mbt.is_none_or(|m| m == self.formula)
    }
}

pub fn theorem_row(h: &HalinGraph, limits: &OracleLimits) -> TheoremRow {
    let formula = h.optimal_page_count();
    let (pages, valid) = match embed_halin(h) {
        Ok(emb) => {
            let valid = validate(h.graph(), &emb).is_ok_and(|r| r.is_clean());
            (Ok(emb.page_count()), valid)
        }
        Err(e) => (Err(e.to_string()), false),
    };
    let mbt = exact_mbt_with_limits(h.graph(), limits)
        .ok()
        .map(|(k, _)| k);
    TheoremRow {
        vertices: h.vertex_count(),
        max_degree: h.max_degree(),
        formula,
        pages,
        valid,
        mbt,
        code: plane_code(h),
    }
}

fn format_row(i: usize, row: &TheoremRow) -> String {
    let pages = match &row.pages {
        Ok(k) => k.to_string(),
        Err(_) => "error".to_string(),
    };
    let mbt = row.mbt.map_or("-".to_string(), |m| m.to_string());
    format!(
        "{i:>4}  n={:<2} maxdeg={:<2} pages={:<5} formula={:<2} mbt={:<2} valid={:<5} {}  {}",
        row.vertices,
        row.max_degree,
        pages,
        row.formula,
        mbt,
        row.valid,
        if row.passed() { "PASS" } else { "FAIL" },
        row.code
    )
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Gen { kind } => {
            let graphs: Vec<HalinGraph> = match *kind {
                GenKind::Wheel { m } => vec![wheel(m).map_err(gen_error)?],
                GenKind::Prism => vec![prism()],
                GenKind::Random { p, max_child } => {
                    vec![random_halin(p, max_child, cli.seed).map_err(gen_error)?]
                }
                GenKind::Enumerate { n } => enumerate_halin(n).map_err(gen_error)?.collect(),
            };
            for h in &graphs {
                out.write_all(to_line(&GraphDocument::from_halin(h)).as_bytes())?;
            }
        }
        Command::Embed { graph } => {
            let text = read_input(graph)?;
            let (h, labels) = GraphDocument::parse(&text)?.to_halin()?;
            match embed_halin(&h) {
                Ok(emb) => {
                    let doc = EmbeddingDocument::from_embedding(&emb, &labels);
                    out.write_all(to_line(&doc).as_bytes())?;
                }
                Err(e) => {
                    let path = save_counterexample(
                        &cli.counterexample_dir(),
                        &format!("{}v", h.vertex_count()),
                        &text,
                    )?;
                    return Err(CliError::Construction {
                        message: format!("embedding failed: {e}"),
                        path,
                    });
                }
            }
        }
        Command::Verify {
            graph,
            embedding,
            no_halin,
        } => {
            let (g, labels) = load_graph(graph, *no_halin)?;
            let emb = load_embedding(embedding, &labels)?;
            checked(&g, &emb, &labels)?;
            writeln!(out, "VALID {} pages", emb.page_count())?;
        }
        Command::Mbt { graph, no_halin } => {
            let (g, labels) = load_graph(graph, *no_halin)?;
            let limits = cli.oracle_limits()?;
            let (k, witness) =
                exact_mbt_with_limits(&g, &limits).map_err(|e| verify_error(e, &labels))?;
            writeln!(out, "{k}")?;
            if let Some(path) = &cli.witness {
                let doc = EmbeddingDocument::from_embedding(&witness, &labels);
                fs::write(path, to_line(&doc))
                    .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
            }
        }
        Command::TheoremCheck { max_vertices } => {
            if *max_vertices > ENUMERATION_VERTEX_LIMIT {
                return Err(CliError::Guard(format!(
                    "enumeration is limited to {ENUMERATION_VERTEX_LIMIT} vertices, asked for {max_vertices}"
                )));
            }
            let limits = cli.oracle_limits()?;
            let mut failures = Vec::new();
            let mut count = 0;
            for (i, h) in enumerate_halin(*max_vertices)
                .map_err(gen_error)?
                .enumerate()
            {
                let row = theorem_row(&h, &limits);
                writeln!(out, "{}", format_row(i, &row))?;
                if !row.passed() {
                    failures.push(h);
                }
                count += 1;
            }
            if failures.is_empty() {
                writeln!(out, "PASS {count} graphs")?;
            } else {
                writeln!(out, "FAIL {} of {count} graphs", failures.len())?;
                let dir = cli.counterexample_dir();
                let mut path = PathBuf::new();
                for h in &failures {
                    let text = to_line(&GraphDocument::from_halin(h));
                    path = save_counterexample(&dir, &format!("{}v", h.vertex_count()), &text)?;
                }
                return Err(CliError::Construction {
                    message: format!("{} graphs disagree with the theorem", failures.len()),
                    path,
                });
            }
        }
        Command::Render { graph, embedding } => {
            let (g, labels) = load_graph(graph, false)?;
            let emb = load_embedding(embedding, &labels)?;
            checked(&g, &emb, &labels)?;
            let drawing = match cli.format {
                Format::Svg => render::svg(&emb, &labels),
                Format::Dot => render::dot(&emb, &labels),
            };
            out.write_all(drawing.as_bytes())?;
        }
    }
    Ok(())
}
