//! Matching book embeddings of Halin graphs.
//!
//! A matching book embedding places the vertices of a graph on a circular
//! spine and assigns every edge to a page so that no two edges on a page
//! cross or share a vertex. This crate builds optimal embeddings of Halin
//! graphs (4 pages when the graph is cubic, `Δ` pages otherwise) and
//! checks them against an exhaustive validator and an exact oracle.
//!
//! ```
//! use halin_book::{embedder::embed_halin, halin::prism, verification::validate};
//!
//! let h = prism();
//! let emb = embed_halin(&h).unwrap();
//! assert_eq!(emb.page_count(), 4);
//! assert!(validate(h.graph(), &emb).unwrap().is_clean());
//! ```

mod coloring;
pub mod embedder;
pub mod graph;
pub mod halin;
pub mod verification;

pub use embedder::{embed_halin, BookEmbedding, EmbedError};
pub use graph::{CircularOrder, Edge, Graph, GraphError, VertexId};
pub use halin::{HalinError, HalinGraph};
pub use verification::{exact_mbt, validate, OracleLimits, ValidationReport, VerifyError};
