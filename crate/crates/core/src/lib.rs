//! Dichromatic numbers of small tournaments.
//!
//! The crate computes acyclic colourings of tournaments on up to 32 vertices and
//! ships an exhaustive verification pipeline showing that every tournament on 18
//! vertices is 4-colourable while a specific 19-vertex tournament is not.

pub mod coloring;
pub mod completions;
pub mod digraph;
pub mod error;
pub mod isomorphism;
pub mod named;
pub mod partial;
pub mod pipeline;
pub mod tournament;
pub mod transitive;
pub mod vertex_set;

pub use coloring::{chromatic_of_subset, dichromatic_number, k_colorable, ColorPartition};
pub use completions::{completions, Completions, Pruner};
pub use error::{Error, Result};
pub use partial::PartialTournament;
pub use tournament::Tournament;
pub use transitive::{contains_tt, is_transitive, maximal_transitive_sets, TransitiveSetList};
pub use vertex_set::{VertexSet, MAX_VERTICES};

/// Crate version, recorded in every scenario report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
