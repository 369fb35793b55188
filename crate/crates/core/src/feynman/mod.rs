//! Vacuum multigraphs, their enumeration, and the divergence-restricted
//! Connes-Kreimer Hopf algebra with antipode and characters.

mod character;
mod enumerate;
mod forest;
mod graph;
mod hopf;
mod matching;

pub use character::{FormalCharacter, RandomCharacter, TableCharacter};
pub use enumerate::{enumerate_connected_graphs, xy_arities};
pub use forest::{
    graph_sum, sum_from_json, sum_mul, sum_to_json, tensor_mul, tensor_to_json, unit_sum, DiagramSum,
    DiagramTensor, GraphForest,
};
pub use graph::{named_graph, MultiGraph, GRAPH_NAMES, MAX_VERTICES};
pub use hopf::{contract, CharacterAntipode, Extraction, GraphCharacter, HopfContext};
pub use matching::{matchings_for_arities, matchings_oracle, MatchingCounts, MAX_LEGS};

use crate::error::{Error, Result};

/// Looks a graph up by registry name or parses inline JSON.
pub fn resolve_graph(spec: &str) -> Result<MultiGraph> {
    if let Some(g) = named_graph(spec) {
        return Ok(g);
    }
    let v: serde_json::Value = serde_json::from_str(spec)
        .map_err(|_| Error::Parse(format!("unknown graph {spec:?}; known names: {}", GRAPH_NAMES.join(", "))))?;
    MultiGraph::from_json(&v)
}
