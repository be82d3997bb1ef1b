//! Twin-free clique-saturated graphs and host/family systems: constructions,
//! verifiers and isomorphism-reduced exhaustive search.

pub mod bits;
pub mod cache;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod report;
pub mod saturation;
pub mod search;
pub mod systems;

pub use graph::{BlowUpSpec, CanonicalForm, Graph, GraphBuilder, GraphError, TwinPartition};
