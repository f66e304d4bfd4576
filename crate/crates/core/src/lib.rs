//! Certifying recognition of (pan, even hole)-free graphs, with
//! coloring, unit circular-arc models of buoys and tree decompositions.

pub mod arcs;
pub mod buoy;
pub mod chromatic;
pub mod decomposition;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod recognizer;
pub mod wire;

pub use graph::{parse_graph, Graph, Hole, Pan, Witness};
