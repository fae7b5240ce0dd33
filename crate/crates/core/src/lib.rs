//! Triangulations of the 3-dimensional cyclic polytope `C(n+2, 3)` through their
//! 1-skeleta, the persistent graphs on `n` vertices.
//!
//! * [`graph`]: vertex-ordered graphs and the persistence properties
//! * [`triangulation`]: simplex sets over `C(n+2, 3)` and their validation
//! * [`bijection`]: the maps `gamma` (triangulation to graph) and `xi` (graph to triangulation)
//! * [`flips`]: bistellar flips, edge deletions and the Hasse diagram of the order
//! * [`enumerate`]: counting and streaming all persistent graphs
//! * [`oracle`]: brute-force references for small `n`
//! * [`format`]: the text file formats

pub mod bijection;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod flips;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod triangulation;

pub use bijection::{gamma, simplex_to_edge, xi, xi_edge};
pub use enumerate::{count, count_parallel, enumerate, EnumFrame, EnumSink};
pub use error::{Error, Result};
pub use graph::{Edge, HatGraph, PropertyViolation, Vertex, VertexOrderedGraph};
pub use triangulation::{CircuitPair, Simplex3, Triangulation};
