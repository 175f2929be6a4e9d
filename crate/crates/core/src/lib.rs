//! Exact graph edit kernels and the geometry of the graph spaces they induce.
//!
//! Graphs of bounded order with attributes in `R^d` are represented as
//! matrices, one matrix per node ordering. The symmetric group acts on these
//! matrices, and graph distances, kernels, alignments and means are computed
//! on that orbit representation by exhaustive enumeration.

pub mod alignment;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod group;
pub mod kernel;
pub mod matrix;
pub mod sampling;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{parse_graph, serialize_graph, Attribute, AttributedGraph};
pub use group::{Nearest, OrderGuard, Permutation};
pub use kernel::{EditConfig, EditCost, EditScore, MorphismClass, Padding};
pub use matrix::GraphMatrix;
