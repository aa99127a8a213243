//! Exact maximum independent sets on sparse graphs.
//!
//! The crate kernelizes a graph with one of four reduction strategies, solves
//! the connected components of the kernel with a coloring-bounded
//! branch-and-bound, and lifts the kernel solution back to the input graph by
//! replaying the reduction trace in reverse.
//!
//! ```
//! use miskern::{generate, pipeline, GraphKind, SolveOptions, Strategy};
//!
//! let g = generate(GraphKind::Cycle(6)).unwrap();
//! let report = pipeline::solve_exact(&g, Strategy::Simple, &SolveOptions::default()).unwrap();
//! assert_eq!(report.alpha, 3);
//! ```

pub mod bench;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pipeline;
pub mod reduce;
pub mod solver;

pub use error::{Error, Result};
pub use generate::{generate, GraphKind};
pub use graph::{connected_components, induced_subgraph, Graph, VertexSet};
pub use io::{parse_graph, write_edge_list, Format};
pub use oracle::brute_force_mis;
pub use pipeline::{kernelize, reconstruct, solve_exact, verify_solution, SolveOptions, Strategy};
