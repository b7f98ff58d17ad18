//! Discrete quantum walks with marked vertices on regular graphs.
//!
//! Marked vertices get the coin `−I`, unmarked ones the Grover coin. The crate
//! builds the transition matrix, resolves it into eigenprojections from the
//! spectrum of the unmarked subgraph, and computes the average vertex mixing
//! matrix `M̂` three ways. On top of that it constructs integer bases for the
//! `±1`-eigenspaces and evaluates bounds and structural tests on blocks of `M̂`.
//!
//! ```
//! use qwalk_core::graph::presets;
//! use qwalk_core::walk::{mixing_closed_form, mixing_projection_sum};
//!
//! let c4 = presets::cycle(4).unwrap();
//! let closed = mixing_closed_form(&c4, &[0, 2]).unwrap();
//! let projected = mixing_projection_sum(&c4, &[0, 2]).unwrap();
//! assert!(closed.max_abs_diff(&projected) < 1e-9);
//! assert!((closed.get(0, 1) - 0.25).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod eigenbasis;
pub mod error;
pub mod graph;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{build_graph, Graph, IncidenceSet, MarkedPartition};
