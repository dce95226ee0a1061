//! Exact solving and polynomial compression for (weighted) Partial Vertex
//! Cover on graphs of bounded degeneracy.
//!
//! * [`graph`]: weighted graphs with self-loop weights, the edge-list
//!   format, degeneracy orderings and greedy coloring.
//! * [`uset`]: construction and verification of `(n, l)`-universal families.
//! * [`solver`]: the universal-family solver, exact in time
//!   `2^(k + k·d)` times a polynomial for `d`-degenerate inputs.
//! * [`compress`]: the nice-subset reduction that shrinks a unit-weight
//!   instance to `O(p·d²·(2dk)^p)` vertices plus vertex weights `ρ`.
//! * [`oracle`]: brute force, generators and certificate checks.
//! * [`cli`]: the `pvc` command-line front end and its JSON payloads.

pub mod bench;
pub mod cli;
pub mod compress;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod solver;
pub mod uset;

pub use error::{Error, Result};
pub use graph::{VertexId, WeightedGraph};
