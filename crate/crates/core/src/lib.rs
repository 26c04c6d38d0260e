//! Exact signed walk counting on finite graphs.
//!
//! Three walk flavors are counted two ways each:
//!
//! | flavor            | matrix side        | enumeration side                       |
//! |-------------------|--------------------|----------------------------------------|
//! | walk              | `A^k`              | [`oracle::enumerate_walks`]            |
//! | super-walk        | `(I Iᵗ)^k`         | [`oracle::signed_super_walks`]         |
//! | edge super-walk   | `(Iᵗ I)^k`         | [`oracle::signed_edge_super_walks`]    |
//!
//! `A` is the adjacency matrix and `I` the signed incidence matrix of an
//! oriented simple graph. All counting is done over arbitrary-precision
//! integers ([`IntMatrix`]); floating point only appears in [`spectral`],
//! which evolves vertex and edge states under the heat semigroup `exp(-tΔ)`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `superwalk` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counting;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod oracle;
mod sign;
pub mod spectral;

pub use counting::{Theorem, VerificationReport};
pub use graph::{EdgeId, Graph, GraphBuilder, GraphError, IncidenceSign, OrientedEdge, VertexId};
pub use matrix::{IntMatrix, MatrixError};
pub use oracle::{SignedCount, WalkKind, WalkRecord};
pub use sign::Sign;
pub use spectral::{FloatMatrix, HeatKernel, SpectralError};

/// Re-exported so callers can build and inspect matrix entries without
/// depending on `num-bigint` themselves.
pub use num_bigint::BigInt;
