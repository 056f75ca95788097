//! Computation of 2-fusion systems of small finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: arithmetic in GF(p^f) for odd p, Frobenius on quadratic extensions.
//! * [`grp`]: a concrete finite-group engine (matrix and permutation groups):
//!   BFS enumeration, orbits and transporters, conjugacy classes, cores,
//!   central quotients and 2-group analysis.
//! * [`classical`]: constructors for linear, unitary, alternating and
//!   symmetric groups and M11, Sylow 2-subgroup constructions, involution
//!   classification and eigenvalue tests.
//! * [`fusion`]: the fusion category F_S(G), its invariants and an
//!   isomorphism test with re-verifiable certificates.
//! * [`local2`]: k-connectivity, k-generation and balance predicates.
//! * [`cli`]: the manifest-driven verification harness and the on-disk
//!   enumeration cache.

pub mod classical;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod gf;
pub mod grp;
pub mod local2;

pub use error::{Error, Result};
