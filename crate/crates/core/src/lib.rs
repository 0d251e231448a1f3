//! Polymorphisms of odd cycles into the triangle and their degree invariants.
//!
//! The crate builds the graphs involved (cycles, cliques, direct powers and
//! the odd-distance graphs `D_k`), the vertex and edge chain groups of a graph
//! with the boundary operator and induced chain maps, a backtracking
//! homomorphism solver, the minor operation on function tables and on integer
//! linear forms, the coordinate degrees of a polymorphism `C_k^n -> C_3` with
//! the resulting minion homomorphism `delta`, and the reverse map `eta` from
//! bounded linear forms back to polymorphisms.
//!
//! [`verify`] replays the structural properties of these objects over
//! exhaustive or seeded families of instances and reports the results.

pub mod chain;
pub mod construction;
pub mod degree;
mod error;
pub mod graph;
pub mod homsearch;
pub mod minion;
pub mod verify;

pub use error::{Error, Result};
