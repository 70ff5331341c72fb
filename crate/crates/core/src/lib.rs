//! Exact Alon–Tarsi numbers of hypergraph polynomials.
//!
//! A hypergraph polynomial is a product, over the edges of a hypergraph, of
//! linear forms in the edge's vertex variables with nonzero coefficients.
//! This crate expands such products exactly (over Q, cyclotomic fields and
//! prime fields), computes their Alon–Tarsi numbers, constructs coefficient
//! permutations whose Alon–Tarsi number is at most `2⌈ed(H)⌉ + 1`, and runs
//! the coloring, paintability and 1-2-3 applications built on top of them.

pub mod arith;
pub mod coloring;
pub mod error;
pub mod hypergraph;
pub mod onetwothree;
pub mod pipeline;
pub mod poly;
pub mod random;
pub mod representatives;
pub mod search;

pub use arith::{root_of_unity, FieldDescriptor, Scalar};
pub use error::{Error, Result};
