//! Hypergraph polynomials: exact expansion, coefficient extraction, Alon–Tarsi
//! numbers and coefficient permutations.

mod exponent;
mod forms;
pub mod named;
mod sparse;
mod system;

pub use exponent::ExponentVector;
pub use forms::{LinearForms, DEFAULT_TERM_GUARD};
pub use sparse::SparsePoly;
pub use system::{ATCertificate, LinearSystem, PermutationAssignment, UnbalanceReport};
