//! Connected sums of simplicial complexes and the commutative algebra around them.
//!
//! The crate covers combinatorial connected sums `K1 #^Z K2`, their
//! realisation as cuts of simple polytopes, Stanley–Reisner rings over `Z`
//! with fiber-product and ideal sequences, and Koszul `Tor` over linear
//! subrings.

pub mod error;
pub mod face;
pub mod homology;
pub mod matrix;
pub mod polytope;
pub mod random;
pub mod simplicial;
pub mod stanley_reisner;
pub mod tor;

pub use error::{Error, Result};
pub use face::Face;
pub use matrix::{IntegerMatrix, SparseMatrix};
pub use simplicial::{connected_sum, is_strong_connected_sum, strong_z, FaceSubset, SimplicialComplex};
