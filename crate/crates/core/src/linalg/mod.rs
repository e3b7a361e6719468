//! Exact integer linear algebra: dense matrices, Smith normal form and
//! sparse echelon lattices.

mod lattice;
mod matrix;
mod smith;

pub use lattice::{combine, sparse_from_dense, sparse_to_dense, EchelonLattice, SparseVec};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
