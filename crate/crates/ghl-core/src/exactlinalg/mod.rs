//! Exact integer linear algebra: sparse matrices, Hermite and Smith forms,
//! lattices, presented abelian groups, subquotients, and solvers.

mod echelon;
mod fpab;
mod lattice;
mod matrix;
mod snf;

pub use fpab::{subquotient, FpAbGroup, FpHom};
pub use lattice::{hnf, kernel_lattice, preimage_lattice, preimage_multi, Lattice, Solver};
pub use matrix::{
    col_axpy, col_from_dense, col_get, col_neg, col_reduce_mod, col_scale, col_shift,
    col_to_dense, Col, IntMatrix,
};
pub use snf::{normalize_divisibility_chain, snf, snf_diagonal, Snf};
