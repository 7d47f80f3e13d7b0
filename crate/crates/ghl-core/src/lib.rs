//! Exact (co)homology engine for finite groups.
//!
//! Everything is computed over the integers with arbitrary precision: chain
//! groups are finitely presented abelian groups, boundary maps are integer
//! matrices, and answers are reported as invariant factor lists. The crate is
//! organized bottom-up:
//!
//! * [`exactlinalg`]: sparse integer matrices, Hermite and Smith normal forms,
//!   lattices, finitely presented abelian groups, and subquotients.
//! * [`groups`]: finite groups as multiplication tables, with constructors for
//!   the usual small families and a coset system for subgroups.
//! * [`coeffmod`]: left/right modules over a group ring, given by one integer
//!   matrix per group element acting on a presented abelian group.
//! * [`complexes`]: the bar and exterior chain complexes, function cochain
//!   models, symmetrization operators, and sub/quotient complex plumbing.
//! * [`homology`]: homology of a complex at a degree, the nine supported
//!   theories, induced maps, and long exact sequences.
//! * [`transfer`]: restriction and transfer along a finite-index subgroup.

pub mod coeffmod;
pub mod complexes;
pub mod exactlinalg;
pub mod groups;
pub mod homology;
pub mod transfer;

use num_bigint::BigInt;

/// Engine version, part of every result-cache key: cached values are only
/// reused by the exact engine build that produced them.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors shared across the crate.
///
/// Witness payloads are concrete: when a construction fails the error carries
/// the offending data (a relation image, a pair of indices) so callers can
/// print something actionable instead of re-deriving it.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dim(String),

    #[error("denominator is not contained in numerator: witness vector {witness:?}")]
    Containment { witness: Vec<BigInt> },

    #[error("map does not send relations into relations: witness image {witness:?}")]
    NotWellDefined { witness: Vec<BigInt> },

    #[error("solve failed: {0}")]
    Unsolvable(String),

    #[error("multiplication table is not associative at ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("invalid group table: {0}")]
    BadTable(String),

    #[error("subset is not closed under multiplication: witness product of elements {a} and {b}")]
    NotSubgroup { a: usize, b: usize },

    #[error("action matrices do not satisfy the module axioms: {0}")]
    BadAction(String),

    #[error("boundary square is nonzero at degree {degree}")]
    BoundarySquare { degree: usize },

    #[error("map does not commute with the boundaries at degree {degree}")]
    NotChainMap { degree: usize },

    #[error("sequence is not exact at degree {degree}: {site}")]
    NotExact { degree: usize, site: String },

    #[error("inclusion is not injective at degree {degree}")]
    NotInjective { degree: usize },

    #[error("degree {degree} needs {needed} generators which exceeds the budget of {budget}")]
    Budget {
        degree: usize,
        needed: usize,
        budget: usize,
    },

    #[error("{0}")]
    Invalid(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
