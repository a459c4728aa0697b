//! Exact integer-lattice algebra.

mod contact;
mod deck;
mod echelon;
mod hom;
mod matrix;
mod quotient;
mod snf;
mod solve;

use num_bigint::BigInt;
use thiserror::Error;

pub use contact::{gcd_contact, ContactVector};
pub use deck::{coset_reps, deck_group, theta_data, CosetSystem, DeckGroupDescriptor};
pub use echelon::ColumnEchelon;
pub use hom::{image_in_quotient, phi_map, preimage_subgroup, LatticeHom};
pub use matrix::IntMatrix;
pub use quotient::{QuotElement, QuotientModule};
pub use snf::{smith_normal_form, AbelianGroup, SnfDecomposition};
pub use solve::{solve_linear, LinearSolution};

pub(crate) use hom::span_contains;
pub(crate) use snf::power;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("no integer solution")]
    NoSolution,
    #[error("quotient is infinite (free rank {free_rank})")]
    InfiniteQuotient { free_rank: usize },
    #[error("component {index} out of range (have {count})")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("contact entries must be nonzero")]
    ZeroContactEntry,
    #[error("index {index} out of range (have {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("generators do not lie in the ambient lattice")]
    NotASubgroup,
}

/// Integer vector from small entries.
pub fn ivec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
