//! Exact lattice algebra for abelian covers and the generating-function
//! identities of genus-g section counts on elliptic surfaces.

pub mod lattice;
pub mod covers;
pub mod gw_series;
pub mod cli;
