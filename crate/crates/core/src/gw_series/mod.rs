//! Exact q-series for section-class invariants of elliptic surfaces:
//! divisor sums, the η-product, the genus recursion and the genus-1 TRR.

mod generating;
mod power;
mod surface;
mod trr;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use generating::{
    euler_product, eta_inv12, f0_from_ode, f_g_closed, f_g_recursion, g_series, h_from_sum,
    h_from_trr, qg_prime, sigma, sympsum_check_g, sympsum_check_with_stand_in,
    verify_log_derivative_identity, verify_log_derivative_with_weight,
};
pub use power::PowerSeries;
pub use surface::SurfaceData;
pub use trr::{
    gw1_zero_class, p1t2_genus1_fiber, p1t2_genus1_section_closed, p1t2_relative_section,
    p1t2_tables, p1t2_trr_section, p9_genus1_fiber, p9_h_via_trr, p9_tables, trr_genus1,
    GwEntry, GwKey, GwTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{op} needs a {need} constant term")]
    InvalidConstantTerm { op: &'static str, need: &'static str },
    #[error("degree must be at least {min}, got {got}")]
    DegreeOutOfRange { min: i64, got: i64 },
    #[error("genus must be at least {min}, got {got}")]
    GenusOutOfRange { min: u32, got: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("intersection matrix is not symmetric")]
    NotSymmetric,
    #[error("section index {index} out of range (have {count})")]
    SectionOutOfRange { index: usize, count: usize },
    #[error("class {class:?} has K·A = {ka}, need K·A < 0")]
    NotNegativeOnCanonical { class: Vec<i64>, ka: i64 },
    #[error("no table entry for genus {genus}, class {class:?}, insertion {tag}")]
    MissingEntry { genus: u32, class: Vec<i64>, tag: String },
}

/// First coefficient where two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub expected: BigRational,
    pub got: BigRational,
    pub context: String,
}

/// Outcome of a coefficientwise comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub order: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }

    /// Compares up to the smaller of the two orders.
    pub fn compare(expected: &PowerSeries, got: &PowerSeries) -> Self {
        Self::compare_with_context(expected, got, "")
    }

    pub fn compare_with_context(expected: &PowerSeries, got: &PowerSeries, context: &str) -> Self {
        let order = expected.order().min(got.order());
        let first_mismatch = (0..=order).find_map(|k| {
            let (e, g) = (&expected.coeffs()[k], &got.coeffs()[k]);
            (e != g).then(|| Mismatch {
                index: k,
                expected: e.clone(),
                got: g.clone(),
                context: context.to_string(),
            })
        });
        IdentityCheck {
            order,
            first_mismatch,
        }
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "holds to order {}", self.order),
            Some(m) => {
                write!(f, "fails at q^{}: expected {}, got {}", m.index, m.expected, m.got)?;
                if !m.context.is_empty() {
                    write!(f, " ({})", m.context)?;
                }
                Ok(())
            }
        }
    }
}
