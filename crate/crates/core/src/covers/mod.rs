//! Abelian covers of a divisor: symbolic points, deck action, the diagonal
//! index map, gluing degrees and the convolution product, with explicit
//! rational torus models used as independent oracles.

mod convolution;
mod crosscheck;
mod diag;
mod torus;

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::{
    coset_reps, deck_group, image_in_quotient, phi_map, preimage_subgroup, theta_data, vec_add,
    ContactVector, CosetSystem, DeckGroupDescriptor, IntMatrix, LatticeError, LatticeHom,
    QuotientModule,
};

pub use convolution::{
    validate_convolution_spec, ConvolutionInput, ConvolutionModules, ConvolutionOutput,
    ConvolutionSpec, ConvolutionViolation,
};
pub use crosscheck::{
    check_convolution_well_defined, cross_validate_convolution, perturb_convolution_input,
    random_convolution_trial, run_convolution_trial, ConvolutionTrial, CrossCheckReport,
};
pub use diag::{diag_component_of, glue_degree, psi_of_points, psi_value, DiagPairSpec};
pub use torus::{
    frac, torus_convolve, torus_cover_project, torus_deck_apply, torus_lift, torus_lift_base,
    torus_psi, torus_render, torus_translate, QVec2, TorusCoverPoint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cover has infinitely many sheets over each component (free rank {free_rank})")]
    InfiniteQuotient { free_rank: usize },
    #[error("coset index {index} out of range (have {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("subgroup inclusion fails: {0}")]
    InclusionViolation(String),
    #[error("inclusion matrix does not vanish on the relation subgroup")]
    InclusionNotWellDefined,
    #[error("point violates the torus constraint")]
    ConstraintViolation,
    #[error("points do not lie over a common base point")]
    NotOnFiber,
    #[error("convolution spec violates {0}")]
    InvalidConvolutionSpec(ConvolutionViolation),
    #[error("torus model needs a connected rank-2 divisor with nonempty contact")]
    NotATorusModel,
}

/// The cover `V̂_{H;s} → V_s` recorded by its lattice data.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    contact: ContactVector,
    h: IntMatrix,
    phi: LatticeHom,
    h_s: IntMatrix,
    twist_quotient: Arc<QuotientModule>,
    r_h: Arc<QuotientModule>,
    r_prime: IntMatrix,
    deck: DeckGroupDescriptor,
    cosets: Option<CosetSystem>,
}

impl CoverSpec {
    pub fn new(contact: ContactVector, h: IntMatrix) -> Result<Self, CoverError> {
        let n = contact.ambient_rank();
        let phi = phi_map(&contact);
        let r_h = Arc::new(QuotientModule::new(n, h.clone())?);
        let h_s = preimage_subgroup(&phi, &h)?;
        let twist_quotient = Arc::new(QuotientModule::new(phi.domain(), h_s.clone())?);
        let r_prime = image_in_quotient(&phi, &r_h)?;
        let deck = deck_group(&r_h, &r_prime)?;
        let cosets = coset_reps(&deck.quotient_part).ok();
        Ok(CoverSpec {
            contact,
            h,
            phi,
            h_s,
            twist_quotient,
            r_h,
            r_prime,
            deck,
            cosets,
        })
    }

    pub fn contact(&self) -> &ContactVector {
        &self.contact
    }

    pub fn h(&self) -> &IntMatrix {
        &self.h
    }

    pub fn phi(&self) -> &LatticeHom {
        &self.phi
    }

    /// Generators of `H_s = Φ⁻¹(H)`.
    pub fn h_s(&self) -> &IntMatrix {
        &self.h_s
    }

    /// `H_1(V_s) / H_s`, where twists live.
    pub fn twist_quotient(&self) -> &Arc<QuotientModule> {
        &self.twist_quotient
    }

    pub fn r_h(&self) -> &Arc<QuotientModule> {
        &self.r_h
    }

    pub fn r_prime(&self) -> &IntMatrix {
        &self.r_prime
    }

    pub fn deck(&self) -> &DeckGroupDescriptor {
        &self.deck
    }

    pub fn cosets(&self) -> Option<&CosetSystem> {
        self.cosets.as_ref()
    }

    pub(crate) fn require_cosets(&self) -> Result<&CosetSystem, CoverError> {
        self.cosets.as_ref().ok_or(CoverError::InfiniteQuotient {
            free_rank: self.deck.quotient_structure().free_rank,
        })
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<Vec<BigInt>, CoverError> {
        let cs = self.require_cosets()?;
        if j >= cs.len() {
            return Err(CoverError::IndexOutOfRange {
                index: j,
                count: cs.len(),
            });
        }
        Ok(cs.rep(j)?)
    }
}

/// A point `([γ_j], [γ·x̂])` of the cover, relative to a fixed base lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicPoint {
    pub j: usize,
    pub twist: Vec<BigInt>,
}

pub fn symbolic_point(spec: &CoverSpec, j: usize, gamma: &[BigInt]) -> Result<SymbolicPoint, CoverError> {
    spec.check_index(j)?;
    Ok(SymbolicPoint {
        j,
        twist: spec.twist_quotient.normal_form(gamma)?,
    })
}

/// `Θ_η`: moves the coset index to `j′` and the twist by `η_j`.
pub fn deck_apply(spec: &CoverSpec, eta: &[BigInt], p: &SymbolicPoint) -> Result<SymbolicPoint, CoverError> {
    spec.check_index(p.j)?;
    let (jp, eta_j) = theta_data(spec.require_cosets()?, &spec.phi, &spec.h, eta, p.j)?;
    Ok(SymbolicPoint {
        j: jp,
        twist: spec.twist_quotient.normal_form(&vec_add(&p.twist, &eta_j))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn t2(s: Vec<i64>) -> CoverSpec {
        CoverSpec::new(ContactVector::connected(s, 2).unwrap(), IntMatrix::zeros(2, 0)).unwrap()
    }

    #[test]
    fn twists_reduce_mod_h_s() {
        let spec = t2(vec![2]);
        let p = symbolic_point(&spec, 0, &ivec(&[1, 1])).unwrap();
        assert_eq!(p.twist, ivec(&[1, 1]));

        let spec = CoverSpec::new(
            ContactVector::connected(vec![2], 2).unwrap(),
            IntMatrix::from_rows(&[[2, 0], [0, 2]]).unwrap(),
        )
        .unwrap();
        let p = symbolic_point(&spec, 0, &ivec(&[1, -3])).unwrap();
        assert_eq!(p.twist, ivec(&[0, 0]));
        assert!(symbolic_point(&spec, 7, &ivec(&[0, 0])).is_err());
    }

    #[test]
    fn deck_moves_index() {
        let spec = t2(vec![2]);
        let cs = spec.cosets().unwrap();
        let p = symbolic_point(&spec, cs.index_of(&ivec(&[0, 0])).unwrap(), &ivec(&[0, 0])).unwrap();
        let q = deck_apply(&spec, &ivec(&[1, 0]), &p).unwrap();
        assert_eq!(cs.rep(q.j).unwrap(), ivec(&[1, 0]));
        assert_eq!(q.twist, ivec(&[0, 0]));
        assert_eq!(deck_apply(&spec, &ivec(&[0, 0]), &p).unwrap(), p);
        let back = deck_apply(&spec, &ivec(&[-1, 0]), &q).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn infinite_cover_has_no_cosets() {
        let spec = t2(vec![]);
        assert!(spec.cosets().is_none());
        assert!(matches!(
            symbolic_point(&spec, 0, &[]),
            Err(CoverError::InfiniteQuotient { free_rank: 2 })
        ));
    }
}
