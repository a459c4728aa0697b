use std::sync::Arc;

use num_bigint::BigInt;

use super::{CoverError, CoverSpec, SymbolicPoint};
use crate::lattice::{
    span_contains, vec_add, vec_sub, ContactVector, IntMatrix, QuotElement, QuotientModule,
};

/// Fiber product of the covers for `H₁` and `H₂` over the diagonal of `V_s`,
/// with `H₁ + H₂ ⊆ H₁₂` and an inclusion `E: Z^n → Z^m` used by the gluing
/// degree map.
#[derive(Clone, Debug)]
pub struct DiagPairSpec {
    side1: CoverSpec,
    side2: CoverSpec,
    h12: IntMatrix,
    r_h12: Arc<QuotientModule>,
    inclusion: IntMatrix,
}

impl DiagPairSpec {
    /// `inclusion` defaults to the identity; it must vanish on `H₁₂`.
    pub fn new(
        contact: ContactVector,
        h1: IntMatrix,
        h2: IntMatrix,
        h12: IntMatrix,
        inclusion: Option<IntMatrix>,
    ) -> Result<Self, CoverError> {
        let n = contact.ambient_rank();
        let side1 = CoverSpec::new(contact.clone(), h1)?;
        let side2 = CoverSpec::new(contact, h2)?;
        if !span_contains(&h12, side1.h())? {
            return Err(CoverError::InclusionViolation("H1 ⊆ H12".into()));
        }
        if !span_contains(&h12, side2.h())? {
            return Err(CoverError::InclusionViolation("H2 ⊆ H12".into()));
        }
        let inclusion = inclusion.unwrap_or_else(|| IntMatrix::identity(n));
        if inclusion.cols() != n {
            return Err(crate::lattice::LatticeError::DimensionMismatch {
                expected: n,
                got: inclusion.cols(),
            }
            .into());
        }
        if !inclusion.mul(&h12)?.is_zero() {
            return Err(CoverError::InclusionNotWellDefined);
        }
        let r_h12 = Arc::new(QuotientModule::new(n, h12.clone())?);
        Ok(DiagPairSpec {
            side1,
            side2,
            h12,
            r_h12,
            inclusion,
        })
    }

    pub fn side1(&self) -> &CoverSpec {
        &self.side1
    }

    pub fn side2(&self) -> &CoverSpec {
        &self.side2
    }

    pub fn h12(&self) -> &IntMatrix {
        &self.h12
    }

    pub fn r_h12(&self) -> &Arc<QuotientModule> {
        &self.r_h12
    }

    pub fn inclusion(&self) -> &IntMatrix {
        &self.inclusion
    }
}

/// `Ψ̃ = [Φ(γ) + γ_{1;j₁} − γ_{2;j₂}]_{H₁₂}`.
pub fn psi_value(dp: &DiagPairSpec, gamma: &[BigInt], j1: usize, j2: usize) -> Result<QuotElement, CoverError> {
    let g1 = dp.side1.check_index(j1)?;
    let g2 = dp.side2.check_index(j2)?;
    let v = vec_sub(&vec_add(&dp.side1.phi().apply(gamma)?, &g1), &g2);
    Ok(dp.r_h12.project(&v)?)
}

/// `Ψ̃` of a pair of points over one base point; `γ` is the twist difference.
pub fn psi_of_points(dp: &DiagPairSpec, p1: &SymbolicPoint, p2: &SymbolicPoint) -> Result<QuotElement, CoverError> {
    psi_value(dp, &vec_sub(&p1.twist, &p2.twist), p1.j, p2.j)
}

/// Index of the diagonal component containing the pair.
pub fn diag_component_of(dp: &DiagPairSpec, gamma: &[BigInt], j1: usize, j2: usize) -> Result<QuotElement, CoverError> {
    psi_value(dp, gamma, j1, j2)
}

/// `g = A_base − E·Ψ̃(base) + E·Ψ̃(x, y)`.
pub fn glue_degree(
    a_base: &[BigInt],
    psi_base: &QuotElement,
    dp: &DiagPairSpec,
    gamma: &[BigInt],
    j1: usize,
    j2: usize,
) -> Result<Vec<BigInt>, CoverError> {
    let psi = psi_value(dp, gamma, j1, j2)?;
    let e = &dp.inclusion;
    if a_base.len() != e.rows() {
        return Err(crate::lattice::LatticeError::DimensionMismatch {
            expected: e.rows(),
            got: a_base.len(),
        }
        .into());
    }
    let base = e.mul_vec(psi_base.rep())?;
    let cur = e.mul_vec(psi.rep())?;
    Ok(vec_add(&vec_sub(a_base, &base), &cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{deck_apply, symbolic_point};
    use crate::lattice::ivec;

    fn t2_pair(s: Vec<i64>) -> DiagPairSpec {
        let z = IntMatrix::zeros(2, 0);
        DiagPairSpec::new(ContactVector::connected(s, 2).unwrap(), z.clone(), z.clone(), z, None).unwrap()
    }

    #[test]
    fn psi_examples() {
        let dp = t2_pair(vec![2]);
        let j0 = dp.side1().cosets().unwrap().index_of(&ivec(&[0, 0])).unwrap();
        assert!(psi_value(&dp, &ivec(&[0, 0]), j0, j0).unwrap().is_zero());
        assert_eq!(psi_value(&dp, &ivec(&[1, 0]), j0, j0).unwrap().rep(), ivec(&[2, 0]).as_slice());
    }

    #[test]
    fn psi_is_deck_equivariant() {
        let dp = t2_pair(vec![2, -3]);
        let p1 = symbolic_point(dp.side1(), 0, &ivec(&[1, 2, 0, -1])).unwrap();
        let p2 = symbolic_point(dp.side2(), 0, &ivec(&[0, 0, 3, 1])).unwrap();
        let eta = ivec(&[5, -2]);
        let base = psi_of_points(&dp, &p1, &p2).unwrap();
        let moved = psi_of_points(&dp, &deck_apply(dp.side1(), &eta, &p1).unwrap(), &p2).unwrap();
        assert_eq!(moved.rep(), vec_add(base.rep(), &eta).as_slice());
        let moved = psi_of_points(&dp, &p1, &deck_apply(dp.side2(), &eta, &p2).unwrap()).unwrap();
        assert_eq!(moved.rep(), vec_sub(base.rep(), &eta).as_slice());
    }

    #[test]
    fn glue_degree_at_base() {
        let dp = t2_pair(vec![1, 1]);
        let base = psi_value(&dp, &ivec(&[0, 0, 0, 0]), 0, 0).unwrap();
        let a = ivec(&[3, 4]);
        assert_eq!(glue_degree(&a, &base, &dp, &ivec(&[0, 0, 0, 0]), 0, 0).unwrap(), a);
        let g = glue_degree(&a, &base, &dp, &ivec(&[1, 0, 0, 2]), 0, 0).unwrap();
        assert_eq!(g, ivec(&[4, 6]));
    }

    #[test]
    fn rejects_bad_inclusions() {
        let c = ContactVector::connected(vec![1], 1).unwrap();
        let two = IntMatrix::from_rows(&[[2]]).unwrap();
        let z = IntMatrix::zeros(1, 0);
        assert!(matches!(
            DiagPairSpec::new(c.clone(), two.clone(), z.clone(), z.clone(), None),
            Err(CoverError::InclusionViolation(_))
        ));
        assert_eq!(
            DiagPairSpec::new(c, z.clone(), z, two, None).unwrap_err(),
            CoverError::InclusionNotWellDefined
        );
    }
}
