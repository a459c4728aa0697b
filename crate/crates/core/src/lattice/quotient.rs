use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{AbelianGroup, ColumnEchelon, IntMatrix, LatticeError};

/// The quotient `Z^n / H` of an ambient lattice by the subgroup generated by
/// the columns of a relation matrix.
///
/// Elements are normalised against the reduced column-echelon basis of `H`:
/// the coordinate in each pivot row is reduced into `[0, pivot)` and all
/// other coordinates are left alone. Two vectors have the same normal form
/// exactly when their difference lies in `H`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    rank: usize,
    relations: IntMatrix,
    echelon: ColumnEchelon,
    structure: AbelianGroup,
}

impl PartialEq for QuotientModule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.echelon.basis == other.echelon.basis
    }
}

impl Eq for QuotientModule {}

impl QuotientModule {
    pub fn new(rank: usize, relations: IntMatrix) -> Result<Self, LatticeError> {
        if relations.rows() != rank {
            return Err(LatticeError::DimensionMismatch {
                expected: rank,
                got: relations.rows(),
            });
        }
        let echelon = ColumnEchelon::new(&relations);
        let structure = AbelianGroup::of_cokernel(&relations);
        Ok(QuotientModule {
            rank,
            relations,
            echelon,
            structure,
        })
    }

    /// `Z^n` itself (no relations).
    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("dimensions agree")
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Reduced echelon basis of the relation lattice (columns).
    pub fn relation_basis(&self) -> &IntMatrix {
        &self.echelon.basis
    }

    pub fn structure(&self) -> &AbelianGroup {
        &self.structure
    }

    pub fn is_finite(&self) -> bool {
        self.echelon.rank() == self.rank
    }

    /// Number of elements, `None` if the quotient is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.echelon.pivot_values.iter().product())
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), LatticeError> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch {
                expected: self.rank,
                got: v.len(),
            })
        }
    }

    /// Canonical representative of the coset `v + H`.
    pub fn normal_form(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        self.check_len(v)?;
        Ok(self.echelon.reduce(v))
    }

    pub fn project(self: &Arc<Self>, v: &[BigInt]) -> Result<QuotElement, LatticeError> {
        Ok(QuotElement {
            parent: Arc::clone(self),
            rep: self.normal_form(v)?,
        })
    }

    /// Whether `v` lies in the relation subgroup.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        Ok(self.normal_form(v)?.iter().all(Zero::is_zero))
    }

    /// Whether every column of `gens` lies in the relation subgroup.
    pub fn contains_all(&self, gens: &IntMatrix) -> Result<bool, LatticeError> {
        for c in gens.columns() {
            if !self.contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equivalent(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool, LatticeError> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// Coordinates of a relation-lattice vector in the echelon basis.
    pub fn relation_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.echelon.coordinates(v)
    }

    /// Box radii of a finite quotient: every normal form has coordinate `i`
    /// in `[0, radix[i])`.
    pub(crate) fn radices(&self) -> Option<Vec<BigInt>> {
        self.is_finite().then(|| self.echelon.pivot_values.clone())
    }

    /// Position of a normal form in the lexicographic enumeration of a
    /// finite quotient.
    pub(crate) fn index_of_normal_form(&self, nf: &[BigInt]) -> Option<usize> {
        let radices = self.radices()?;
        let mut idx = BigInt::zero();
        for (x, r) in nf.iter().zip(&radices) {
            idx = idx * r + x;
        }
        idx.to_usize()
    }

    pub(crate) fn normal_form_at(&self, index: usize) -> Option<Vec<BigInt>> {
        let radices = self.radices()?;
        let mut rest = BigInt::from(index);
        let mut out = vec![BigInt::zero(); self.rank];
        for i in (0..self.rank).rev() {
            out[i] = &rest % &radices[i];
            rest /= &radices[i];
        }
        rest.is_zero().then_some(out)
    }
}

/// Coset `[v]` in a quotient module, stored by its canonical representative.
#[derive(Clone, Debug)]
pub struct QuotElement {
    parent: Arc<QuotientModule>,
    rep: Vec<BigInt>,
}

impl QuotElement {
    pub fn parent(&self) -> &Arc<QuotientModule> {
        &self.parent
    }

    pub fn rep(&self) -> &[BigInt] {
        &self.rep
    }

    pub fn into_rep(self) -> Vec<BigInt> {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &QuotElement) -> QuotElement {
        let sum: Vec<BigInt> = self.rep.iter().zip(&other.rep).map(|(a, b)| a + b).collect();
        self.parent.project(&sum).expect("same parent rank")
    }

    pub fn sub(&self, other: &QuotElement) -> QuotElement {
        let d: Vec<BigInt> = self.rep.iter().zip(&other.rep).map(|(a, b)| a - b).collect();
        self.parent.project(&d).expect("same parent rank")
    }
}

impl PartialEq for QuotElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
            && (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
    }
}

impl Eq for QuotElement {}
