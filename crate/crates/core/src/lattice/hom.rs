use num_bigint::BigInt;

use super::{ColumnEchelon, ContactVector, IntMatrix, LatticeError, QuotientModule};

/// Homomorphism `Z^domain → Z^codomain` given by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHom {
    domain: usize,
    codomain: usize,
    matrix: IntMatrix,
}

impl LatticeHom {
    pub fn new(domain: usize, codomain: usize, matrix: IntMatrix) -> Result<Self, LatticeError> {
        if matrix.cols() != domain {
            return Err(LatticeError::DimensionMismatch {
                expected: domain,
                got: matrix.cols(),
            });
        }
        if matrix.rows() != codomain {
            return Err(LatticeError::DimensionMismatch {
                expected: codomain,
                got: matrix.rows(),
            });
        }
        Ok(LatticeHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        self.matrix.mul_vec(v)
    }
}

/// `Φ(γ) = Σ_r Σ_i s_{r;i} γ_{r;i}`, componentwise.
///
/// Domain coordinates are ordered by component `r`, then contact point `i`,
/// then the `rank_r` coordinates of `H_1(V_r)`.
pub fn phi_map(s: &ContactVector) -> LatticeHom {
    let (dom, cod) = (s.domain_rank(), s.ambient_rank());
    let mut m = IntMatrix::zeros(cod, dom);
    let mut col = 0;
    for r in 0..s.components() {
        let (n, off) = (s.rank(r), s.offset(r));
        for &si in s.tuple(r) {
            for k in 0..n {
                m.set(off + k, col + k, BigInt::from(si));
            }
            col += n;
        }
    }
    LatticeHom::new(dom, cod, m).expect("block sizes agree")
}

/// Generators of `f⁻¹(span H)`.
pub fn preimage_subgroup(f: &LatticeHom, h: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    if h.rows() != f.codomain {
        return Err(LatticeError::DimensionMismatch {
            expected: f.codomain,
            got: h.rows(),
        });
    }
    // kernel of [M | H], projected onto the first block
    let k = ColumnEchelon::new(&f.matrix.hcat(h)?).kernel();
    let gens = k.row_block(0, f.domain);
    let ech = ColumnEchelon::new(&gens);
    Ok(ech.basis)
}

/// Generators (as normal forms in `Q`) of the image of `q_H ∘ f`.
pub fn image_in_quotient(f: &LatticeHom, q: &QuotientModule) -> Result<IntMatrix, LatticeError> {
    if q.ambient_rank() != f.codomain {
        return Err(LatticeError::DimensionMismatch {
            expected: f.codomain,
            got: q.ambient_rank(),
        });
    }
    let cols = f
        .matrix
        .columns()
        .iter()
        .map(|c| q.normal_form(c))
        .collect::<Result<Vec<_>, _>>()?;
    IntMatrix::from_columns(f.codomain, &cols)
}

/// Whether every column of `sub` lies in the span of `sup`.
pub(crate) fn span_contains(sup: &IntMatrix, sub: &IntMatrix) -> Result<bool, LatticeError> {
    if sup.rows() != sub.rows() {
        return Err(LatticeError::DimensionMismatch {
            expected: sup.rows(),
            got: sub.rows(),
        });
    }
    let ech = ColumnEchelon::new(sup);
    Ok(sub.columns().iter().all(|c| ech.coordinates(c).is_some()))
}
