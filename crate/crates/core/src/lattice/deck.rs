use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{
    power, smith_normal_form, solve_linear, vec_add, vec_sub, AbelianGroup, ColumnEchelon,
    IntMatrix, LatticeError, LatticeHom, QuotientModule,
};

/// The deck group `(R_H / R′) × R′` of the cover attached to `(H, s)`.
#[derive(Clone, Debug)]
pub struct DeckGroupDescriptor {
    /// `R_H / R′ = Z^n / (H + R′)`.
    pub quotient_part: Arc<QuotientModule>,
    /// Generators of `R′` (ambient normal forms in `R_H`).
    pub subgroup_generators: IntMatrix,
    pub subgroup_structure: AbelianGroup,
    /// Elementary divisors of `R′` inside `R_H` when `R_H` is torsion-free;
    /// `R′ ≅ ⊕ d_i Z` as a sublattice.
    pub subgroup_scales: Option<Vec<BigInt>>,
}

impl DeckGroupDescriptor {
    pub fn quotient_structure(&self) -> &AbelianGroup {
        self.quotient_part.structure()
    }
}

impl fmt::Display for DeckGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.quotient_structure().is_trivial() {
            parts.push(self.quotient_structure().to_string());
        }
        match &self.subgroup_scales {
            Some(scales) => {
                let mut i = 0;
                while i < scales.len() {
                    let d = &scales[i];
                    let mut k = 1;
                    while i + k < scales.len() && &scales[i + k] == d {
                        k += 1;
                    }
                    if d.is_one() {
                        parts.push(format!("Z{}", power(k)));
                    } else if k == 1 {
                        parts.push(format!("{d}Z"));
                    } else {
                        parts.push(format!("({d}Z){}", power(k)));
                    }
                    i += k;
                }
            }
            None if !self.subgroup_structure.is_trivial() => {
                parts.push(self.subgroup_structure.to_string())
            }
            None => {}
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Deck group for `Q = R_H` and a subgroup `R′` given by ambient generators.
pub fn deck_group(q: &QuotientModule, rprime: &IntMatrix) -> Result<DeckGroupDescriptor, LatticeError> {
    let n = q.ambient_rank();
    if rprime.rows() != n {
        return Err(LatticeError::NotASubgroup);
    }
    let h = q.relations();
    let all = h.hcat(rprime)?;
    let quotient_part = Arc::new(QuotientModule::new(n, all.clone())?);

    // R′ ≅ (H + R′) / H: write H in an echelon basis of H + R′
    let ech = ColumnEchelon::new(&all);
    let coords: Vec<Vec<BigInt>> = h
        .columns()
        .iter()
        .map(|c| ech.coordinates(c).expect("H lies in H + R′"))
        .collect();
    let c = IntMatrix::from_columns(ech.rank(), &coords)?;
    let subgroup_structure = AbelianGroup::of_cokernel(&c);

    let subgroup_scales = if q.structure().torsion.is_empty() {
        // U·H·V = D with unit pivots; the last n − r rows of U give R_H ≅ Z^{n−r}
        let snf = smith_normal_form(h);
        let r = snf.rank();
        let coords = snf.u.mul(rprime)?.row_block(r, n);
        let mut scales: Vec<BigInt> = smith_normal_form(&coords)
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect();
        scales.sort();
        Some(scales)
    } else {
        None
    };

    let gens = rprime
        .columns()
        .iter()
        .map(|v| q.normal_form(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DeckGroupDescriptor {
        quotient_part,
        subgroup_generators: IntMatrix::from_columns(n, &gens)?,
        subgroup_structure,
        subgroup_scales,
    })
}

/// Canonical representatives `{γ_j}` of a finite quotient, indexed
/// lexicographically. Representatives are produced on demand.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    parent: Arc<QuotientModule>,
    len: usize,
}

impl CosetSystem {
    pub fn parent(&self) -> &Arc<QuotientModule> {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn rep(&self, j: usize) -> Result<Vec<BigInt>, LatticeError> {
        if j >= self.len {
            return Err(LatticeError::IndexOutOfRange {
                index: j,
                count: self.len,
            });
        }
        Ok(self.parent.normal_form_at(j).expect("index in range"))
    }

    /// Index of the representative of `v`'s coset.
    pub fn index_of(&self, v: &[BigInt]) -> Result<usize, LatticeError> {
        let nf = self.parent.normal_form(v)?;
        Ok(self.parent.index_of_normal_form(&nf).expect("finite quotient"))
    }

    pub fn reps(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.len).map(|j| self.rep(j).expect("index in range"))
    }
}

/// One representative per coset of a finite quotient.
pub fn coset_reps(q: &Arc<QuotientModule>) -> Result<CosetSystem, LatticeError> {
    let order = q.order().ok_or(LatticeError::InfiniteQuotient {
        free_rank: q.structure().free_rank,
    })?;
    let len = order.to_usize().ok_or(LatticeError::IndexOutOfRange {
        index: usize::MAX,
        count: usize::MAX,
    })?;
    Ok(CosetSystem {
        parent: Arc::clone(q),
        len,
    })
}

/// Solves `γ_j + η = γ_{j′} + Φ(η_j) + h` with `h ∈ H`.
///
/// `cs` must enumerate `Z^n / (H + Im Φ)`. Returns `(j′, η_j)`; `η_j` is
/// determined modulo `Φ⁻¹(H)`.
pub fn theta_data(
    cs: &CosetSystem,
    phi: &LatticeHom,
    h: &IntMatrix,
    eta: &[BigInt],
    j: usize,
) -> Result<(usize, Vec<BigInt>), LatticeError> {
    let target = vec_add(&cs.rep(j)?, eta);
    if target.len() != phi.codomain() {
        return Err(LatticeError::DimensionMismatch {
            expected: phi.codomain(),
            got: target.len(),
        });
    }
    let jp = cs.index_of(&target)?;
    let rhs = vec_sub(&target, &cs.rep(jp)?);
    let sol = solve_linear(&phi.matrix().hcat(h)?, &rhs)?;
    Ok((jp, sol.particular[..phi.domain()].to_vec()))
}
