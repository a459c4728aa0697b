use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::LatticeError;

/// Contact orders `s_r = (s_{r;1}, …, s_{r;ℓ_r})` along the components
/// `V_1, …, V_N` of a divisor, together with `rank H_1(V_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContactVector {
    tuples: Vec<Vec<i64>>,
    ranks: Vec<usize>,
}

impl ContactVector {
    pub fn new(tuples: Vec<Vec<i64>>, ranks: Vec<usize>) -> Result<Self, LatticeError> {
        if tuples.len() != ranks.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: ranks.len(),
                got: tuples.len(),
            });
        }
        if tuples.iter().flatten().any(|&x| x == 0) {
            return Err(LatticeError::ZeroContactEntry);
        }
        Ok(ContactVector { tuples, ranks })
    }

    /// Single component of the given rank.
    pub fn connected(s: Vec<i64>, rank: usize) -> Result<Self, LatticeError> {
        Self::new(vec![s], vec![rank])
    }

    pub fn components(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuple(&self, r: usize) -> &[i64] {
        &self.tuples[r]
    }

    pub fn tuples(&self) -> &[Vec<i64>] {
        &self.tuples
    }

    pub fn rank(&self, r: usize) -> usize {
        self.ranks[r]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `ℓ_r`, the number of contact points on `V_r`.
    pub fn ell(&self, r: usize) -> usize {
        self.tuples[r].len()
    }

    pub fn total_ell(&self) -> usize {
        self.tuples.iter().map(Vec::len).sum()
    }

    /// Rank of `H_1(V;Z) = ⊕ H_1(V_r;Z)`.
    pub fn ambient_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Rank of the domain `⊕_r H_1(V_r;Z)^{ℓ_r}` of Φ.
    pub fn domain_rank(&self) -> usize {
        self.tuples
            .iter()
            .zip(&self.ranks)
            .map(|(t, &n)| t.len() * n)
            .sum()
    }

    /// Row offset of component `r` in the ambient lattice.
    pub fn offset(&self, r: usize) -> usize {
        self.ranks[..r].iter().sum()
    }

    /// Concatenation of two contact vectors over disjoint divisors.
    pub fn concat(&self, other: &ContactVector) -> ContactVector {
        ContactVector {
            tuples: self.tuples.iter().chain(&other.tuples).cloned().collect(),
            ranks: self.ranks.iter().chain(&other.ranks).copied().collect(),
        }
    }
}

/// `gcd(s_r)` of the absolute values; `0` for an empty tuple.
pub fn gcd_contact(s: &ContactVector, r: usize) -> Result<BigInt, LatticeError> {
    if r >= s.components() {
        return Err(LatticeError::ComponentOutOfRange {
            index: r,
            count: s.components(),
        });
    }
    Ok(s.tuple(r)
        .iter()
        .fold(BigInt::zero(), |g, &x| g.gcd(&BigInt::from(x))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let s = ContactVector::new(vec![vec![], vec![2, -4, 6], vec![1]], vec![2, 2, 1]).unwrap();
        assert_eq!(gcd_contact(&s, 0).unwrap(), BigInt::zero());
        assert_eq!(gcd_contact(&s, 1).unwrap(), BigInt::from(2));
        assert_eq!(gcd_contact(&s, 2).unwrap(), BigInt::from(1));
        assert!(matches!(
            gcd_contact(&s, 3),
            Err(LatticeError::ComponentOutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_zero_entries() {
        assert_eq!(
            ContactVector::connected(vec![1, 0], 2),
            Err(LatticeError::ZeroContactEntry)
        );
    }

    #[test]
    fn ranks() {
        let s = ContactVector::new(vec![vec![1, 2], vec![3]], vec![2, 1]).unwrap();
        assert_eq!(s.ambient_rank(), 3);
        assert_eq!(s.domain_rank(), 5);
        assert_eq!(s.offset(1), 2);
    }
}
