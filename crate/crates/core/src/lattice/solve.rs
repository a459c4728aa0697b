use num_bigint::BigInt;
use num_traits::Zero;

use super::{ColumnEchelon, IntMatrix, LatticeError};

/// All integer solutions of `A·x = b`: `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<BigInt>,
    pub kernel: IntMatrix,
}

/// Solves `A·x = b` over the integers.
///
/// The particular solution is canonical: it is the normal form of any
/// solution modulo the kernel lattice, so it depends only on `(A, b)`.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Result<LinearSolution, LatticeError> {
    if b.len() != a.rows() {
        return Err(LatticeError::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let ech = ColumnEchelon::new(a);
    let coords = ech.coordinates(b).ok_or(LatticeError::NoSolution)?;
    let mut y = coords;
    y.resize(a.cols(), BigInt::zero());
    let x = ech.transform.mul_vec(&y)?;
    let kernel = ech.kernel();
    let particular = ColumnEchelon::new(&kernel).reduce(&x);
    Ok(LinearSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;

    fn check(a: &IntMatrix, b: &[BigInt]) -> LinearSolution {
        let sol = solve_linear(a, b).unwrap();
        assert_eq!(a.mul_vec(&sol.particular).unwrap(), b);
        assert!(a.mul(&sol.kernel).unwrap().is_zero());
        sol
    }

    #[test]
    fn scalar() {
        let sol = check(&IntMatrix::from_rows(&[[2]]).unwrap(), &ivec(&[4]));
        assert_eq!(sol.particular, ivec(&[2]));
        assert_eq!(sol.kernel.cols(), 0);
    }

    #[test]
    fn extended_euclid() {
        let sol = check(&IntMatrix::from_rows(&[[2, 3]]).unwrap(), &ivec(&[1]));
        assert_eq!(sol.kernel.cols(), 1);
        let k = sol.kernel.column(0);
        assert!(k == ivec(&[3, -2]) || k == ivec(&[-3, 2]));
        // (-1, 1) lies in the same kernel coset
        let diff: Vec<BigInt> = sol.particular.iter().zip(ivec(&[-1, 1])).map(|(a, b)| a - b).collect();
        assert!(ColumnEchelon::new(&sol.kernel).coordinates(&diff).is_some());
    }

    #[test]
    fn parity_obstruction() {
        assert_eq!(
            solve_linear(&IntMatrix::from_rows(&[[2]]).unwrap(), &ivec(&[1])),
            Err(LatticeError::NoSolution)
        );
    }

    #[test]
    fn empty_columns() {
        let a = IntMatrix::zeros(2, 0);
        assert!(check(&a, &ivec(&[0, 0])).particular.is_empty());
        assert_eq!(solve_linear(&a, &ivec(&[1, 0])), Err(LatticeError::NoSolution));
    }
}
