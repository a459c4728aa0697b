use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_1, …, d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it into place
                let (pi, pj) = min_abs_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility: pivot must divide the whole trailing block
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !(d.get(i, j) % d.get(t, t)).is_zero())
            });
            match bad {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfDecomposition { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, d.get(t, t).abs());
    for i in t + 1..d.rows() {
        let x = d.get(i, t);
        if !x.is_zero() && x.abs() < best.2 {
            best = (i, t, x.abs());
        }
    }
    for j in t + 1..d.cols() {
        let x = d.get(t, j);
        if !x.is_zero() && x.abs() < best.2 {
            best = (t, j, x.abs());
        }
    }
    (best.0, best.1)
}

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z_{t₁} ⊕ … ⊕ Z_{t_k}` with `1 < t₁ | t₂ | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Structure of `Z^n / (column span of relations)`.
    pub fn of_cokernel(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        AbelianGroup {
            free_rank: relations.rows() - rank,
            torsion: diag
                .into_iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let mut k = 1;
            while i + k < self.torsion.len() && &self.torsion[i + k] == t {
                k += 1;
            }
            parts.push(format!("Z{}{}", subscript(&t.to_string()), power(k)));
            i += k;
        }
        if self.free_rank > 0 {
            parts.push(format!("Z{}", power(self.free_rank)));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

pub(crate) fn power(k: usize) -> String {
    if k == 1 {
        String::new()
    } else {
        superscript(&k.to_string())
    }
}

pub(crate) fn subscript(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '0'..='9' => char::from_u32('₀' as u32 + (c as u32 - '0' as u32)).unwrap(),
            _ => c,
        })
        .collect()
}

pub(crate) fn superscript(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '0' | '4'..='9' => char::from_u32('⁰' as u32 + (c as u32 - '0' as u32)).unwrap(),
            _ => c,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let snf = smith_normal_form(a);
        let uav = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(uav, snf.d);
        assert!(snf.d.is_diagonal());
        assert_eq!(snf.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(snf.v.determinant().unwrap().abs(), BigInt::one());
        snf
    }

    #[test]
    fn identity_is_fixed() {
        let snf = check(&IntMatrix::identity(2));
        assert_eq!(snf.d, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4)
        let snf = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]).unwrap());
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_one_by_one() {
        let snf = check(&IntMatrix::from_rows(&[[0]]).unwrap());
        assert_eq!(snf.diagonal(), vec![BigInt::zero()]);
    }

    #[test]
    fn forces_divisibility_chain() {
        // diag(2, 3) is diagonal but not in Smith form: Z2 ⊕ Z3 = Z6
        let snf = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap());
        assert_eq!(snf.diagonal(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn empty_and_rectangular() {
        check(&IntMatrix::zeros(3, 0));
        check(&IntMatrix::zeros(0, 2));
        let snf = check(&IntMatrix::from_rows(&[[4, 6, 10]]).unwrap());
        assert_eq!(snf.diagonal(), vec![BigInt::from(2)]);
    }

    #[test]
    fn group_display() {
        let g = AbelianGroup {
            free_rank: 1,
            torsion: vec![BigInt::from(2), BigInt::from(2), BigInt::from(12)],
        };
        assert_eq!(g.to_string(), "Z₂² ⊕ Z₁₂ ⊕ Z");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        let rel = IntMatrix::from_rows(&[[2, 0], [0, 2]]).unwrap();
        assert_eq!(AbelianGroup::of_cokernel(&rel).to_string(), "Z₂²");
    }
}
