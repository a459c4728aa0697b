use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Reduced column-echelon (Hermite) form of a generator matrix.
///
/// `gens · transform = [basis | 0]`, where the columns of `basis` are a
/// basis of the column lattice, column `k` has its first nonzero entry
/// `pivot_values[k] > 0` in row `pivot_rows[k]` (strictly increasing), and
/// entries of earlier columns in a pivot row lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub basis: IntMatrix,
    pub pivot_rows: Vec<usize>,
    pub pivot_values: Vec<BigInt>,
    pub transform: IntMatrix,
}

impl ColumnEchelon {
    pub fn new(gens: &IntMatrix) -> Self {
        let (rows, cols) = (gens.rows(), gens.cols());
        let mut e = gens.clone();
        let mut t = IntMatrix::identity(cols);
        let mut c = 0;
        let mut pivot_rows = Vec::new();

        for i in 0..rows {
            if c == cols {
                break;
            }
            loop {
                let best = (c..cols)
                    .filter(|&j| !e.get(i, j).is_zero())
                    .min_by(|&a, &b| e.get(i, a).abs().cmp(&e.get(i, b).abs()));
                let Some(jmin) = best else {
                    break;
                };
                e.swap_cols(c, jmin);
                t.swap_cols(c, jmin);
                let mut cleared = true;
                for j in c + 1..cols {
                    if e.get(i, j).is_zero() {
                        continue;
                    }
                    let q = e.get(i, j).div_floor(e.get(i, c));
                    e.add_col_multiple(j, c, &-&q);
                    t.add_col_multiple(j, c, &-&q);
                    if !e.get(i, j).is_zero() {
                        cleared = false;
                    }
                }
                if cleared {
                    if e.get(i, c).is_negative() {
                        e.negate_col(c);
                        t.negate_col(c);
                    }
                    pivot_rows.push(i);
                    c += 1;
                    break;
                }
            }
        }

        for (k, &p) in pivot_rows.iter().enumerate() {
            let pv = e.get(p, k).clone();
            for j in 0..k {
                let q = e.get(p, j).div_floor(&pv);
                e.add_col_multiple(j, k, &-&q);
                t.add_col_multiple(j, k, &-&q);
            }
        }

        let pivot_values = pivot_rows
            .iter()
            .enumerate()
            .map(|(k, &p)| e.get(p, k).clone())
            .collect();
        ColumnEchelon {
            basis: e.col_block(0, c),
            pivot_rows,
            pivot_values,
            transform: t,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Basis of the integer kernel of the original generator matrix.
    pub fn kernel(&self) -> IntMatrix {
        self.transform
            .col_block(self.rank(), self.transform.cols())
    }

    /// Canonical representative of `v` modulo the column lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for (k, (&p, pv)) in self.pivot_rows.iter().zip(&self.pivot_values).enumerate() {
            let q = out[p].div_floor(pv);
            if q.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate().skip(p) {
                let b = self.basis.get(i, k);
                if !b.is_zero() {
                    *o -= &q * b;
                }
            }
        }
        out
    }

    /// Coordinates of a lattice vector in the echelon basis, `None` if `v`
    /// is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (k, (&p, pv)) in self.pivot_rows.iter().zip(&self.pivot_values).enumerate() {
            // rows above p are already zero
            let (q, r) = rest[p].div_rem(pv);
            if !r.is_zero() {
                return None;
            }
            for (i, o) in rest.iter_mut().enumerate().skip(p) {
                let b = self.basis.get(i, k);
                if !b.is_zero() {
                    *o -= &q * b;
                }
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }
}
