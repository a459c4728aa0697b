use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SeriesError;

/// Truncated power series `c_0 + c_1 q + … + c_N q^N` over `Q`.
///
/// Binary operations truncate to the smaller order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl PowerSeries {
    /// Series of order `coeffs.len() − 1`; an empty list is treated as `0 + O(q)`.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `c q^k`, zero if `k` exceeds the order.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[q^k]`, or `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `d/dq`; the result has order `N − 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::new((1..=n).map(|k| &self.coeffs[k] * int(k as i64)).collect())
    }

    /// `q d/dq`, same order.
    pub fn q_d_dq(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::InvalidConstantTerm {
                op: "reciprocal",
                need: "nonzero",
            });
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -acc * &inv0;
        }
        Ok(Self::new(out))
    }

    /// `log f` for `f(0) = 1`, from `q (log f)′ = q f′ / f`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::InvalidConstantTerm {
                op: "log",
                need: "one",
            });
        }
        let qlog = &self.q_d_dq() * &self.reciprocal()?;
        Ok(Self::new(
            qlog.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k == 0 { BigRational::zero() } else { c / int(k as i64) })
                .collect(),
        ))
    }

    /// `exp f` for `f(0) = 0`, from `n g_n = Σ k f_k g_{n−k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::InvalidConstantTerm {
                op: "exp",
                need: "zero",
            });
        }
        let n = self.order();
        let mut g = vec![BigRational::zero(); n + 1];
        g[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[m - k] * int(k as i64);
                }
            }
            g[m] = acc / int(m as i64);
        }
        Ok(Self::new(g))
    }

    /// `f^k`; negative `k` needs an invertible constant term.
    pub fn pow_int(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if k < 0 { self.reciprocal()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(result)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::from_fn(n, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::from_fn(n, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries::new(out)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(q^{})]", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_one_is_zero() {
        assert!(PowerSeries::one(10).log().unwrap().is_zero());
    }

    #[test]
    fn geometric_series() {
        let mut c = vec![0i64; 11];
        c[0] = 1;
        c[1] = -1;
        let r = PowerSeries::from_ints(&c).reciprocal().unwrap();
        assert_eq!(r, PowerSeries::from_ints(&[1; 11]));
    }

    #[test]
    fn exp_log_roundtrip() {
        let mut c = vec![0i64; 9];
        c[0] = 1;
        c[1] = 1;
        let f = PowerSeries::from_ints(&c);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn invalid_constant_terms() {
        assert!(PowerSeries::zero(3).reciprocal().is_err());
        assert!(PowerSeries::from_ints(&[2, 1]).log().is_err());
        assert!(PowerSeries::one(3).exp().is_err());
    }

    #[test]
    fn orders_take_minimum() {
        let a = PowerSeries::one(5);
        let b = PowerSeries::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(a.derivative().order(), 4);
    }

    #[test]
    fn negative_powers() {
        let f = PowerSeries::from_ints(&[1, 1, 0, 0, 0, 0]);
        let g = f.pow_int(-3).unwrap();
        assert_eq!(&g * &f.pow_int(3).unwrap(), PowerSeries::one(5));
        assert_eq!(f.pow_int(0).unwrap(), PowerSeries::one(5));
    }
}
