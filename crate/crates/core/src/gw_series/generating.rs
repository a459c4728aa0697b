use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::trr::p1t2_relative_section;
use super::{IdentityCheck, PowerSeries, SeriesError};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Sum of the positive divisors of `d`.
pub fn sigma(d: i64) -> Result<u64, SeriesError> {
    if d < 1 {
        return Err(SeriesError::DegreeOutOfRange { min: 1, got: d });
    }
    let d = d as u64;
    let mut total = 0u64;
    let mut r = 1u64;
    while r * r <= d {
        if d % r == 0 {
            total += r;
            if r * r != d {
                total += d / r;
            }
        }
        r += 1;
    }
    Ok(total)
}

fn sigma_q(d: usize) -> BigRational {
    int(sigma(d as i64).expect("d ≥ 1") as i64)
}

/// `G(q) = Σ_{d≥1} σ(d) q^d`.
pub fn g_series(n: usize) -> PowerSeries {
    PowerSeries::from_fn(n, |d| if d == 0 { BigRational::zero() } else { sigma_q(d) })
}

/// `qG′(q) = Σ d σ(d) q^d`.
pub fn qg_prime(n: usize) -> PowerSeries {
    g_series(n).q_d_dq()
}

/// `E(q) = ∏_{d≥1} (1 − q^d)` truncated at order `n`.
pub fn euler_product(n: usize) -> PowerSeries {
    let mut acc = PowerSeries::one(n);
    for d in 1..=n {
        let factor = PowerSeries::from_fn(n, |k| {
            if k == 0 {
                BigRational::one()
            } else if k == d {
                -BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        acc = &acc * &factor;
    }
    acc
}

/// `E(q)^{−12}`.
pub fn eta_inv12(n: usize) -> PowerSeries {
    euler_product(n)
        .pow_int(-12)
        .expect("E(0) = 1 is invertible")
}

/// The series solution of `q d/dq log F = 12 G` with `F(0) = 1`.
pub fn f0_from_ode(n: usize) -> PowerSeries {
    let mut c = vec![BigRational::zero(); n + 1];
    c[0] = BigRational::one();
    let sig: Vec<BigRational> = (0..=n)
        .map(|k| if k == 0 { BigRational::zero() } else { sigma_q(k) })
        .collect();
    for d in 1..=n {
        let mut acc = BigRational::zero();
        for k in 1..=d {
            acc += &sig[k] * &c[d - k];
        }
        c[d] = acc * int(12) / int(d as i64);
    }
    PowerSeries::new(c)
}

/// Compares `(1/12) q d/dq log E^{−12}` with `G`.
pub fn verify_log_derivative_identity(n: usize) -> IdentityCheck {
    verify_log_derivative_with_weight(n, 12)
}

/// As [`verify_log_derivative_identity`] with `12` replaced by `weight`
/// in the normalising factor.
pub fn verify_log_derivative_with_weight(n: usize, weight: i64) -> IdentityCheck {
    let lhs = eta_inv12(n)
        .log()
        .expect("constant term 1")
        .q_d_dq()
        .scale(&int(weight).recip());
    IdentityCheck::compare_with_context(&g_series(n), &lhs, "log derivative")
}

/// `F_g = E^{−12} (qG′)^g`.
pub fn f_g_closed(g: u32, n: usize) -> PowerSeries {
    let qg = qg_prime(n);
    let mut f = eta_inv12(n);
    for _ in 0..g {
        f = &f * &qg;
    }
    f
}

/// `F_g = F_{g−1} · qG′`.
pub fn f_g_recursion(prev: &PowerSeries) -> PowerSeries {
    prev * &qg_prime(prev.order())
}

/// `H = (1/12)(qF₀′ − F₀) + F₀ G`.
pub fn h_from_trr(f0: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    let twelfth = int(12).recip();
    let a = (&f0.q_d_dq() - f0).scale(&twelfth);
    &a + &(f0 * g)
}

/// `H = −F₀/12 + 2 F₀ G`.
pub fn h_from_sum(f0: &PowerSeries, g: &PowerSeries) -> PowerSeries {
    let a = f0.scale(&-int(12).recip());
    &a + &(f0 * g).scale(&int(2))
}

/// Genus-0 relative invariant of `𝔰 + d𝔣` on `P¹×T²` through a point with
/// contact along a fiber class: the section through the point when `d = 0`,
/// nothing otherwise since the moduli space is empty.
fn p1t2_genus0_relative_section(d: usize) -> BigRational {
    if d == 0 {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// Rebuilds `F_1, …, F_g` by splitting along a fiber, starting from the ODE
/// solution for `F₀`, and compares `F_g` with the closed form.
pub fn sympsum_check_g(g: u32, n: usize) -> Result<IdentityCheck, SeriesError> {
    sympsum_check_with_stand_in(g, n, None)
}

/// As [`sympsum_check_g`]; `stand_in` replaces the relative invariants
/// that vanish on the rational elliptic surface side.
pub fn sympsum_check_with_stand_in(
    g: u32,
    n: usize,
    stand_in: Option<&BigRational>,
) -> Result<IdentityCheck, SeriesError> {
    if g < 1 {
        return Err(SeriesError::GenusOutOfRange { min: 1, got: g });
    }
    let rel: Vec<BigRational> = (0..=n)
        .map(|d| p1t2_relative_section(d as i64).expect("d ≥ 0"))
        .collect();
    let vanishing = stand_in.cloned().unwrap_or_else(BigRational::zero);
    let mut prev = f0_from_ode(n);
    for genus in 1..=g {
        let next = PowerSeries::from_fn(n, |d| {
            let mut acc = BigRational::zero();
            for d1 in 0..=d {
                let d2 = d - d1;
                acc += &prev.coeffs()[d1] * &rel[d2];
                acc += &vanishing * p1t2_genus0_relative_section(d2);
            }
            acc
        });
        let check = IdentityCheck::compare_with_context(
            &f_g_closed(genus, n),
            &next,
            &format!("genus {genus}"),
        );
        if !check.holds() {
            return Ok(check);
        }
        prev = next;
    }
    Ok(IdentityCheck {
        order: n,
        first_mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Integer expansion of `∏ (1 − q^d)^{−12}` by repeated geometric sums.
    fn eta_oracle(n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::one();
        for d in 1..=n {
            for _ in 0..12 {
                for k in d..=n {
                    let prev = c[k - d].clone();
                    c[k] += prev;
                }
            }
        }
        c
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1).unwrap(), 1);
        assert_eq!(sigma(6).unwrap(), 12);
        assert_eq!(sigma(12).unwrap(), 28);
        assert!(sigma(0).is_err());
    }

    #[test]
    fn g_coefficients() {
        let g = g_series(6);
        assert_eq!(g.coeffs()[0], q(0, 1));
        assert_eq!(g.coeffs()[1], q(1, 1));
        assert_eq!(g.coeffs()[4], q(7, 1));
    }

    #[test]
    fn eta_matches_oracle() {
        let e = eta_inv12(12);
        let oracle = eta_oracle(12);
        for k in 0..=12 {
            assert_eq!(e.coeffs()[k], BigRational::from_integer(oracle[k].clone()));
        }
        assert_eq!(&e.coeffs()[..4], &[q(1, 1), q(12, 1), q(90, 1), q(520, 1)]);
    }

    #[test]
    fn ode_solution_matches_eta() {
        assert_eq!(f0_from_ode(40), eta_inv12(40));
        assert_eq!(f0_from_ode(0).coeffs()[0], q(1, 1));
    }

    #[test]
    fn log_derivative() {
        assert!(verify_log_derivative_identity(0).holds());
        assert!(verify_log_derivative_identity(30).holds());
        let bad = verify_log_derivative_with_weight(30, 11);
        assert_eq!(bad.first_mismatch.unwrap().index, 1);
    }

    #[test]
    fn genus_one_closed_form() {
        let f1 = f_g_closed(1, 5);
        assert_eq!(f1.coeffs()[0], q(0, 1));
        assert_eq!(f1.coeffs()[1], q(1, 1));
        assert_eq!(f1.coeffs()[2], q(18, 1));
        assert_eq!(f_g_closed(0, 10), eta_inv12(10));
    }

    #[test]
    fn recursion_matches_closed_form() {
        let mut f = f0_from_ode(20);
        for g in 1..=5 {
            f = f_g_recursion(&f);
            assert_eq!(f, f_g_closed(g, 20));
        }
        assert!(f_g_recursion(&PowerSeries::zero(10)).is_zero());
    }

    #[test]
    fn h_expressions() {
        let f0 = f0_from_ode(30);
        let g = g_series(30);
        let a = h_from_trr(&f0, &g);
        let b = h_from_sum(&f0, &g);
        assert_eq!(a, b);
        assert_eq!(a.coeffs()[0], q(-1, 12));

        let one = PowerSeries::one(30);
        let zero = PowerSeries::zero(30);
        assert_eq!(h_from_trr(&one, &zero), PowerSeries::constant(q(-1, 12), 30));
        assert_eq!(h_from_sum(&one, &zero), PowerSeries::constant(q(-1, 12), 30));
        assert_ne!(h_from_trr(&one, &g), h_from_sum(&one, &g));
    }

    #[test]
    fn h_difference_is_ode_defect() {
        let g = g_series(15);
        for f0 in [f0_from_ode(15), PowerSeries::one(15), PowerSeries::from_ints(&[1, 3, -2, 5])] {
            let diff = &h_from_trr(&f0, &g) - &h_from_sum(&f0, &g);
            let defect = (&f0.q_d_dq() - &(&f0 * &g).scale(&q(12, 1))).scale(&q(1, 12));
            assert_eq!(diff, defect);
        }
    }

    #[test]
    fn sympsum() {
        assert!(sympsum_check_g(1, 30).unwrap().holds());
        assert!(sympsum_check_g(5, 30).unwrap().holds());
        assert!(sympsum_check_g(0, 30).is_err());
        let bad = sympsum_check_with_stand_in(1, 30, Some(&q(1, 1))).unwrap();
        assert!(!bad.holds());
    }
}
