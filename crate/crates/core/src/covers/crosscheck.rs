use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::torus::{torus_convolve_signed, torus_render, QVec2, TorusCoverPoint};
use super::{ConvolutionInput, ConvolutionSpec, CoverError};
use crate::lattice::{vec_add, vec_sub};

/// One random symbolic input for the torus convolution example, together
/// with base points on `V` (`ℓ₁` points) and `V″` (`ℓ₂` points).
#[derive(Clone, Debug)]
pub struct ConvolutionTrial {
    pub s1: Vec<i64>,
    pub s2: Vec<i64>,
    pub input: ConvolutionInput,
    pub base: Vec<QVec2>,
    pub base2: Vec<QVec2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub trials: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

fn random_contact<R: Rng>(rng: &mut R) -> Vec<i64> {
    let ell = rng.gen_range(1..=3);
    (0..ell)
        .map(|_| {
            let v = rng.gen_range(1..=5);
            if rng.gen_bool(0.5) {
                v
            } else {
                -v
            }
        })
        .collect()
}

fn random_point<R: Rng>(rng: &mut R) -> QVec2 {
    let mut q = || {
        let den = rng.gen_range(1..=12i64);
        BigRational::new(BigInt::from(rng.gen_range(0..den)), BigInt::from(den))
    };
    [q(), q()]
}

fn random_ints<R: Rng>(rng: &mut R, len: usize) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect()
}

/// Draws contact tuples with `ℓ ≤ 3`, `|s_i| ≤ 5` and a random input.
pub fn random_convolution_trial<R: Rng>(rng: &mut R) -> Result<(ConvolutionSpec, ConvolutionTrial), CoverError> {
    let (s1, s2) = (random_contact(rng), random_contact(rng));
    let cs = ConvolutionSpec::torus_example(s1.clone(), s2.clone())?;
    let j1 = rng.gen_range(0..cs.x_cover().require_cosets()?.len());
    let j2 = rng.gen_range(0..cs.y_cover().require_cosets()?.len());
    let trial = ConvolutionTrial {
        input: ConvolutionInput {
            j1,
            j2,
            gamma: random_ints(rng, 2 * s1.len()),
            twist_prime: vec![],
            twist_dprime: random_ints(rng, 2 * s2.len()),
        },
        base: (0..s1.len()).map(|_| random_point(rng)).collect(),
        base2: (0..s2.len()).map(|_| random_point(rng)).collect(),
        s1,
        s2,
    };
    Ok((cs, trial))
}

/// Runs both pipelines on one trial; returns `(torus, symbolic)` outputs
/// as torus points over `s₂`.
pub fn run_convolution_trial(
    cs: &ConvolutionSpec,
    t: &ConvolutionTrial,
    corrupt: bool,
) -> Result<(TorusCoverPoint, TorusCoverPoint), CoverError> {
    let (l1, l2) = (t.s1.len(), t.s2.len());
    let x_rep = cs.x_cover().check_index(t.input.j1)?;
    let y_rep = cs.y_cover().check_index(t.input.j2)?;
    let x = torus_render(&t.s1, &x_rep, &t.input.gamma, &t.base)?;

    // the y-side cover over V ⊔ V″ with diagonal H is the torus cover for (s₁, −s₂)
    let merged: Vec<i64> = t.s1.iter().copied().chain(t.s2.iter().map(|&v| -v)).collect();
    let mut y_twist = vec![BigInt::from(0); 2 * l1];
    y_twist.extend(t.input.twist_dprime.iter().cloned());
    let y_base: Vec<QVec2> = t.base.iter().chain(&t.base2).cloned().collect();
    let y = torus_render(&merged, &vec_sub(&y_rep[..2], &y_rep[2..]), &y_twist, &y_base)?;
    debug_assert_eq!(y.zs.len(), l1 + l2);

    let torus = torus_convolve_signed(&t.s1, &t.s2, &x, &y, corrupt)?;
    let out = cs.convolve(&t.input)?;
    let symbolic = torus_render(&t.s2, &out.rep, &out.twist, &t.base2)?;
    Ok((torus, symbolic))
}

/// Compares the symbolic convolution with the torus formula on random
/// inputs. `corrupt` flips a sign in the torus formula.
pub fn cross_validate_convolution(trials: usize, seed: u64, corrupt: bool) -> Result<CrossCheckReport, CoverError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrossCheckReport {
        trials,
        mismatches: 0,
        first_mismatch: None,
    };
    for k in 0..trials {
        let (cs, trial) = random_convolution_trial(&mut rng)?;
        let (torus, symbolic) = run_convolution_trial(&cs, &trial, corrupt)?;
        if torus != symbolic {
            report.mismatches += 1;
            if report.first_mismatch.is_none() {
                report.first_mismatch = Some(format!(
                    "trial {k}: s1={:?} s2={:?} torus z={}/{} symbolic z={}/{}",
                    trial.s1, trial.s2, torus.z[0], torus.z[1], symbolic.z[0], symbolic.z[1]
                ));
            }
        }
    }
    Ok(report)
}

fn random_combination<R: Rng>(rng: &mut R, gens: &crate::lattice::IntMatrix) -> Vec<BigInt> {
    let coeffs = random_ints(rng, gens.cols());
    gens.mul_vec(&coeffs).expect("coefficient count matches")
}

/// Moves an input by random elements of `(wt-H₁)_{s′s}` and `(wt-H₂)_{ss″}`,
/// and the lift by a random kernel shift.
pub fn perturb_convolution_input<R: Rng>(
    cs: &ConvolutionSpec,
    input: &ConvolutionInput,
    rng: &mut R,
) -> (ConvolutionInput, Vec<BigInt>) {
    let dp = input.twist_prime.len();
    let d = input.gamma.len();
    let x = random_combination(rng, cs.x_cover().h_s());
    let y = random_combination(rng, cs.y_cover().h_s());
    let mut out = input.clone();
    out.twist_prime = vec_add(&out.twist_prime, &x[..dp]);
    out.gamma = vec_sub(&vec_add(&out.gamma, &x[dp..]), &y[..d]);
    out.twist_dprime = vec_add(&out.twist_dprime, &y[d..]);
    (out, random_ints(rng, cs.lift_kernel_rank()))
}

/// Checks that random representative perturbations leave the convolution
/// output unchanged.
pub fn check_convolution_well_defined(trials: usize, seed: u64) -> Result<CrossCheckReport, CoverError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrossCheckReport {
        trials,
        mismatches: 0,
        first_mismatch: None,
    };
    for k in 0..trials {
        let (cs, trial) = random_convolution_trial(&mut rng)?;
        let base = cs.convolve(&trial.input)?;
        let (moved, shift) = perturb_convolution_input(&cs, &trial.input, &mut rng);
        let out = cs.convolve_with_lift_shift(&moved, &shift)?;
        if out != base {
            report.mismatches += 1;
            if report.first_mismatch.is_none() {
                report.first_mismatch = Some(format!(
                    "trial {k}: s1={:?} s2={:?} index {} vs {}",
                    trial.s1, trial.s2, base.index, out.index
                ));
            }
        }
    }
    Ok(report)
}
