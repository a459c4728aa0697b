//! Randomised and exact verification suites behind `verify`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::compute::fmt_vec;
use super::report::ReportItem;
use super::spec::Suite;
use super::CliError;
use crate::covers::{
    check_convolution_well_defined, cross_validate_convolution, deck_apply, glue_degree,
    psi_of_points, symbolic_point, CoverSpec, DiagPairSpec,
};
use crate::gw_series::{
    eta_inv12, f0_from_ode, f_g_closed, f_g_recursion, g_series, h_from_sum, h_from_trr,
    p1t2_genus1_section_closed, p1t2_trr_section, p9_h_via_trr, sympsum_check_g,
    sympsum_check_with_stand_in, verify_log_derivative_identity, verify_log_derivative_with_weight,
    IdentityCheck, PowerSeries,
};
use crate::lattice::{
    smith_normal_form, vec_add, vec_sub, AbelianGroup, ColumnEchelon, ContactVector, IntMatrix,
};

/// Parameters shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub order: usize,
    pub trials: Option<usize>,
    pub seed: u64,
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<Vec<ReportItem>, CliError> {
    match suite {
        Suite::Snf => Ok(snf_suite(p.trials.unwrap_or(1000), p.seed)),
        Suite::Deck => deck_suite(p.trials.unwrap_or(200), p.seed),
        Suite::Equivariance => equivariance_suite(p.trials.unwrap_or(1000), p.seed),
        Suite::Convolution => convolution_suite(p.trials.unwrap_or(500), p.seed),
        Suite::BryanLeung => Ok(bryan_leung_suite(p.order)),
        Suite::Trr => trr_suite(p.order),
        Suite::Sympsum => sympsum_suite(p.order),
    }
}

fn tally(name: &str, failures: usize, trials: usize, first: Option<String>, anchor: &str) -> ReportItem {
    let expected = format!("{trials}/{trials}");
    let mut got = format!("{}/{trials}", trials - failures);
    if let Some(f) = first {
        got.push_str(&format!(" (first failure: {f})"));
    }
    ReportItem::verdict(name, expected, got, failures == 0, anchor)
}

fn identity(name: &str, check: &IdentityCheck, anchor: &str) -> ReportItem {
    ReportItem::verdict(
        name,
        format!("holds to order {}", check.order),
        check,
        check.holds(),
        anchor,
    )
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, data).expect("sizes agree")
}

pub fn snf_suite(trials: usize, seed: u64) -> Vec<ReportItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = [0usize; 4];
    let mut first: [Option<String>; 4] = Default::default();
    for _ in 0..trials {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_matrix(&mut rng, r, c, 50);
        let snf = smith_normal_form(&a);
        let uav = snf.u.mul(&a).and_then(|m| m.mul(&snf.v)).ok();
        let unimodular = [&snf.u, &snf.v]
            .iter()
            .all(|m| m.determinant().map(|d| d.abs().is_one()).unwrap_or(false));
        let diag = snf.diagonal();
        let chain = diag.iter().all(|d| !d.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    w[1].is_multiple_of(&w[0])
                }
            });
        let ok = [
            uav.as_ref() == Some(&snf.d),
            unimodular,
            snf.d.is_diagonal(),
            chain,
        ];
        for (k, good) in ok.iter().enumerate() {
            if !good {
                fails[k] += 1;
                first[k].get_or_insert_with(|| format!("{a:?}"));
            }
        }
    }
    let names = [
        ("U·A·V = D", "U A V = D"),
        ("U, V unimodular", "|det U| = |det V| = 1"),
        ("D diagonal", "D = diag(d_1, …)"),
        ("divisibility chain", "d_i | d_{i+1}"),
    ];
    names
        .iter()
        .enumerate()
        .map(|(k, (n, anchor))| tally(n, fails[k], trials, first[k].take(), anchor))
        .collect()
}

/// Prime-power decomposition by trial division.
fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn elementary_divisors<'a>(ds: impl Iterator<Item = &'a BigInt>) -> Vec<u64> {
    let mut out: Vec<u64> = ds
        .flat_map(|d| prime_powers(d.abs().to_u64().expect("small invariants")))
        .collect();
    out.sort_unstable();
    out
}

fn gcd_all(s: &[i64]) -> u64 {
    s.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
}

fn random_contact_vector<R: Rng>(rng: &mut R, max_rank: usize, max_ell: usize, bound: i64) -> (Vec<Vec<i64>>, Vec<usize>) {
    let comps = rng.gen_range(1..=3.min(max_rank));
    let mut ranks = vec![1; comps];
    let mut total = comps;
    while total < max_rank && rng.gen_bool(0.5) {
        let r = rng.gen_range(0..comps);
        ranks[r] += 1;
        total += 1;
    }
    let tuples = (0..comps)
        .map(|_| {
            let ell = rng.gen_range(0..=max_ell);
            (0..ell)
                .map(|_| {
                    let v = rng.gen_range(1..=bound);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    (tuples, ranks)
}

pub fn deck_suite(trials: usize, seed: u64) -> Result<Vec<ReportItem>, CliError> {
    let mut items = vec![];
    let example = CoverSpec::new(ContactVector::connected(vec![2, 2], 2)?, IntMatrix::zeros(2, 0))?;
    items.push(ReportItem::check(
        "T², s = (2, 2)",
        "Z₂² ⊕ (2Z)²",
        example.deck(),
        "Deck = R_H/R' × R'",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = 0;
    let mut first = None;
    for _ in 0..trials {
        let (tuples, ranks) = random_contact_vector(&mut rng, 4, 3, 9);
        let contact = ContactVector::new(tuples.clone(), ranks.clone())?;
        let n = contact.ambient_rank();
        let spec = CoverSpec::new(contact, IntMatrix::zeros(n, 0))?;
        let deck = spec.deck();

        let mut free = 0;
        let mut expected_pp = vec![];
        let mut sub_rank = 0;
        for (t, &r) in tuples.iter().zip(&ranks) {
            let g = gcd_all(t);
            if g == 0 {
                free += r;
            } else {
                sub_rank += r;
                for _ in 0..r {
                    expected_pp.extend(prime_powers(g));
                }
            }
        }
        expected_pp.sort_unstable();
        let q = deck.quotient_structure();
        let got_pp = elementary_divisors(q.torsion.iter());
        let scales_pp = deck.subgroup_scales.as_ref().map(|s| elementary_divisors(s.iter()));
        let sub_ok = deck.subgroup_structure == AbelianGroup { free_rank: sub_rank, torsion: vec![] }
            && deck.subgroup_scales.as_ref().map(Vec::len) == Some(sub_rank);
        let ok = q.free_rank == free && got_pp == expected_pp && scales_pp.as_ref() == Some(&expected_pp) && sub_ok;
        if !ok {
            fails += 1;
            first.get_or_insert_with(|| format!("s = {tuples:?}, ranks = {ranks:?}: got {deck}"));
        }
    }
    items.push(tally(
        "deck group vs gcd oracle (H = 0)",
        fails,
        trials,
        first,
        "R_H/R' = ⊕ (Z/gcd s_r)^{rank}",
    ));
    Ok(items)
}

fn random_vec<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

fn random_generators<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let k = rng.gen_range(0..=1);
    random_matrix(rng, n, k, 3)
}

/// A random pair spec with an inclusion built from the left kernel of `H₁₂`.
pub fn random_diag_pair<R: Rng>(rng: &mut R) -> Result<DiagPairSpec, CliError> {
    loop {
        let (tuples, ranks) = random_contact_vector(rng, 3, 3, 5);
        if tuples.iter().any(Vec::is_empty) {
            continue;
        }
        let contact = ContactVector::new(tuples, ranks)?;
        let n = contact.ambient_rank();
        let h1 = random_generators(rng, n);
        let h2 = random_generators(rng, n);
        let extra = random_generators(rng, n);
        let h12 = h1.hcat(&h2)?.hcat(&extra)?;
        let e = ColumnEchelon::new(&h12.transpose()).kernel().transpose();
        return Ok(DiagPairSpec::new(contact, h1, h2, h12, Some(e))?);
    }
}

pub fn equivariance_suite(trials: usize, seed: u64) -> Result<Vec<ReportItem>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = [0usize; 5];
    let mut first: [Option<String>; 5] = Default::default();
    for t in 0..trials {
        let dp = random_diag_pair(&mut rng)?;
        let (s1, s2) = (dp.side1(), dp.side2());
        let dom = s1.contact().domain_rank();
        let n = s1.contact().ambient_rank();
        let j1 = rng.gen_range(0..s1.cosets().expect("finite").len());
        let j2 = rng.gen_range(0..s2.cosets().expect("finite").len());
        let p1 = symbolic_point(s1, j1, &random_vec(&mut rng, dom, 5))?;
        let p2 = symbolic_point(s2, j2, &random_vec(&mut rng, dom, 5))?;
        let eta = random_vec(&mut rng, n, 5);
        let e = dp.inclusion();
        let a_base = random_vec(&mut rng, e.rows(), 9);

        let base = psi_of_points(&dp, &p1, &p2)?;
        let q1 = deck_apply(s1, &eta, &p1)?;
        let q2 = deck_apply(s2, &eta, &p2)?;
        let plus = dp.r_h12().normal_form(&vec_add(base.rep(), &eta))?;
        let minus = dp.r_h12().normal_form(&vec_sub(base.rep(), &eta))?;
        let moved1 = psi_of_points(&dp, &q1, &p2)?;
        let moved2 = psi_of_points(&dp, &p1, &q2)?;

        let gamma = vec_sub(&p1.twist, &p2.twist);
        let g_base = glue_degree(&a_base, &base, &dp, &gamma, p1.j, p2.j)?;
        let e_eta = e.mul_vec(&eta)?;
        let g1 = glue_degree(&a_base, &base, &dp, &vec_sub(&q1.twist, &p2.twist), q1.j, p2.j)?;
        let g2 = glue_degree(&a_base, &base, &dp, &vec_sub(&p1.twist, &q2.twist), p1.j, q2.j)?;

        let ok = [
            moved1.rep() == plus.as_slice(),
            moved2.rep() == minus.as_slice(),
            g_base == a_base,
            g1 == vec_add(&a_base, &e_eta),
            g2 == vec_sub(&a_base, &e_eta),
        ];
        for (k, good) in ok.iter().enumerate() {
            if !good {
                fails[k] += 1;
                first[k].get_or_insert_with(|| format!("trial {t}, η = {}", fmt_vec(&eta)));
            }
        }
    }
    let names = [
        ("Ψ(Θ_η x, y) = Ψ(x, y) + [η]", "Ψ∘Θ_η equivariance, side 1"),
        ("Ψ(x, Θ_η y) = Ψ(x, y) − [η]", "Ψ∘Θ_η equivariance, side 2"),
        ("glue degree at base pair", "g(base) = A_base"),
        ("glue degree, side 1 shift", "g(Θ_η x, y) = g + Eη"),
        ("glue degree, side 2 shift", "g(x, Θ_η y) = g − Eη"),
    ];
    Ok(names
        .iter()
        .enumerate()
        .map(|(k, (nm, anchor))| tally(nm, fails[k], trials, first[k].take(), anchor))
        .collect())
}

pub fn convolution_suite(trials: usize, seed: u64) -> Result<Vec<ReportItem>, CliError> {
    let r = cross_validate_convolution(trials, seed, false)?;
    let w = check_convolution_well_defined(trials, seed.wrapping_add(1))?;
    let neg = cross_validate_convolution(trials.min(100), seed, true)?;
    Ok(vec![
        tally(
            "symbolic vs torus convolution",
            r.mismatches,
            trials,
            r.first_mismatch,
            "convolution = torus formula",
        ),
        tally(
            "invariance under representative changes",
            w.mismatches,
            trials,
            w.first_mismatch,
            "convolution well defined",
        ),
        ReportItem::verdict(
            "negative control: sign-flipped torus formula",
            "mismatches detected",
            format!("{} of {} mismatched", neg.mismatches, neg.trials),
            neg.mismatches > 0,
            "convolution = torus formula",
        ),
    ])
}

fn coeffs_prefix(s: &PowerSeries, k: usize) -> String {
    s.coeffs()
        .iter()
        .take(k)
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn bryan_leung_suite(order: usize) -> Vec<ReportItem> {
    let f0 = f0_from_ode(order);
    let mut items = vec![identity(
        "F0 from ODE = E^−12",
        &IdentityCheck::compare(&eta_inv12(order), &f0),
        "q d/dq log F0 = 12 G, F0 = E^−12",
    )];
    let k = 3.min(order + 1);
    items.push(ReportItem::check(
        "first coefficients",
        ["1", "12", "90"][..k].join(", "),
        coeffs_prefix(&f0, k),
        "F0 = 1 + 12q + 90q² + …",
    ));
    items.push(identity(
        "log-derivative identity",
        &verify_log_derivative_identity(order),
        "(1/12) q d/dq log E^−12 = G",
    ));
    if order >= 1 {
        let bad = verify_log_derivative_with_weight(order, 11);
        items.push(ReportItem::verdict(
            "negative control: weight 11",
            "fails at q^1",
            &bad,
            bad.first_mismatch.as_ref().map(|m| m.index) == Some(1),
            "(1/12) q d/dq log E^−12 = G",
        ));
    }
    items
}

pub fn trr_suite(order: usize) -> Result<Vec<ReportItem>, CliError> {
    let mut items = vec![ReportItem::check(
        "P¹×T², d = 0",
        "-1/12",
        p1t2_trr_section(0)?,
        "genus-1 TRR, P¹×T² sections",
    )];
    let mut bad = None;
    for d in 1..=order as i64 {
        let (want, got) = (p1t2_genus1_section_closed(d)?, p1t2_trr_section(d)?);
        if want != got {
            bad = Some(format!("d = {d}: expected {want}, got {got}"));
            break;
        }
    }
    items.push(ReportItem::verdict(
        &format!("P¹×T², 1 ≤ d ≤ {order}"),
        "2σ(d) for every d",
        bad.as_deref().unwrap_or("2σ(d) for every d"),
        bad.is_none(),
        "genus-1 TRR, P¹×T² sections",
    ));

    let f0 = f0_from_ode(order);
    let g = g_series(order);
    let trr = h_from_trr(&f0, &g);
    items.push(identity(
        "rational elliptic surface: TRR term by term = H",
        &IdentityCheck::compare(&trr, &p9_h_via_trr(0, &f0)?),
        "H = (qF0′ − F0)/12 + F0 G",
    ));
    items.push(identity(
        "H from TRR = H from fiber sum",
        &IdentityCheck::compare(&trr, &h_from_sum(&f0, &g)),
        "(qF0′ − F0)/12 + F0 G = −F0/12 + 2 F0 G",
    ));
    items.push(ReportItem::check(
        "H constant term",
        "-1/12",
        &trr.coeffs()[0],
        "H(0) = −1/12",
    ));
    if order >= 1 {
        let one = PowerSeries::one(order);
        let neg = IdentityCheck::compare(&h_from_trr(&one, &g), &h_from_sum(&one, &g));
        items.push(ReportItem::verdict(
            "negative control: F0 = 1",
            "expressions differ",
            &neg,
            !neg.holds(),
            "(qF0′ − F0)/12 + F0 G = −F0/12 + 2 F0 G",
        ));
    }
    Ok(items)
}

pub fn sympsum_suite(order: usize) -> Result<Vec<ReportItem>, CliError> {
    let mut items = vec![];
    let mut f = f0_from_ode(order);
    for genus in 1..=8 {
        f = f_g_recursion(&f);
        items.push(identity(
            &format!("F{genus}: recursion = closed form"),
            &IdentityCheck::compare(&f_g_closed(genus, order), &f),
            "F_g = F_{g−1} qG′",
        ));
    }
    for genus in 1..=5 {
        items.push(identity(
            &format!("F{genus}: fiber-sum splitting"),
            &sympsum_check_g(genus, order)?,
            "F_g = Σ F_{g−1}[d′] d″σ(d″) q^{d′+d″}",
        ));
    }
    let neg = sympsum_check_with_stand_in(1, order, Some(&BigRational::one()))?;
    items.push(ReportItem::verdict(
        "negative control: nonzero vanishing term",
        "splitting fails",
        &neg,
        !neg.holds(),
        "F_g = Σ F_{g−1}[d′] d″σ(d″) q^{d′+d″}",
    ));
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(items: &[ReportItem]) {
        for it in items {
            assert!(!it.failed(), "{it:?}");
        }
    }

    #[test]
    fn small_suites_pass() {
        all_pass(&snf_suite(50, 1));
        all_pass(&deck_suite(40, 2).unwrap());
        all_pass(&equivariance_suite(60, 3).unwrap());
        all_pass(&convolution_suite(30, 4).unwrap());
        all_pass(&bryan_leung_suite(12));
        all_pass(&trr_suite(10).unwrap());
        all_pass(&sympsum_suite(10).unwrap());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_powers(12), vec![4, 3]);
        assert_eq!(prime_powers(1), Vec::<u64>::new());
        assert_eq!(elementary_divisors([BigInt::from(6), BigInt::from(2)].iter()), vec![2, 2, 3]);
    }
}
