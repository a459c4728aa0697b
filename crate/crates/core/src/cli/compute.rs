use num_bigint::BigInt;

use super::report::{Report, ReportItem};
use super::spec::{Contact, ConvolveProblem, ConvolveSetup, DeckProblem, ModulesDoc, PsiProblem, SeriesRequest};
use super::CliError;
use crate::covers::{psi_value, ConvolutionInput, ConvolutionModules, ConvolutionSpec, CoverSpec, DiagPairSpec};
use crate::gw_series::{eta_inv12, f0_from_ode, f_g_closed, g_series, h_from_trr, PowerSeries};
use crate::lattice::{ContactVector, IntMatrix};

pub(crate) fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn fmt_list<T: std::fmt::Display>(v: &[T]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Row list to a matrix with `n` rows; an empty list is `n × 0`.
pub(crate) fn rows_to_matrix(rows: &[Vec<i64>], n: usize, field: &str) -> Result<IntMatrix, CliError> {
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(n, 0));
    }
    if rows.len() != n {
        return Err(CliError::Compute(format!(
            "`{field}` has {} rows, expected {n}",
            rows.len()
        )));
    }
    IntMatrix::from_rows(rows).map_err(|e| CliError::Compute(format!("`{field}`: {e}")))
}

fn contact_vector(c: &Contact) -> Result<ContactVector, CliError> {
    let tuples = c.s.iter().map(|t| t.entries().to_vec()).collect();
    Ok(ContactVector::new(tuples, c.ranks.clone())?)
}

pub fn run_deck(p: &DeckProblem) -> Result<Report, CliError> {
    let contact = contact_vector(&p.contact)?;
    let n = contact.ambient_rank();
    let h = rows_to_matrix(&p.h, n, "H")?;
    let spec = CoverSpec::new(contact, h)?;
    let deck = spec.deck();
    let q = deck.quotient_structure();
    let mut items = vec![
        ReportItem::value("deck group", deck, "Deck = R_H/R' × R'"),
        ReportItem::value("quotient part", q, "R_H/R' = Z^n/(H + R')"),
        ReportItem::value("quotient invariant factors", fmt_list(&q.torsion), "R_H/R' = Z^n/(H + R')"),
        ReportItem::value("quotient free rank", q.free_rank, "R_H/R' = Z^n/(H + R')"),
        ReportItem::value("subgroup", &deck.subgroup_structure, "R' = Φ(H_1(V_s)) in R_H"),
    ];
    if let Some(scales) = &deck.subgroup_scales {
        items.push(ReportItem::value("subgroup scales", fmt_list(scales), "R' = Φ(H_1(V_s)) in R_H"));
    }
    let sheets = match spec.cosets() {
        Some(cs) => cs.len().to_string(),
        None => "infinite".into(),
    };
    items.push(ReportItem::value("components over each point", sheets, "cosets of R' in R_H"));
    if let Some(cs) = spec.cosets() {
        if cs.len() <= 64 {
            let reps: Vec<String> = cs.reps().map(|r| fmt_vec(&r)).collect();
            items.push(ReportItem::value("coset representatives", reps.join(" "), "cosets of R' in R_H"));
        }
    }
    Ok(Report::values("deck", items))
}

pub fn run_psi(p: &PsiProblem) -> Result<Report, CliError> {
    let contact = contact_vector(&p.contact)?;
    let n = contact.ambient_rank();
    let h1 = rows_to_matrix(&p.h1, n, "H1")?;
    let h2 = rows_to_matrix(&p.h2, n, "H2")?;
    let h12 = rows_to_matrix(&p.h12, n, "H12")?;
    let inclusion = match &p.inclusion {
        None => None,
        Some(rows) if rows.is_empty() => Some(IntMatrix::zeros(0, n)),
        Some(rows) => Some(IntMatrix::from_rows(rows).map_err(|e| CliError::Compute(format!("`E`: {e}")))?),
    };
    let dp = DiagPairSpec::new(contact, h1, h2, h12, inclusion)?;
    let psi = psi_value(&dp, &big(&p.gamma), p.j1, p.j2)?;
    let image = dp.inclusion().mul_vec(psi.rep())?;
    let items = vec![
        ReportItem::value("psi", fmt_vec(psi.rep()), "Ψ = [Φ(γ) + γ_1 − γ_2] in R_H12"),
        ReportItem::value("component group", dp.r_h12().structure(), "R_H12 = Z^n/H12"),
        ReportItem::value("side 1 representative", fmt_vec(&dp.side1().cosets().expect("finite").rep(p.j1)?), "γ_1"),
        ReportItem::value("side 2 representative", fmt_vec(&dp.side2().cosets().expect("finite").rep(p.j2)?), "γ_2"),
        ReportItem::value("image under E", fmt_vec(&image), "E·Ψ"),
    ];
    Ok(Report::values("psi", items))
}

fn modules(m: &ModulesDoc, np: usize, n: usize, npp: usize) -> Result<ConvolutionModules, CliError> {
    Ok(ConvolutionModules {
        h1: rows_to_matrix(&m.h1, n, "H1")?,
        h2: rows_to_matrix(&m.h2, n, "H2")?,
        obu_h12: rows_to_matrix(&m.obu_h12, 2 * n, "obu_h12")?,
        ori_h12: rows_to_matrix(&m.ori_h12, np + npp, "ori_h12")?,
        wt_h1: rows_to_matrix(&m.wt_h1, np + n, "wt_h1")?,
        wt_h2: rows_to_matrix(&m.wt_h2, n + npp, "wt_h2")?,
        wt_h12: rows_to_matrix(&m.wt_h12, np + 2 * n + npp, "wt_h12")?,
    })
}

pub fn run_convolve(p: &ConvolveProblem) -> Result<Report, CliError> {
    let cs = match &p.setup {
        ConvolveSetup::Torus { s1, s2 } => {
            ConvolutionSpec::torus_example(s1.entries().to_vec(), s2.entries().to_vec())?
        }
        ConvolveSetup::General {
            s_prime,
            s,
            s_dprime,
            modules: m,
        } => {
            let (a, b, c) = (contact_vector(s_prime)?, contact_vector(s)?, contact_vector(s_dprime)?);
            let m = modules(m, a.ambient_rank(), b.ambient_rank(), c.ambient_rank())?;
            ConvolutionSpec::new(a, b, c, m)?
        }
    };
    let input = ConvolutionInput {
        j1: p.input.j1,
        j2: p.input.j2,
        gamma: big(&p.input.gamma),
        twist_prime: big(&p.input.twist_prime),
        twist_dprime: big(&p.input.twist_dprime),
    };
    let out = cs.convolve(&input)?;
    let items = vec![
        ReportItem::value("output index", out.index, "component of V̂ over V′ ∪ V″"),
        ReportItem::value("output representative", fmt_vec(&out.rep), "γ_out"),
        ReportItem::value("output twist", fmt_vec(&out.twist), "twist mod ori-H12"),
    ];
    Ok(Report::values("convolve", items))
}

pub fn series_of(req: SeriesRequest, order: usize) -> PowerSeries {
    match req {
        SeriesRequest::G => g_series(order),
        SeriesRequest::Eta12 => eta_inv12(order),
        SeriesRequest::F(g) => f_g_closed(g, order),
        SeriesRequest::H => h_from_trr(&f0_from_ode(order), &g_series(order)),
    }
}

pub fn run_series(req: SeriesRequest, order: usize) -> Report {
    let (title, anchor) = match req {
        SeriesRequest::G => ("G".to_string(), "G = Σ σ(d) q^d"),
        SeriesRequest::Eta12 => ("eta12".to_string(), "∏(1 − q^d)^−12"),
        SeriesRequest::F(g) => (format!("F{g}"), "F_g = E^−12 (qG′)^g"),
        SeriesRequest::H => ("H".to_string(), "H = (qF0′ − F0)/12 + F0 G"),
    };
    let s = series_of(req, order);
    let items = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| ReportItem::value(&format!("q^{k}"), c, anchor))
        .collect();
    Report::values(&format!("series {title}"), items)
}
