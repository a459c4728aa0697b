use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::generating::sigma;
use super::{PowerSeries, SeriesError, SurfaceData};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Insertion tag for `k` point constraints.
pub(crate) fn pt_tag(k: i64) -> String {
    format!("pt^{k}")
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GwKey {
    pub genus: u32,
    pub class: Vec<i64>,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GwEntry {
    Value(BigRational),
    /// Known to vanish, with the reason.
    Vanishing(String),
}

impl GwEntry {
    pub fn value(&self) -> BigRational {
        match self {
            GwEntry::Value(v) => v.clone(),
            GwEntry::Vanishing(_) => BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            GwEntry::Value(v) => v.is_zero(),
            GwEntry::Vanishing(_) => true,
        }
    }
}

/// Finite table of invariants; anything not listed is unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GwTable {
    entries: BTreeMap<GwKey, GwEntry>,
}

impl GwTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, genus: u32, class: Vec<i64>, tag: &str, value: BigRational) {
        self.entries.insert(
            GwKey {
                genus,
                class,
                tag: tag.to_string(),
            },
            GwEntry::Value(value),
        );
    }

    pub fn insert_vanishing(&mut self, genus: u32, class: Vec<i64>, tag: &str, reason: &str) {
        self.entries.insert(
            GwKey {
                genus,
                class,
                tag: tag.to_string(),
            },
            GwEntry::Vanishing(reason.to_string()),
        );
    }

    pub fn get(&self, genus: u32, class: &[i64], tag: &str) -> Option<&GwEntry> {
        self.entries.get(&GwKey {
            genus,
            class: class.to_vec(),
            tag: tag.to_string(),
        })
    }

    pub fn lookup(&self, genus: u32, class: &[i64], tag: &str) -> Result<BigRational, SeriesError> {
        self.get(genus, class, tag)
            .map(GwEntry::value)
            .ok_or_else(|| SeriesError::MissingEntry {
                genus,
                class: class.to_vec(),
                tag: tag.to_string(),
            })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GwKey, &GwEntry)> {
        self.entries.iter()
    }

    fn classes(&self, genus: u32) -> impl Iterator<Item = &Vec<i64>> {
        self.entries
            .keys()
            .filter(move |k| k.genus == genus)
            .map(|k| &k.class)
    }
}

/// `GW_{1,0}(f) = K·f / 24`.
pub fn gw1_zero_class(surface: &SurfaceData, f: &[i64]) -> Result<BigRational, SeriesError> {
    Ok(big(surface.canonical_degree(f)?) / int(24))
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn to_i64(x: BigInt) -> i64 {
    x.to_i64().expect("intersection numbers fit in i64")
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Genus-1 invariant of `A` with one `τ₁[f]` insertion and `−K·A − 1`
/// points, from the genus-1 topological recursion:
///
/// `(f·A)/24 (A·A + K·A) GW₀_A + Σ C(−K·A−1, −K·A₀−1) (f·A₀)(A₀·A₁) GW₀_{A₀} GW₁_{A₁}`
///
/// `gw0` holds genus-0 invariants with `−K·A₀ − 1` points, `gw1` genus-1
/// invariants with `−K·A₁` points. Splittings are enumerated over the
/// tables' supports. A splitting where one side is listed with a nonzero
/// value and the other side is absent is an error.
pub fn trr_genus1(
    surface: &SurfaceData,
    a: &[i64],
    f: &[i64],
    gw0: &GwTable,
    gw1: &GwTable,
) -> Result<BigRational, SeriesError> {
    let ka = to_i64(surface.canonical_degree(a)?);
    if ka >= 0 {
        return Err(SeriesError::NotNegativeOnCanonical {
            class: a.to_vec(),
            ka,
        });
    }
    let top = -ka - 1;
    let fa = big(surface.intersection(f, a)?);
    let aa = big(surface.intersection(a, a)?);
    let mut total = &fa / int(24) * (aa + int(ka)) * gw0.lookup(0, a, &pt_tag(top))?;

    let zero = vec![0; a.len()];
    let candidates: BTreeSet<Vec<i64>> = gw0
        .classes(0)
        .cloned()
        .chain(gw1.classes(1).map(|a1| sub(a, a1)))
        .filter(|a0| a0.len() == a.len() && *a0 != zero && a0 != a)
        .collect();
    for a0 in candidates {
        let a1 = sub(a, &a0);
        let k0 = -to_i64(surface.canonical_degree(&a0)?) - 1;
        let c = binomial(top, k0);
        if c.is_zero() {
            continue;
        }
        let (tag0, tag1) = (pt_tag(k0), pt_tag(top - k0));
        let e0 = gw0.get(0, &a0, &tag0);
        let e1 = gw1.get(1, &a1, &tag1);
        let (v0, v1) = match (e0, e1) {
            (Some(e), _) | (_, Some(e)) if e.is_zero() => continue,
            (None, None) => continue,
            (None, Some(_)) => {
                return Err(SeriesError::MissingEntry {
                    genus: 0,
                    class: a0,
                    tag: tag0,
                })
            }
            (Some(_), None) => {
                return Err(SeriesError::MissingEntry {
                    genus: 1,
                    class: a1,
                    tag: tag1,
                })
            }
            (Some(x), Some(y)) => (x.value(), y.value()),
        };
        let fa0 = big(surface.intersection(f, &a0)?);
        let a0a1 = big(surface.intersection(&a0, &a1)?);
        total += big(c) * fa0 * a0a1 * v0 * v1;
    }
    Ok(total)
}

/// `GW^{P¹×T²}_{1,d𝔣}() = 2σ(d)/d`.
pub fn p1t2_genus1_fiber(d: i64) -> Result<BigRational, SeriesError> {
    Ok(int(2 * sigma(d)? as i64) / int(d))
}

/// Relative genus-1 invariant of `𝔰 + d𝔣` on `P¹×T²` with a point and a
/// contact point constraint: `d σ(d)`, and `0` for `d = 0`.
pub fn p1t2_relative_section(d: i64) -> Result<BigRational, SeriesError> {
    match d {
        d if d < 0 => Err(SeriesError::DegreeOutOfRange { min: 0, got: d }),
        0 => Ok(BigRational::zero()),
        d => Ok(int(d * sigma(d)? as i64)),
    }
}

/// `GW^{P̂²₉}_{1,d𝔣}() = σ(d)/d`.
pub fn p9_genus1_fiber(d: i64) -> Result<BigRational, SeriesError> {
    Ok(int(sigma(d)? as i64) / int(d))
}

/// Genus-1 section invariant of `P¹×T²` with one `τ₁[𝔣]` insertion and a
/// point: `−1/12` for `d = 0`, `2σ(d)` otherwise.
pub fn p1t2_genus1_section_closed(d: i64) -> Result<BigRational, SeriesError> {
    match d {
        d if d < 0 => Err(SeriesError::DegreeOutOfRange { min: 0, got: d }),
        0 => Ok(int(-1) / int(12)),
        d => Ok(int(2 * sigma(d)? as i64)),
    }
}

const NEGATIVE_DEGREE: &str = "class has negative degree over the base";

/// Genus-0 section table (`−K·A − 1 = 1` point) and genus-1 fiber table
/// (no insertions) for `P¹×T²`, for fiber degrees in `[−m, m]`.
pub fn p1t2_tables(m: usize) -> (GwTable, GwTable) {
    let x = SurfaceData::p1_t2();
    let m = m as i64;
    let mut gw0 = GwTable::new();
    let mut gw1 = GwTable::new();
    for d in -m..=m {
        let a = x.section_class(0, d).expect("one section");
        match d {
            0 => gw0.insert(0, a, &pt_tag(1), BigRational::one()),
            d if d > 0 => gw0.insert_vanishing(
                0,
                a,
                &pt_tag(1),
                "no genus-0 curve in 𝔰+d𝔣 with d > 0 passes through a point",
            ),
            _ => gw0.insert_vanishing(0, a, &pt_tag(1), NEGATIVE_DEGREE),
        }
        if d > 0 {
            gw1.insert(1, x.fiber_class(d), &pt_tag(0), p1t2_genus1_fiber(d).expect("d ≥ 1"));
        } else if d < 0 {
            gw1.insert_vanishing(1, x.fiber_class(d), &pt_tag(0), NEGATIVE_DEGREE);
        }
    }
    (gw0, gw1)
}

/// The recursion evaluated on `𝔰 + d𝔣` in `P¹×T²` with `f = 𝔣`.
pub fn p1t2_trr_section(d: i64) -> Result<BigRational, SeriesError> {
    if d < 0 {
        return Err(SeriesError::DegreeOutOfRange { min: 0, got: d });
    }
    let x = SurfaceData::p1_t2();
    let (gw0, gw1) = p1t2_tables(d as usize);
    trr_genus1(&x, &x.section_class(0, d)?, x.fiber(), &gw0, &gw1)
}

/// Genus-0 table for `𝔰ᵢ + d𝔣` on the rational elliptic surface with the
/// coefficients of `f0`, and the genus-1 fiber table, both for degrees
/// in `[−N, N]` where `N` is the order of `f0`.
pub fn p9_tables(section: usize, f0: &PowerSeries) -> Result<(GwTable, GwTable), SeriesError> {
    let x = SurfaceData::rational_elliptic();
    let n = f0.order() as i64;
    let mut gw0 = GwTable::new();
    let mut gw1 = GwTable::new();
    for d in -n..=n {
        let a = x.section_class(section, d)?;
        if d >= 0 {
            gw0.insert(0, a, &pt_tag(0), f0.coeffs()[d as usize].clone());
        } else {
            gw0.insert_vanishing(0, a, &pt_tag(0), NEGATIVE_DEGREE);
        }
        if d > 0 {
            gw1.insert(1, x.fiber_class(d), &pt_tag(0), p9_genus1_fiber(d)?);
        } else if d < 0 {
            gw1.insert_vanishing(1, x.fiber_class(d), &pt_tag(0), NEGATIVE_DEGREE);
        }
    }
    Ok((gw0, gw1))
}

/// `Σ_d GW_{1,𝔰ᵢ+d𝔣}(τ₁[𝔣]) q^d` evaluated term by term through the recursion.
pub fn p9_h_via_trr(section: usize, f0: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let x = SurfaceData::rational_elliptic();
    let (gw0, gw1) = p9_tables(section, f0)?;
    let coeffs = (0..=f0.order() as i64)
        .map(|d| trr_genus1(&x, &x.section_class(section, d)?, x.fiber(), &gw0, &gw1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PowerSeries::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gw_series::{f0_from_ode, g_series, h_from_trr};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(p1t2_genus1_fiber(1).unwrap(), q(2, 1));
        assert_eq!(p1t2_genus1_fiber(2).unwrap(), q(3, 1));
        assert!(p1t2_genus1_fiber(0).is_err());
        assert_eq!(p1t2_relative_section(0).unwrap(), q(0, 1));
        assert_eq!(p1t2_relative_section(1).unwrap(), q(1, 1));
        assert_eq!(p1t2_relative_section(3).unwrap(), q(12, 1));
        assert_eq!(p9_genus1_fiber(1).unwrap(), q(1, 1));
        assert_eq!(p9_genus1_fiber(4).unwrap(), q(7, 4));
        for d in 1..=50 {
            assert_eq!(p9_genus1_fiber(d).unwrap(), p1t2_genus1_fiber(d).unwrap() / q(2, 1));
        }
    }

    #[test]
    fn fiber_generating_function() {
        let n = 30;
        let s = PowerSeries::from_fn(n, |d| {
            if d == 0 {
                q(0, 1)
            } else {
                p1t2_genus1_fiber(d as i64).unwrap() * q(d as i64, 1)
            }
        });
        assert_eq!(s, g_series(n).scale(&q(2, 1)));
    }

    #[test]
    fn zero_class() {
        let x = SurfaceData::rational_elliptic();
        assert_eq!(gw1_zero_class(&x, &[0; 10]).unwrap(), q(0, 1));
        assert_eq!(gw1_zero_class(&x, x.fiber()).unwrap(), q(0, 1));
        assert_eq!(gw1_zero_class(&x, x.section(0).unwrap()).unwrap(), q(-1, 24));
        let y = SurfaceData::p1_t2();
        assert_eq!(gw1_zero_class(&y, &[1, 0]).unwrap(), q(-1, 12));
    }

    #[test]
    fn p1t2_sections_match_closed_form() {
        assert_eq!(p1t2_trr_section(0).unwrap(), q(-1, 12));
        assert_eq!(p1t2_trr_section(2).unwrap(), q(6, 1));
        for d in 0..=30 {
            assert_eq!(p1t2_trr_section(d).unwrap(), p1t2_genus1_section_closed(d).unwrap());
        }
    }

    #[test]
    fn p9_generating_function() {
        let f0 = f0_from_ode(20);
        let h = p9_h_via_trr(3, &f0).unwrap();
        assert_eq!(h, h_from_trr(&f0, &g_series(20)));
    }

    #[test]
    fn leading_term_only() {
        let x = SurfaceData::p1_t2();
        let (gw0, _) = p1t2_tables(5);
        let mut gw1 = GwTable::new();
        for d in -5..=5 {
            if d != 0 {
                gw1.insert(1, x.fiber_class(d), &pt_tag(0), q(0, 1));
            }
        }
        let v = trr_genus1(&x, &[1, 0], x.fiber(), &gw0, &gw1).unwrap();
        assert_eq!(v, q(1, 24) * q(-2, 1));
        assert_eq!(trr_genus1(&x, &[1, 3], x.fiber(), &gw0, &gw1).unwrap(), q(0, 1));
    }

    #[test]
    fn missing_entries_are_errors() {
        let x = SurfaceData::p1_t2();
        let (gw0, gw1) = p1t2_tables(2);
        // degree 4 needs the genus-1 fiber class 4𝔣, which is not tabulated
        assert!(matches!(
            trr_genus1(&x, &[1, 4], x.fiber(), &gw0, &gw1),
            Err(SeriesError::MissingEntry { .. })
        ));
        let empty = GwTable::new();
        assert!(trr_genus1(&x, &[1, 0], x.fiber(), &empty, &gw1).is_err());
        assert!(matches!(
            trr_genus1(&x, &[0, 1], x.fiber(), &gw0, &gw1),
            Err(SeriesError::NotNegativeOnCanonical { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
