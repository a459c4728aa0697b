//! The cover `ℂ × T_s^{2(ℓ−1)} → T^{2ℓ}` of a torus divisor with `H = 0`,
//! modelled over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::CoverError;

pub type QVec2 = [BigRational; 2];

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn frac2(v: &QVec2) -> QVec2 {
    [frac(&v[0]), frac(&v[1])]
}

fn add2(a: &QVec2, b: &QVec2) -> QVec2 {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

fn sub2(a: &QVec2, b: &QVec2) -> QVec2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn scale2(a: &QVec2, c: &BigRational) -> QVec2 {
    [&a[0] * c, &a[1] * c]
}

fn zero2() -> QVec2 {
    [BigRational::zero(), BigRational::zero()]
}

fn int2(v: &[BigInt]) -> QVec2 {
    [
        BigRational::from_integer(v[0].clone()),
        BigRational::from_integer(v[1].clone()),
    ]
}

fn ratio(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

/// `(z, [z_i])` with each `z_i` stored reduced into `[0,1)²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusCoverPoint {
    pub z: QVec2,
    pub zs: Vec<QVec2>,
}

impl TorusCoverPoint {
    pub fn new(z: QVec2, zs: Vec<QVec2>) -> Self {
        TorusCoverPoint {
            z,
            zs: zs.iter().map(frac2).collect(),
        }
    }

    pub fn origin(ell: usize) -> Self {
        Self::new(zero2(), vec![zero2(); ell])
    }

    /// `Σ s_i z_i ∈ Z²`.
    pub fn satisfies_constraint(&self, s: &[i64]) -> bool {
        if s.len() != self.zs.len() {
            return false;
        }
        let sum = self
            .zs
            .iter()
            .zip(s)
            .fold(zero2(), |acc, (zi, &si)| add2(&acc, &scale2(zi, &ratio(si))));
        sum.iter().all(|x| x.is_integer())
    }
}

fn ell_of(s: &[i64]) -> Result<BigRational, CoverError> {
    if s.is_empty() || s.contains(&0) {
        return Err(CoverError::NotATorusModel);
    }
    Ok(ratio(s.len() as i64))
}

/// Shift by `η ∈ Z²`: `z + η/ℓ`, `z_i + η/(ℓ s_i)`.
pub fn torus_translate(s: &[i64], p: &TorusCoverPoint, eta: &[BigInt]) -> Result<TorusCoverPoint, CoverError> {
    let ell = ell_of(s)?;
    if p.zs.len() != s.len() {
        return Err(CoverError::NotATorusModel);
    }
    let e = int2(eta);
    let z = add2(&p.z, &scale2(&e, &ell.recip()));
    let zs = p
        .zs
        .iter()
        .zip(s)
        .map(|(zi, &si)| add2(zi, &scale2(&e, &(&ell * ratio(si)).recip())))
        .collect();
    Ok(TorusCoverPoint::new(z, zs))
}

/// Base point of the component labelled by `γ_j`: `(γ_j/ℓ, [γ_j/(ℓ s_i)])`.
pub fn torus_lift_base(s: &[i64], gamma_j: &[BigInt]) -> Result<TorusCoverPoint, CoverError> {
    torus_translate(s, &TorusCoverPoint::origin(s.len()), gamma_j)
}

/// The lift of a base point `b ∈ T^{2ℓ}` with `Σ s_i z_i = 0`.
pub fn torus_lift(s: &[i64], base: &[QVec2]) -> Result<TorusCoverPoint, CoverError> {
    let ell = ell_of(s)?;
    if base.len() != s.len() {
        return Err(CoverError::NotATorusModel);
    }
    let w = base
        .iter()
        .zip(s)
        .fold(zero2(), |acc, (b, &si)| add2(&acc, &scale2(b, &ratio(si))));
    let z = scale2(&w, &-ell.recip());
    let zs = base
        .iter()
        .zip(s)
        .map(|(b, &si)| sub2(b, &scale2(&w, &(&ell * ratio(si)).recip())))
        .collect();
    Ok(TorusCoverPoint::new(z, zs))
}

/// `(z, [z_i]) ↦ [z_i − z/s_i]`.
pub fn torus_cover_project(s: &[i64], p: &TorusCoverPoint) -> Result<Vec<QVec2>, CoverError> {
    ell_of(s)?;
    if !p.satisfies_constraint(s) {
        return Err(CoverError::ConstraintViolation);
    }
    Ok(p.zs
        .iter()
        .zip(s)
        .map(|(zi, &si)| frac2(&sub2(zi, &scale2(&p.z, &ratio(si).recip()))))
        .collect())
}

/// Action of `(γ_i) ∈ H_1(T²)^ℓ` through `Σ s_i γ_i`.
pub fn torus_deck_apply(s: &[i64], gammas: &[Vec<BigInt>], p: &TorusCoverPoint) -> Result<TorusCoverPoint, CoverError> {
    if gammas.len() != s.len() {
        return Err(CoverError::NotATorusModel);
    }
    let mut eta = vec![BigInt::zero(), BigInt::zero()];
    for (g, &si) in gammas.iter().zip(s) {
        eta[0] += &g[0] * si;
        eta[1] += &g[1] * si;
    }
    torus_translate(s, p, &eta)
}

/// Render a symbolic point `(γ_j, twist)` over the base `b`.
pub fn torus_render(
    s: &[i64],
    rep: &[BigInt],
    twist: &[BigInt],
    base: &[QVec2],
) -> Result<TorusCoverPoint, CoverError> {
    let mut eta = rep.to_vec();
    for (i, &si) in s.iter().enumerate() {
        eta[0] += &twist[2 * i] * si;
        eta[1] += &twist[2 * i + 1] * si;
    }
    torus_translate(s, &torus_lift(s, base)?, &eta)
}

/// `ℓ(z₁ − z₂)` for two points over one base point.
pub fn torus_psi(s: &[i64], p1: &TorusCoverPoint, p2: &TorusCoverPoint) -> Result<Vec<BigInt>, CoverError> {
    let ell = ell_of(s)?;
    if torus_cover_project(s, p1)? != torus_cover_project(s, p2)? {
        return Err(CoverError::NotOnFiber);
    }
    let d = scale2(&sub2(&p1.z, &p2.z), &ell);
    if !d.iter().all(|x| x.is_integer()) {
        return Err(CoverError::NotOnFiber);
    }
    Ok(d.iter().map(|x| x.to_integer()).collect())
}

/// Convolution of an `s₁`-point `x` with a point `y` of the cover for the
/// merged tuple `(s₁, −s₂)`; the result lies over `s₂`.
pub fn torus_convolve(
    s1: &[i64],
    s2: &[i64],
    x: &TorusCoverPoint,
    y: &TorusCoverPoint,
) -> Result<TorusCoverPoint, CoverError> {
    torus_convolve_signed(s1, s2, x, y, false)
}

pub(crate) fn torus_convolve_signed(
    s1: &[i64],
    s2: &[i64],
    x: &TorusCoverPoint,
    y: &TorusCoverPoint,
    corrupt: bool,
) -> Result<TorusCoverPoint, CoverError> {
    let (l1, l2) = (s1.len(), s2.len());
    ell_of(s1)?;
    let l2q = ell_of(s2)?;
    let merged: Vec<i64> = s1.iter().copied().chain(s2.iter().map(|&v| -v)).collect();
    let bx = torus_cover_project(s1, x)?;
    let by = torus_cover_project(&merged, y)?;
    if bx[..] != by[..l1] {
        return Err(CoverError::NotOnFiber);
    }
    let ell = ratio((l1 + l2) as i64);
    let ly = scale2(&y.z, &ell);
    let lx = scale2(&x.z, &ratio(l1 as i64));
    let num = if corrupt { add2(&lx, &ly) } else { sub2(&lx, &ly) };
    let z = scale2(&num, &l2q.recip());
    let zs = y.zs[l1..]
        .iter()
        .zip(s2)
        .map(|(w, &si)| {
            let inv = ratio(si).recip();
            add2(&add2(w, &scale2(&y.z, &inv)), &scale2(&z, &inv))
        })
        .collect();
    Ok(TorusCoverPoint::new(z, zs))
}
