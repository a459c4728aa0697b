use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{CoverError, CoverSpec};
use crate::lattice::{
    solve_linear, span_contains, vec_add, vec_sub, ColumnEchelon, ContactVector, IntMatrix,
    LatticeError, QuotientModule,
};

/// The seven submodules fixing a convolution product.
///
/// Ambient lattices, with `n′, n, n″` the ranks of `H_1(V′), H_1(V), H_1(V″)`:
/// `h1, h2 ⊂ Z^n`, `obu_h12 ⊂ Z^{2n}`, `ori_h12 ⊂ Z^{n′+n″}`,
/// `wt_h1 ⊂ Z^{n′+n}`, `wt_h2 ⊂ Z^{n+n″}`, `wt_h12 ⊂ Z^{n′+2n+n″}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionModules {
    pub h1: IntMatrix,
    pub h2: IntMatrix,
    pub obu_h12: IntMatrix,
    pub ori_h12: IntMatrix,
    pub wt_h1: IntMatrix,
    pub wt_h2: IntMatrix,
    pub wt_h12: IntMatrix,
}

/// First failing inclusion among the conditions on a convolution spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionViolation {
    SumInObu,
    DiagonalInObu,
    WtSumInWt12,
    DiagonalInWt12,
    OriContainsKernel,
    ProjectWt1,
    ProjectWt2,
    ProjectWt12,
}

impl fmt::Display for ConvolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::SumInObu => "H1 ⊕ H2 ⊆ obu-H12",
            Self::DiagonalInObu => "diagonal ⊆ obu-H12",
            Self::WtSumInWt12 => "wt-H1 ⊕ wt-H2 ⊆ wt-H12",
            Self::DiagonalInWt12 => "0 ⊕ diagonal ⊕ 0 ⊆ wt-H12",
            Self::OriContainsKernel => "wt-H12 ∩ ker π_V ⊆ ori-H12",
            Self::ProjectWt1 => "π_V(wt-H1) ⊆ H1",
            Self::ProjectWt2 => "π_V(wt-H2) ⊆ H2",
            Self::ProjectWt12 => "obu-H12 ⊆ π_V(wt-H12)",
        };
        f.write_str(s)
    }
}

/// Data of a convolution `(V′ ∪ V) * (V ∪ V″) → V′ ∪ V″`.
#[derive(Clone, Debug)]
pub struct ConvolutionSpec {
    s_prime: ContactVector,
    s: ContactVector,
    s_dprime: ContactVector,
    modules: ConvolutionModules,
    x_cover: CoverSpec,
    y_cover: CoverSpec,
    out_cover: CoverSpec,
    obu: Arc<QuotientModule>,
    lift_kernel: IntMatrix,
}

/// A point of the fiber product over `V`: coset indices of both sides, the
/// `V`-twist difference `γ`, and the twists on `V′` and `V″`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionInput {
    pub j1: usize,
    pub j2: usize,
    pub gamma: Vec<BigInt>,
    pub twist_prime: Vec<BigInt>,
    pub twist_dprime: Vec<BigInt>,
}

/// Coset index and rep on `V′ ∪ V″`, with the twist reduced mod `(ori-H₁₂)_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionOutput {
    pub index: usize,
    pub rep: Vec<BigInt>,
    pub twist: Vec<BigInt>,
}

fn check_rows(m: &IntMatrix, rows: usize) -> Result<(), CoverError> {
    if m.rows() == rows {
        Ok(())
    } else {
        Err(LatticeError::DimensionMismatch {
            expected: rows,
            got: m.rows(),
        }
        .into())
    }
}

impl ConvolutionSpec {
    pub fn new(
        s_prime: ContactVector,
        s: ContactVector,
        s_dprime: ContactVector,
        modules: ConvolutionModules,
    ) -> Result<Self, CoverError> {
        let (np, n, npp) = (
            s_prime.ambient_rank(),
            s.ambient_rank(),
            s_dprime.ambient_rank(),
        );
        let m = &modules;
        check_rows(&m.h1, n)?;
        check_rows(&m.h2, n)?;
        check_rows(&m.obu_h12, 2 * n)?;
        check_rows(&m.ori_h12, np + npp)?;
        check_rows(&m.wt_h1, np + n)?;
        check_rows(&m.wt_h2, n + npp)?;
        check_rows(&m.wt_h12, np + 2 * n + npp)?;
        let x_cover = CoverSpec::new(s_prime.concat(&s), m.wt_h1.clone())?;
        let y_cover = CoverSpec::new(s.concat(&s_dprime), m.wt_h2.clone())?;
        let out_cover = CoverSpec::new(s_prime.concat(&s_dprime), m.ori_h12.clone())?;
        let obu = Arc::new(QuotientModule::new(2 * n, m.obu_h12.clone())?);
        let lift_kernel = ColumnEchelon::new(&m.wt_h12.row_block(np, np + 2 * n)).kernel();
        Ok(ConvolutionSpec {
            s_prime,
            s,
            s_dprime,
            modules,
            x_cover,
            y_cover,
            out_cover,
            obu,
            lift_kernel,
        })
    }

    /// Example with `V′ = ∅`, `V = V″ = T²`, `H₁ = 0`, `H₂ = H_1(T²)`,
    /// `wt-H₂` the diagonal and `wt-H₁₂ = {(0, α, α+β, β)}`.
    pub fn torus_example(s1: Vec<i64>, s2: Vec<i64>) -> Result<Self, CoverError> {
        let none = ContactVector::new(vec![], vec![])?;
        let s = ContactVector::connected(s1, 2)?;
        let s_dprime = ContactVector::connected(s2, 2)?;
        let id = IntMatrix::identity(2);
        let z = IntMatrix::zeros(2, 2);
        let diag = id.vcat(&id)?;
        let wt_h12 = id.vcat(&id)?.vcat(&z)?.hcat(&z.vcat(&id)?.vcat(&id)?)?;
        let modules = ConvolutionModules {
            h1: IntMatrix::zeros(2, 0),
            h2: id.clone(),
            obu_h12: IntMatrix::identity(4),
            ori_h12: IntMatrix::zeros(2, 0),
            wt_h1: IntMatrix::zeros(2, 0),
            wt_h2: diag,
            wt_h12,
        };
        Self::new(none, s, s_dprime, modules)
    }

    pub fn modules(&self) -> &ConvolutionModules {
        &self.modules
    }

    pub fn contacts(&self) -> (&ContactVector, &ContactVector, &ContactVector) {
        (&self.s_prime, &self.s, &self.s_dprime)
    }

    /// Cover over `V′ ∪ V` for `wt-H₁`.
    pub fn x_cover(&self) -> &CoverSpec {
        &self.x_cover
    }

    /// Cover over `V ∪ V″` for `wt-H₂`.
    pub fn y_cover(&self) -> &CoverSpec {
        &self.y_cover
    }

    /// Cover over `V′ ∪ V″` for `ori-H₁₂`.
    pub fn out_cover(&self) -> &CoverSpec {
        &self.out_cover
    }

    /// Rank of the freedom in lifting `h̄` into `wt-H₁₂`.
    pub fn lift_kernel_rank(&self) -> usize {
        self.lift_kernel.cols()
    }

    fn ranks(&self) -> (usize, usize, usize) {
        (
            self.s_prime.ambient_rank(),
            self.s.ambient_rank(),
            self.s_dprime.ambient_rank(),
        )
    }

    fn twist_ranks(&self) -> (usize, usize, usize) {
        (
            self.s_prime.domain_rank(),
            self.s.domain_rank(),
            self.s_dprime.domain_rank(),
        )
    }
}

/// Checks every inclusion required of the submodules, in a fixed order.
pub fn validate_convolution_spec(cs: &ConvolutionSpec) -> Result<(), ConvolutionViolation> {
    let m = &cs.modules;
    let (np, n, npp) = cs.ranks();
    let id = IntMatrix::identity(n);
    let diag = id.vcat(&id).expect("same width");
    let holds = |sup: &IntMatrix, sub: &IntMatrix| span_contains(sup, sub).expect("same rows");

    if !holds(&m.obu_h12, &m.h1.block_diag(&m.h2)) {
        return Err(ConvolutionViolation::SumInObu);
    }
    if !holds(&m.obu_h12, &diag) {
        return Err(ConvolutionViolation::DiagonalInObu);
    }
    if !holds(&m.wt_h12, &m.wt_h1.block_diag(&m.wt_h2)) {
        return Err(ConvolutionViolation::WtSumInWt12);
    }
    let padded = IntMatrix::zeros(np, n)
        .vcat(&diag)
        .and_then(|m| m.vcat(&IntMatrix::zeros(npp, n)))
        .expect("same width");
    if !holds(&m.wt_h12, &padded) {
        return Err(ConvolutionViolation::DiagonalInWt12);
    }
    // wt-H12 ∩ ker π_V, pushed to V′ ⊕ V″
    let mid = m.wt_h12.row_block(np, np + 2 * n);
    let k = ColumnEchelon::new(&mid).kernel();
    let inter = m.wt_h12.mul(&k).expect("shapes agree");
    let outer = inter
        .row_block(0, np)
        .vcat(&inter.row_block(np + 2 * n, np + 2 * n + npp))
        .expect("same width");
    if !holds(&m.ori_h12, &outer) {
        return Err(ConvolutionViolation::OriContainsKernel);
    }
    if !holds(&m.h1, &m.wt_h1.row_block(np, np + n)) {
        return Err(ConvolutionViolation::ProjectWt1);
    }
    if !holds(&m.h2, &m.wt_h2.row_block(0, n)) {
        return Err(ConvolutionViolation::ProjectWt2);
    }
    if !holds(&mid, &m.obu_h12) {
        return Err(ConvolutionViolation::ProjectWt12);
    }
    Ok(())
}

impl ConvolutionSpec {
    /// The convolution map on coset data.
    pub fn convolve(&self, input: &ConvolutionInput) -> Result<ConvolutionOutput, CoverError> {
        self.convolve_with_lift_shift(input, &vec![BigInt::from(0); self.lift_kernel_rank()])
    }

    /// As [`convolve`](Self::convolve), with the lift of `h̄` into `wt-H₁₂`
    /// moved by `shift` (coordinates in a basis of the lift kernel).
    pub fn convolve_with_lift_shift(
        &self,
        input: &ConvolutionInput,
        shift: &[BigInt],
    ) -> Result<ConvolutionOutput, CoverError> {
        validate_convolution_spec(self).map_err(CoverError::InvalidConvolutionSpec)?;
        let (np, n, npp) = self.ranks();
        let (dp, d, dpp) = self.twist_ranks();
        let dims = [
            (input.gamma.len(), d),
            (input.twist_prime.len(), dp),
            (input.twist_dprime.len(), dpp),
            (shift.len(), self.lift_kernel_rank()),
        ];
        for (got, expected) in dims {
            if got != expected {
                return Err(LatticeError::DimensionMismatch { expected, got }.into());
            }
        }
        let x_rep = self.x_cover.check_index(input.j1)?;
        let y_rep = self.y_cover.check_index(input.j2)?;
        let out_cs = self.out_cover.require_cosets()?;

        // (γ_{1;j₁} + Φ_s(γ), γ_{2;j₂}) = γ̄ + h̄
        let phi_s = crate::lattice::phi_map(&self.s);
        let mut u = vec_add(&x_rep[np..], &phi_s.apply(&input.gamma)?);
        u.extend_from_slice(&y_rep[..n]);
        let obu_gamma = self.obu.normal_form(&u)?;
        let obu_h = vec_sub(&u, &obu_gamma);

        // lift h̄ to (h′, h̄, h″) ∈ wt-H₁₂
        let wt = &self.modules.wt_h12;
        let mid = wt.row_block(np, np + 2 * n);
        let sol = solve_linear(&mid, &obu_h).map_err(|_| {
            CoverError::InvalidConvolutionSpec(ConvolutionViolation::ProjectWt12)
        })?;
        let c = vec_add(&sol.particular, &self.lift_kernel.mul_vec(shift)?);
        let h_prime = wt.row_block(0, np).mul_vec(&c)?;
        let h_dprime = wt.row_block(np + 2 * n, np + 2 * n + npp).mul_vec(&c)?;

        // (γ′_{j₁} − h′, γ″_{j₂} − h″) = γ_out + Φ_W(τ) + ori-h
        let mut rhs = vec_sub(&x_rep[..np], &h_prime);
        rhs.extend(vec_sub(&y_rep[n..], &h_dprime));
        let index = out_cs.index_of(&rhs)?;
        let rep = out_cs.rep(index)?;
        let system = self.out_cover.phi().matrix().hcat(&self.modules.ori_h12)?;
        let tau = solve_linear(&system, &vec_sub(&rhs, &rep))?.particular;

        let mut twist = vec_add(&input.twist_prime, &tau[..dp]);
        twist.extend(vec_add(&input.twist_dprime, &tau[dp..dp + dpp]));
        let twist = self.out_cover.twist_quotient().normal_form(&twist)?;
        Ok(ConvolutionOutput { index, rep, twist })
    }
}
