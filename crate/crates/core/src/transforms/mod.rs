//! The space-time Fourier transform family.
//!
//! Every transform here has the shape
//!
//! ```text
//! out(v) = s · Σ_u exp(e_t θ_t(u_t, v_t)) · f(u) · exp(i_3 (Σ_k θ_k(u_k, v_k) + φ)) · ΔU
//! ```
//!
//! with per-axis quadratic phases `θ(u, v) = α u² + β v² + γ u v`. A [`Kernel`]
//! records those numbers; [`Path::Direct`] evaluates the sum as written and
//! [`Path::Fast`] factors it into chirps and DFTs on conjugate lattices.

mod degenerate;
mod direct;
pub(crate) mod fast;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{
    conjugate_grid, conjugate_grid_scaled, Domain, Field, FrequencyGrid, Grid, SpaceTimeGrid,
    SpaceTimeSignal, Spectrum,
};

pub use direct::apply_direct;
pub use fast::apply_fast;

/// Determinant tolerance used by [`LcParams::new`].
pub const DET_TOLERANCE: f64 = 1e-12;

/// The matrix `(a, b; c, d)` with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LcParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LcParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_tolerance(a, b, c, d, DET_TOLERANCE)
    }

    pub fn with_tolerance(a: f64, b: f64, c: f64, d: f64, tol: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let defect = a * d - b * c - 1.0;
        if defect.abs() > tol {
            return Err(Error::Domain(format!(
                "ad - bc = {} for ({a}, {b}; {c}, {d}); defect {defect:.3e} exceeds {tol:e}",
                a * d - b * c
            )));
        }
        Ok(Self { a, b, c, d })
    }

    /// `(0, 1; −1, 0)`: the plain Fourier kernel.
    pub fn fourier() -> Self {
        Self { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `(cos α, sin α; −sin α, cos α)`.
    pub fn rotation(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn require_b(&self, what: &str) -> Result<()> {
        if self.b == 0.0 {
            Err(Error::Unsupported(format!(
                "{what} needs b != 0; b = 0 is the pointwise map lcst handles on the direct path"
            )))
        } else {
            Ok(())
        }
    }
}

/// Matrices for the temporal (`m1`) and spatial (`m2`) kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSidedParams {
    pub m1: LcParams,
    pub m2: LcParams,
}

impl TwoSidedParams {
    pub fn new(m1: LcParams, m2: LcParams) -> Result<Self> {
        let p = Self { m1, m2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m1.b == 0.0 || self.m2.b == 0.0 {
            return Err(Error::Unsupported(format!(
                "two-sided transform needs B1 != 0 and B2 != 0, got B1 = {}, B2 = {}",
                self.m1.b, self.m2.b
            )));
        }
        Ok(())
    }
}

/// Fractional angle with `sin α > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrParams {
    pub alpha: f64,
}

impl FrParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha.sin() <= 1e-12 {
            return Err(Error::Domain(format!("fractional angle needs sin α > 0, got α = {alpha}")));
        }
        Ok(Self { alpha })
    }
}

/// Which normalizing constants to use where the literature's constants do
/// not invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantsMode {
    /// Constants under which forward and inverse compose to the identity.
    #[default]
    Corrected,
    /// Constants exactly as printed: `(2πB₂)^{-1/2}` on the two-sided spatial
    /// kernel, `(csc α)^{3/2}` on the fractional kernel.
    Verbatim,
}

impl std::str::FromStr for ConstantsMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" | "unitary" => Ok(Self::Corrected),
            "verbatim" => Ok(Self::Verbatim),
            _ => Err(Error::Domain(format!("unknown constants mode `{s}`"))),
        }
    }
}

/// Evaluation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    Direct,
    Fast,
}

impl std::str::FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "fast" => Ok(Self::Fast),
            _ => Err(Error::Domain(format!("unknown path `{s}`"))),
        }
    }
}

/// `θ(u, v) = α u² + β v² + γ u v` with `u` the input and `v` the output coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisPhase {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AxisPhase {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub const fn coupling(gamma: f64) -> Self {
        Self { alpha: 0.0, beta: 0.0, gamma }
    }

    #[inline]
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.alpha * u * u + self.beta * v * v + self.gamma * u * v
    }

    /// The conjugate phase read in the opposite direction.
    pub fn inverse(&self) -> Self {
        Self { alpha: -self.beta, beta: -self.alpha, gamma: -self.gamma }
    }

    fn scaled(&self, s: f64) -> Self {
        Self { alpha: s * self.alpha, beta: s * self.beta, gamma: s * self.gamma }
    }
}

/// A separable transform kernel (see the module docs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub time: AxisPhase,
    pub space: [AxisPhase; 3],
    /// Constant phase of the right `i_3` factor.
    pub phase: f64,
    /// Real prefactor, excluding the quadrature weight.
    pub scale: f64,
}

impl Kernel {
    pub fn apply<D: Domain, E: Domain>(
        &self,
        f: &Field<D>,
        out: &Grid<E>,
        path: Path,
    ) -> Result<Field<E>> {
        match path {
            Path::Direct => Ok(apply_direct(self, f, out)),
            Path::Fast => apply_fast(self, f, out),
        }
    }

    /// Output lattice on which this kernel is a DFT of `input`.
    pub fn conjugate_of<D: Domain, E: Domain>(&self, input: &Grid<D>) -> Result<Grid<E>> {
        let n = input.dims();
        let du = input.spacing();
        let gammas = self.gammas();
        let mut spacing = [0.0; 4];
        for k in 0..4 {
            if gammas[k] == 0.0 {
                return Err(Error::Unsupported(format!(
                    "axis {k} has no u·v coupling; there is no conjugate lattice"
                )));
            }
            spacing[k] = TAU / (gammas[k].abs() * du[k] * n[k] as f64);
        }
        Grid::centered(n, spacing)
    }

    fn gammas(&self) -> [f64; 4] {
        [self.time.gamma, self.space[0].gamma, self.space[1].gamma, self.space[2].gamma]
    }

    fn same_space(p: AxisPhase) -> [AxisPhase; 3] {
        [p; 3]
    }
}

fn pow_neg_half(x: f64) -> f64 {
    1.0 / x.sqrt()
}

fn pow_neg_three_halves(x: f64) -> f64 {
    1.0 / (x * x.sqrt())
}

/// Kernel of the forward SFT: `exp(−e_t w_t t) · f · exp(−i_3 x̲·w̲)`.
pub fn sft_kernel() -> Kernel {
    Kernel {
        time: AxisPhase::coupling(-1.0),
        space: Kernel::same_space(AxisPhase::coupling(-1.0)),
        phase: 0.0,
        scale: 1.0,
    }
}

/// Kernel of the inverse SFT, prefactor `(2π)^{-4}`.
pub fn isft_kernel() -> Kernel {
    Kernel {
        time: AxisPhase::coupling(1.0),
        space: Kernel::same_space(AxisPhase::coupling(1.0)),
        phase: 0.0,
        scale: TAU.powi(-4),
    }
}

/// Right phase of the LCST kernel for `b ≠ 0`.
fn lcst_space_phase(p: &LcParams) -> AxisPhase {
    AxisPhase::new(p.a / (2.0 * p.b), p.d / (2.0 * p.b), -1.0 / p.b)
}

/// Forward LCST, prefactor `(2π|b|)^{-3/2}`.
pub fn lcst_kernel(p: &LcParams) -> Result<Kernel> {
    p.require_b("the LCST kernel")?;
    Ok(Kernel {
        time: AxisPhase::coupling(-1.0),
        space: Kernel::same_space(lcst_space_phase(p)),
        phase: 0.0,
        scale: pow_neg_three_halves(TAU * p.b.abs()),
    })
}

/// Inverse LCST: `(1/2π)` times the conjugated forward kernel.
pub fn ilcst_kernel(p: &LcParams) -> Result<Kernel> {
    let fwd = lcst_kernel(p)?;
    Ok(Kernel {
        time: AxisPhase::coupling(1.0),
        space: fwd.space.map(|s| s.inverse()),
        phase: 0.0,
        scale: fwd.scale / TAU,
    })
}

fn frsft_space(p: &FrParams) -> (AxisPhase, f64) {
    let (s, c) = p.alpha.sin_cos();
    let cot = c / s;
    (AxisPhase::new(cot / 2.0, cot / 2.0, -1.0 / s), (2.0 * p.alpha - PI) / 4.0)
}

/// Forward FrSFT. Verbatim prefactor `(csc α)^{3/2}`; corrected prefactor
/// `(2π sin α)^{-3/2}`, the LCST normalization at the rotation matrix.
pub fn frsft_kernel(p: &FrParams, mode: ConstantsMode) -> Kernel {
    let (space, phase) = frsft_space(p);
    let s = p.alpha.sin();
    let scale = match mode {
        ConstantsMode::Verbatim => pow_neg_three_halves(s),
        ConstantsMode::Corrected => pow_neg_three_halves(TAU * s),
    };
    Kernel { time: AxisPhase::coupling(-1.0), space: Kernel::same_space(space), phase, scale }
}

/// Inverse FrSFT. Verbatim: `(csc α)^{3/2}/(2π)⁴` times the conjugated
/// kernel (which carries its own `(csc α)^{3/2}`).
pub fn ifrsft_kernel(p: &FrParams, mode: ConstantsMode) -> Kernel {
    let fwd = frsft_kernel(p, mode);
    let scale = match mode {
        ConstantsMode::Verbatim => fwd.scale * fwd.scale * TAU.powi(-4),
        ConstantsMode::Corrected => fwd.scale / TAU,
    };
    Kernel {
        time: AxisPhase::coupling(1.0),
        space: fwd.space.map(|s| s.inverse()),
        phase: -fwd.phase,
        scale,
    }
}

/// Prefactor of the two-sided spatial kernel.
pub fn two_sided_space_constant(b2: f64, mode: ConstantsMode) -> f64 {
    match mode {
        ConstantsMode::Corrected => pow_neg_three_halves(TAU * b2.abs()),
        ConstantsMode::Verbatim => pow_neg_half(TAU * b2.abs()),
    }
}

/// Forward two-sided LCST.
pub fn two_sided_kernel(p: &TwoSidedParams, mode: ConstantsMode) -> Result<Kernel> {
    p.validate()?;
    let m1 = &p.m1;
    Ok(Kernel {
        time: AxisPhase::new(m1.a / (2.0 * m1.b), m1.d / (2.0 * m1.b), -1.0 / m1.b),
        space: Kernel::same_space(lcst_space_phase(&p.m2)),
        phase: 0.0,
        scale: pow_neg_half(TAU * m1.b.abs()) * two_sided_space_constant(p.m2.b, mode),
    })
}

/// Inverse two-sided LCST: both kernels conjugated, no extra prefactor.
pub fn two_sided_inverse_kernel(p: &TwoSidedParams, mode: ConstantsMode) -> Result<Kernel> {
    let fwd = two_sided_kernel(p, mode)?;
    Ok(Kernel {
        time: fwd.time.inverse(),
        space: fwd.space.map(|s| s.inverse()),
        phase: 0.0,
        scale: fwd.scale,
    })
}

/// One member of the transform family with its constants mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Transform {
    Sft,
    Frsft { params: FrParams, mode: ConstantsMode },
    Lcst { params: LcParams },
    #[serde(rename = "lcst2")]
    TwoSided { params: TwoSidedParams, mode: ConstantsMode },
}

impl Transform {
    pub fn forward_kernel(&self) -> Result<Kernel> {
        match self {
            Self::Sft => Ok(sft_kernel()),
            Self::Frsft { params, mode } => Ok(frsft_kernel(params, *mode)),
            Self::Lcst { params } => lcst_kernel(params),
            Self::TwoSided { params, mode } => two_sided_kernel(params, *mode),
        }
    }

    pub fn inverse_kernel(&self) -> Result<Kernel> {
        match self {
            Self::Sft => Ok(isft_kernel()),
            Self::Frsft { params, mode } => Ok(ifrsft_kernel(params, *mode)),
            Self::Lcst { params } => ilcst_kernel(params),
            Self::TwoSided { params, mode } => two_sided_inverse_kernel(params, *mode),
        }
    }

    /// The canonical frequency lattice for `g`.
    pub fn conjugate_grid(&self, g: &SpaceTimeGrid) -> Result<FrequencyGrid> {
        match self {
            Self::Sft => conjugate_grid(g, 1.0),
            Self::Frsft { params, .. } => conjugate_grid(g, params.alpha.sin()),
            Self::Lcst { params } => conjugate_grid(g, params.b),
            Self::TwoSided { params, .. } => {
                params.validate()?;
                conjugate_grid_scaled(g, params.m1.b, params.m2.b)
            }
        }
    }

    pub fn forward(&self, f: &SpaceTimeSignal, wg: &FrequencyGrid, path: Path) -> Result<Spectrum> {
        if let Self::Lcst { params } = self {
            if params.b == 0.0 {
                return match path {
                    Path::Direct => degenerate::lcst_b_zero(f, params, wg),
                    Path::Fast => Err(Error::Unsupported(
                        "b = 0 is a pointwise map with no DFT structure; use the direct path".into(),
                    )),
                };
            }
        }
        self.forward_kernel()?.apply(f, wg, path)
    }

    pub fn inverse(&self, s: &Spectrum, xg: &SpaceTimeGrid, path: Path) -> Result<SpaceTimeSignal> {
        if let Self::Lcst { params } = self {
            params.require_b("the inverse LCST")?;
        }
        self.inverse_kernel()?.apply(s, xg, path)
    }

    /// Forward transform onto the conjugate lattice.
    pub fn forward_conjugate(&self, f: &SpaceTimeSignal, path: Path) -> Result<Spectrum> {
        let wg = self.conjugate_grid(f.grid())?;
        self.forward(f, &wg, path)
    }
}

/// SFT by direct quadrature.
pub fn sft(f: &SpaceTimeSignal, wg: &FrequencyGrid) -> Result<Spectrum> {
    Transform::Sft.forward(f, wg, Path::Direct)
}

/// SFT on the conjugate lattice via the split chirp-FFT path.
pub fn sft_fast(f: &SpaceTimeSignal) -> Result<Spectrum> {
    Transform::Sft.forward_conjugate(f, Path::Fast)
}

pub fn isft(s: &Spectrum, xg: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    Transform::Sft.inverse(s, xg, Path::Direct)
}

pub fn isft_fast(s: &Spectrum, xg: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    Transform::Sft.inverse(s, xg, Path::Fast)
}

pub fn frsft(
    f: &SpaceTimeSignal,
    p: &FrParams,
    wg: &FrequencyGrid,
    mode: ConstantsMode,
) -> Result<Spectrum> {
    Transform::Frsft { params: *p, mode }.forward(f, wg, Path::Direct)
}

pub fn ifrsft(
    s: &Spectrum,
    p: &FrParams,
    xg: &SpaceTimeGrid,
    mode: ConstantsMode,
) -> Result<SpaceTimeSignal> {
    Transform::Frsft { params: *p, mode }.inverse(s, xg, Path::Direct)
}

/// LCST by direct quadrature; `b = 0` takes the pointwise branch.
pub fn lcst(f: &SpaceTimeSignal, p: &LcParams, wg: &FrequencyGrid) -> Result<Spectrum> {
    Transform::Lcst { params: *p }.forward(f, wg, Path::Direct)
}

pub fn ilcst(s: &Spectrum, p: &LcParams, xg: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    Transform::Lcst { params: *p }.inverse(s, xg, Path::Direct)
}

/// LCST on `conjugate_grid(f.grid, b)` via the split chirp-FFT path.
pub fn lcst_fast(f: &SpaceTimeSignal, p: &LcParams) -> Result<Spectrum> {
    p.require_b("lcst_fast")?;
    Transform::Lcst { params: *p }.forward_conjugate(f, Path::Fast)
}

pub fn ilcst_fast(s: &Spectrum, p: &LcParams, xg: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    Transform::Lcst { params: *p }.inverse(s, xg, Path::Fast)
}

pub fn two_sided_lcst(
    f: &SpaceTimeSignal,
    p: &TwoSidedParams,
    wg: &FrequencyGrid,
    mode: ConstantsMode,
) -> Result<Spectrum> {
    Transform::TwoSided { params: *p, mode }.forward(f, wg, Path::Direct)
}

pub fn two_sided_ilcst(
    s: &Spectrum,
    p: &TwoSidedParams,
    xg: &SpaceTimeGrid,
    mode: ConstantsMode,
) -> Result<SpaceTimeSignal> {
    Transform::TwoSided { params: *p, mode }.inverse(s, xg, Path::Direct)
}

pub fn two_sided_lcst_fast(
    f: &SpaceTimeSignal,
    p: &TwoSidedParams,
    mode: ConstantsMode,
) -> Result<Spectrum> {
    Transform::TwoSided { params: *p, mode }.forward_conjugate(f, Path::Fast)
}

pub fn two_sided_ilcst_fast(
    s: &Spectrum,
    p: &TwoSidedParams,
    xg: &SpaceTimeGrid,
    mode: ConstantsMode,
) -> Result<SpaceTimeSignal> {
    Transform::TwoSided { params: *p, mode }.inverse(s, xg, Path::Fast)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_is_enforced() {
        assert!(LcParams::new(2.0, 1.0, 1.0, 1.0).is_ok());
        assert!(LcParams::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(LcParams::new(1.0 / 3.0, 1.0, -2.0 / 3.0, 1.0).is_ok());
        assert!(LcParams::new(0.3333333, 1.0, -2.0 / 3.0, 1.0).is_err());
        assert!(LcParams::with_tolerance(0.3333333, 1.0, -2.0 / 3.0, 1.0, 1e-6).is_ok());
    }

    #[test]
    fn fractional_angle_domain() {
        assert!(FrParams::new(0.5).is_ok());
        assert!(FrParams::new(0.0).is_err());
        assert!(FrParams::new(-0.5).is_err());
        assert!(FrParams::new(PI).is_err());
    }

    #[test]
    fn quarter_turn_fractional_kernel_is_sft() {
        let k = frsft_kernel(&FrParams::new(PI / 2.0).unwrap(), ConstantsMode::Verbatim);
        assert!(k.space[0].alpha.abs() < 1e-16 && k.space[0].beta.abs() < 1e-16);
        assert!((k.space[0].gamma + 1.0).abs() < 1e-15);
        assert!(k.phase.abs() < 1e-16);
        assert!((k.scale - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fourier_matrix_lcst_is_scaled_sft() {
        let k = lcst_kernel(&LcParams::fourier()).unwrap();
        assert_eq!(k.space[0], AxisPhase::coupling(-1.0));
        assert!((k.scale - TAU.powf(-1.5)).abs() < 1e-16);
    }

    #[test]
    fn inverse_phase_swaps_roles() {
        let p = AxisPhase::new(0.3, -0.7, 2.0);
        let q = p.inverse();
        assert_eq!(q.eval(1.5, -0.25), -p.eval(-0.25, 1.5));
    }

    #[test]
    fn two_sided_requires_nonzero_b() {
        let p = TwoSidedParams { m1: LcParams::identity(), m2: LcParams::fourier() };
        assert!(matches!(p.validate(), Err(Error::Unsupported(_))));
    }
}
