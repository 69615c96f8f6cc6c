//! Convolutions on the sampled torus: the standard and Mustard products,
//! the chirp-dressed `⊙` and `⊗`, the two-sided `⋆_N`, and the eight-term
//! split decompositions.
//!
//! Sample `j` on an axis with spacing `Δ` and lattice offset `o` sits at
//! `(o + j)Δ`. Circular convolution is taken over that lattice, so
//! `x − y` is always reduced modulo `N` in lattice units and coordinates,
//! not indices, are subtracted.

use std::f64::consts::TAU;
use std::str::FromStr;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use crate::algebra::{sign_table, BladeIndex, Multivector, BLADE_COUNT};
use crate::error::{Error, Result};
use crate::grid::{
    conjugate_grid, conjugate_grid_scaled, Domain, Field, FrequencyGrid, Grid, SpaceTimeGrid,
    SpaceTimeSignal, Spectrum,
};
use crate::transforms::fast::{fft_axis, plan};
use crate::transforms::{
    isft_fast, sft_fast, two_sided_ilcst, two_sided_ilcst_fast, two_sided_lcst,
    two_sided_lcst_fast, ConstantsMode, LcParams, Path, TwoSidedParams,
};

/// `(φ₁, φ₂)`: reflect time when `phi1`, all three spatial axes when `phi2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReflectionIndex {
    pub phi1: bool,
    pub phi2: bool,
}

impl ReflectionIndex {
    pub const NONE: Self = Self { phi1: false, phi2: false };
    pub const TIME: Self = Self { phi1: true, phi2: false };
    pub const SPACE: Self = Self { phi1: false, phi2: true };
    pub const ALL: Self = Self { phi1: true, phi2: true };

    pub fn new(phi1: u8, phi2: u8) -> Result<Self> {
        if phi1 > 1 || phi2 > 1 {
            return Err(Error::Domain(format!("reflection index must be 0 or 1, got ({phi1}, {phi2})")));
        }
        Ok(Self { phi1: phi1 == 1, phi2: phi2 == 1 })
    }

    pub fn axes(self) -> [bool; 4] {
        [self.phi1, self.phi2, self.phi2, self.phi2]
    }
}

fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// `f(x) ↦ f(−x)` on the flagged axes, as a lattice map `j ↦ −2o − j (mod N)`.
pub fn reflect_axes<D: Domain>(f: &Field<D>, axes: [bool; 4]) -> Result<Field<D>> {
    let g = *f.grid();
    let o = g.lattice_offsets("reflection")?;
    let n = g.dims();
    Ok(Field::from_index_fn(g, |idx| {
        let src: [usize; 4] = std::array::from_fn(|k| {
            if axes[k] {
                wrap(-2 * o[k] - idx[k] as i64, n[k])
            } else {
                idx[k]
            }
        });
        f.at(src)
    }))
}

/// `h^{(φ₁,φ₂)}(x) = h((−1)^{φ₁} t, (−1)^{φ₂} x̲)` on the torus.
pub fn reflect<D: Domain>(f: &Field<D>, r: ReflectionIndex) -> Result<Field<D>> {
    reflect_axes(f, r.axes())
}

/// How a standard convolution is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvMethod {
    /// The circular sum as written, `O(N²)`.
    Direct,
    /// Per-blade-pair DFT products, `O(N log N)`.
    #[default]
    Fft,
}

impl FromStr for ConvMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "fft" => Ok(Self::Fft),
            _ => Err(Error::Domain(format!("unknown convolution method {s:?} (direct|fft)"))),
        }
    }
}

/// `(a ⋆ b)(x) = Σ_y a(y) b(x − y) ΔV` on the torus; `a` multiplies from the left.
pub fn convolve_standard<D: Domain>(a: &Field<D>, b: &Field<D>) -> Result<Field<D>> {
    convolve_with(a, b, ConvMethod::Fft)
}

pub fn convolve_with<D: Domain>(a: &Field<D>, b: &Field<D>, method: ConvMethod) -> Result<Field<D>> {
    a.grid().require_same(b.grid(), "convolution operands")?;
    let g = *a.grid();
    let o = g.lattice_offsets("circular convolution")?;
    match method {
        ConvMethod::Direct => Ok(convolve_direct(a, b, o)),
        ConvMethod::Fft => Ok(convolve_fft(a, b, o)),
    }
}

fn convolve_direct<D: Domain>(a: &Field<D>, b: &Field<D>, o: [i64; 4]) -> Field<D> {
    let g = *a.grid();
    let n = g.dims();
    let dv = g.cell_volume();
    Field::from_index_fn(g, |m| {
        let mut acc = Multivector::ZERO;
        for (j, aj) in a.data().iter().enumerate() {
            let jj = g.unravel(j);
            let src: [usize; 4] =
                std::array::from_fn(|k| wrap(m[k] as i64 - jj[k] as i64 - o[k], n[k]));
            acc += aj * &b.at(src);
        }
        acc * dv
    })
}

fn fft_4d(data: &mut [Complex64], dims: [usize; 4], direction: FftDirection) {
    for (axis, &n) in dims.iter().enumerate() {
        let fft = plan(n, direction);
        fft_axis(data, dims, axis, fft.as_ref());
    }
}

fn blade_planes<D: Domain>(f: &Field<D>) -> Vec<Vec<Complex64>> {
    let dims = f.grid().dims();
    (0..BLADE_COUNT)
        .into_par_iter()
        .map(|b| {
            let mut z: Vec<Complex64> = f.data().iter().map(|h| Complex64::new(h.0[b], 0.0)).collect();
            fft_4d(&mut z, dims, FftDirection::Forward);
            z
        })
        .collect()
}

/// Circular convolution in index space via the Cayley table, then shifted
/// by the lattice offset so that coordinates add.
fn convolve_fft<D: Domain>(a: &Field<D>, b: &Field<D>, o: [i64; 4]) -> Field<D> {
    let g = *a.grid();
    let dims = g.dims();
    let len = g.len();
    let table = sign_table();
    let fa = blade_planes(a);
    let fb = blade_planes(b);
    let mut pairs: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); BLADE_COUNT];
    for p in BladeIndex::all() {
        for q in BladeIndex::all() {
            pairs[table.blade(p, q).get()].push((p.get(), q.get(), table.sign(p, q)));
        }
    }
    let scale = g.cell_volume() / len as f64;
    let planes: Vec<Vec<f64>> = pairs
        .par_iter()
        .map(|terms| {
            let mut z = vec![Complex64::default(); len];
            for &(p, q, s) in terms {
                for ((zi, x), y) in z.iter_mut().zip(&fa[p]).zip(&fb[q]) {
                    *zi += x * y * s;
                }
            }
            fft_4d(&mut z, dims, FftDirection::Inverse);
            z.iter().map(|c| c.re * scale).collect()
        })
        .collect();
    Field::from_index_fn(g, |m| {
        let src: [usize; 4] = std::array::from_fn(|k| wrap(m[k] as i64 - o[k], dims[k]));
        let i = g.flat_index(src);
        Multivector(std::array::from_fn(|r| planes[r][i]))
    })
}

/// `F⁻¹(F{a}·F{b})` with the SFT on the canonical conjugate lattice.
pub fn mustard_convolve(a: &SpaceTimeSignal, b: &SpaceTimeSignal) -> Result<SpaceTimeSignal> {
    a.grid().require_same(b.grid(), "Mustard convolution operands")?;
    let product = sft_fast(a)?.product(&sft_fast(b)?)?;
    isft_fast(&product, a.grid())
}

/// Meaning of the trailing `(t, −x̲)` marker in the eight-term expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EightTermReading {
    /// Evaluate the convolution, then read it at `(t, −x̲)`.
    #[default]
    OutputReflection,
    /// Fold the extra spatial flip into the reflection of the second operand.
    PreReflection,
}

impl FromStr for EightTermReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "output-reflection" | "output" => Ok(Self::OutputReflection),
            "pre-reflection" | "pre" => Ok(Self::PreReflection),
            _ => Err(Error::Domain(format!(
                "unknown eight-term reading {s:?} (output-reflection|pre-reflection)"
            ))),
        }
    }
}

#[derive(Clone, Copy)]
enum Part {
    Plus,
    Minus,
}

struct Term {
    f: Part,
    g: Part,
    pre: ReflectionIndex,
    trailing: bool,
    out: Part,
}

const fn term(f: Part, g: Part, pre: ReflectionIndex, trailing: bool, out: Part) -> Term {
    Term { f, g, pre, trailing, out }
}

use Part::{Minus, Plus};
use ReflectionIndex as R;

const EIGHT_TERMS: [Term; 8] = [
    term(Plus, Plus, R::NONE, false, Plus),
    term(Plus, Plus, R::ALL, true, Minus),
    term(Plus, Minus, R::TIME, false, Plus),
    term(Plus, Minus, R::SPACE, true, Minus),
    term(Minus, Plus, R::SPACE, true, Plus),
    term(Minus, Plus, R::TIME, false, Minus),
    term(Minus, Minus, R::ALL, true, Plus),
    term(Minus, Minus, R::NONE, false, Minus),
];

/// The eight split convolution terms, returned individually in order.
pub fn eight_terms(
    f: &SpaceTimeSignal,
    g: &SpaceTimeSignal,
    reading: EightTermReading,
) -> Result<Vec<SpaceTimeSignal>> {
    f.grid().require_same(g.grid(), "eight-term operands")?;
    let (fp, fm) = f.split();
    let (gp, gm) = g.split();
    let pick = |p: Part, plus: &SpaceTimeSignal, minus: &SpaceTimeSignal| match p {
        Plus => plus.clone(),
        Minus => minus.clone(),
    };
    EIGHT_TERMS
        .iter()
        .map(|t| {
            let mut pre = t.pre;
            let mut post = false;
            if t.trailing {
                match reading {
                    EightTermReading::OutputReflection => post = true,
                    EightTermReading::PreReflection => pre.phi2 = !pre.phi2,
                }
            }
            let rhs = reflect(&pick(t.g, &gp, &gm), pre)?;
            let mut c = convolve_standard(&pick(t.f, &fp, &fm), &rhs)?;
            if post {
                c = reflect(&c, ReflectionIndex::SPACE)?;
            }
            let (cp, cm) = c.split();
            Ok(pick(t.out, &cp, &cm))
        })
        .collect()
}

fn sum_fields(terms: Vec<SpaceTimeSignal>) -> Result<SpaceTimeSignal> {
    let mut it = terms.into_iter();
    let first = it.next().ok_or_else(|| Error::Shape("empty term list".into()))?;
    it.try_fold(first, |acc, t| acc.add(&t))
}

/// Sum of the eight standard convolutions of the split parts.
pub fn mustard_as_eight(
    a: &SpaceTimeSignal,
    b: &SpaceTimeSignal,
    reading: EightTermReading,
) -> Result<SpaceTimeSignal> {
    sum_fields(eight_terms(a, b, reading)?)
}

/// Side and sign of the outer chirp in the `⊙` product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChirpConvention {
    /// `(f̃ ⋆_M g)(x) · exp(−i_3 a x̲²/2b)`.
    #[default]
    RightMinus,
    RightPlus,
    LeftMinus,
    /// `exp(i_3 a x̲²/2b) · (f̃ ⋆_M g)(x)`, the form as usually printed.
    LeftPlus,
}

impl ChirpConvention {
    pub const ALL: [Self; 4] = [Self::RightMinus, Self::RightPlus, Self::LeftMinus, Self::LeftPlus];

    pub fn name(self) -> &'static str {
        match self {
            Self::RightMinus => "right-minus",
            Self::RightPlus => "right-plus",
            Self::LeftMinus => "left-minus",
            Self::LeftPlus => "left-plus",
        }
    }

    fn apply(self, h: &Multivector, phase: f64) -> Multivector {
        let i3 = Multivector::i3();
        match self {
            Self::RightMinus => h.right_exp_i3(-phase),
            Self::RightPlus => h.right_exp_i3(phase),
            Self::LeftMinus => (i3 * -phase.sin() + Multivector::scalar(phase.cos())) * *h,
            Self::LeftPlus => (i3 * phase.sin() + Multivector::scalar(phase.cos())) * *h,
        }
    }
}

fn spatial_sq(p: [f64; 4]) -> f64 {
    p[1] * p[1] + p[2] * p[2] + p[3] * p[3]
}

/// `f ⊙ g` with the default chirp convention.
pub fn odot(f: &SpaceTimeSignal, g: &SpaceTimeSignal, p: &LcParams) -> Result<SpaceTimeSignal> {
    odot_with(f, g, p, ChirpConvention::default())
}

/// `f ⊙ g`: chirp `f̃ = f · exp(i_3 a x̲²/2b)`, Mustard-convolve with `g`,
/// then undo the chirp per `convention`.
pub fn odot_with(
    f: &SpaceTimeSignal,
    g: &SpaceTimeSignal,
    p: &LcParams,
    convention: ChirpConvention,
) -> Result<SpaceTimeSignal> {
    p.require_b("the ⊙ convolution")?;
    let k = p.a / (2.0 * p.b);
    let tilde = f.map_with_point(|x, h| h.right_exp_i3(k * spatial_sq(x)));
    let m = mustard_convolve(&tilde, g)?;
    Ok(m.map_with_point(|x, h| convention.apply(h, k * spatial_sq(x))))
}

/// `(u ⊗ v)(w) = [û ⋆ v](w) · exp(i_3 d w̲²/2b)` with `û = u · exp(−i_3 d y̲²/2b)`,
/// a circular convolution over the frequency lattice.
pub fn otimes(u: &Spectrum, v: &Spectrum, p: &LcParams) -> Result<Spectrum> {
    p.require_b("the ⊗ convolution")?;
    let k = p.d / (2.0 * p.b);
    let hat = u.map_with_point(|y, h| h.right_exp_i3(-k * spatial_sq(y)));
    let c = convolve_standard(&hat, v)?;
    Ok(c.map_with_point(|w, h| h.right_exp_i3(k * spatial_sq(w))))
}

/// Which coordinates `g(x/b)` rescales.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingVariant {
    /// `g(t, x̲/b)`.
    #[default]
    SpatialOnly,
    /// `g(t/b, x̲/b)`.
    AllCoordinates,
}

impl ScalingVariant {
    pub const ALL: [Self; 2] = [Self::SpatialOnly, Self::AllCoordinates];

    pub fn axes(self) -> [bool; 4] {
        match self {
            Self::SpatialOnly => [false, true, true, true],
            Self::AllCoordinates => [true; 4],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SpatialOnly => "spatial-only",
            Self::AllCoordinates => "all-coordinates",
        }
    }
}

impl FromStr for ScalingVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spatial-only" | "spatial" => Ok(Self::SpatialOnly),
            "all-coordinates" | "all" => Ok(Self::AllCoordinates),
            _ => Err(Error::Domain(format!("unknown scaling variant {s:?} (spatial-only|all-coordinates)"))),
        }
    }
}

/// `g(x/b)` resampled on the same lattice. Only `1/b` a nonzero integer keeps
/// every sample on the lattice (with torus wrap); anything else is refused.
pub fn scale_argument(g: &SpaceTimeSignal, b: f64, variant: ScalingVariant) -> Result<SpaceTimeSignal> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::Domain(format!("argument scale must be finite and nonzero, got {b}")));
    }
    let inv = 1.0 / b;
    let k = inv.round();
    if (inv - k).abs() > 1e-9 {
        return Err(Error::Unsupported(format!(
            "g(x/b) stays on the lattice only for b = 1/k with integer k, got b = {b}"
        )));
    }
    let k = k as i64;
    let grid = *g.grid();
    let o = grid.lattice_offsets("argument scaling")?;
    let n = grid.dims();
    let axes = variant.axes();
    Ok(Field::from_index_fn(grid, |idx| {
        let src: [usize; 4] = std::array::from_fn(|a| {
            if axes[a] {
                wrap(k * (o[a] + idx[a] as i64) - o[a], n[a])
            } else {
                idx[a]
            }
        });
        g.at(src)
    }))
}

/// The grid whose samples, read on `xg`, give `g(x/b)` for `b > 0`: the
/// scaled axes have spacing and origin divided by `b`.
pub fn argument_grid(xg: &SpaceTimeGrid, b: f64, variant: ScalingVariant) -> Result<SpaceTimeGrid> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Domain(format!("argument grid needs b > 0, got {b}")));
    }
    let axes = variant.axes();
    xg.scale_axes(std::array::from_fn(|k| if axes[k] { 1.0 / b } else { 1.0 }))
}

/// `λ(w) = prefactor · exp(e_t (D₁w_t²/2B₁ + D₂w̲²/2B₂))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaWeight {
    pub params: TwoSidedParams,
    pub prefactor: f64,
}

impl LambdaWeight {
    /// The published prefactor `(2π)² |B₁|^{1/2} |B₂|^{7/2}`.
    pub fn published_prefactor(p: &TwoSidedParams) -> f64 {
        TAU * TAU * p.m1.b.abs().sqrt() * p.m2.b.abs().powf(3.5)
    }

    pub fn with_prefactor(mut self, prefactor: f64) -> Self {
        self.prefactor = prefactor;
        self
    }

    pub fn phase(&self, w: [f64; 4]) -> f64 {
        let (m1, m2) = (&self.params.m1, &self.params.m2);
        m1.d * w[0] * w[0] / (2.0 * m1.b) + m2.d * spatial_sq(w) / (2.0 * m2.b)
    }

    pub fn eval(&self, w: [f64; 4]) -> Multivector {
        Multivector::scalar(self.prefactor).left_exp_e_t(self.phase(w))
    }

    pub fn field(&self, wg: &FrequencyGrid) -> Spectrum {
        Spectrum::from_fn(*wg, |w| self.eval(w))
    }
}

pub fn lambda_weight(p: &TwoSidedParams) -> Result<LambdaWeight> {
    p.validate()?;
    Ok(LambdaWeight { params: *p, prefactor: LambdaWeight::published_prefactor(p) })
}

/// `f ⋆_N g` with the published λ, corrected constants and the fast path.
pub fn star_n(f: &SpaceTimeSignal, g: &SpaceTimeSignal, p: &TwoSidedParams) -> Result<SpaceTimeSignal> {
    star_n_with(f, g, &lambda_weight(p)?, ConstantsMode::Corrected, Path::Fast)
}

/// Spectral form: the inverse two-sided LCST of `λ(w) · 𝓛[f](w) · 𝓛[g](w)`
/// on the conjugate lattice `(B₁, B₂)`.
pub fn star_n_with(
    f: &SpaceTimeSignal,
    g: &SpaceTimeSignal,
    lambda: &LambdaWeight,
    mode: ConstantsMode,
    path: Path,
) -> Result<SpaceTimeSignal> {
    f.grid().require_same(g.grid(), "⋆_N operands")?;
    let p = &lambda.params;
    p.validate()?;
    let xg = f.grid();
    let wg = conjugate_grid_scaled(xg, p.m1.b, p.m2.b)?;
    let (lf, lg) = match path {
        Path::Fast => (two_sided_lcst_fast(f, p, mode)?, two_sided_lcst_fast(g, p, mode)?),
        Path::Direct => (two_sided_lcst(f, p, &wg, mode)?, two_sided_lcst(g, p, &wg, mode)?),
    };
    let weighted = lambda.field(lf.grid()).product(&lf)?.product(&lg)?;
    match path {
        Path::Fast => two_sided_ilcst_fast(&weighted, p, xg, mode),
        Path::Direct => two_sided_ilcst(&weighted, p, xg, mode),
    }
}

/// Largest sample count accepted by [`star_n_direct`].
pub const STAR_N_DIRECT_MAX: usize = 256;

/// Brute-force quadrature of the triple integral defining `⋆_N`, with its
/// own kernel evaluation and general geometric products.
pub fn star_n_direct(f: &SpaceTimeSignal, g: &SpaceTimeSignal, p: &TwoSidedParams) -> Result<SpaceTimeSignal> {
    star_n_direct_with(f, g, &lambda_weight(p)?, ConstantsMode::Corrected)
}

pub fn star_n_direct_with(
    f: &SpaceTimeSignal,
    g: &SpaceTimeSignal,
    lambda: &LambdaWeight,
    mode: ConstantsMode,
) -> Result<SpaceTimeSignal> {
    f.grid().require_same(g.grid(), "⋆_N operands")?;
    let xg = *f.grid();
    if xg.len() > STAR_N_DIRECT_MAX {
        return Err(Error::TooLarge(format!(
            "the direct ⋆_N oracle costs O(N²) geometric products per output and is limited to \
             {STAR_N_DIRECT_MAX} samples (4⁴); this grid has {}",
            xg.len()
        )));
    }
    let p = lambda.params;
    p.validate()?;
    let (m1, m2) = (p.m1, p.m2);
    let wg = conjugate_grid_scaled(&xg, m1.b, m2.b)?;
    let c1 = 1.0 / (TAU * m1.b.abs()).sqrt();
    let c2 = match mode {
        ConstantsMode::Corrected => (TAU * m2.b.abs()).powf(-1.5),
        ConstantsMode::Verbatim => (TAU * m2.b.abs()).powf(-0.5),
    };
    let et = Multivector::e_t();
    let i3 = Multivector::i3();
    let exp = |u: &Multivector, a: f64| Multivector::scalar(a.cos()) + *u * a.sin();
    // K_{±e_t}(w_t, t) and K_{±i_3}(x̲, w̲).
    let k_t = |sign: f64, wt: f64, t: f64| {
        exp(&et, sign * (m1.a * t * t + m1.d * wt * wt - 2.0 * t * wt) / (2.0 * m1.b)) * c1
    };
    let k_s = |sign: f64, x: [f64; 4], w: [f64; 4]| {
        let xw = x[1] * w[1] + x[2] * w[2] + x[3] * w[3];
        exp(&i3, sign * (m2.a * spatial_sq(x) + m2.d * spatial_sq(w) - 2.0 * xw) / (2.0 * m2.b)) * c2
    };
    let dv = xg.cell_volume();
    let points: Vec<[f64; 4]> = (0..xg.len()).map(|i| xg.point(xg.unravel(i))).collect();
    let transform = |h: &SpaceTimeSignal, w: [f64; 4]| {
        let mut acc = Multivector::ZERO;
        for (x, v) in points.iter().zip(h.data()) {
            acc += k_t(1.0, w[0], x[0]) * *v * k_s(1.0, *x, w);
        }
        acc * dv
    };
    // Hoist the y and z sums: they depend on w only.
    let inner: Vec<([f64; 4], Multivector)> = (0..wg.len())
        .into_par_iter()
        .map(|i| {
            let w = wg.point(wg.unravel(i));
            (w, lambda.eval(w) * transform(f, w) * transform(g, w))
        })
        .collect();
    let dw = wg.cell_volume();
    Ok(SpaceTimeSignal::from_fn(xg, |x| {
        let mut acc = Multivector::ZERO;
        for (w, v) in &inner {
            // λ and K_{−e_t} are both e_t exponentials and commute.
            acc += k_t(-1.0, w[0], x[0]) * *v * k_s(-1.0, x, *w);
        }
        acc * dw
    }))
}

/// The eight-term pattern for `⋆_N`. The pattern itself carries no
/// parameters; `p` is only validated.
pub fn star_n_as_eight(
    f: &SpaceTimeSignal,
    g: &SpaceTimeSignal,
    p: &TwoSidedParams,
    reading: EightTermReading,
) -> Result<SpaceTimeSignal> {
    p.validate()?;
    mustard_as_eight(f, g, reading)
}

/// `𝓕_SFT[g]` sampled at `(w_t, w̲/b)` for every `w` of an LCST lattice, by
/// direct quadrature. Requires `b > 0`.
pub fn sft_at_scaled(g: &SpaceTimeSignal, wg: &FrequencyGrid, b: f64) -> Result<Spectrum> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("sft_at_scaled needs b > 0, got {b}")));
    }
    let scaled = wg.scale_axes([1.0, 1.0 / b, 1.0 / b, 1.0 / b])?;
    let s = crate::transforms::sft(g, &scaled)?;
    s.with_grid(*wg)
}

/// Canonical SFT lattice of `g`, relabelled onto the frequency domain.
pub fn sft_lattice(g: &SpaceTimeGrid) -> Result<FrequencyGrid> {
    conjugate_grid(g, 1.0)
}

/// Sample count helper for guards and reports.
pub fn grid_len<D: Domain>(g: &Grid<D>) -> usize {
    g.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{delta_at_zero, random_field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid4() -> SpaceTimeGrid {
        SpaceTimeGrid::centered([4; 4], [0.5; 4]).unwrap()
    }

    #[test]
    fn reflection_is_an_involution_and_isometry() {
        let g = SpaceTimeGrid::centered([4, 5, 3, 4], [0.5; 4]).unwrap();
        let f = random_field(&g, &mut ChaCha8Rng::seed_from_u64(1));
        for r in [R::NONE, R::TIME, R::SPACE, R::ALL] {
            let once = reflect(&f, r).unwrap();
            assert_eq!(reflect(&once, r).unwrap().data(), f.data());
            assert_eq!(once.norm_sqr(), f.norm_sqr());
        }
        assert_eq!(reflect(&f, R::NONE).unwrap().data(), f.data());
    }

    #[test]
    fn reflection_negates_coordinates() {
        let g = SpaceTimeGrid::centered([5; 4], [0.5; 4]).unwrap();
        let f = Field::from_fn(g, |x| Multivector::scalar(x[0] + 10.0 * x[1] + 100.0 * x[3]));
        let r = reflect(&f, R::ALL).unwrap();
        let want = Field::from_fn(g, |x| Multivector::scalar(-x[0] - 10.0 * x[1] - 100.0 * x[3]));
        assert!(r.relative_max(&want).unwrap() < 1e-14);
    }

    #[test]
    fn delta_is_the_unit() {
        let g = grid4();
        let b = random_field(&g, &mut ChaCha8Rng::seed_from_u64(2));
        let d = delta_at_zero(&g, Multivector::one()).unwrap();
        for m in [ConvMethod::Direct, ConvMethod::Fft] {
            assert!(convolve_with(&d, &b, m).unwrap().relative_max(&b).unwrap() < 1e-13);
            assert!(convolve_with(&b, &d, m).unwrap().relative_max(&b).unwrap() < 1e-13);
        }
    }

    #[test]
    fn fft_matches_direct() {
        let g = SpaceTimeGrid::new([4, 3, 4, 2], [0.5, 0.7, 0.4, 1.0], [-1.0, 0.7, 0.0, -2.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_field(&g, &mut rng);
        let b = random_field(&g, &mut rng);
        let d = convolve_with(&a, &b, ConvMethod::Direct).unwrap();
        let f = convolve_with(&a, &b, ConvMethod::Fft).unwrap();
        assert!(f.relative_max(&d).unwrap() < 1e-12);
    }

    #[test]
    fn blade_deltas_do_not_commute() {
        let g = grid4();
        let e1 = delta_at_zero(&g, Multivector::blade(BladeIndex::E1)).unwrap();
        let e2 = delta_at_zero(&g, Multivector::blade(BladeIndex::E2)).unwrap();
        let ab = convolve_standard(&e1, &e2).unwrap();
        let ba = convolve_standard(&e2, &e1).unwrap();
        let want = delta_at_zero(&g, Multivector::blade(BladeIndex::E12)).unwrap();
        assert!(ab.relative_max(&want).unwrap() < 1e-13);
        assert!(ba.relative_max(&want.scale(-1.0)).unwrap() < 1e-13);
    }

    #[test]
    fn misaligned_grid_is_rejected() {
        let g = SpaceTimeGrid::new([4; 4], [0.5; 4], [0.1, 0.0, 0.0, 0.0]).unwrap();
        let f = random_field(&g, &mut ChaCha8Rng::seed_from_u64(4));
        assert!(matches!(convolve_standard(&f, &f), Err(Error::Domain(_))));
        assert!(reflect(&f, R::TIME).is_err());
    }

    #[test]
    fn lambda_weight_examples() {
        let p = TwoSidedParams::new(LcParams::fourier(), LcParams::fourier()).unwrap();
        let l = lambda_weight(&p).unwrap();
        assert!((l.eval([0.3, 1.0, -2.0, 0.5]) - Multivector::scalar(TAU * TAU)).max_abs() < 1e-12);
        let q = TwoSidedParams::new(
            LcParams::new(1.0, 2.0, 0.0, 1.0).unwrap(),
            LcParams::new(2.0, 0.5, -1.0, 0.25).unwrap(),
        )
        .unwrap();
        let l = lambda_weight(&q).unwrap();
        let want = TAU * TAU * 2f64.sqrt() * 0.5f64.powf(3.5);
        assert!((l.eval([0.0; 4]).0[0] - want).abs() < 1e-12);
        for w in [[1.0, 2.0, 3.0, 4.0], [-0.3, 0.1, 0.0, 2.0]] {
            assert!((l.eval(w).norm() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn scale_argument_maps_lattice_to_lattice() {
        let g = SpaceTimeGrid::centered([8; 4], [0.5; 4]).unwrap();
        let f = Field::from_fn(g, |x| Multivector::scalar(x[0] + 3.0 * x[2]));
        let s = scale_argument(&f, 0.5, ScalingVariant::SpatialOnly).unwrap();
        // x[2] = 0.5 -> 1.0, still inside the window.
        let idx = [3, 4, 5, 4];
        let x = g.point(idx);
        assert!((s.at(idx).0[0] - (x[0] + 6.0 * x[2])).abs() < 1e-14);
        assert!(matches!(scale_argument(&f, 2.0, ScalingVariant::SpatialOnly), Err(Error::Unsupported(_))));
        assert_eq!(scale_argument(&f, 1.0, ScalingVariant::AllCoordinates).unwrap().data(), f.data());
    }

    #[test]
    fn star_n_direct_refuses_large_grids() {
        let g = SpaceTimeGrid::centered([5, 4, 4, 4], [0.5; 4]).unwrap();
        let f = Field::zeros(g);
        let p = TwoSidedParams::new(LcParams::fourier(), LcParams::fourier()).unwrap();
        assert!(matches!(star_n_direct(&f, &f, &p), Err(Error::TooLarge(_))));
    }
}
