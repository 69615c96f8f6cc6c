//! Uniform 4-D sampling lattices and multivector-valued fields over them.
//!
//! Axis order is always `(t, x1, x2, x3)` (or `(w_t, w1, w2, w3)` for
//! frequency lattices) and data is stored row-major, so the last axis is
//! contiguous.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::marker::PhantomData;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};

/// Marker trait separating space-time lattices from frequency lattices.
pub trait Domain: Copy + Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Kind byte used by the STCF format.
    const KIND: u8;
    const AXES: [&'static str; 4];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceTime;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frequency;

impl Domain for SpaceTime {
    const KIND: u8 = 0;
    const AXES: [&'static str; 4] = ["t", "x1", "x2", "x3"];
}

impl Domain for Frequency {
    const KIND: u8 = 1;
    const AXES: [&'static str; 4] = ["w_t", "w1", "w2", "w3"];
}

/// A uniform lattice: sample `j` on axis `k` sits at `origin[k] + j * spacing[k]`.
#[derive(Clone, Copy, PartialEq)]
pub struct Grid<D: Domain> {
    n: [usize; 4],
    spacing: [f64; 4],
    origin: [f64; 4],
    _domain: PhantomData<D>,
}

pub type SpaceTimeGrid = Grid<SpaceTime>;
pub type FrequencyGrid = Grid<Frequency>;

impl<D: Domain> fmt::Debug for Grid<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Grid<{:?}>(n={:?}, spacing={:?}, origin={:?})",
            D::AXES,
            self.n,
            self.spacing,
            self.origin
        )
    }
}

/// Serializable summary of a lattice, used in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub dims: [usize; 4],
    pub spacing: [f64; 4],
    pub origin: [f64; 4],
}

impl<D: Domain> Grid<D> {
    pub fn new(n: [usize; 4], spacing: [f64; 4], origin: [f64; 4]) -> Result<Self> {
        if n.iter().any(|&k| k == 0) {
            return Err(Error::Domain(format!("grid dimensions must be positive, got {n:?}")));
        }
        if spacing.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::Domain(format!("grid spacings must be positive, got {spacing:?}")));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::Domain(format!("grid origin must be finite, got {origin:?}")));
        }
        n.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k)).ok_or_else(|| {
            Error::TooLarge(format!("sample count of {n:?} overflows"))
        })?;
        Ok(Self { n, spacing, origin, _domain: PhantomData })
    }

    /// Grid whose index `⌊N/2⌋` sits at coordinate zero on every axis.
    pub fn centered(n: [usize; 4], spacing: [f64; 4]) -> Result<Self> {
        let mut origin = [0.0; 4];
        for k in 0..4 {
            origin[k] = -((n[k] / 2) as f64) * spacing[k];
        }
        Self::new(n, spacing, origin)
    }

    pub fn dims(&self) -> [usize; 4] {
        self.n
    }

    pub fn spacing(&self) -> [f64; 4] {
        self.spacing
    }

    pub fn origin(&self) -> [f64; 4] {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.n.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight `Δ0·Δ1·Δ2·Δ3`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn coord(&self, axis: usize, j: usize) -> f64 {
        self.origin[axis] + j as f64 * self.spacing[axis]
    }

    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        (0..self.n[axis]).map(|j| self.coord(axis, j)).collect()
    }

    pub fn strides(&self) -> [usize; 4] {
        [self.n[1] * self.n[2] * self.n[3], self.n[2] * self.n[3], self.n[3], 1]
    }

    pub fn flat_index(&self, idx: [usize; 4]) -> usize {
        let s = self.strides();
        idx[0] * s[0] + idx[1] * s[1] + idx[2] * s[2] + idx[3]
    }

    pub fn unravel(&self, mut flat: usize) -> [usize; 4] {
        let mut idx = [0; 4];
        for k in (0..4).rev() {
            idx[k] = flat % self.n[k];
            flat /= self.n[k];
        }
        idx
    }

    pub fn point(&self, idx: [usize; 4]) -> [f64; 4] {
        std::array::from_fn(|k| self.coord(k, idx[k]))
    }

    /// `origin / spacing` on `axis` when it is an integer (to 1e-9), i.e. when
    /// the grid is a window onto the lattice `spacing·ℤ`.
    pub fn lattice_offset(&self, axis: usize) -> Option<i64> {
        let r = self.origin[axis] / self.spacing[axis];
        let k = r.round();
        ((r - k).abs() <= 1e-9).then_some(k as i64)
    }

    pub(crate) fn lattice_offsets(&self, what: &str) -> Result<[i64; 4]> {
        let mut out = [0; 4];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.lattice_offset(k).ok_or_else(|| {
                Error::Domain(format!(
                    "{what} needs a lattice-aligned grid, but axis {} has origin/spacing = {}",
                    D::AXES[k],
                    self.origin[k] / self.spacing[k]
                ))
            })?;
        }
        Ok(out)
    }

    /// Same dimensions, spacings and origins up to a relative 1e-12.
    pub fn same_lattice<E: Domain>(&self, other: &Grid<E>) -> bool {
        let close = |a: f64, b: f64, scale: f64| (a - b).abs() <= 1e-12 * scale.max(1e-300);
        self.n == other.n
            && (0..4).all(|k| {
                close(self.spacing[k], other.spacing[k], self.spacing[k])
                    && close(self.origin[k], other.origin[k], self.spacing[k] * self.n[k] as f64)
            })
    }

    pub(crate) fn require_same<E: Domain>(&self, other: &Grid<E>, what: &str) -> Result<()> {
        if self.same_lattice(other) {
            Ok(())
        } else {
            Err(Error::Shape(format!("{what}: {self:?} vs {other:?}")))
        }
    }

    /// The same lattice reinterpreted in another domain.
    pub fn relabel<E: Domain>(&self) -> Grid<E> {
        Grid { n: self.n, spacing: self.spacing, origin: self.origin, _domain: PhantomData }
    }

    /// The same dimensions with spacings and origins multiplied per axis.
    pub fn scale_axes(&self, factors: [f64; 4]) -> Result<Self> {
        Self::new(
            self.n,
            std::array::from_fn(|k| self.spacing[k] * factors[k].abs()),
            std::array::from_fn(|k| self.origin[k] * factors[k].abs()),
        )
    }

    /// The same lattice with every origin shifted.
    pub fn shift(&self, by: [f64; 4]) -> Result<Self> {
        Self::new(self.n, self.spacing, std::array::from_fn(|k| self.origin[k] + by[k]))
    }

    /// Grid mirrored through the coordinate origin on the flagged axes, with
    /// samples listed in the same increasing-index order.
    pub fn negate_axes(&self, flags: [bool; 4]) -> Result<Self> {
        Self::new(
            self.n,
            self.spacing,
            std::array::from_fn(|k| {
                if flags[k] {
                    -(self.origin[k] + (self.n[k] - 1) as f64 * self.spacing[k])
                } else {
                    self.origin[k]
                }
            }),
        )
    }

    pub fn info(&self) -> GridInfo {
        GridInfo { dims: self.n, spacing: self.spacing, origin: self.origin }
    }
}

/// The frequency lattice on which a kernel with spatial coupling
/// `x·w/b` becomes a plain DFT.
///
/// Temporal axis: `Δw_t = 2π / (N_t Δt)`. Spatial axes: `Δw_k = 2π|b| / (N_k Δx_k)`.
/// Each axis starts at `-⌊N/2⌋·Δw`. The sign of `b` does not change the
/// lattice, only the DFT direction.
pub fn conjugate_grid(g: &SpaceTimeGrid, b: f64) -> Result<FrequencyGrid> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::Domain(
            "conjugate_grid needs b != 0; the b = 0 transform is a pointwise map".into(),
        ));
    }
    conjugate_grid_scaled(g, 1.0, b)
}

/// Like [`conjugate_grid`] with an independent scale on the temporal axis.
/// The two-sided transform couples `t·w_t/B₁`, so it uses `b_t = B₁`.
pub fn conjugate_grid_scaled(g: &SpaceTimeGrid, b_t: f64, b_s: f64) -> Result<FrequencyGrid> {
    if b_t == 0.0 || b_s == 0.0 || !b_t.is_finite() || !b_s.is_finite() {
        return Err(Error::Domain(format!("conjugate grid scales must be nonzero, got ({b_t}, {b_s})")));
    }
    let n = g.dims();
    let dx = g.spacing();
    let spacing: [f64; 4] = std::array::from_fn(|k| {
        let scale = if k == 0 { b_t.abs() } else { b_s.abs() };
        TAU * scale / (n[k] as f64 * dx[k])
    });
    FrequencyGrid::centered(n, spacing)
}

/// A multivector-valued field over a lattice.
#[derive(Clone, PartialEq)]
pub struct Field<D: Domain> {
    grid: Grid<D>,
    data: Vec<Multivector>,
}

pub type SpaceTimeSignal = Field<SpaceTime>;
pub type Spectrum = Field<Frequency>;

impl<D: Domain> fmt::Debug for Field<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({:?}, ‖·‖={:.6e})", self.grid, self.norm_l2())
    }
}

impl<D: Domain> Field<D> {
    pub fn new(grid: Grid<D>, data: Vec<Multivector>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::Shape(format!(
                "{} samples supplied for a grid of {}",
                data.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, data })
    }

    pub fn zeros(grid: Grid<D>) -> Self {
        Self { grid, data: vec![Multivector::ZERO; grid.len()] }
    }

    /// Evaluates `f` at every sample coordinate.
    pub fn from_fn<F>(grid: Grid<D>, f: F) -> Self
    where
        F: Fn([f64; 4]) -> Multivector + Sync,
    {
        let data = (0..grid.len())
            .into_par_iter()
            .map(|i| f(grid.point(grid.unravel(i))))
            .collect();
        Self { grid, data }
    }

    pub fn from_index_fn<F>(grid: Grid<D>, f: F) -> Self
    where
        F: Fn([usize; 4]) -> Multivector + Sync,
    {
        let data = (0..grid.len()).into_par_iter().map(|i| f(grid.unravel(i))).collect();
        Self { grid, data }
    }

    pub fn grid(&self) -> &Grid<D> {
        &self.grid
    }

    pub fn data(&self) -> &[Multivector] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Multivector] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Multivector> {
        self.data
    }

    pub fn at(&self, idx: [usize; 4]) -> Multivector {
        self.data[self.grid.flat_index(idx)]
    }

    /// Reinterprets the samples on another lattice of the same shape.
    pub fn with_grid<E: Domain>(self, grid: Grid<E>) -> Result<Field<E>> {
        Field::new(grid, self.data)
    }

    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(&Multivector) -> Multivector + Sync + Send,
    {
        Self { grid: self.grid, data: self.data.par_iter().map(f).collect() }
    }

    /// Maps with access to the sample coordinate.
    pub fn map_with_point<F>(&self, f: F) -> Self
    where
        F: Fn([f64; 4], &Multivector) -> Multivector + Sync,
    {
        let g = self.grid;
        let data = self
            .data
            .par_iter()
            .enumerate()
            .map(|(i, h)| f(g.point(g.unravel(i)), h))
            .collect();
        Self { grid: g, data }
    }

    pub fn zip_with<F>(&self, other: &Self, f: F) -> Result<Self>
    where
        F: Fn(&Multivector, &Multivector) -> Multivector + Sync,
    {
        self.grid.require_same(&other.grid, "pointwise operation on different grids")?;
        let data = self.data.par_iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| *a + *b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| *a - *b)
    }

    /// Pointwise geometric product `self(x) · other(x)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|h| *h * s)
    }

    pub fn left_mul(&self, m: &Multivector) -> Self {
        self.map(|h| m * h)
    }

    pub fn right_mul(&self, m: &Multivector) -> Self {
        self.map(|h| h * m)
    }

    /// Componentwise `(f₊, f₋)`.
    pub fn split(&self) -> (Self, Self) {
        let (p, m): (Vec<_>, Vec<_>) = self.data.par_iter().map(|h| h.split()).unzip();
        (Self { grid: self.grid, data: p }, Self { grid: self.grid, data: m })
    }

    /// Discrete `Σ |f|² · ΔV`.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(Multivector::norm_sqr).sum::<f64>() * self.grid.cell_volume()
    }

    pub fn norm_l2(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute coefficient over all samples.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, h| m.max(h.max_abs()))
    }

    /// `‖self − reference‖ / ‖reference‖`; falls back to the absolute error
    /// when the reference vanishes. Grid spacing cancels, so only shapes
    /// must agree.
    pub fn relative_l2(&self, reference: &Self) -> Result<f64> {
        if self.grid.dims() != reference.grid.dims() {
            return Err(Error::Shape(format!(
                "cannot compare {:?} with {:?}",
                self.grid.dims(),
                reference.grid.dims()
            )));
        }
        let num: f64 =
            self.data.iter().zip(&reference.data).map(|(a, b)| (*a - *b).norm_sqr()).sum();
        let den: f64 = reference.data.iter().map(Multivector::norm_sqr).sum();
        Ok(if den > 0.0 { (num / den).sqrt() } else { num.sqrt() })
    }

    /// Largest componentwise difference divided by the reference's largest
    /// coefficient.
    pub fn relative_max(&self, reference: &Self) -> Result<f64> {
        if self.grid.dims() != reference.grid.dims() {
            return Err(Error::Shape("cannot compare fields of different shapes".into()));
        }
        let diff = self
            .data
            .iter()
            .zip(&reference.data)
            .fold(0.0f64, |m, (a, b)| m.max((*a - *b).max_abs()));
        let scale = reference.max_abs();
        Ok(if scale > 0.0 { diff / scale } else { diff })
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Multivector::is_finite)
    }
}

/// `Σ f[j] · reverse(g[j]) · ΔV`. Its trace is the L² pairing.
pub fn discrete_inner_product<D: Domain>(f: &Field<D>, g: &Field<D>) -> Result<Multivector> {
    f.grid().require_same(g.grid(), "inner product of fields on different grids")?;
    let sum: Multivector = f
        .data()
        .par_iter()
        .zip(g.data())
        .map(|(a, b)| a * &b.reverse())
        .reduce(|| Multivector::ZERO, |a, b| a + b);
    Ok(sum * f.grid().cell_volume())
}

/// Parameters of a modulated Gaussian test signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPacket {
    pub center: [f64; 4],
    pub width: [f64; 4],
    pub amplitude: Multivector,
    pub temporal_freq: f64,
    pub spatial_freq: [f64; 3],
}

impl GaussianPacket {
    /// Unit scalar Gaussian, no modulation.
    pub fn scalar(center: [f64; 4], width: [f64; 4]) -> Self {
        Self {
            center,
            width,
            amplitude: Multivector::one(),
            temporal_freq: 0.0,
            spatial_freq: [0.0; 3],
        }
    }

    pub fn with_amplitude(mut self, amplitude: Multivector) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_modulation(mut self, temporal: f64, spatial: [f64; 3]) -> Self {
        self.temporal_freq = temporal;
        self.spatial_freq = spatial;
        self
    }

    pub fn envelope(&self, p: [f64; 4]) -> f64 {
        let mut q = 0.0;
        for k in 0..4 {
            let u = (p[k] - self.center[k]) / self.width[k];
            q += u * u;
        }
        (-q).exp()
    }

    pub fn eval(&self, p: [f64; 4]) -> Multivector {
        let phase = self.spatial_freq[0] * p[1]
            + self.spatial_freq[1] * p[2]
            + self.spatial_freq[2] * p[3];
        (self.amplitude * self.envelope(p))
            .left_exp_e_t(self.temporal_freq * p[0])
            .right_exp_i3(phase)
    }

    /// Closed-form `∫|f|² d⁴x = |A|² Π σ_k √(π/2)`.
    pub fn norm_sqr_exact(&self) -> f64 {
        self.amplitude.norm_sqr() * self.width.iter().map(|s| s * (PI / 2.0).sqrt()).product::<f64>()
    }

    /// Largest envelope value over the first and last sample of each axis,
    /// relative to the peak.
    pub fn boundary_ratio(&self, g: &SpaceTimeGrid) -> f64 {
        let n = g.dims();
        let mut worst = 0.0f64;
        for k in 0..4 {
            for j in [0, n[k] - 1] {
                let u = (g.coord(k, j) - self.center[k]) / self.width[k];
                worst = worst.max((-u * u).exp());
            }
        }
        worst
    }
}

/// Containment threshold for [`gaussian_packet`].
pub const CONTAINMENT_RATIO: f64 = 1e-8;

/// Samples `exp(e_t ω t) · A · exp(−Σ((x_k − c_k)/σ_k)²) · exp(i_3 k·x̲)`.
///
/// Logs a warning when the envelope at the grid boundary exceeds
/// [`CONTAINMENT_RATIO`] of its peak.
pub fn gaussian_packet(g: &SpaceTimeGrid, p: &GaussianPacket) -> Result<SpaceTimeSignal> {
    if p.width.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::Domain(format!("packet widths must be positive, got {:?}", p.width)));
    }
    let ratio = p.boundary_ratio(g);
    if ratio > CONTAINMENT_RATIO {
        log::warn!(
            "gaussian packet is not contained: boundary/peak = {ratio:.3e} > {CONTAINMENT_RATIO:e}"
        );
    }
    Ok(SpaceTimeSignal::from_fn(*g, |x| p.eval(x)))
}

/// Discrete delta: `value / ΔV` at one index, zero elsewhere.
pub fn delta<D: Domain>(g: &Grid<D>, idx: [usize; 4], value: Multivector) -> Result<Field<D>> {
    let n = g.dims();
    if (0..4).any(|k| idx[k] >= n[k]) {
        return Err(Error::Domain(format!("delta index {idx:?} outside {n:?}")));
    }
    let mut f = Field::zeros(*g);
    let flat = g.flat_index(idx);
    f.data_mut()[flat] = value * (1.0 / g.cell_volume());
    Ok(f)
}

/// Discrete delta at the sample sitting on coordinate zero.
pub fn delta_at_zero<D: Domain>(g: &Grid<D>, value: Multivector) -> Result<Field<D>> {
    let off = g.lattice_offsets("delta at zero")?;
    let n = g.dims();
    let mut idx = [0; 4];
    for k in 0..4 {
        let j = -off[k];
        if j < 0 || j >= n[k] as i64 {
            return Err(Error::Domain(format!("coordinate 0 is not on axis {k} of {g:?}")));
        }
        idx[k] = j as usize;
    }
    delta(g, idx, value)
}

/// Independent random multivector per sample (see [`Multivector::random_unit`]).
pub fn random_field<D: Domain, R: Rng + ?Sized>(g: &Grid<D>, rng: &mut R) -> Field<D> {
    let data = (0..g.len()).map(|_| Multivector::random_unit(rng)).collect();
    Field { grid: *g, data }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BladeIndex;

    #[test]
    fn conjugate_grid_examples() {
        let g = SpaceTimeGrid::new([4; 4], [1.0; 4], [0.0; 4]).unwrap();
        let w = conjugate_grid(&g, 1.0).unwrap();
        assert_eq!(w.axis_coords(0), vec![-PI, -PI / 2.0, 0.0, PI / 2.0]);
        let w2 = conjugate_grid(&g, 2.0).unwrap();
        for (a, b) in w2.axis_coords(1).iter().zip(w.axis_coords(1)) {
            assert!((a - 2.0 * b).abs() < 1e-15);
        }
        // Time axis is not scaled by b.
        assert_eq!(w2.axis_coords(0), w.axis_coords(0));
        assert!(matches!(conjugate_grid(&g, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn index_roundtrip() {
        let g = SpaceTimeGrid::new([2, 3, 4, 5], [1.0; 4], [0.0; 4]).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.flat_index(g.unravel(i)), i);
        }
        assert_eq!(g.flat_index([1, 2, 3, 4]), g.len() - 1);
    }

    #[test]
    fn bad_grids_rejected() {
        assert!(SpaceTimeGrid::new([0, 1, 1, 1], [1.0; 4], [0.0; 4]).is_err());
        assert!(SpaceTimeGrid::new([1; 4], [1.0, 0.0, 1.0, 1.0], [0.0; 4]).is_err());
        assert!(SpaceTimeGrid::new([1; 4], [1.0, -1.0, 1.0, 1.0], [0.0; 4]).is_err());
    }

    #[test]
    fn lattice_offsets() {
        let g = SpaceTimeGrid::centered([8, 3, 4, 5], [0.5; 4]).unwrap();
        assert_eq!(g.lattice_offsets("test").unwrap(), [-4, -1, -2, -2]);
        let h = SpaceTimeGrid::new([4; 4], [1.0; 4], [0.5; 4]).unwrap();
        assert!(h.lattice_offset(0).is_none());
    }

    #[test]
    fn delta_has_unit_mass() {
        let g = SpaceTimeGrid::centered([4; 4], [0.5; 4]).unwrap();
        let d = delta_at_zero(&g, Multivector::one()).unwrap();
        let mass: f64 = d.data().iter().map(|h| h.trace()).sum::<f64>() * g.cell_volume();
        assert!((mass - 1.0).abs() < 1e-14);
        assert_eq!(d.at([2, 2, 2, 2]), Multivector::scalar(16.0));
    }

    #[test]
    fn inner_product_of_orthogonal_blades() {
        let g = SpaceTimeGrid::new([2; 4], [1.0; 4], [0.0; 4]).unwrap();
        let a = delta(&g, [0; 4], Multivector::blade(BladeIndex::E1)).unwrap();
        let b = delta(&g, [0; 4], Multivector::blade(BladeIndex::E2)).unwrap();
        assert_eq!(discrete_inner_product(&a, &b).unwrap().trace(), 0.0);
        assert!(discrete_inner_product(&a, &a).unwrap().trace() > 0.0);
    }

    #[test]
    fn packet_norm_matches_closed_form_when_resolved() {
        // σ = 2Δ keeps the Riemann sum spectrally accurate; 32 points keep the
        // tails below 1e-8 of the peak.
        let g = SpaceTimeGrid::centered([32, 32, 16, 16], [0.25, 0.25, 0.5, 0.5]).unwrap();
        let p = GaussianPacket::scalar([0.0; 4], [0.5, 0.5, 1.0, 1.0])
            .with_amplitude(Multivector::e_t() + Multivector::i3())
            .with_modulation(1.5, [0.5, -1.0, 0.25]);
        let f = gaussian_packet(&g, &p).unwrap();
        let rel = (f.norm_sqr() - p.norm_sqr_exact()).abs() / p.norm_sqr_exact();
        assert!(rel < 1e-6, "{rel:e}");
    }

    #[test]
    fn containment_flag() {
        let g = SpaceTimeGrid::centered([8; 4], [1.0; 4]).unwrap();
        assert!(GaussianPacket::scalar([0.0; 4], [8.0; 4]).boundary_ratio(&g) > CONTAINMENT_RATIO);
        assert!(GaussianPacket::scalar([0.0; 4], [0.6; 4]).boundary_ratio(&g) < CONTAINMENT_RATIO);
        assert!(gaussian_packet(&g, &GaussianPacket::scalar([0.0; 4], [0.0, 1.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn scalar_packet_is_real_gaussian() {
        let g = SpaceTimeGrid::centered([4; 4], [1.0; 4]).unwrap();
        let f = gaussian_packet(&g, &GaussianPacket::scalar([0.0; 4], [1.0; 4])).unwrap();
        let x = g.point([1, 2, 2, 3]);
        let want = (-(x.iter().map(|v| v * v).sum::<f64>())).exp();
        assert_eq!(f.at([1, 2, 2, 3]), Multivector::scalar(want));
    }

    #[test]
    fn negate_axes_mirrors_coordinates() {
        let g = SpaceTimeGrid::new([4; 4], [1.0; 4], [-1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = g.negate_axes([true, false, false, false]).unwrap();
        assert_eq!(r.axis_coords(0), vec![-2.0, -1.0, 0.0, 1.0]);
    }
}
