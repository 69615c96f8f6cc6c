//! Probe signals and fitting helpers used by the checks.

use crate::algebra::{BladeIndex, Multivector};
use crate::error::Result;
use crate::grid::{gaussian_packet, Domain, Field, GaussianPacket, SpaceTimeGrid, SpaceTimeSignal};

/// Physical extent shared by the inversion sweeps.
pub const EXTENT: f64 = 6.0;

/// Centered grid with `n` points per axis covering [`EXTENT`].
pub fn extent_grid(n: usize) -> Result<SpaceTimeGrid> {
    SpaceTimeGrid::centered([n; 4], [EXTENT / n as f64; 4])
}

/// A multivector-valued, modulated Gaussian that is contained on
/// `extent_grid(8)`.
pub fn contained_gaussian(g: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    gaussian_packet(
        g,
        &GaussianPacket::scalar([0.0, 0.05, -0.05, 0.0], [0.5, 0.45, 0.5, 0.45])
            .with_amplitude(
                Multivector::one()
                    + Multivector::blade_scaled(BladeIndex::ET2, 0.5)
                    + Multivector::blade_scaled(BladeIndex::E13, -0.3)
                    + Multivector::blade_scaled(BladeIndex::IST, 0.2),
            )
            .with_modulation(0.4, [0.3, -0.2, 0.1]),
    )
}

/// Second probe for inner-product checks, overlapping [`contained_gaussian`].
pub fn partner_gaussian(g: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    gaussian_packet(
        g,
        &GaussianPacket::scalar([0.1, 0.0, 0.05, -0.05], [0.45, 0.5, 0.45, 0.5])
            .with_amplitude(Multivector::one() + Multivector::blade_scaled(BladeIndex::E12, 0.3))
            .with_modulation(-0.2, [0.0, 0.3, 0.2]),
    )
}

/// `Σ Tr(a · reverse(b))`, the real part of the discrete inner product
/// without the cell volume.
pub fn trace_inner<D: Domain>(a: &Field<D>, b: &Field<D>) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| (*x * y.reverse()).trace()).sum()
}

/// Least-squares real `k` with `a ≈ k · b`, and the relative residual of the fit.
pub fn fit_scalar<D: Domain>(a: &Field<D>, b: &Field<D>) -> Result<(f64, f64)> {
    let den = trace_inner(b, b);
    let k = if den > 0.0 { trace_inner(a, b) / den } else { 0.0 };
    let resid = a.relative_l2(&b.scale(k))?;
    Ok((k, resid))
}

/// Largest relative spread of a set of positive constants around their mean.
pub fn spread(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v / mean - 1.0).abs()).fold(0.0, f64::max)
}
