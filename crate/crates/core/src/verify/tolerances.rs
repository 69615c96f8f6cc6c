//! Tolerance classes shared by the checks.

/// Identities that hold in exact sign arithmetic.
pub const EXACT: f64 = 1e-12;
/// Floating-point algebraic identities.
pub const ALGEBRAIC: f64 = 1e-10;
/// Quadrature identities on resolved Gaussian probes.
pub const QUADRATURE: f64 = 1e-6;
/// Identities that are exact statements on the discrete torus.
pub const TORUS: f64 = 1e-8;
/// Lattice translation and modulation covariance.
pub const COVARIANCE: f64 = 1e-8;
/// Fast path against direct quadrature.
pub const FAST_PATH: f64 = 1e-10;
/// Relative tolerance on fitted constants and ratios.
pub const RATIO: f64 = 0.01;
/// Minimum residual reduction when the step halves.
pub const RICHARDSON: f64 = 3.5;
/// FrSFT verbatim round-trip bound.
pub const FRACTIONAL_ROUNDTRIP: f64 = 1e-4;
