//! Space-time algebra Cl(3,1), the linear canonical space-time transform
//! family and its convolution theorems, on sampled 4-D signals.

pub mod algebra;
pub mod bench;
pub mod convolution;
pub mod error;
pub mod grid;
pub mod io;
pub mod transforms;
pub mod verify;

pub use algebra::{BladeIndex, Multivector, SignTable};
pub use error::{Error, Result};
pub use grid::{
    FrequencyGrid, GaussianPacket, SpaceTimeGrid, SpaceTimeSignal, Spectrum,
};
pub use transforms::{ConstantsMode, FrParams, LcParams, Path, Transform, TwoSidedParams};
