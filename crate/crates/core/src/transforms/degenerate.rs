//! The `b = 0` LCST: a temporal SFT followed by the pointwise spatial map
//! `w̲ ↦ √d · f(·, d w̲) · exp(i_3 c d w̲²/2)`.

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::grid::{FrequencyGrid, SpaceTimeSignal, Spectrum};

use super::LcParams;

/// Allowed distance from a lattice point, in units of the spacing.
pub const LATTICE_TOLERANCE: f64 = 1e-9;

pub(super) fn lcst_b_zero(f: &SpaceTimeSignal, p: &LcParams, wg: &FrequencyGrid) -> Result<Spectrum> {
    if p.d <= 0.0 {
        return Err(Error::Domain(format!("b = 0 branch needs d > 0 for √d, got d = {}", p.d)));
    }
    let gx = f.grid();
    let nx = gx.dims();
    let nw = wg.dims();

    // Spatial lookup table per axis: frequency index -> space index.
    let mut lookup: [Vec<usize>; 3] = Default::default();
    let mut off_lattice = 0usize;
    for k in 1..4 {
        lookup[k - 1] = (0..nw[k])
            .map(|m| {
                let target = p.d * wg.coord(k, m);
                let r = (target - gx.origin()[k]) / gx.spacing()[k];
                let j = r.round();
                if (r - j).abs() > LATTICE_TOLERANCE {
                    off_lattice += 1;
                }
                // The sampled signal lives on a torus.
                (j as i64).rem_euclid(nx[k] as i64) as usize
            })
            .collect();
    }
    if off_lattice > 0 {
        log::warn!(
            "b = 0 transform: {off_lattice} spatial frequency samples map off the signal lattice; \
             using the nearest lattice point"
        );
    }

    let dt = gx.spacing()[0];
    let ts = gx.axis_coords(0);
    let sqrt_d = p.d.sqrt();
    Ok(Spectrum::from_index_fn(*wg, |m| {
        let w = wg.point(m);
        let src = [lookup[0][m[1]], lookup[1][m[2]], lookup[2][m[3]]];
        let mut acc = Multivector::ZERO;
        for (j, &t) in ts.iter().enumerate() {
            acc += f.at([j, src[0], src[1], src[2]]).left_exp_e_t(-w[0] * t);
        }
        let w2 = w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
        (acc * (dt * sqrt_d)).right_exp_i3(p.c * p.d * w2 / 2.0)
    }))
}
