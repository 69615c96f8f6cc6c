//! Split-based chirp-FFT evaluation on conjugate lattices.
//!
//! For each part `h±` of the split, `exp(θ e_t) h± = h± exp(∓θ i_3)`, so the
//! left temporal exponential moves to the right and the whole kernel becomes
//! a right multiplication by `exp(i_3 Θ)`. Right multiplication by `i_3`
//! rotates eight coefficient planes, and a part is determined by the four
//! planes without `e_t`, so each part becomes four ordinary complex
//! sequences. Per axis, with `u_j = o_u + jΔu` and `v_m = o_v + mΔv`,
//!
//! ```text
//! γ u_j v_m = γ o_u v_m + γ jΔu o_v + γ Δu Δv j m
//! ```
//!
//! and `|γ| Δu Δv N = 2π` turns the last term into a DFT twiddle. The rest
//! are pre- and post-chirps.

use std::sync::{Arc, LazyLock, Mutex};

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::algebra::{ComplexPlane, Multivector, ACTIONS};
use crate::error::{Error, Result};
use crate::grid::{Domain, Field, Grid};

use super::{AxisPhase, Kernel};

static PLANNER: LazyLock<Mutex<FftPlanner<f64>>> = LazyLock::new(|| Mutex::new(FftPlanner::new()));

pub(crate) fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.lock().expect("planner lock").plan_fft(n, direction)
}

/// Unnormalized in-place DFT along one axis of a row-major 4-D array.
///
/// Lines along `axis` are gathered into a contiguous buffer so one call
/// transforms them all.
pub(crate) fn fft_axis(data: &mut [Complex64], dims: [usize; 4], axis: usize, fft: &dyn Fft<f64>) {
    let n = dims[axis];
    if n == 1 {
        return;
    }
    let stride: usize = dims[axis + 1..].iter().product();
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    if stride == 1 {
        fft.process_with_scratch(data, &mut scratch);
        return;
    }
    let block = n * stride;
    let mut lines = vec![Complex64::default(); block];
    for chunk in data.chunks_mut(block) {
        for j in 0..n {
            let row = &chunk[j * stride..(j + 1) * stride];
            for (i, z) in row.iter().enumerate() {
                lines[i * n + j] = *z;
            }
        }
        fft.process_with_scratch(&mut lines, &mut scratch);
        for j in 0..n {
            let row = &mut chunk[j * stride..(j + 1) * stride];
            for (i, z) in row.iter_mut().enumerate() {
                *z = lines[i * n + j];
            }
        }
    }
}

struct AxisPlan {
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
    fft: Arc<dyn Fft<f64>>,
}

fn cis(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

fn axis_plan(p: &AxisPhase, n: usize, u0: f64, du: f64, v0: f64, dv: f64) -> AxisPlan {
    let pre = (0..n)
        .map(|j| {
            let u = u0 + j as f64 * du;
            cis(p.alpha * u * u + p.gamma * j as f64 * du * v0)
        })
        .collect();
    let post = (0..n)
        .map(|m| {
            let v = v0 + m as f64 * dv;
            cis(p.beta * v * v + p.gamma * u0 * v)
        })
        .collect();
    let direction = if p.gamma > 0.0 { FftDirection::Inverse } else { FftDirection::Forward };
    AxisPlan { pre, post, fft: plan(n, direction) }
}

/// Relative tolerance on `|γ| Δu Δv N = 2π`.
const CONJUGACY_TOLERANCE: f64 = 1e-9;

fn check_conjugate<D: Domain, E: Domain>(k: &Kernel, gi: &Grid<D>, go: &Grid<E>) -> Result<()> {
    if gi.dims() != go.dims() {
        return Err(Error::Shape(format!(
            "fast path maps N samples to N samples per axis, got {:?} -> {:?}",
            gi.dims(),
            go.dims()
        )));
    }
    let gammas = [k.time.gamma, k.space[0].gamma, k.space[1].gamma, k.space[2].gamma];
    for axis in 0..4 {
        let n = gi.dims()[axis] as f64;
        let product = gammas[axis].abs() * gi.spacing()[axis] * go.spacing()[axis] * n;
        let rel = (product / std::f64::consts::TAU - 1.0).abs();
        if !(rel <= CONJUGACY_TOLERANCE) {
            return Err(Error::Domain(format!(
                "fast path needs a conjugate lattice: axis {axis} has |γ|·Δu·Δv·N = {product} instead of 2π"
            )));
        }
    }
    Ok(())
}

/// Multiplies `z` by the separable product `a[i0]·b[i1]·c[i2]·d[i3]`.
fn apply_chirps(z: &mut [Complex64], dims: [usize; 4], f: [&[Complex64]; 4], extra: Complex64) {
    let mut i = 0;
    for a in &f[0][..dims[0]] {
        let a = *a * extra;
        for b in &f[1][..dims[1]] {
            let ab = a * *b;
            for c in &f[2][..dims[2]] {
                let abc = ab * *c;
                for d in &f[3][..dims[3]] {
                    z[i] *= abc * *d;
                    i += 1;
                }
            }
        }
    }
}

/// Evaluates the kernel sum with chirp-FFTs; `out` must be conjugate to the input.
///
/// A split part `y` satisfies `y = ±e_t y i_3`, so it is fixed by its
/// coefficients on the four i_3-planes without `e_t`. Only those eight
/// channels (four per part) are transformed.
pub fn apply_fast<D: Domain, E: Domain>(
    k: &Kernel,
    f: &Field<D>,
    out: &Grid<E>,
) -> Result<Field<E>> {
    let gi = f.grid();
    check_conjugate(k, gi, out)?;
    let dims = gi.dims();
    let len = gi.len();
    let (u0, du, v0, dv) = (gi.origin(), gi.spacing(), out.origin(), out.spacing());
    let planes: Vec<ComplexPlane> =
        ACTIONS.planes.iter().copied().filter(|p| !p.re.has_time() && !p.im.has_time()).collect();
    debug_assert_eq!(planes.len(), 4);

    let space: Vec<AxisPlan> =
        (1..4).map(|a| axis_plan(&k.space[a - 1], dims[a], u0[a], du[a], v0[a], dv[a])).collect();
    let global = cis(k.phase) * (k.scale * gi.cell_volume());

    let jobs: Vec<(f64, usize)> =
        [1.0, -1.0].iter().flat_map(|&p| (0..planes.len()).map(move |c| (p, c))).collect();
    // One pass over the input fills every channel with its split coefficients.
    let mut channels: Vec<Vec<Complex64>> = vec![Vec::with_capacity(len); jobs.len()];
    for h in f.data() {
        let flip = h.left_e_t().right_i3();
        for (&(p, c), z) in jobs.iter().zip(channels.iter_mut()) {
            let plane = planes[c];
            let (re, im) = (plane.re.get(), plane.im.get());
            z.push(Complex64::new(
                0.5 * (h.0[re] + p * flip.0[re]),
                0.5 * plane.sign * (h.0[im] + p * flip.0[im]),
            ));
        }
    }
    channels.par_iter_mut().zip(jobs.par_iter()).for_each(|(z, &(p, _))| {
        let time = axis_plan(&k.time.scaled(-p), dims[0], u0[0], du[0], v0[0], dv[0]);
        let axes = [&time, &space[0], &space[1], &space[2]];
        apply_chirps(z, dims, axes.map(|a| a.pre.as_slice()), Complex64::new(1.0, 0.0));
        for (a, ax) in axes.iter().enumerate() {
            fft_axis(z, dims, a, ax.fft.as_ref());
        }
        apply_chirps(z, dims, axes.map(|a| a.post.as_slice()), global);
    });

    let data: Vec<Multivector> = (0..len)
        .into_par_iter()
        .map(|i| {
            let mut parts = [Multivector::ZERO; 2];
            for (&(p, c), z) in jobs.iter().zip(&channels) {
                let plane = planes[c];
                let h = &mut parts[usize::from(p < 0.0)];
                h.0[plane.re.get()] = z[i].re;
                h.0[plane.im.get()] = plane.sign * z[i].im;
            }
            let [yp, ym] = parts;
            yp + yp.left_e_t().right_i3() + ym - ym.left_e_t().right_i3()
        })
        .collect();
    Field::new(*out, data)
}
