//! Direct quadrature of a separable kernel.
//!
//! The right `i_3` factor is a product of commuting per-axis exponentials and
//! the left `e_t` factor depends only on `(t, w_t)`, so the 4-D sum is
//! evaluated one axis at a time: each pass is an exact matrix sum over one
//! input axis, for any pair of input and output lattices.

use rayon::prelude::*;

use crate::algebra::Multivector;
use crate::grid::{Domain, Field, Grid};

use super::{AxisPhase, Kernel};

#[derive(Clone, Copy)]
enum Side {
    /// `exp(e_t θ) · h`
    LeftTime,
    /// `h · exp(i_3 θ)`
    RightI3,
}

/// `(cos θ, sin θ)·Δu` for every output/input pair, output-major.
fn phase_table(p: &AxisPhase, u: &[f64], v: &[f64], du: f64) -> Vec<(f64, f64)> {
    let mut table = Vec::with_capacity(u.len() * v.len());
    for &vv in v {
        for &uu in u {
            let (s, c) = p.eval(uu, vv).sin_cos();
            table.push((c * du, s * du));
        }
    }
    table
}

fn strides(dims: [usize; 4]) -> [usize; 4] {
    [dims[1] * dims[2] * dims[3], dims[2] * dims[3], dims[3], 1]
}

/// Replaces `axis` (length `n_in`) by an output axis of length `table.len()/n_in`.
fn contract(
    data: &[Multivector],
    dims: [usize; 4],
    axis: usize,
    table: &[(f64, f64)],
    side: Side,
) -> (Vec<Multivector>, [usize; 4]) {
    let n_in = dims[axis];
    let n_out = table.len() / n_in;
    let mut out_dims = dims;
    out_dims[axis] = n_out;
    let s_in = strides(dims);
    let s_out = strides(out_dims);
    let len: usize = out_dims.iter().product();
    let out = (0..len)
        .into_par_iter()
        .map(|o| {
            let mut rem = o;
            let mut base = 0;
            let mut m = 0;
            for k in 0..4 {
                let i = rem / s_out[k];
                rem %= s_out[k];
                if k == axis {
                    m = i;
                } else {
                    base += i * s_in[k];
                }
            }
            let row = &table[m * n_in..(m + 1) * n_in];
            let mut even = Multivector::ZERO;
            let mut odd = Multivector::ZERO;
            for (j, &(c, s)) in row.iter().enumerate() {
                let h = &data[base + j * s_in[axis]];
                for b in 0..16 {
                    even.0[b] += c * h.0[b];
                    odd.0[b] += s * h.0[b];
                }
            }
            match side {
                Side::LeftTime => even + odd.left_e_t(),
                Side::RightI3 => even + odd.right_i3(),
            }
        })
        .collect();
    (out, out_dims)
}

/// Evaluates the kernel sum for every sample of `out`.
pub fn apply_direct<D: Domain, E: Domain>(k: &Kernel, f: &Field<D>, out: &Grid<E>) -> Field<E> {
    let gi = f.grid();
    let du = gi.spacing();
    let mut dims = gi.dims();
    let mut data = f.data().to_vec();
    for axis in (1..4).rev() {
        let table = phase_table(
            &k.space[axis - 1],
            &gi.axis_coords(axis),
            &out.axis_coords(axis),
            du[axis],
        );
        (data, dims) = contract(&data, dims, axis, &table, Side::RightI3);
    }
    let table = phase_table(&k.time, &gi.axis_coords(0), &out.axis_coords(0), du[0]);
    (data, _) = contract(&data, dims, 0, &table, Side::LeftTime);
    let (s, c) = k.phase.sin_cos();
    data.par_iter_mut().for_each(|h| {
        *h = (*h * c + h.right_i3() * s) * k.scale;
    });
    Field::new(*out, data).expect("contraction preserves the output shape")
}
