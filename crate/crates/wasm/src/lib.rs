//! Browser bindings: LCST magnitude slices, Mustard convolution and the
//! algebra checks, for the static page in `www/`.

use wasm_bindgen::prelude::*;

use lcst_core::convolution::{mustard_as_eight, mustard_convolve, EightTermReading};
use lcst_core::grid::{gaussian_packet, Domain, Field};
use lcst_core::verify::{check_algebra, Status, VerifyConfig};
use lcst_core::{Error, GaussianPacket, LcParams, Path, Result, SpaceTimeGrid, SpaceTimeSignal, Transform};

/// Largest samples-per-axis accepted from the page.
pub const MAX_N: usize = 24;

/// A 2-D magnitude image over two axes of a 4-D field.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Slice {
    n: usize,
    lo: f64,
    hi: f64,
    values: Vec<f64>,
    note: String,
}

#[wasm_bindgen]
impl Slice {
    /// Samples per side; `values` is row-major `n × n`.
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// First coordinate on both axes.
    #[wasm_bindgen(getter)]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Last coordinate on both axes.
    #[wasm_bindgen(getter)]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn note(&self) -> String {
        self.note.clone()
    }
}

fn js_err(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Domain(format!("samples per axis must be in 2..={MAX_N}, got {n}")));
    }
    Ok(())
}

/// |h| over axes 1 and 2 with axes 0 and 3 at their middle sample.
fn middle_slice<D: Domain>(f: &Field<D>, note: String) -> Slice {
    let g = f.grid();
    let n = g.dims()[1];
    let (m0, m3) = (g.dims()[0] / 2, g.dims()[3] / 2);
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(f.at([m0, i, j, m3]).norm_sqr().sqrt());
        }
    }
    Slice { n, lo: g.coord(1, 0), hi: g.coord(1, n - 1), values, note }
}

fn packet(n: usize, width: f64, shift: f64, freq: f64) -> Result<SpaceTimeSignal> {
    check_n(n)?;
    let g = SpaceTimeGrid::centered([n; 4], [8.0 / n as f64; 4])?;
    let p = GaussianPacket::scalar([0.0, shift, -shift, 0.0], [width; 4]).with_modulation(freq, [freq, 0.0, 0.0]);
    gaussian_packet(&g, &p)
}

/// LCST of a modulated Gaussian, shown as `|F|` over `(w1, w2)`.
///
/// The matrix is `(a, b; c, d)` with `ad − bc = 1`; `b` must be nonzero.
pub fn lcst_magnitude(a: f64, b: f64, c: f64, d: f64, n: usize, width: f64, freq: f64) -> Result<Slice> {
    let params = LcParams::with_tolerance(a, b, c, d, 1e-9)?;
    params.require_b("the demo")?;
    let f = packet(n, width, 0.0, freq)?;
    let spectrum = Transform::Lcst { params }.forward_conjugate(&f, Path::Fast)?;
    let ratio = spectrum.norm_sqr() / (std::f64::consts::TAU * f.norm_sqr());
    Ok(middle_slice(&spectrum, format!("‖F‖²/(2π‖f‖²) = {ratio:.12}")))
}

/// Mustard convolution of two shifted Gaussians, with the distance to its
/// eight-convolution expansion in the note.
pub fn mustard_magnitude(n: usize, width: f64, shift: f64, freq: f64) -> Result<Slice> {
    let f = packet(n, width, shift, freq)?;
    let g = packet(n, width * 0.7, -shift, -freq)?;
    let h = mustard_convolve(&f, &g)?;
    let eight = mustard_as_eight(&f, &g, EightTermReading::default())?;
    let dev = eight.relative_l2(&h)?;
    Ok(middle_slice(&h, format!("eight-term expansion differs by {dev:.3e} (relative L²)")))
}

/// Runs the algebra checks and returns one line per check.
pub fn algebra_lines(seed: u64) -> Result<String> {
    let cfg = VerifyConfig { seed, ..VerifyConfig::default() };
    let reports = check_algebra(&cfg)?;
    let mut out = String::new();
    for r in &reports {
        let tag = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::ExpectedDeviation => "deviation",
        };
        out.push_str(&format!("{tag:<9} {:<36} residual {:.2e} (tol {:.0e})\n", r.check_name, r.residual, r.tolerance));
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn lcst_slice(a: f64, b: f64, c: f64, d: f64, n: usize, width: f64, freq: f64) -> std::result::Result<Slice, JsError> {
    lcst_magnitude(a, b, c, d, n, width, freq).map_err(js_err)
}

#[wasm_bindgen]
pub fn mustard_slice(n: usize, width: f64, shift: f64, freq: f64) -> std::result::Result<Slice, JsError> {
    mustard_magnitude(n, width, shift, freq).map_err(js_err)
}

#[wasm_bindgen]
pub fn algebra_report(seed: u64) -> std::result::Result<String, JsError> {
    algebra_lines(seed).map_err(js_err)
}
