use std::f64::consts::{FRAC_PI_3, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::probes::{contained_gaussian, extent_grid, fit_scalar, partner_gaussian, spread};
use super::tolerances::{
    ALGEBRAIC, COVARIANCE, EXACT, FAST_PATH, FRACTIONAL_ROUNDTRIP, QUADRATURE, RATIO, RICHARDSON,
};
use super::{ResidualReport, VerifyConfig};
use crate::algebra::{BladeIndex, Multivector};
use crate::convolution::{reflect, ReflectionIndex};
use crate::error::Result;
use crate::grid::{
    discrete_inner_product, gaussian_packet, random_field, Domain, Field, GaussianPacket, Grid,
    SpaceTimeGrid, SpaceTimeSignal, Spectrum,
};
use crate::transforms::{
    lcst, lcst_fast, ConstantsMode, FrParams, LcParams, Path, Transform, TwoSidedParams,
};

fn a_main() -> LcParams {
    LcParams { a: 2.0, b: 1.0, c: 1.0, d: 1.0 }
}

fn a_negative_b() -> LcParams {
    LcParams { a: 1.0, b: -0.5, c: 2.0, d: 0.0 }
}

fn two_sided_params() -> TwoSidedParams {
    TwoSidedParams {
        m1: LcParams { a: 1.0, b: 0.5, c: 0.0, d: 1.0 },
        m2: LcParams { a: 0.5, b: 2.0, c: -0.25, d: 1.0 },
    }
}

fn round_trip(t: &Transform, f: &SpaceTimeSignal, out: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    let s = t.forward_conjugate(f, Path::Direct)?;
    t.inverse(&s, out, Path::Direct)
}

/// On-lattice round trip, and the round trip evaluated half a cell off the
/// lattice against the probe sampled there.
fn round_trip_errors(t: &Transform, n: usize) -> Result<(f64, f64)> {
    let g = extent_grid(n)?;
    let f = contained_gaussian(&g)?;
    let on = round_trip(t, &f, &g)?.relative_l2(&f)?;
    let half: [f64; 4] = std::array::from_fn(|k| g.spacing()[k] / 2.0);
    let mid = g.shift(half)?;
    let off = round_trip(t, &f, &mid)?.relative_l2(&contained_gaussian(&mid)?)?;
    Ok((on, off))
}

fn transform_name(t: &Transform) -> String {
    match t {
        Transform::Sft => "SFT".into(),
        Transform::Lcst { params: p } => format!("LCST ({}, {}; {}, {})", p.a, p.b, p.c, p.d),
        Transform::Frsft { params, mode } => format!("FrSFT α={:.4} {mode:?}", params.alpha),
        Transform::TwoSided { mode, .. } => format!("two-sided LCST {mode:?}"),
    }
}

fn lcst_anchor(t: &Transform) -> &'static str {
    match t {
        Transform::Sft => "SFT inversion formula",
        Transform::Lcst { .. } => "LCST inversion formula",
        Transform::Frsft { .. } => "FrSFT inversion formula",
        Transform::TwoSided { .. } => "two-sided LCST reconstruction",
    }
}

pub fn check_inversions(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let sweep = [4usize, 8, 12];
    let family = [
        Transform::Sft,
        Transform::Lcst { params: a_main() },
        Transform::Lcst { params: a_negative_b() },
        Transform::Frsft { params: FrParams { alpha: FRAC_PI_3 }, mode: cfg.mode },
        Transform::Frsft { params: FrParams { alpha: 2.2 }, mode: cfg.mode },
        Transform::TwoSided { params: two_sided_params(), mode: cfg.mode },
    ];
    for t in &family {
        let mut on = Vec::new();
        let mut off = Vec::new();
        for &n in &sweep {
            let (a, b) = round_trip_errors(t, n)?;
            on.push(a);
            off.push(b);
        }
        let g8 = extent_grid(8)?;
        let verbatim_sensitive = matches!(t, Transform::Frsft { .. } | Transform::TwoSided { .. });
        let mut r = ResidualReport::new(
            format!("round trip: {}", transform_name(t)),
            lcst_anchor(t),
            on[1],
            QUADRATURE,
        )
        .with_grid(&g8)
        .with_params(serde_json::to_value(t)?)
        .with_note("contained Gaussian probe, direct quadrature on the conjugate lattice")
        .expected_deviation_if(verbatim_sensitive && cfg.mode == ConstantsMode::Verbatim);
        if r.status == super::Status::ExpectedDeviation {
            r = r.with_note("printed normalizing constants do not compose to the identity");
        }
        out.push(r);

        let steps = off.windows(2).filter(|w| w[1] >= w[0]).count();
        let mut conv = ResidualReport::new(
            format!("round-trip convergence: {}", transform_name(t)),
            lcst_anchor(t),
            steps as f64,
            0.0,
        )
        .with_params(json!({ "dims": sweep, "extent": super::probes::EXTENT, "transform": t }))
        .with_note(
            "residual counts non-decreasing steps of the half-cell-offset reconstruction error over 4⁴, 8⁴, 12⁴; \
             the on-lattice round trip is exact to roundoff at every size",
        )
        .expected_deviation_if(verbatim_sensitive && cfg.mode == ConstantsMode::Verbatim);
        for (k, &n) in sweep.iter().enumerate() {
            conv = conv
                .with_constant(format!("offset_error_{n}"), off[k])
                .with_constant(format!("lattice_error_{n}"), on[k]);
        }
        out.push(conv);
    }

    out.push(two_sided_verbatim_defect()?);
    out.extend(frsft_constants()?);
    Ok(out)
}

/// Round trip with the printed two-sided constant is `(2πB₂)²` times the
/// identity.
fn two_sided_verbatim_defect() -> Result<ResidualReport> {
    let p = two_sided_params();
    let t = Transform::TwoSided { params: p, mode: ConstantsMode::Verbatim };
    let predicted = (TAU * p.m2.b.abs()).powi(2);
    let mut ks = Vec::new();
    let mut worst_fit = 0.0f64;
    for n in [4, 8] {
        let g = extent_grid(n)?;
        let f = contained_gaussian(&g)?;
        let (k, resid) = fit_scalar(&round_trip(&t, &f, &g)?, &f)?;
        ks.push(k);
        worst_fit = worst_fit.max(resid);
    }
    let residual = ks.iter().map(|k| (k / predicted - 1.0).abs()).fold(spread(&ks), f64::max);
    Ok(ResidualReport::new("two-sided printed-constant defect", "two-sided LCST reconstruction", residual, RATIO)
        .with_params(serde_json::to_value(p)?)
        .with_constant("defect_4", ks[0])
        .with_constant("defect_8", ks[1])
        .with_constant("predicted", predicted)
        .with_constant("fit_residual", worst_fit)
        .with_note("printed (2πB₂)^{-1/2} spatial constant on both directions; defect fitted at 4⁴ and 8⁴"))
}

fn frsft_constants() -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for alpha in [FRAC_PI_3, 2.2] {
        let fp = FrParams::new(alpha)?;
        let t = Transform::Frsft { params: fp, mode: ConstantsMode::Verbatim };
        let predicted = alpha.sin().powf(-1.5);
        let mut ks = Vec::new();
        let mut rt = Vec::new();
        for n in [4, 8] {
            let g = extent_grid(n)?;
            let f = contained_gaussian(&g)?;
            let back = round_trip(&t, &f, &g)?;
            let (k, _) = fit_scalar(&back, &f)?;
            ks.push(k);
            rt.push(back.relative_l2(&f)?);
        }
        let residual = ks.iter().map(|k| (k / predicted - 1.0).abs()).fold(spread(&ks), f64::max);
        out.push(
            ResidualReport::new(format!("FrSFT printed-inverse constant α={alpha:.4}"), "FrSFT inversion formula", residual, RATIO)
                .with_params(json!({ "alpha": alpha }))
                .with_constant("defect_4", ks[0])
                .with_constant("defect_8", ks[1])
                .with_constant("predicted_csc_3_2", predicted)
                .with_note("printed forward and inverse constants compose to (csc α)^{3/2}"),
        );
        out.push(ResidualReport::new(
            format!("FrSFT printed-constant round trip α={alpha:.4}"),
            "FrSFT inversion formula",
            rt[1],
            FRACTIONAL_ROUNDTRIP,
        )
        .with_params(json!({ "alpha": alpha, "mode": "verbatim" }))
        .with_constant("round_trip_4", rt[0])
        .with_constant("round_trip_8", rt[1])
        .with_note("residual is |(csc α)^{3/2} - 1|, see the constant check")
        .expected_deviation());

        // The printed FrSFT is the rotation LCST times (2π)^{3/2} e^{i3 φ}.
        let g = extent_grid(8)?;
        let f = contained_gaussian(&g)?;
        let wg = t.conjugate_grid(&g)?;
        let fr = t.forward(&f, &wg, Path::Direct)?;
        let phi = (2.0 * alpha - std::f64::consts::PI) / 4.0;
        let lc = lcst(&f, &LcParams::rotation(alpha), &wg)?.map(|h| h.right_exp_i3(phi));
        let (k, resid) = fit_scalar(&fr, &lc)?;
        let predicted = TAU.powf(1.5);
        out.push(
            ResidualReport::new(
                format!("FrSFT as rotation LCST α={alpha:.4}"),
                "FrSFT kernel",
                (k / predicted - 1.0).abs().max(resid),
                ALGEBRAIC,
            )
            .with_grid(&g)
            .with_params(json!({ "alpha": alpha }))
            .with_constant("ratio", k)
            .with_constant("predicted", predicted),
        );
    }
    Ok(out)
}

fn rng(cfg: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
}

/// Random samples on the interior box `lo..=hi` of every axis, zero elsewhere.
fn compact_random(g: &SpaceTimeGrid, lo: usize, hi: usize, r: &mut ChaCha8Rng) -> SpaceTimeSignal {
    let full = random_field(g, r);
    SpaceTimeSignal::from_index_fn(*g, |idx| {
        if idx.iter().all(|&j| j >= lo && j <= hi) {
            full.at(idx)
        } else {
            Multivector::ZERO
        }
    })
}

/// `f(x − y)` for a lattice shift `s` (in samples) that keeps the support inside.
fn lattice_shift(f: &SpaceTimeSignal, s: [i64; 4]) -> SpaceTimeSignal {
    let n = f.grid().dims();
    SpaceTimeSignal::from_index_fn(*f.grid(), |idx| {
        let src: [i64; 4] = std::array::from_fn(|k| idx[k] as i64 - s[k]);
        if (0..4).all(|k| src[k] >= 0 && src[k] < n[k] as i64) {
            f.at(std::array::from_fn(|k| src[k] as usize))
        } else {
            Multivector::ZERO
        }
    })
}

fn translation_residual(p: &LcParams, f: &SpaceTimeSignal, s: [i64; 4], printed: bool) -> Result<f64> {
    let g = f.grid();
    let y: [f64; 4] = std::array::from_fn(|k| s[k] as f64 * g.spacing()[k]);
    let wg = Transform::Lcst { params: *p }.conjugate_grid(g)?;
    let lhs = lcst(&lattice_shift(f, s), p, &wg)?;
    let shifted = wg.shift([0.0, -p.a * y[1], -p.a * y[2], -p.a * y[3]])?;
    let moved = lcst(f, p, &shifted)?.with_grid(wg)?;
    let y2 = y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
    let coef = if printed { (p.a - 1.0) / p.b } else { p.c };
    let rhs = moved.map_with_point(|w, h| {
        let yw = y[1] * w[1] + y[2] * w[2] + y[3] * w[3];
        h.left_exp_e_t(-y[0] * w[0]).right_exp_i3(coef * (yw - p.a * y2 / 2.0))
    });
    lhs.relative_l2(&rhs)
}

fn modulation_residual(p: &LcParams, f: &SpaceTimeSignal, u: [f64; 4]) -> Result<f64> {
    let g = f.grid();
    let wg = Transform::Lcst { params: *p }.conjugate_grid(g)?;
    let modulated = f.map_with_point(|x, h| {
        h.left_exp_e_t(-u[0] * x[0]).right_exp_i3(-(x[1] * u[1] + x[2] * u[2] + x[3] * u[3]))
    });
    let lhs = lcst(&modulated, p, &wg)?;
    let shifted = wg.shift([u[0], p.b * u[1], p.b * u[2], p.b * u[3]])?;
    let moved = lcst(f, p, &shifted)?.with_grid(wg)?;
    let u2 = u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
    let rhs = moved.map_with_point(|w, h| {
        let wu = w[1] * u[1] + w[2] * u[2] + w[3] * u[3];
        h.right_exp_i3(-p.d * (p.b * u2 + 2.0 * wu) / 2.0)
    });
    lhs.relative_l2(&rhs)
}

pub fn check_covariances(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let mut r = rng(cfg, 1);

    // Reflection on an odd, symmetric grid.
    let g = SpaceTimeGrid::centered([7; 4], [0.5, 0.6, 0.55, 0.45])?;
    let f = random_field(&g, &mut r);
    let mut worst = 0.0f64;
    for p in [a_main(), a_negative_b()] {
        let lhs = lcst_fast(&reflect(&f, ReflectionIndex::ALL)?, &p)?;
        let rhs = reflect(&lcst_fast(&f, &p)?, ReflectionIndex::ALL)?;
        worst = worst.max(lhs.relative_l2(&rhs)?);
    }
    out.push(
        ResidualReport::new("reflection covariance", "LCST of f(-x)", worst, EXACT)
            .with_grid(&g)
            .with_params(json!({ "matrices": [a_main(), a_negative_b()] })),
    );

    // Translation by a lattice vector on a compactly supported signal.
    let g = SpaceTimeGrid::centered([8; 4], [0.5; 4])?;
    let f = compact_random(&g, 2, 4, &mut r);
    let s = [1, 1, -1, 2];
    let d_ne_1 = LcParams { a: 2.0, b: 1.0, c: 3.0, d: 2.0 };
    let worst = translation_residual(&a_main(), &f, s, false)?.max(translation_residual(&d_ne_1, &f, s, false)?);
    out.push(
        ResidualReport::new("translation covariance", "LCST of f(x - y)", worst, COVARIANCE)
            .with_grid(&g)
            .with_params(json!({ "shift_samples": s, "matrices": [a_main(), d_ne_1] }))
            .with_note("phase c(y·w - a y²/2), evaluated on the frequency lattice shifted by -a y"),
    );
    let printed = translation_residual(&d_ne_1, &f, s, true)?;
    out.push(
        ResidualReport::new("translation covariance, printed phase", "LCST of f(x - y)", printed, COVARIANCE)
            .with_grid(&g)
            .with_params(json!({ "shift_samples": s, "matrix": d_ne_1 }))
            .with_note("printed phase (a-1)/b(y·w - a y²/2) agrees with c(...) only when d = 1 or a = 0")
            .expected_deviation(),
    );

    // Modulation.
    let g = SpaceTimeGrid::centered([8; 4], [0.5, 0.6, 0.5, 0.4])?;
    let f = random_field(&g, &mut r);
    let u = [0.7, 0.3, -0.5, 0.2];
    let worst = modulation_residual(&a_main(), &f, u)?.max(modulation_residual(&a_negative_b(), &f, u)?);
    out.push(
        ResidualReport::new("modulation covariance", "LCST of e^{-e_t u_t t} f e^{-i3 x·u}", worst, COVARIANCE)
            .with_grid(&g)
            .with_params(json!({ "u": u, "matrices": [a_main(), a_negative_b()] })),
    );

    // Left linearity with any constant, right linearity with constants commuting with i3.
    let g = SpaceTimeGrid::centered([8; 4], [0.5; 4])?;
    let f1 = random_field(&g, &mut r);
    let f2 = random_field(&g, &mut r);
    let m = Multivector::blade(BladeIndex::ET12);
    let nn = Multivector::i3();
    let p = two_sided_params();
    let mut worst = 0.0f64;
    for t in [Transform::Lcst { params: a_main() }, Transform::TwoSided { params: p, mode: ConstantsMode::Corrected }] {
        let lhs = t.forward_conjugate(&f1.left_mul(&m).add(&f2.right_mul(&nn))?, Path::Fast)?;
        let rhs = t
            .forward_conjugate(&f1, Path::Fast)?
            .left_mul(&m)
            .add(&t.forward_conjugate(&f2, Path::Fast)?.right_mul(&nn))?;
        worst = worst.max(lhs.relative_l2(&rhs)?);
    }
    out.push(
        ResidualReport::new("linearity", "L[M f + g N] = M L[f] + L[g] N, N commuting with i3", worst, ALGEBRAIC)
            .with_grid(&g)
            .with_params(json!({ "M": "e_t12", "N": "i3" })),
    );
    Ok(out)
}

pub fn check_plancherel(_cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let g = extent_grid(8)?;
    let f1 = contained_gaussian(&g)?;
    let f2 = partner_gaussian(&g)?;
    let mut ratios = Vec::new();
    let mut norms = Vec::new();
    for p in [a_main(), a_negative_b()] {
        let l1 = lcst_fast(&f1, &p)?;
        let l2 = lcst_fast(&f2, &p)?;
        let num = discrete_inner_product(&l1, &l2)?.trace();
        let den = discrete_inner_product(&f1, &f2)?.trace();
        ratios.push(num / den);
        norms.push(l1.norm_l2() / f1.norm_l2());
    }
    let r = ratios.iter().map(|q| (q / TAU - 1.0).abs()).fold(0.0, f64::max);
    out.push(
        ResidualReport::new("Plancherel", "Tr<L f1, L f2> = 2π Tr<f1, f2>", r, RATIO)
            .with_grid(&g)
            .with_params(json!({ "matrices": [a_main(), a_negative_b()] }))
            .with_constant("ratio_a", ratios[0])
            .with_constant("ratio_b", ratios[1]),
    );
    let r = norms.iter().map(|q| (q / TAU.sqrt() - 1.0).abs()).fold(0.0, f64::max);
    out.push(
        ResidualReport::new("Parseval", "‖L f‖ = √(2π) ‖f‖", r, RATIO)
            .with_grid(&g)
            .with_constant("ratio_a", norms[0])
            .with_constant("ratio_b", norms[1]),
    );
    let zero = SpaceTimeSignal::zeros(g);
    let lz = lcst_fast(&zero, &a_main())?;
    out.push(
        ResidualReport::new("Parseval, zero signal", "‖L f‖ = √(2π) ‖f‖", lz.norm_l2(), EXACT)
            .with_grid(&g)
            .with_note("degenerate case: both sides vanish"),
    );
    Ok(out)
}

/// Central difference along `axis` with periodic wrap.
fn central_difference<D: Domain>(f: &Field<D>, axis: usize) -> Field<D> {
    let g = f.grid();
    let n = g.dims()[axis];
    let h = g.spacing()[axis];
    Field::from_index_fn(*g, |idx| {
        let mut up = idx;
        let mut dn = idx;
        up[axis] = (idx[axis] + 1) % n;
        dn[axis] = (idx[axis] + n - 1) % n;
        (f.at(up) - f.at(dn)) * (0.5 / h)
    })
}

/// A grid with `n` points along `axis` at spacing `h`, and 4 points at
/// spacing 0.5 elsewhere.
fn axis_grid(axis: usize, n: usize, h: f64) -> Result<SpaceTimeGrid> {
    let mut dims = [4; 4];
    let mut spacing = [0.5; 4];
    dims[axis] = n;
    spacing[axis] = h;
    Grid::centered(dims, spacing)
}

fn derivative_probe(g: &SpaceTimeGrid, axis: usize, width: f64) -> Result<SpaceTimeSignal> {
    let mut w = [0.7; 4];
    w[axis] = width;
    gaussian_packet(
        g,
        &GaussianPacket::scalar([0.0; 4], w)
            .with_amplitude(Multivector::one() + Multivector::blade_scaled(BladeIndex::ET13, 0.4))
            .with_modulation(0.5, [0.5, -0.3, 0.2]),
    )
}

fn times_coord(f: &SpaceTimeSignal, axis: usize) -> SpaceTimeSignal {
    f.map_with_point(|x, h| *h * x[axis])
}

fn derivative_params() -> LcParams {
    LcParams { a: 1.0, b: 2.0, c: -0.45, d: 0.1 }
}

#[derive(Clone, Copy)]
enum Item {
    Time,
    Space,
    FreqTime,
    FreqSpace { printed: bool },
}

fn derivative_residual(item: Item, n: usize) -> Result<f64> {
    let p = derivative_params();
    let k = 1;
    let (lhs, rhs): (Spectrum, Spectrum) = match item {
        Item::Time => {
            let g = axis_grid(0, n, 16.0 / n as f64)?;
            let f = derivative_probe(&g, 0, 1.0)?;
            let lhs = lcst_fast(&central_difference(&f, 0), &p)?;
            let rhs = lcst_fast(&f, &p)?.map_with_point(|w, h| (*h * w[0]).left_e_t());
            (lhs, rhs)
        }
        Item::Space => {
            let g = axis_grid(k, n, 16.0 / n as f64)?;
            let f = derivative_probe(&g, k, 1.0)?;
            let lhs = lcst_fast(&central_difference(&f, k), &p)?;
            let lf = lcst_fast(&f, &p)?;
            let lx = lcst_fast(&times_coord(&f, k), &p)?;
            let rhs = lf
                .map_with_point(|w, h| *h * w[k])
                .sub(&lx.scale(p.a))?
                .map(|h| h.right_i3() * (1.0 / p.b));
            (lhs, rhs)
        }
        Item::FreqTime => {
            let g = axis_grid(0, n, 0.25)?;
            let f = derivative_probe(&g, 0, 0.6)?;
            let lhs = central_difference(&lcst_fast(&f, &p)?, 0);
            let rhs = lcst_fast(&times_coord(&f, 0), &p)?.map(|h| h.left_e_t() * -1.0);
            (lhs, rhs)
        }
        Item::FreqSpace { printed } => {
            let g = axis_grid(k, n, 0.25)?;
            let f = derivative_probe(&g, k, 0.6)?;
            let lf = lcst_fast(&f, &p)?;
            let lhs = central_difference(&lf, k);
            let coef = if printed { p.a } else { p.d };
            let lx = lcst_fast(&times_coord(&f, k), &p)?;
            let rhs = lf
                .map_with_point(|w, h| *h * (coef * w[k]))
                .sub(&lx)?
                .map(|h| h.right_i3() * (1.0 / p.b));
            (lhs, rhs)
        }
    };
    lhs.relative_l2(&rhs)
}

pub fn check_derivatives(_cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let p = derivative_params();
    let cases: [(Item, &str, &str, [usize; 2], &str); 5] = [
        (Item::Time, "derivative in t", "L[∂_t f] = e_t w_t L[f]", [32, 64], "Δt halved at fixed extent 16"),
        (
            Item::Space,
            "derivative in x_1",
            "L[∂_k f] = [w_k L[f] - a L[x_k f]] i3/b",
            [32, 64],
            "Δx halved at fixed extent 16",
        ),
        (Item::FreqTime, "derivative in w_t", "∂_{w_t} L[f] = -e_t L[t f]", [64, 128], "Δw_t halved by doubling N_t"),
        (
            Item::FreqSpace { printed: false },
            "derivative in w_1",
            "∂_{w_k} L[f] = [d w_k L[f] - L[x_k f]] i3/b",
            [64, 128],
            "Δw halved by doubling N",
        ),
        (
            Item::FreqSpace { printed: true },
            "derivative in w_1, printed coefficient",
            "∂_{w_k} L[f] = [a w_k L[f] - L[x_k f]] i3/b",
            [64, 128],
            "Δw halved by doubling N",
        ),
    ];
    for (item, name, anchor, ns, how) in cases {
        let coarse = derivative_residual(item, ns[0])?;
        let fine = derivative_residual(item, ns[1])?;
        let ratio = if coarse > 0.0 { fine / coarse } else { 0.0 };
        let mut rep = ResidualReport::new(name, anchor, ratio, 1.0 / RICHARDSON)
            .with_params(json!({ "matrix": p, "dims": ns, "refinement": how }))
            .with_constant("residual_coarse", coarse)
            .with_constant("residual_fine", fine)
            .with_note("residual is r_fine / r_coarse; O(Δ²) convergence gives 1/4");
        if let Item::FreqSpace { printed: true } = item {
            rep = rep
                .with_note("the printed coefficient a differs from d here (a = 1, d = 0.1), so no convergence")
                .expected_deviation();
        }
        out.push(rep);
    }
    Ok(out)
}

pub fn check_fast_paths(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut r = rng(cfg, 2);
    let g = SpaceTimeGrid::centered([8; 4], [0.5, 0.6, 0.45, 0.55])?;
    let f = random_field(&g, &mut r);
    let mut out = Vec::new();
    let family = [
        Transform::Sft,
        Transform::Lcst { params: a_main() },
        Transform::Lcst { params: a_negative_b() },
        Transform::Frsft { params: FrParams { alpha: 2.2 }, mode: cfg.mode },
        Transform::TwoSided { params: two_sided_params(), mode: ConstantsMode::Corrected },
        Transform::TwoSided {
            params: TwoSidedParams { m1: a_negative_b(), m2: a_main() },
            mode: ConstantsMode::Corrected,
        },
    ];
    for t in &family {
        let wg = t.conjugate_grid(&g)?;
        let fast = t.forward(&f, &wg, Path::Fast)?;
        let direct = t.forward(&f, &wg, Path::Direct)?;
        let fwd = fast.relative_l2(&direct)?;
        let s = random_field(&wg, &mut r);
        let inv = t.inverse(&s, &g, Path::Fast)?.relative_l2(&t.inverse(&s, &g, Path::Direct)?)?;
        out.push(
            ResidualReport::new(format!("fast path: {}", transform_name(t)), "split chirp-FFT evaluation", fwd.max(inv), FAST_PATH)
                .with_grid(&g)
                .with_params(serde_json::to_value(t)?)
                .with_constant("forward", fwd)
                .with_constant("inverse", inv),
        );
    }
    Ok(out)
}
