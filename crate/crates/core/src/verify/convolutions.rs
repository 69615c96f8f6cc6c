use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::probes::{fit_scalar, spread};
use super::tolerances::{ALGEBRAIC, QUADRATURE, RATIO, TORUS};
use super::{ResidualReport, VerifyConfig};
use crate::algebra::{BladeIndex, Multivector};
use crate::convolution::{
    argument_grid, lambda_weight, mustard_as_eight, mustard_convolve, odot_with, otimes,
    sft_at_scaled, star_n, star_n_as_eight, star_n_direct, ChirpConvention, EightTermReading,
    ScalingVariant,
};
use crate::error::Result;
use crate::grid::{
    conjugate_grid, gaussian_packet, random_field, GaussianPacket, SpaceTimeGrid, SpaceTimeSignal,
};
use crate::transforms::{lcst_fast, sft, sft_fast, LcParams, TwoSidedParams};

fn rng(cfg: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x2545_f491).wrapping_add(salt))
}

pub fn check_convolutions(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = check_eight_term(cfg)?;
    out.extend(check_chirp_factorization(cfg)?);
    out.extend(check_odot(cfg)?);
    out.extend(check_product_theorem(cfg)?);
    out.extend(check_star_n(cfg)?);
    Ok(out)
}

/// Mustard convolution as eight standard convolutions of split parts.
pub fn check_eight_term(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let g = SpaceTimeGrid::centered([4; 4], [0.5, 0.7, 0.6, 0.4])?;
    let mut worst = 0.0f64;
    let mut worst_pre = f64::INFINITY;
    for seed in 0..10u64 {
        let mut r = rng(cfg, 100 + seed);
        let a = random_field(&g, &mut r);
        let b = random_field(&g, &mut r);
        let m = mustard_convolve(&a, &b)?;
        worst = worst.max(mustard_as_eight(&a, &b, EightTermReading::OutputReflection)?.relative_l2(&m)?);
        worst_pre = worst_pre.min(mustard_as_eight(&a, &b, EightTermReading::PreReflection)?.relative_l2(&m)?);
    }
    Ok(vec![
        ResidualReport::new("Mustard as eight convolutions", "Mustard convolution decomposition", worst, TORUS)
            .with_grid(&g)
            .with_params(json!({ "seeds": 10, "reading": "output-reflection" }))
            .with_constant("pre_reflection_min_residual", worst_pre)
            .with_note("the trailing (t, -x) marker reflects the convolution output; folding it into the operand fails"),
    ])
}

fn spatial_sq(p: [f64; 4]) -> f64 {
    p[1] * p[1] + p[2] * p[2] + p[3] * p[3]
}

fn chirp_probe(g: &SpaceTimeGrid) -> Result<SpaceTimeSignal> {
    gaussian_packet(
        g,
        &GaussianPacket::scalar([0.1, -0.2, 0.0, 0.15], [0.8, 0.7, 0.9, 0.75])
            .with_amplitude(Multivector::one() + Multivector::blade_scaled(BladeIndex::ET23, 0.6))
            .with_modulation(0.3, [0.2, 0.0, -0.4]),
    )
}

/// LCST in terms of the SFT of the chirped signal.
pub fn check_chirp_factorization(_cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let p = LcParams { a: 0.5, b: 2.0, c: -0.25, d: 1.0 };
    let g = SpaceTimeGrid::centered([8; 4], [0.75; 4])?;
    let f = chirp_probe(&g)?;
    let big_b = (TAU * p.b).powf(-1.5);
    let chirped = f.map_with_point(|x, h| h.right_exp_i3(p.a / (2.0 * p.b) * spatial_sq(x)));

    let lhs = lcst_fast(&f, &p)?;
    let wg = *lhs.grid();
    let rhs = sft_at_scaled(&chirped, &wg, p.b)?
        .map_with_point(|w, h| (*h * big_b).right_exp_i3(p.d / (2.0 * p.b) * spatial_sq(w)));
    let r45 = lhs.relative_l2(&rhs)?;

    // |L(w_t, b w)| against |F[f̃](w)|: both on their own conjugate lattices,
    // which map onto each other sample by sample.
    let spec = sft_fast(&chirped)?;
    let peak = lhs.max_abs();
    let mut corrected = 0.0f64;
    let mut printed = 0.0f64;
    for (l, s) in lhs.data().iter().zip(spec.data()) {
        corrected = corrected.max((l.norm() - big_b * s.norm()).abs());
        printed = printed.max((big_b * l.norm() - s.norm()).abs());
    }
    let spec_peak = spec.max_abs();
    Ok(vec![
        ResidualReport::new("LCST via chirped SFT", "L[f](w) = B F[f e^{i3 a x²/2b}](w_t, w/b) e^{i3 d w²/2b}", r45, ALGEBRAIC)
            .with_grid(&g)
            .with_params(json!({ "matrix": p })),
        ResidualReport::new("LCST magnitude identity", "|L[f](w_t, b w)| = B |F[f̃](w)|", corrected / peak, ALGEBRAIC)
            .with_grid(&g)
            .with_params(json!({ "matrix": p }))
            .with_note("pointwise maximum, relative to the spectrum peak"),
        ResidualReport::new("LCST magnitude identity, printed form", "|B L[f](w_t, b w)| = |F[f̃](w)|", printed / spec_peak, ALGEBRAIC)
            .with_grid(&g)
            .with_params(json!({ "matrix": p }))
            .with_constant("magnitude_ratio", big_b * big_b)
            .with_note("the printed form places B on the wrong side; the two sides differ by B²")
            .expected_deviation(),
    ])
}

/// Convolution theorem for ⊙, with the chirp convention chosen by the oracle.
pub fn check_odot(_cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let g = SpaceTimeGrid::centered([8; 4], [0.75; 4])?;
    let f = gaussian_packet(
        &g,
        &GaussianPacket::scalar([0.2, -0.3, 0.1, 0.0], [0.9, 0.8, 1.0, 0.9])
            .with_amplitude(Multivector::e_t() + Multivector::blade_scaled(BladeIndex::E13, 0.5))
            .with_modulation(0.5, [0.5, 0.0, -0.5]),
    )?;
    // Real scalar and even in t.
    let gg = gaussian_packet(&g, &GaussianPacket::scalar([0.0, 0.3, -0.2, 0.1], [0.8, 0.7, 0.9, 1.0]))?;
    let p = LcParams { a: 0.5, b: 1.5, c: -1.0 / 3.0, d: 1.0 };
    let wg = conjugate_grid(&g, p.b)?;
    let rhs = lcst_fast(&f, &p)?.product(&sft_at_scaled(&gg, &wg, p.b)?)?;
    let mut residuals = Vec::new();
    for c in ChirpConvention::ALL {
        let h = odot_with(&f, &gg, &p, c)?;
        residuals.push((c, lcst_fast(&h, &p)?.relative_l2(&rhs)?));
    }
    let passing: Vec<_> = residuals.iter().filter(|(_, r)| *r <= QUADRATURE).map(|(c, _)| *c).collect();
    let chosen = residuals.iter().find(|(c, _)| *c == ChirpConvention::default()).map(|(_, r)| *r).unwrap_or(f64::INFINITY);
    let mut theorem = ResidualReport::new("⊙ convolution theorem", "L[f ⊙ g] = L[f] F[g](w_t, w/b)", chosen, QUADRATURE)
        .with_grid(&g)
        .with_params(json!({ "matrix": p, "convention": ChirpConvention::default().name() }));
    for (c, r) in &residuals {
        theorem = theorem.with_constant(format!("residual_{}", c.name()), *r);
    }
    let unique = passing == vec![ChirpConvention::default()];
    let names: Vec<_> = passing.iter().map(|c| c.name()).collect();
    Ok(vec![
        theorem.with_note("g is a real scalar even in t, so its SFT commutes with the chirp"),
        ResidualReport::new("⊙ chirp convention uniqueness", "L[f ⊙ g] = L[f] F[g](w_t, w/b)", if unique { 0.0 } else { 1.0 }, 0.0)
            .with_params(json!({ "passing": names }))
            .with_constant("passing_conventions", passing.len() as f64)
            .with_note(format!("resolved convention: {}", ChirpConvention::default().name())),
    ])
}

fn product_residual(n: usize, variant: ScalingVariant) -> Result<f64> {
    let g = SpaceTimeGrid::centered([n; 4], [0.75; 4])?;
    let p = LcParams { a: 1.0, b: 0.5, c: -1.0, d: 0.5 };
    let f = gaussian_packet(
        &g,
        &GaussianPacket::scalar([0.1, 0.0, 0.2, -0.2], [1.0, 0.9, 0.8, 1.0])
            .with_amplitude(Multivector::blade(BladeIndex::ET2) + Multivector::one()),
    )?;
    let ag = argument_grid(&g, p.b, variant)?;
    let gs = gaussian_packet(
        &ag,
        &GaussianPacket::scalar([0.0, 0.2, -0.1, 0.0], [0.9, 0.8, 1.0, 0.7])
            .with_amplitude(Multivector::one() + Multivector::blade_scaled(BladeIndex::E12, 0.5))
            .with_modulation(0.0, [0.5, -0.5, 0.0]),
    )?;
    let gb = gs.clone().with_grid(g)?;
    let lhs = lcst_fast(&f.product(&gb)?, &p)?;
    let wg = conjugate_grid(&g, p.b)?;
    let v = match variant {
        ScalingVariant::SpatialOnly => sft_fast(&gs)?.with_grid(wg)?,
        ScalingVariant::AllCoordinates => sft(&gs, &wg)?,
    };
    let rhs = otimes(&lcst_fast(&f, &p)?, &v, &p)?.scale(TAU.powi(-4));
    lhs.relative_l2(&rhs)
}

/// Product theorem for ⊗ under both readings of `g(x/b)`.
pub fn check_product_theorem(_cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let mut best: Option<(ScalingVariant, f64)> = None;
    for variant in ScalingVariant::ALL {
        let r8 = product_residual(8, variant)?;
        let r12 = product_residual(12, variant)?;
        let mut rep = ResidualReport::new(
            format!("⊗ product theorem, {}", variant.name()),
            "L[f(x) g(x/b)] = (2π)^{-4} L[f] ⊗ F[g]",
            r8.max(r12),
            QUADRATURE,
        )
        .with_params(json!({ "variant": variant.name(), "dims": [8, 12] }))
        .with_constant("residual_8", r8)
        .with_constant("residual_12", r12);
        if variant == ScalingVariant::AllCoordinates {
            rep = rep
                .with_constant("defect_spread", spread(&[r8, r12]))
                .with_note("rescaling t as well breaks the temporal Fourier pairing; the defect is grid-independent")
                .expected_deviation();
        }
        if best.map_or(true, |(_, b)| r8.max(r12) < b) {
            best = Some((variant, r8.max(r12)));
        }
        out.push(rep);
    }
    if let Some((v, r)) = best {
        out.push(
            ResidualReport::new("⊗ product theorem, selected variant", "L[f(x) g(x/b)] = (2π)^{-4} L[f] ⊗ F[g]", r, QUADRATURE)
                .with_params(json!({ "variant": v.name() }))
                .with_note(format!("passing variant: {}", v.name())),
        );
    }
    Ok(out)
}

fn chirp_free() -> TwoSidedParams {
    TwoSidedParams {
        m1: LcParams { a: 0.0, b: 1.5, c: -1.0 / 1.5, d: 0.0 },
        m2: LcParams { a: 0.0, b: 0.8, c: -1.0 / 0.8, d: 0.0 },
    }
}

fn general() -> TwoSidedParams {
    TwoSidedParams {
        m1: LcParams { a: 1.0, b: 0.5, c: 0.0, d: 1.0 },
        m2: LcParams { a: 2.0, b: 1.0, c: 1.0, d: 1.0 },
    }
}

/// Spectral form, direct triple integral and eight-term pattern of ⋆_N.
pub fn check_star_n(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let mut direct_worst = 0.0f64;
    for (i, p) in [chirp_free(), general()].iter().enumerate() {
        for n in [2usize, 3, 4] {
            let g = SpaceTimeGrid::centered([n; 4], [0.8; 4])?;
            let mut r = rng(cfg, 200 + 10 * i as u64 + n as u64);
            let f = random_field(&g, &mut r);
            let gg = random_field(&g, &mut r);
            let s = star_n(&f, &gg, p)?;
            let d = star_n_direct(&f, &gg, p)?;
            direct_worst = direct_worst.max(s.relative_l2(&d)?);
        }
    }
    out.push(
        ResidualReport::new("⋆_N spectral form vs direct integral", "⋆_N convolution theorem", direct_worst, ALGEBRAIC)
            .with_params(json!({ "dims": [2, 3, 4], "matrices": [chirp_free(), general()] }))
            .with_note("independent quadrature of the triple integral; κ between these forms is 1"),
    );

    let p = chirp_free();
    let lambda = lambda_weight(&p)?;
    let mut kappas = Vec::new();
    let mut fit_worst = 0.0f64;
    for n in [2usize, 3, 4] {
        let g = SpaceTimeGrid::centered([n; 4], [0.8; 4])?;
        let mut r = rng(cfg, 300 + n as u64);
        let f = random_field(&g, &mut r);
        let gg = random_field(&g, &mut r);
        let s = star_n(&f, &gg, &p)?;
        let e = star_n_as_eight(&f, &gg, &p, EightTermReading::OutputReflection)?;
        let (k, resid) = fit_scalar(&s, &e)?;
        kappas.push(k);
        fit_worst = fit_worst.max(resid);
    }
    let kappa = kappas.iter().sum::<f64>() / kappas.len() as f64;
    let predicted = lambda.prefactor * TAU.powi(-2) / (p.m1.b.abs().sqrt() * p.m2.b.abs().powf(1.5));
    out.push(
        ResidualReport::new("⋆_N eight-term proportionality", "⋆_N as eight convolutions", fit_worst, TORUS)
            .with_params(json!({ "matrices": p, "dims": [2, 3, 4] }))
            .with_note("chirp-free matrices (a = d = 0)"),
    );
    out.push(
        ResidualReport::new("⋆_N constant κ grid independence", "⋆_N as eight convolutions", spread(&kappas), RATIO)
            .with_params(json!({ "matrices": p, "dims": [2, 3, 4] }))
            .with_constant("kappa_2", kappas[0])
            .with_constant("kappa_3", kappas[1])
            .with_constant("kappa_4", kappas[2])
            .with_constant("kappa_predicted", predicted),
    );
    out.push(
        ResidualReport::new("λ prefactor", "λ = (2π)² B₁^{1/2} B₂^{7/2}", (kappa - 1.0).abs(), RATIO)
            .with_params(json!({ "matrices": p }))
            .with_constant("kappa", kappa)
            .with_constant("published_prefactor", lambda.prefactor)
            .with_constant("consistent_prefactor", lambda.prefactor / kappa)
            .with_note("with the published λ the spectral form is κ times the eight-term sum, not equal to it")
            .expected_deviation(),
    );

    let p = general();
    let g = SpaceTimeGrid::centered([3; 4], [0.8; 4])?;
    let mut r = rng(cfg, 400);
    let f = random_field(&g, &mut r);
    let gg = random_field(&g, &mut r);
    let s = star_n(&f, &gg, &p)?;
    let e = star_n_as_eight(&f, &gg, &p, EightTermReading::OutputReflection)?;
    let (k, resid) = fit_scalar(&s, &e)?;
    out.push(
        ResidualReport::new("⋆_N eight-term form, chirped matrices", "⋆_N as eight convolutions", resid, TORUS)
            .with_grid(&g)
            .with_params(json!({ "matrices": p }))
            .with_constant("best_kappa", k)
            .with_note("the eight-term pattern carries no chirps, so no single constant matches when a or d is nonzero")
            .expected_deviation(),
    );
    Ok(out)
}
