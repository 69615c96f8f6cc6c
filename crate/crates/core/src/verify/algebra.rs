use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::tolerances::{ALGEBRAIC, EXACT};
use super::{ResidualReport, VerifyConfig};
use crate::algebra::{
    blade_exp, orthogonality_check, pseudoscalar_consistent_signatures, sign_table, BladeIndex,
    Multivector,
};
use crate::error::Result;

const SAMPLES: usize = 1000;

fn max_over<F: Fn(usize) -> f64>(n: usize, f: F) -> f64 {
    (0..n).map(f).fold(0.0, f64::max)
}

fn diff(a: &Multivector, b: &Multivector) -> f64 {
    (*a - *b).max_abs()
}

pub fn check_algebra(cfg: &VerifyConfig) -> Result<Vec<ResidualReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xa16e);
    let h: Vec<Multivector> = (0..SAMPLES + 2).map(|_| Multivector::random_unit(&mut rng)).collect();
    let angles: Vec<f64> = (0..SAMPLES).map(|_| rng.gen_range(-4.0..4.0)).collect();
    let params = json!({ "samples": SAMPLES, "seed": cfg.seed });
    let et = Multivector::e_t();
    let i3 = Multivector::i3();
    let mut out = Vec::new();

    let gens = [BladeIndex::ET, BladeIndex::E1, BladeIndex::E2, BladeIndex::E3];
    let metric = [-1.0, 1.0, 1.0, 1.0];
    let mut sig = 0.0f64;
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let (ea, eb) = (Multivector::blade(*a), Multivector::blade(*b));
            let want = if i == j { Multivector::scalar(2.0 * metric[i]) } else { Multivector::ZERO };
            sig = sig.max(diff(&(ea * eb + eb * ea), &want));
        }
    }
    sig = sig.max(diff(&(i3 * i3), &Multivector::scalar(-1.0)));
    sig = sig.max(diff(&(Multivector::i_st() * Multivector::i_st()), &Multivector::scalar(-1.0)));
    out.push(
        ResidualReport::new("signature", "generator relations e_t²=-1, e_k²=+1, i3²=i_st²=-1", sig, EXACT)
            .with_params(json!({ "table_valid": sign_table().validate().is_ok() })),
    );

    let consistent = pseudoscalar_consistent_signatures();
    let unique = consistent.len() == 1 && consistent[0] == (-1.0, 1.0);
    out.push(
        ResidualReport::new(
            "sign-table uniqueness",
            "signature enumeration over {±1}²",
            if unique { 0.0 } else { 1.0 },
            0.0,
        )
        .with_params(json!({ "consistent": consistent }))
        .with_constant("consistent_assignments", consistent.len() as f64)
        .with_note("only (e_t², e_k²) = (-1, +1) makes both pseudoscalars square to -1"),
    );

    let r = max_over(SAMPLES, |n| {
        let sum = (0..5).map(|k| h[n].grade(k).unwrap_or(Multivector::ZERO)).fold(Multivector::ZERO, |a, b| a + b);
        diff(&sum, &h[n])
    });
    out.push(ResidualReport::new("grade partition", "sum of grade projections", r, EXACT).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| diff(&((h[n] * h[n + 1]) * h[n + 2]), &(h[n] * (h[n + 1] * h[n + 2]))));
    out.push(ResidualReport::new("associativity", "geometric product", r, ALGEBRAIC).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| {
        let (p, m) = h[n].split();
        let (pp, pm) = p.split();
        let (mp, mm) = m.split();
        diff(&(p + m), &h[n])
            .max(diff(&pp, &p))
            .max(diff(&mm, &m))
            .max(pm.max_abs())
            .max(mp.max_abs())
            .max(diff(&p, &((h[n] + et * h[n] * i3) * 0.5)))
    });
    out.push(ResidualReport::new("split projection", "h± = (h ± e_t h i3)/2", r, ALGEBRAIC).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| {
        let (p, m) = h[n].split();
        let a = angles[n];
        let b = angles[(n + 1) % SAMPLES];
        let ea = blade_exp(&et, a).expect("e_t squares to -1");
        let eb = blade_exp(&i3, b).expect("i3 squares to -1");
        let ib = |x: f64| blade_exp(&i3, x).expect("i3 squares to -1");
        let ea_ = |x: f64| blade_exp(&et, x).expect("e_t squares to -1");
        diff(&(ea * p * eb), &(p * ib(b - a)))
            .max(diff(&(ea * m * eb), &(m * ib(b + a))))
            .max(diff(&(ea * p * eb), &(ea_(a - b) * p)))
            .max(diff(&(ea * m * eb), &(ea_(a + b) * m)))
    });
    out.push(
        ResidualReport::new("split exponential shift", "e^{e_t a} h± e^{i3 b} moved to one side", r, ALGEBRAIC)
            .with_params(params.clone()),
    );

    let r = max_over(SAMPLES, |n| {
        let (p, m) = h[n].split();
        (h[n].norm_sqr() - p.norm_sqr() - m.norm_sqr()).abs()
    });
    out.push(ResidualReport::new("split norm", "|h|² = |h+|² + |h-|²", r, EXACT).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| {
        let (a, b) = (h[n], h[n + 1]);
        diff(&(a * b).reverse(), &(b.reverse() * a.reverse()))
            .max(diff(&a.reverse().reverse(), &a))
            .max(diff(&(a + b).reverse(), &(a.reverse() + b.reverse())))
    });
    out.push(ResidualReport::new("reverse anti-automorphism", "principal reverse", r, EXACT).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| (h[n].norm_sqr() - (h[n] * h[n].reverse()).trace()).abs());
    out.push(ResidualReport::new("norm as trace", "|h|² = Tr(h reverse(h))", r, EXACT).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| {
        let (a, b, c) = (h[n], h[n + 1], h[n + 2]);
        ((a * b * c).trace() - (c * a * b).trace()).abs()
    });
    out.push(ResidualReport::new("trace cyclicity", "Tr(h1 h2 h3) = Tr(h3 h1 h2)", r, EXACT).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| {
        let a = angles[n];
        let b = angles[(n + 7) % SAMPLES];
        let s = blade_exp(&et, a).expect("e_t squares to -1") * h[n] * blade_exp(&i3, b).expect("i3 squares to -1");
        (s.norm() - h[n].norm()).abs().max(((et * h[n] * i3).norm() - h[n].norm()).abs())
    });
    out.push(ResidualReport::new("sandwich norm", "|e^{e_t a} h e^{i3 b}| = |h|", r, EXACT).with_params(params.clone()));

    let r = max_over(SAMPLES, |n| {
        orthogonality_check(&h[n], &h[n + 1], angles[n]).abs().max(orthogonality_check(&h[n + 1], &h[n], angles[n]).abs())
    });
    out.push(
        ResidualReport::new("split orthogonality", "Tr(e^{i3 a} reverse(f+) g-) = 0", r, EXACT).with_params(params.clone()),
    );

    let r = max_over(SAMPLES, |n| {
        let (a, b) = (angles[n], angles[(n + 3) % SAMPLES]);
        [et, i3, Multivector::i_st()]
            .iter()
            .map(|u| {
                let lhs = blade_exp(u, a).expect("unit blade") * blade_exp(u, b).expect("unit blade");
                diff(&lhs, &blade_exp(u, a + b).expect("unit blade"))
            })
            .fold(0.0, f64::max)
    });
    out.push(ResidualReport::new("exponential angle addition", "e^{u a} e^{u b} = e^{u(a+b)}", r, ALGEBRAIC).with_params(params));

    Ok(out)
}
