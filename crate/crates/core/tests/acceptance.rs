//! Acceptance gate: criteria 1–14, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lcst_core::bench::{bench_sweep, speedup_is_monotone, BenchConfig};
use lcst_core::transforms::{LcParams, Transform};
use lcst_core::verify::{
    check_algebra, check_star_n, run_all, ResidualReport, Status, VerifyConfig,
};

struct Gate<'a> {
    reports: &'a [ResidualReport],
    failed: usize,
}

impl Gate<'_> {
    fn find(&self, name: &str) -> Option<&ResidualReport> {
        self.reports.iter().find(|r| r.check_name == name)
    }

    fn with_prefix(&self, prefix: &str) -> Vec<&ResidualReport> {
        self.reports.iter().filter(|r| r.check_name.starts_with(prefix)).collect()
    }

    /// Passes when every named report is present and has status pass.
    fn require(&self, names: &[&str]) -> (bool, String) {
        let mut ok = true;
        let mut detail = Vec::new();
        for n in names {
            match self.find(n) {
                Some(r) => {
                    ok &= r.status == Status::Pass;
                    detail.push(format!("{n}={:.2e}", r.residual));
                }
                None => {
                    ok = false;
                    detail.push(format!("{n}=missing"));
                }
            }
        }
        (ok, detail.join(", "))
    }

    fn line(&mut self, id: usize, title: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("criterion {id:>2} [{}] {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn all_pass(rs: &[&ResidualReport]) -> bool {
    !rs.is_empty() && rs.iter().all(|r| r.status == Status::Pass)
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let start = Instant::now();
    let outcome = run_all(&cfg).expect("verify suite runs");
    let total = start.elapsed();
    for r in &outcome.reports {
        println!(
            "  {:<20} {:<58} residual {:>10.3e} tol {:>8.1e}",
            format!("{:?}", r.status),
            r.check_name,
            r.residual,
            r.tolerance
        );
    }
    println!("suite runtime {:.1}s", total.as_secs_f64());

    let mut gate = Gate { reports: &outcome.reports, failed: 0 };

    let t = Instant::now();
    let algebra = check_algebra(&cfg).expect("algebra checks run");
    let algebra_time = t.elapsed();
    let alg: Vec<&ResidualReport> = algebra.iter().filter(|r| r.check_name != "sign-table uniqueness").collect();
    gate.line(
        1,
        "algebra identities on 1000 random multivectors",
        all_pass(&alg) && algebra_time < Duration::from_secs(5),
        format!("{} identities, {:.2}s", alg.len(), algebra_time.as_secs_f64()),
    );

    let (ok, d) = gate.require(&["sign-table uniqueness"]);
    gate.line(2, "sign-table uniqueness", ok, d);

    let names = [
        "round trip: SFT",
        "round trip: LCST (2, 1; 1, 1)",
        "round trip: LCST (1, -0.5; 2, 0)",
        "round trip: two-sided LCST Corrected",
        "round-trip convergence: SFT",
        "round-trip convergence: LCST (2, 1; 1, 1)",
        "round-trip convergence: LCST (1, -0.5; 2, 0)",
        "round-trip convergence: two-sided LCST Corrected",
    ];
    let (ok, d) = gate.require(&names);
    gate.line(3, "inversion round trips and convergence", ok && total < Duration::from_secs(120), d);

    let (ok, d) = gate.require(&["two-sided printed-constant defect"]);
    gate.line(4, "printed two-sided constant defect (2πB₂)²", ok, d);

    let (ok, d) = gate.require(&["Plancherel", "Parseval", "Parseval, zero signal"]);
    gate.line(5, "Plancherel and Parseval", ok, d);

    let (ok, d) = gate.require(&["reflection covariance", "translation covariance", "modulation covariance", "linearity"]);
    gate.line(6, "covariances and linearity", ok, d);

    let (ok, d) = gate.require(&["derivative in t", "derivative in x_1", "derivative in w_t", "derivative in w_1"]);
    gate.line(7, "derivative identities converge at O(Δ²)", ok, d);

    let fast = gate.with_prefix("fast path: ");
    let fast_ok = all_pass(&fast);
    let mut bench_ok = true;
    let mut bench_detail = String::new();
    for t in [
        Transform::Lcst { params: LcParams { a: 2.0, b: 1.0, c: 1.0, d: 1.0 } },
        Transform::TwoSided {
            params: lcst_core::TwoSidedParams {
                m1: LcParams { a: 1.0, b: 0.5, c: 0.0, d: 1.0 },
                m2: LcParams { a: 2.0, b: 1.0, c: 1.0, d: 1.0 },
            },
            mode: lcst_core::ConstantsMode::Corrected,
        },
    ] {
        let rows = bench_sweep(&BenchConfig { repeats: 5, seed: 7, ..BenchConfig::new(t, vec![4, 8, 12, 16]) })
            .expect("bench runs");
        let mono = speedup_is_monotone(&rows) && rows.iter().all(|r| r.max_deviation <= 1e-10);
        bench_ok &= mono;
        let s: Vec<String> = rows.iter().map(|r| format!("{}:{:.1}x", r.n, r.speedup.unwrap_or(f64::NAN))).collect();
        bench_detail.push_str(&format!("[{}] ", s.join(" ")));
    }
    gate.line(
        8,
        "fast path equals direct; speedup grows with size",
        fast_ok && bench_ok,
        format!("{} fast-path checks, speedups {bench_detail}", fast.len()),
    );

    let (ok, d) = gate.require(&["Mustard as eight convolutions"]);
    gate.line(9, "Mustard convolution as eight standard convolutions", ok, d);

    let (ok, d) = gate.require(&["LCST via chirped SFT", "LCST magnitude identity"]);
    gate.line(10, "LCST through the chirped SFT", ok, d);

    let (ok, d) = gate.require(&["⊙ convolution theorem", "⊙ chirp convention uniqueness"]);
    gate.line(11, "⊙ convolution theorem with a unique convention", ok, d);

    let t = Instant::now();
    let star = check_star_n(&cfg).expect("⋆_N checks run");
    let star_time = t.elapsed();
    let (ok, d) = gate.require(&[
        "⋆_N spectral form vs direct integral",
        "⋆_N eight-term proportionality",
        "⋆_N constant κ grid independence",
    ]);
    let reported = star.iter().any(|r| r.check_name == "λ prefactor" && r.fitted_constants.is_some());
    let kappa = gate
        .find("λ prefactor")
        .and_then(|r| r.fitted_constants.as_ref())
        .and_then(|c| c.get("kappa").copied())
        .unwrap_or(f64::NAN);
    gate.line(
        12,
        "⋆_N forms agree up to κ",
        ok && reported && star_time < Duration::from_secs(300),
        format!("{d}, κ={kappa:.6}, {:.1}s", star_time.as_secs_f64()),
    );

    let (ok, d) = gate.require(&["⊗ product theorem, selected variant"]);
    let variant = gate.find("⊗ product theorem, selected variant").map(|r| r.notes.clone()).unwrap_or_default();
    gate.line(13, "⊗ product theorem", ok, format!("{d}; {variant}"));

    let (ok, d) = gate.require(&["STCF round trip", "CSV round trip"]);
    gate.line(14, "file formats round trip exactly", ok, d);

    println!(
        "acceptance: {} of 14 criteria pass; suite counts {:?}",
        14 - gate.failed,
        outcome.summary.counts
    );
    if gate.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
