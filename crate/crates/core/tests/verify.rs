use lcst_core::bench::{bench_sweep, write_csv, BenchConfig};
use lcst_core::transforms::{ConstantsMode, LcParams, Path, Transform};
use lcst_core::verify::{run_all, Status, Suite, VerifyConfig};

fn verdicts(cfg: &VerifyConfig) -> Vec<(String, Status)> {
    run_all(cfg).unwrap().reports.into_iter().map(|r| (r.check_name, r.status)).collect()
}

#[test]
fn default_config_passes() {
    let out = run_all(&VerifyConfig::default()).unwrap();
    assert_eq!(out.summary.counts.fail, 0, "{:?}", out.summary.failures);
    assert_eq!(out.exit_code(), 0);
    assert!(out.summary.counts.expected_deviation > 0);
    for r in &out.reports {
        assert_eq!(r.passed, r.residual <= r.tolerance, "{}", r.check_name);
        if r.status == Status::Pass {
            assert!(r.passed);
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    let base = verdicts(&VerifyConfig { seed: 0, ..VerifyConfig::default() });
    for seed in 1..10 {
        assert_eq!(verdicts(&VerifyConfig { seed, ..VerifyConfig::default() }), base, "seed {seed}");
    }
}

#[test]
fn runs_are_deterministic() {
    let cfg = VerifyConfig { suite: Suite::Convolutions, ..VerifyConfig::default() };
    assert_eq!(run_all(&cfg).unwrap(), run_all(&cfg).unwrap());
}

#[test]
fn verbatim_mode_lists_deviations_and_exits_zero() {
    let cfg = VerifyConfig { mode: ConstantsMode::Verbatim, ..VerifyConfig::default() };
    let out = run_all(&cfg).unwrap();
    assert_eq!(out.exit_code(), 0, "{:?}", out.summary.failures);
    let names: Vec<_> = out.summary.expected_deviations.iter().map(|d| d.check_name.as_str()).collect();
    assert!(names.iter().any(|n| n.starts_with("round trip: two-sided")), "{names:?}");
    assert!(names.iter().any(|n| n.starts_with("round trip: FrSFT")), "{names:?}");
}

#[test]
fn suite_selection_restricts_checks() {
    let alg = run_all(&VerifyConfig { suite: Suite::Algebra, ..VerifyConfig::default() }).unwrap();
    assert!(alg.reports.iter().any(|r| r.check_name == "sign-table uniqueness"));
    assert!(!alg.reports.iter().any(|r| r.check_name.starts_with("round trip")));
    assert!(alg.reports.len() < run_all(&VerifyConfig::default()).unwrap().reports.len());
    assert!("bogus".parse::<Suite>().is_err());
}

#[test]
fn json_report_has_stable_keys() {
    let out = run_all(&VerifyConfig { suite: Suite::Algebra, ..VerifyConfig::default() }).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.to_json().unwrap()).unwrap();
    let r = &v["reports"][0];
    for key in ["check_name", "anchor", "residual", "tolerance", "passed", "status", "grid", "params", "notes"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert!(v["summary"]["counts"]["total"].as_u64().unwrap() > 0);
    assert!(v["summary"]["expected_deviations"].is_array());
}

#[test]
fn fitted_constants_are_reported() {
    let out = run_all(&VerifyConfig { suite: Suite::Convolutions, ..VerifyConfig::default() }).unwrap();
    let lambda = out.reports.iter().find(|r| r.check_name == "λ prefactor").unwrap();
    let c = lambda.fitted_constants.as_ref().unwrap();
    assert!((c["kappa"] - 0.64).abs() < 1e-8);
    assert_eq!(lambda.status, Status::ExpectedDeviation);
}

#[test]
fn bench_rows_and_csv() {
    let cfg = BenchConfig {
        repeats: 2,
        seed: 1,
        ..BenchConfig::new(Transform::Lcst { params: LcParams::new(2.0, 1.0, 1.0, 1.0).unwrap() }, vec![2, 4])
    };
    let rows = bench_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.max_deviation <= 1e-10 && r.direct_s.unwrap() > 0.0 && r.fast_s.unwrap() > 0.0));
    let only_fast = bench_sweep(&BenchConfig { paths: vec![Path::Fast], ..cfg.clone() }).unwrap();
    assert!(only_fast.iter().all(|r| r.direct_s.is_none() && r.speedup.is_none()));
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("n,direct_s,fast_s,speedup,max_deviation"));
    assert_eq!(text.lines().count(), 3);
    assert!(bench_sweep(&BenchConfig { dims: vec![], ..cfg.clone() }).is_err());
    assert!(bench_sweep(&BenchConfig { paths: vec![], ..cfg }).is_err());
}
