use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lcst_core::io::{import_csv, read_field, AnyField};
use lcst_core::{GaussianPacket, SpaceTimeSignal, Spectrum};
use tempfile::TempDir;

fn lcst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcst"))
        .args(args)
        .env_remove("LCST_THREADS")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = lcst(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Self(TempDir::new().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }
}

fn signal(p: &Path) -> SpaceTimeSignal {
    read_field(p).unwrap().into_signal().unwrap()
}

fn spectrum(p: &Path) -> Spectrum {
    read_field(p).unwrap().into_spectrum().unwrap()
}

/// A contained Gaussian on 8⁴ samples spaced 0.75.
fn gaussian(d: &Dir, name: &str) {
    ok(&[
        "gen", "--dims", "8", "--spacing", "0.75", "--kind", "gaussian", "--width", "0.5",
        "--center", "0.2,-0.1,0,0.1", "--temporal-freq", "0.7", "--spatial-freq", "0.3,0,-0.4",
        "--out", &d.s(name),
    ]);
}

#[test]
fn gen_delta_at_origin_is_record_zero() {
    let d = Dir::new();
    ok(&["gen", "--dims", "4", "--spacing", "0.5", "--origin", "0,0,0,0", "--kind", "delta", "--out", &d.s("d.stcf")]);
    let f = signal(&d.path("d.stcf"));
    let nonzero: Vec<usize> =
        f.data().iter().enumerate().filter(|(_, h)| h.norm_sqr() > 0.0).map(|(i, _)| i).collect();
    assert_eq!(nonzero, vec![0]);
    assert_eq!(f.grid().point([0; 4]), [0.0; 4]);
}

#[test]
fn gen_gaussian_norm_matches_closed_form() {
    let d = Dir::new();
    ok(&["gen", "--dims", "20", "--spacing", "0.4", "--width", "0.9,1.0,0.8,1.1", "--out", &d.s("g.stcf")]);
    let f = signal(&d.path("g.stcf"));
    let exact = GaussianPacket::scalar([0.0; 4], [0.9, 1.0, 0.8, 1.1]).norm_sqr_exact();
    assert!((f.norm_sqr() / exact - 1.0).abs() < 1e-6, "{} vs {exact}", f.norm_sqr());
}

#[test]
fn gen_random_is_byte_reproducible() {
    let d = Dir::new();
    for name in ["a.stcf", "b.stcf"] {
        ok(&["gen", "--dims", "3,4,2,5", "--kind", "random", "--seed", "11", "--out", &d.s(name)]);
    }
    ok(&["gen", "--dims", "3,4,2,5", "--kind", "random", "--seed", "12", "--out", &d.s("c.stcf")]);
    let read = |n: &str| std::fs::read(d.path(n)).unwrap();
    assert_eq!(read("a.stcf"), read("b.stcf"));
    assert_ne!(read("a.stcf"), read("c.stcf"));
}

#[test]
fn gen_rejects_bad_shapes() {
    let d = Dir::new();
    assert_eq!(code(&lcst(&["gen", "--dims", "0", "--out", &d.s("x.stcf")])), 2);
    assert_eq!(code(&lcst(&["gen", "--dims", "4,4", "--out", &d.s("x.stcf")])), 2);
    assert_eq!(code(&lcst(&["gen", "--dims", "4", "--width", "-1", "--out", &d.s("x.stcf")])), 2);
    assert_eq!(code(&lcst(&["gen", "--dims", "4", "--kind", "delta", "--at", "4,0,0,0", "--out", &d.s("x.stcf")])), 2);
}

#[test]
fn fourier_matrix_is_scaled_sft() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    ok(&["transform", "--kind", "lcst", "--params", "0,1,-1,0", "--in", &d.s("g.stcf"), "--out", &d.s("l.stcf")]);
    ok(&["transform", "--kind", "sft", "--in", &d.s("g.stcf"), "--out", &d.s("s.stcf")]);
    let l = spectrum(&d.path("l.stcf"));
    let s = spectrum(&d.path("s.stcf")).scale(TAU.powf(-1.5));
    assert!(l.relative_l2(&s).unwrap() < 1e-12);
}

#[test]
fn fast_and_direct_paths_agree() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    let cases: [&[&str]; 4] = [
        &["--kind", "lcst", "--params", "2,1,1,1"],
        &["--kind", "lcst", "--params", "1,-0.5,2,0"],
        &["--kind", "frsft", "--alpha", "1.1"],
        &["--kind", "lcst2", "--params", "1,0.5,0,1,2,1,1,1"],
    ];
    for case in cases {
        let input = d.s("g.stcf");
        for path in ["direct", "fast"] {
            let out = d.s(&format!("{path}.stcf"));
            let mut args = vec!["transform", "--path", path];
            args.extend_from_slice(case);
            args.extend_from_slice(&["--in", &input, "--out", &out]);
            ok(&args);
        }
        let fast = spectrum(&d.path("fast.stcf"));
        let direct = spectrum(&d.path("direct.stcf"));
        assert!(fast.relative_l2(&direct).unwrap() <= 1e-10, "{case:?}");
    }
}

#[test]
fn inverse_round_trip() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    for params in ["2,1,1,1", "1,-0.5,2,0"] {
        ok(&["transform", "--kind", "lcst", "--params", params, "--in", &d.s("g.stcf"), "--out", &d.s("F.stcf")]);
        ok(&[
            "transform", "--kind", "lcst", "--params", params, "--inverse", "--in", &d.s("F.stcf"),
            "--out", &d.s("back.stcf"),
        ]);
        let f = signal(&d.path("g.stcf"));
        let back = signal(&d.path("back.stcf"));
        assert!(back.relative_l2(&f).unwrap() <= 1e-6, "{params}");
    }
    ok(&["transform", "--kind", "lcst2", "--params", "1,0.5,0,1,2,1,1,1", "--in", &d.s("g.stcf"), "--out", &d.s("F.stcf")]);
    ok(&[
        "transform", "--kind", "lcst2", "--params", "1,0.5,0,1,2,1,1,1", "--inverse", "--grid-like",
        &d.s("g.stcf"), "--in", &d.s("F.stcf"), "--out", &d.s("back.stcf"),
    ]);
    assert!(signal(&d.path("back.stcf")).relative_l2(&signal(&d.path("g.stcf"))).unwrap() <= 1e-6);
}

#[test]
fn transforms_are_deterministic() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    for name in ["a.stcf", "b.stcf"] {
        ok(&["transform", "--kind", "lcst", "--params", "2,1,1,1", "--in", &d.s("g.stcf"), "--out", &d.s(name)]);
    }
    assert_eq!(std::fs::read(d.path("a.stcf")).unwrap(), std::fs::read(d.path("b.stcf")).unwrap());
}

#[test]
fn b_zero_needs_the_direct_path() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    let out = lcst(&["transform", "--kind", "lcst", "--params", "1,0,3,1", "--path", "fast", "--in", &d.s("g.stcf"), "--out", &d.s("z.stcf")]);
    assert_eq!(code(&out), 2);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("b = 0") && msg.contains("--path direct"), "{msg}");
    ok(&["transform", "--kind", "lcst", "--params", "1,0,3,1", "--path", "direct", "--in", &d.s("g.stcf"), "--out", &d.s("z.stcf")]);
}

#[test]
fn determinant_defect_is_reported() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    let out = lcst(&["transform", "--kind", "lcst", "--params", "3,0,0,0.3333333", "--in", &d.s("g.stcf"), "--out", &d.s("x.stcf")]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("defect"));
    ok(&["transform", "--kind", "lcst", "--params", "3,0.5,0,0.3333333333333333", "--in", &d.s("g.stcf"), "--out", &d.s("x.stcf")]);
}

#[test]
fn conflicting_or_missing_flags_are_usage_errors() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    let (i, o) = (d.s("g.stcf"), d.s("x.stcf"));
    for args in [
        vec!["transform", "--kind", "frsft", "--alpha", "1", "--params", "2,1,1,1", "--in", &i, "--out", &o],
        vec!["transform", "--kind", "frsft", "--in", &i, "--out", &o],
        vec!["transform", "--kind", "lcst", "--in", &i, "--out", &o],
        vec!["transform", "--kind", "lcst", "--params", "2,1,1", "--in", &i, "--out", &o],
        vec!["transform", "--kind", "sft", "--bogus", "--in", &i, "--out", &o],
        vec!["convolve", "--kind", "odot", "--a", &i, "--b", &i, "--out", &o],
        vec!["convolve", "--kind", "mustard", "--method", "fft", "--a", &i, "--b", &i, "--out", &o],
    ] {
        assert_eq!(code(&lcst(&args)), 2, "{args:?}");
    }
}

#[test]
fn io_errors_exit_three() {
    let d = Dir::new();
    let out = lcst(&["transform", "--kind", "sft", "--in", &d.s("missing.stcf"), "--out", &d.s("x.stcf")]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.stcf"));
    std::fs::write(d.path("junk.stcf"), b"not a field").unwrap();
    assert_eq!(code(&lcst(&["export", "--in", &d.s("junk.stcf"), "--out", &d.s("x.csv")])), 3);
}

#[test]
fn delta_is_the_identity_for_each_convolution() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    // On the centered 8-point grid, coordinate zero is sample 4.
    ok(&["gen", "--dims", "8", "--spacing", "0.75", "--kind", "delta", "--at", "4,4,4,4", "--out", &d.s("d.stcf")]);
    let g = signal(&d.path("g.stcf"));
    let (a, b, h) = (d.s("g.stcf"), d.s("d.stcf"), d.s("h.stcf"));
    for (kind, extra) in [("standard", &[][..]), ("mustard", &[]), ("odot", &["--params", "2,1,1,1"])] {
        let mut args = vec!["convolve", "--kind", kind];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--a", &a, "--b", &b, "--out", &h]);
        ok(&args);
        let h = signal(&d.path("h.stcf"));
        assert!(h.relative_l2(&g).unwrap() < 1e-10, "{kind}");
    }

    // ⊗ acts on spectra; its delta sits at frequency zero.
    ok(&["transform", "--kind", "lcst", "--params", "2,1,1,1", "--in", &d.s("g.stcf"), "--out", &d.s("G.stcf")]);
    ok(&["transform", "--kind", "lcst", "--params", "2,1,1,1", "--in", &d.s("d.stcf"), "--out", &d.s("D.stcf")]);
    let wg = *spectrum(&d.path("G.stcf")).grid();
    let delta_w = lcst_core::grid::delta(&wg, [4; 4], lcst_core::Multivector::one()).unwrap();
    lcst_core::io::write_field(&delta_w, d.path("dw.stcf")).unwrap();
    ok(&["convolve", "--kind", "otimes", "--params", "2,1,1,1", "--a", &d.s("G.stcf"), "--b", &d.s("dw.stcf"), "--out", &d.s("H.stcf")]);
    let big_g = spectrum(&d.path("G.stcf"));
    assert!(spectrum(&d.path("H.stcf")).relative_l2(&big_g).unwrap() < 1e-10);
}

#[test]
fn mustard_eight_term_method_matches_spectral() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    ok(&["gen", "--dims", "8", "--spacing", "0.75", "--width", "0.6", "--center", "-0.3", "--temporal-freq", "-0.4", "--out", &d.s("k.stcf")]);
    for (method, name) in [("spectral", "s.stcf"), ("eight", "e.stcf")] {
        ok(&["convolve", "--kind", "mustard", "--method", method, "--a", &d.s("g.stcf"), "--b", &d.s("k.stcf"), "--out", &d.s(name)]);
    }
    assert!(signal(&d.path("e.stcf")).relative_l2(&signal(&d.path("s.stcf"))).unwrap() < 1e-10);
}

#[test]
fn star_n_reports_the_eight_term_constant() {
    let d = Dir::new();
    for (name, w) in [("f.stcf", "0.9"), ("g.stcf", "1.1")] {
        ok(&["gen", "--dims", "4", "--spacing", "1.5", "--width", w, "--out", &d.s(name)]);
    }
    let out = ok(&[
        "convolve", "--kind", "starn", "--params", "0,1.5,-0.6666666666666666,0,0,0.8,-1.25,0", "--method", "eight",
        "--a", &d.s("f.stcf"), "--b", &d.s("g.stcf"), "--out", &d.s("h.stcf"),
    ]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("κ ≈ 0.64"), "{msg}");
    ok(&[
        "convolve", "--kind", "starn", "--params", "0,1.5,-0.6666666666666666,0,0,0.8,-1.25,0", "--method", "direct",
        "--a", &d.s("f.stcf"), "--b", &d.s("g.stcf"), "--out", &d.s("direct.stcf"),
    ]);
    ok(&[
        "convolve", "--kind", "starn", "--params", "0,1.5,-0.6666666666666666,0,0,0.8,-1.25,0",
        "--a", &d.s("f.stcf"), "--b", &d.s("g.stcf"), "--out", &d.s("spectral.stcf"),
    ]);
    assert!(signal(&d.path("direct.stcf")).relative_l2(&signal(&d.path("spectral.stcf"))).unwrap() < 1e-8);
}

#[test]
fn star_n_direct_refuses_large_grids() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    let out = lcst(&[
        "convolve", "--kind", "starn", "--params", "1,0.5,0,1,2,1,1,1", "--method", "direct",
        "--a", &d.s("g.stcf"), "--b", &d.s("g.stcf"), "--out", &d.s("h.stcf"),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_writes_a_report() {
    let d = Dir::new();
    ok(&["verify", "--suite", "algebra", "--report", &d.s("r.json")]);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(d.path("r.json")).unwrap()).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["check_name"] == "sign-table uniqueness"));
    assert!(!reports.iter().any(|r| r["check_name"].as_str().unwrap().starts_with("round trip")));
    assert_eq!(code(&lcst(&["verify", "--suite", "bogus"])), 2);
}

#[test]
fn verify_verbatim_lists_deviations() {
    let d = Dir::new();
    let out = ok(&["verify", "--suite", "transforms", "--mode", "verbatim", "--report", &d.s("r.json")]);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(d.path("r.json")).unwrap()).unwrap();
    assert!(!v["summary"]["expected_deviations"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected deviation"));
}

#[test]
fn bench_writes_csv() {
    let d = Dir::new();
    let out = ok(&["bench", "--kind", "lcst", "--dims-sweep", "2,4", "--repeat", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,direct_s,fast_s,speedup,max_deviation"));
    assert_eq!(text.lines().count(), 3);
    for line in text.lines().skip(1) {
        let dev: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(dev <= 1e-10);
    }
    ok(&["bench", "--kind", "lcst2", "--dims-sweep", "2", "--paths", "fast", "--out", &d.s("b.csv")]);
    let text = std::fs::read_to_string(d.path("b.csv")).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("2,,"));
}

#[test]
fn export_rows_slices_and_reimport() {
    let d = Dir::new();
    gaussian(&d, "g.stcf");
    ok(&["export", "--in", &d.s("g.stcf"), "--out", &d.s("full.csv")]);
    let rows = import_csv(std::fs::File::open(d.path("full.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 8usize.pow(4));
    let f = signal(&d.path("g.stcf"));
    for (r, h) in rows.iter().zip(f.data()) {
        assert_eq!(r.value.0.map(f64::to_bits), h.0.map(f64::to_bits));
    }
    ok(&["export", "--in", &d.s("g.stcf"), "--out", &d.s("s.csv"), "--slice", "t=0,x3=0"]);
    let rows = import_csv(std::fs::File::open(d.path("s.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 64);
    assert_eq!(code(&lcst(&["export", "--in", &d.s("g.stcf"), "--out", &d.s("s.csv"), "--slice", "x1=8"])), 2);
    assert!(matches!(read_field(d.path("g.stcf")).unwrap(), AnyField::SpaceTime(_)));
}

#[test]
fn thread_settings() {
    let d = Dir::new();
    let out = d.s("x.stcf");
    let gen = ["gen", "--dims", "2", "--kind", "random", "--out", out.as_str()];
    assert_eq!(code(&lcst(&[&["--threads", "0"][..], &gen].concat())), 2);
    ok(&[&["--threads", "auto"][..], &gen].concat());
    let run = |env: &str, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_lcst"));
        c.env("LCST_THREADS", env);
        if let Some(f) = flag {
            c.args(["--threads", f]);
        }
        c.args(gen).output().unwrap()
    };
    assert_eq!(code(&run("bogus", None)), 2);
    assert_eq!(code(&run("bogus", Some("2"))), 0);
    assert_eq!(code(&run("3", None)), 0);
}
