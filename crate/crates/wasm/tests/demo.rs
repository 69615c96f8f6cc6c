use lcst_wasm::{algebra_lines, lcst_magnitude, mustard_magnitude, MAX_N};

#[test]
fn lcst_slice_preserves_energy() {
    let s = lcst_magnitude(2.0, 1.0, 1.0, 1.0, 12, 0.6, 0.5).unwrap();
    assert_eq!(s.n(), 12);
    assert_eq!(s.values().len(), 144);
    assert!(s.lo() < 0.0 && s.hi() > 0.0);
    assert!(s.values().iter().all(|v| v.is_finite() && *v >= 0.0));
    let ratio: f64 = s.note().rsplit("= ").next().unwrap().parse().unwrap();
    assert!((ratio - 1.0).abs() < 1e-10, "{}", s.note());
}

#[test]
fn lcst_slice_rejects_bad_input() {
    assert!(lcst_magnitude(1.0, 1.0, 1.0, 1.0, 8, 0.6, 0.0).is_err());
    assert!(lcst_magnitude(1.0, 0.0, 3.0, 1.0, 8, 0.6, 0.0).is_err());
    assert!(lcst_magnitude(2.0, 1.0, 1.0, 1.0, MAX_N + 1, 0.6, 0.0).is_err());
    assert!(lcst_magnitude(2.0, 1.0, 1.0, 1.0, 8, -0.6, 0.0).is_err());
}

#[test]
fn mustard_slice_matches_eight_terms() {
    let s = mustard_magnitude(10, 0.7, 0.5, 0.4).unwrap();
    assert_eq!(s.values().len(), 100);
    let dev: f64 = s.note().split_whitespace().nth(4).unwrap().parse().unwrap();
    assert!(dev < 1e-10, "{}", s.note());
}

#[test]
fn algebra_lines_all_pass() {
    let text = algebra_lines(3).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().all(|l| l.starts_with("pass")), "{text}");
}
