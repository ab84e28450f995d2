use z2lab_cli::collapse::{run_collapse, CollapseConfig};
use z2lab_cli::runner::{rows_to_csv, write_atomic, Row};

#[test]
fn fits_a_synthetic_csv() {
    let (pc, nu) = (0.3, 1.0);
    let mut rows = Vec::new();
    for l in [16usize, 32, 64] {
        for k in 0..21 {
            let p = 0.2 + 0.01 * k as f64;
            let x = (p - pc) * (l as f64).powf(1.0 / nu);
            rows.push(Row {
                model: "classical".into(),
                observable: "path-sum".into(),
                p,
                l,
                t: l,
                mean: 0.5 + 0.5 * (-x).tanh(),
                stderr: Some(0.002),
                n: 1000,
            });
        }
    }
    let dir = tempfile::tempdir().unwrap();
    write_atomic(&dir.path().join("sweep.csv"), &rows_to_csv(&rows).unwrap()).unwrap();
    let cfg = CollapseConfig::from_text("input = sweep.csv\nobservable = path-sum\np_c = 0.28\nnu = 1.5\nfree = [p_c, nu]\nresamples = 20\n").unwrap();
    let report = run_collapse(&cfg, dir.path()).unwrap();
    assert_eq!(report.sizes, vec![16, 32, 64]);
    assert!((report.estimate.p_c.value - pc).abs() < 0.005, "{:?}", report.estimate);
    assert!((report.estimate.nu.value - nu).abs() < 0.1, "{:?}", report.estimate);
    let crossing = report.estimate.crossing.value;
    assert!((crossing - pc).abs() < 0.01);
}

#[test]
fn rejects_unknown_keys() {
    assert!(CollapseConfig::from_text("input = a.csv\nobservable = x\nbandwidth = 3\n").is_err());
    assert!(CollapseConfig::from_text("observable = x\n").is_err());
}
