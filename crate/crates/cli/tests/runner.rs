use z2lab_cli::config::{Command, ConfigError, ExperimentConfig};
use z2lab_cli::runner::{execute, read_csv, rows_to_csv, write_outputs, RunError, MANIFEST_SCHEMA};

const SWEEP: &str = "model = classical\nL = [6, 10]\nT = linear(1)\np_zz = 0.6\np_err = [0.02, 0.1]\ndecoder = [path-sum, mwpm, located]\ntrials = 40\nseed = 11\n";

fn config(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_text(Command::DecodeSweep, text).unwrap()
}

#[test]
fn worker_count_does_not_change_the_csv() {
    let mut one = config(SWEEP);
    one.workers = 1;
    let mut eight = one.clone();
    eight.workers = 8;
    let a = rows_to_csv(&execute(&one).unwrap().rows).unwrap();
    let b = rows_to_csv(&execute(&eight).unwrap().rows).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 2 * 2 * 3);
}

#[test]
fn clifford_sweep_is_deterministic() {
    let text = "model = repetition\nL = 6\nT = linear(1)\np_zz = 0.6\np_err = 0.05\ndecoder = [path-sum, located]\ntrials = 12\nseed = 2\n";
    let mut a = config(text);
    a.workers = 1;
    let mut b = a.clone();
    b.workers = 4;
    assert_eq!(execute(&a).unwrap().rows, execute(&b).unwrap().rows);
}

#[test]
fn single_trial_without_errors() {
    let cfg = config("model = classical\nL = 8\nT = linear(1)\np_zz = 0.6\np_err = 0\ndecoder = located\ntrials = 1\n");
    let rows = execute(&cfg).unwrap().rows;
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].mean, rows[0].stderr, rows[0].n), (1.0, None, 1));
}

#[test]
fn outputs_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = execute(&config(SWEEP)).unwrap();
    let (csv, json) = write_outputs(&out, &dir.path().join("run.v1")).unwrap();
    assert!(csv.ends_with("run.v1.csv") && json.ends_with("run.v1.json"));
    assert_eq!(read_csv(&csv).unwrap(), out.rows);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(manifest["schema"], MANIFEST_SCHEMA);
    assert_eq!(manifest["seed"], 11);
    let text = manifest["config_text"].as_str().unwrap();
    assert_eq!(config(text), out.manifest.config);
}

#[test]
fn unwritable_path_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let out = execute(&config("model = classical\nL = 4\nT = 2\np_zz = 0.6\np_err = 0\ndecoder = located\ntrials = 1\n")).unwrap();
    let err = write_outputs(&out, &blocker.join("sub").join("run")).unwrap_err();
    assert!(matches!(err, RunError::Io { .. }));
}

#[test]
fn unknown_key_is_rejected() {
    let err = ExperimentConfig::from_text(Command::DecodeSweep, &format!("{SWEEP}temperature = 3\n")).unwrap_err();
    assert_eq!(err, ConfigError::UnknownKey("temperature".into()));
}

#[test]
fn observables_and_percolation_run() {
    let run = ExperimentConfig::from_text(
        Command::Run,
        "model = baseline\nL = 16\nT = linear(2)\nq = 0.5\np_zz = [0.3, 0.7]\nobservable = [chi_sg, chi_pm, mi_ab, mi_half, s_half]\ntrials = 20\n",
    )
    .unwrap();
    let rows = execute(&run).unwrap().rows;
    let get = |o: &str, p: f64| rows.iter().find(|r| r.observable == o && r.p == p).unwrap().mean;
    assert!(get("chi_sg", 0.7) > get("chi_sg", 0.3));
    assert!(get("chi_pm", 0.3) > get("chi_pm", 0.7));
    let perc = ExperimentConfig::from_text(
        Command::Percolation,
        "model = baseline\nL = 16\nT = linear(1)\nq = 0\np_zz = [0.2, 0.8]\nobservable = spans_time\ntrials = 50\n",
    )
    .unwrap();
    let rows = execute(&perc).unwrap().rows;
    assert!(rows[0].mean < 0.2 && rows[1].mean > 0.8);
}

#[test]
fn ladder_and_perturbed_run() {
    for model in ["model = ladder\np_bath = 0.1", "model = perturbed\np_u = 0.2"] {
        let cfg = ExperimentConfig::from_text(
            Command::Run,
            &format!("{model}\nL = 8\nT = linear(2)\nq = 0.5\np_zz = 0.8\nobservable = [chi_sg, s_half]\ntrials = 5\n"),
        )
        .unwrap();
        let rows = execute(&cfg).unwrap().rows;
        assert!(rows.iter().all(|r| r.mean.is_finite()));
    }
}
