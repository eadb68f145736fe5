use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoacoustics")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// CSV rows below the column header.
fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn coeffs_emits_header_and_fifteen_rows() {
    let o = run(&["coeffs"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# geoacoustics"));
    for key in ["# mode = paper-exact", "# damping = corrected", "# alpha = ", "# t0 = "] {
        assert!(text.contains(key), "missing {key}");
    }
    assert_eq!(data_rows(&text).len(), 15);
    assert!(text.contains("\nt,A,B,g,Gamma,Gamma_hat,Omega,Lambda,chi\n"));
}

#[test]
fn grid_sweep_is_cartesian_and_ordered() {
    let o = run(&["sweep", "--grid", "beta=0.02,0.04,0.06", "--grid", "alpha=0.15,0.25,0.35", "--n-eta", "513"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 9);
    let keys: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let f: Vec<f64> = r.split(',').take(2).map(|v| v.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    assert_eq!(keys[0], (0.02, 0.15));
    assert_eq!(keys[1], (0.02, 0.25));
    assert_eq!(keys[3], (0.04, 0.15));
    assert_eq!(keys[8], (0.06, 0.35));
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--sweep", "beta=0.02,0.04,0.06", "--n-eta", "513"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = ["solve", "--n-cells", "128", "--t-eval", "0.5", "--snapshots", "3"];
    assert_eq!(run(&s).stdout, run(&s).stdout);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["coeffs", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["coeffs", "--alpha", "2"]).status.code(), Some(2));
    assert_eq!(run(&["coeffs", "--mode", "mystery"]).status.code(), Some(2));
    assert_eq!(run(&["jacobian", "--n-eta", "1"]).status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_three() {
    let o = run(&["jacobian", "--t-eval", "1e300"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(run(&["coeffs", "--t-eval", "1e300"]).status.code(), Some(3));
}

#[test]
fn verify_passes_at_baseline() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = data_rows(&text);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",PASS")));
}

#[test]
fn config_file_is_overridden_by_flags_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# baseline with more covolume\nbeta = 0.04\nsamples = 4\n").unwrap();
    let path = cfg.to_str().unwrap();

    let text = stdout(&run(&["coeffs", "--config", path]));
    assert!(text.contains("# beta = 4.0000000000000001e-2"));
    assert_eq!(data_rows(&text).len(), 4);

    let text = stdout(&run(&["coeffs", "--config", path, "--beta", "0.02"]));
    assert!(text.contains("# beta = 2.0000000000000000e-2"));

    std::fs::write(&cfg, "betta = 0.04\n").unwrap();
    assert_eq!(run(&["coeffs", "--config", path]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("break.csv");
    let o = run(&["break", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    let t_b: f64 = rows[0].split(',').next().unwrap().parse().unwrap();
    assert!((t_b - 0.6431).abs() < 1e-3);
}

#[test]
fn presets_match_their_figures() {
    let text = stdout(&run(&["sweep", "--preset", "fig2", "--n-eta", "513"]));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 3);
    assert!(text.lines().any(|l| l.starts_with("alpha,")));
}
