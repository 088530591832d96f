use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resmotif"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("spawn resmotif")
}

fn lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(str::to_owned).collect()
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["motifs", "--regime", "spiral"]).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--nu-grid", "1:2"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        run(&["motifs", "--input", "periodic-binary", "--period", "7", "--N", "20", "--out", out]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn periodic_input_keeps_period_many_motifs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "motifs", "--regime", "cycle", "--input", "periodic-binary", "--period", "10", "--N", "100", "--nu", "0.995",
        "--ell", "2", "--out", out,
    ]);
    assert!(o.status.success());
    let motifs = lines(&dir.path().join("motifs.csv"));
    assert_eq!(motifs.len(), 11);
    assert!(motifs[0].starts_with("index,weight,m_1,m_2"));
    assert_eq!(motifs[0].split(',').count(), 202);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "# recipe\nregime = cycle\ninput = pi-signs\nN = 30\nnu = 0.9\n").unwrap();
    let out = dir.path().join("out");
    let o = run(&["motifs", "--config", conf.to_str().unwrap(), "--N", "20", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // N from the flag gives 2·20 = 40 entries per motif
    assert_eq!(lines(&out.join("motifs.csv"))[0].split(',').count(), 42);

    fs::write(&conf, "colour = blue\n").unwrap();
    assert_eq!(run(&["motifs", "--config", conf.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn sweep_rows() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single");
    let o = run(&["sweep", "--regime", "cycle", "--input", "pi-signs", "--N", "20", "--nu", "0.95", "--out", single.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = lines(&single.join("sweep.csv"));
    assert_eq!(rows[0], "nu,regime,input_kind,trial,n_motifs,cells_visited,relative_area,weighted_relative_area,discarded_points");
    assert_eq!(rows.len(), 2);

    let many = dir.path().join("many");
    let o = run(&["sweep", "--regime", "random", "--input", "pi-signs", "--N", "20", "--nu", "0.95", "--out", many.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = lines(&many.join("sweep.csv"));
    assert_eq!(rows.len(), 1 + 30 + 2);
    assert!(rows[31].contains(",mean,") && rows[32].contains(",std,"));
}

#[test]
fn verify_passes_and_detects_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok");
    let o = run(&["verify", "--trials", "5", "--out", ok.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).lines().all(|l| l.starts_with("PASS")));

    let bad = dir.path().join("bad");
    let o = run(&["verify", "--trials", "5", "--inject-asymmetric", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&o.stdout).into_owned();
    assert!(stdout.contains("FAIL tensor-symmetry"));
    assert!(stdout.contains("FAIL tensor-psd"));
    assert!(bad.join("failures").join("tensor-symmetry-0.txt").exists());
}

#[test]
fn predict_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p");
    let o = run(&[
        "predict", "--regime", "cycle", "--input", "periodic-binary", "--period", "10", "--N", "100", "--nu", "0.995",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows = lines(&out.join("comparison.csv"));
    assert_eq!(rows.len(), 11);
    for row in &rows[1..] {
        let err: f64 = row.split(',').last().unwrap().parse().unwrap();
        assert!(err <= 1e-8, "{row}");
    }
    let o = run(&["predict", "--regime", "cycle", "--N", "10", "--tau", "15", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn kernel_command() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("u.txt"), "1\n0\n0\n0\n").unwrap();
    let out = dir.path().join("k");
    let u = dir.path().join("u.txt");
    let o = run(&[
        "kernel", "--regime", "cycle", "--input", "pi-signs", "--N", "4", "--u", u.to_str().unwrap(), "--degree", "2",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // u = v = impulse at lag 0 gives K = ‖w‖² = 1
    let rows = lines(&out.join("kernel.csv"));
    let k: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
    let k2: f64 = rows[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((k - 1.0).abs() <= 1e-14 && (k2 - 1.0).abs() <= 1e-14);
}
