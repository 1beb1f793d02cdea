//! CLI-level integration: exit codes, file outputs, and the small smoke run.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rvqite-lab"))
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.toml");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn ground_smoke_n2_reaches_exact_energy() {
    let work = tempfile::tempdir().unwrap();
    let config = write_config(
        work.path(),
        r#"
[model]
n_sites = 2
m_over_g = 0.0

[ansatz]
depth = 2

[solver]
max_iters = 300
seed = 1
"#,
    );
    let output = bin()
        .args([
            "ground",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            work.path().to_str().unwrap(),
            "--dump-hamiltonian",
            "--dump-state",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());

    let summary = std::fs::read_to_string(work.path().join("ground_summary.csv")).unwrap();
    let data = summary
        .lines()
        .find(|l| !l.starts_with('#') && !l.starts_with("energy"))
        .unwrap();
    let energy: f64 = data.split(',').next().unwrap().parse().unwrap();
    let exact = (1.0 - 5.0f64.sqrt()) / 4.0;
    assert!(
        (energy - exact).abs() < 1e-6,
        "energy {energy} vs exact {exact}"
    );

    // Hamiltonian text dump: `coeff  FACTORS` lines, identity spelled I.
    let text = std::fs::read_to_string(work.path().join("hamiltonian.txt")).unwrap();
    assert!(text.lines().count() >= 3);
    assert!(text.lines().any(|l| l.ends_with("  I")));
    assert!(text.lines().any(|l| l.contains("X0 X1")));

    // Binary amplitude dump: 2^N little-endian (re, im) f64 pairs.
    let bytes = std::fs::read(work.path().join("ground_state.bin")).unwrap();
    assert_eq!(bytes.len(), 4 * 16);
    let norm_sq: f64 = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()).powi(2))
        .sum();
    assert!((norm_sq - 1.0).abs() < 1e-9);
}

#[test]
fn config_errors_exit_2() {
    let work = tempfile::tempdir().unwrap();
    // Unknown field.
    let config = write_config(work.path(), "[model]\nn_sites = 4\nbogus = 1\n");
    let status = bin()
        .args(["ground", "--config", config.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // Odd site count.
    let config = write_config(work.path(), "[model]\nn_sites = 5\n");
    let status = bin()
        .args(["ground", "--config", config.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // Unknown update rule.
    let config = write_config(work.path(), "[solver]\nupdate_rule = \"newton\"\n");
    let status = bin()
        .args(["ground", "--config", config.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn sweep_grid_has_full_cardinality_and_error_column() {
    let work = tempfile::tempdir().unwrap();
    let config = write_config(
        work.path(),
        r#"
[model]
n_sites = 4

[ansatz]
depth = 1

[solver]
max_iters = 30
seed = 5

[sweep]
theta_points = 3
theta_min = -0.3
theta_max = 0.3
mu_points = 4
mu_min = -1.0
mu_max = 1.0
warm_iters = 20
boundary_q = [0]
"#,
    );
    let status = bin()
        .args([
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            work.path().to_str().unwrap(),
            "--gnuplot",
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let cells = std::fs::read_to_string(work.path().join("sweep_cells.csv")).unwrap();
    let mut lines = cells.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap();
    assert!(header.starts_with("theta_over_2pi,mu_over_g,"));
    assert!(header.ends_with(",error"));
    assert_eq!(lines.count(), 3 * 4);
    assert!(work.path().join("sweep_boundary.csv").exists());
    assert!(work.path().join("sweep_heatmaps.gp").exists());
}

#[test]
fn spectra_csv_schema() {
    let work = tempfile::tempdir().unwrap();
    let config = write_config(
        work.path(),
        r#"
[model]
n_sites = 4

[spectra]
q_values = [0, 1]
theta_points = 3
theta_min = -0.2
theta_max = 0.2
levels = 2
"#,
    );
    let status = bin()
        .args([
            "spectra",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            work.path().to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(work.path().join("spectra.csv")).unwrap();
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        lines.next().unwrap(),
        "q,n,energy,theta_over_2pi,m_over_g,mu_over_g"
    );
    // 2 sectors x 3 thetas x 2 levels.
    assert_eq!(lines.count(), 12);
}
