//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one pass/fail line. Heavy model runs share cached results where protocols
//! coincide. Run with `cargo test -p rvqite-lab --test acceptance` (add
//! `-- --nocapture` to watch the lines stream).

use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;

use rvqite::ansatz::{build_circuit, AnsatzSpec, InitMode};
use rvqite::exact::{sector_lowest, Oracle};
use rvqite::schwinger::{build_hamiltonian, charge_operator, SchwingerParams};
use rvqite::vqite::{
    ancilla_a, assemble, evolve, regularized_update, sample_random_systems, shift_rule_c,
    spectrum_statistics, McLachlanSystem, VqiteConfig,
};

use rvqite_lab::config::RunConfig;
use rvqite_lab::engine::benchmark::{run_curves, BenchmarkCurve};
use rvqite_lab::engine::sweep::run_grid;

const BASE_SEED: u64 = 7;

fn benchmark_config(depths: Vec<usize>, methods: Vec<&str>) -> RunConfig {
    let mut config = RunConfig::default();
    config.model.n_sites = 10;
    config.model.m_over_g = 1.0;
    config.model.theta_over_2pi = 0.0;
    config.model.mu_over_g = 0.0;
    config.solver.seed = BASE_SEED;
    config.solver.max_iters = 500;
    config.benchmark.samples = 20;
    config.benchmark.depths = depths;
    config.benchmark.methods = methods.into_iter().map(String::from).collect();
    config
}

/// Depth-5 regularized curve (20 samples, 500 iters), shared by criteria 1
/// and 2; the seed pairing makes it identical in both protocols.
fn depth5_regularized() -> &'static BenchmarkCurve {
    static CURVE: OnceLock<BenchmarkCurve> = OnceLock::new();
    CURVE.get_or_init(|| {
        let config = benchmark_config(vec![5], vec!["regularized"]);
        run_curves(&config)
            .expect("depth-5 benchmark")
            .into_iter()
            .next()
            .expect("one curve")
    })
}

fn report(criterion: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} ({detail})");
    assert!(pass, "{criterion} failed: {detail}");
}

#[test]
fn criterion_1_ratio_vs_depth() {
    // N=10, m=g, theta=0, mu=0, a=1/g, 20 seeded inits, 500 iterations.
    // Depth 1 mean Ratio >= 0.95, depth 5 mean >= 0.99; tolerance: mean
    // within 0.01 of the threshold.
    let config = benchmark_config(vec![1], vec!["regularized"]);
    let depth1 = run_curves(&config)
        .expect("depth-1 benchmark")
        .into_iter()
        .next()
        .expect("one curve");
    let depth5 = depth5_regularized();

    let mean1 = depth1.mean_at(depth1.final_iter());
    let mean5 = depth5.mean_at(depth5.final_iter());
    let pass = mean1 >= 0.95 - 0.01 && mean5 >= 0.99 - 0.01;
    report(
        "criterion 1 (ratio vs depth)",
        pass,
        &format!("depth-1 mean ratio {mean1:.5} >= 0.94, depth-5 mean ratio {mean5:.5} >= 0.98"),
    );
}

#[test]
fn criterion_2_method_comparison() {
    // Same setup; rVQITE final mean >= pseudo-inverse and gradient means,
    // and rVQITE std at iteration 500 <= pseudo-inverse's.
    let regularized = depth5_regularized();
    let config = benchmark_config(vec![5], vec!["pseudo_inverse", "gradient"]);
    let baselines = run_curves(&config).expect("baseline benchmark");
    let pinv = baselines
        .iter()
        .find(|c| c.method == "pseudo_inverse")
        .expect("pinv curve");
    let gradient = baselines
        .iter()
        .find(|c| c.method == "gradient")
        .expect("gradient curve");

    let last = regularized.final_iter();
    let reg_mean = regularized.mean_at(last);
    let pinv_mean = pinv.mean_at(last);
    let grad_mean = gradient.mean_at(last);
    let reg_std = regularized.std_at(last);
    let pinv_std = pinv.std_at(last);

    let pass = reg_mean >= pinv_mean && reg_mean >= grad_mean && reg_std <= pinv_std;
    report(
        "criterion 2 (method comparison)",
        pass,
        &format!(
            "final means: rvqite {reg_mean:.5} vs pinv {pinv_mean:.5} vs gradient {grad_mean:.5}; \
             stds at 500: rvqite {reg_std:.3e} vs pinv {pinv_std:.3e}"
        ),
    );
}

#[test]
fn criterion_3_metric_pathology() {
    // N=10, depth 5, 10 random-theta samples: pooled eigenvalues contain
    // negatives and values in (0, 1e-6); at least one sample has kappa > 1e6.
    let p = SchwingerParams::new(10, 1.0, 1.0, 0.0, 0.0).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    let spec = AnsatzSpec::new(10, 5, InitMode::FreeCharge).unwrap();
    let circuit = build_circuit(&spec).unwrap();
    let systems = sample_random_systems(&circuit, &h, 10, BASE_SEED).unwrap();
    let stats = spectrum_statistics(&systems);

    let has_negative = !stats.negative.is_empty();
    let has_tiny_positive = stats.positive.iter().any(|&l| l > 0.0 && l < 1e-6);
    let max_kappa = stats
        .condition_numbers
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let pass = has_negative && has_tiny_positive && max_kappa > 1e6;
    report(
        "criterion 3 (A^R pathology)",
        pass,
        &format!(
            "{} negative eigenvalues, tiny positives present: {has_tiny_positive}, max kappa {max_kappa:.3e}",
            stats.negative.len()
        ),
    );
}

#[test]
fn criterion_4_exact_oracle_identities() {
    // Commutation, rigid mu-shift, and the zero-field hierarchy.
    let p = SchwingerParams::new(10, 1.0, 0.83, 1.37, 0.0).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    let commutator = h.commutator_norm(&charge_operator(10)).unwrap();

    let mut shift_err: f64 = 0.0;
    let mu = 0.42;
    for q in -2i64..=2 {
        let e0 = sector_lowest(&SchwingerParams::new(10, 1.0, 1.0, 0.6, 0.0).unwrap(), q)
            .unwrap()
            .energy;
        let emu = sector_lowest(&SchwingerParams::new(10, 1.0, 1.0, 0.6, mu).unwrap(), q)
            .unwrap()
            .energy;
        shift_err = shift_err.max((emu - (e0 - mu * q as f64)).abs());
    }

    let zero_field = SchwingerParams::new(10, 1.0, 1.0, 0.0, 0.0).unwrap();
    let mut hierarchy = true;
    for q in 0i64..3 {
        let up_ok = sector_lowest(&zero_field, q).unwrap().energy
            < sector_lowest(&zero_field, q + 1).unwrap().energy;
        let down_ok = sector_lowest(&zero_field, -q).unwrap().energy
            < sector_lowest(&zero_field, -q - 1).unwrap().energy;
        hierarchy = hierarchy && up_ok && down_ok;
    }

    let pass = commutator < 1e-12 && shift_err < 1e-10 && hierarchy;
    report(
        "criterion 4 (exact-oracle identities)",
        pass,
        &format!(
            "|[H,Q]| = {commutator:.2e}, mu-shift error {shift_err:.2e}, hierarchy |q|<=3: {hierarchy}"
        ),
    );
}

#[test]
fn criterion_5_level_crossing() {
    // Crossings of E_0^(q) and E_0^(-q) for q = 1, 2, 3 at N=10, m=g, mu=0,
    // located on the theta/2pi axis within [-0.5, -0.3] (the paper's
    // "theta ~ -0.4pi" gray-line coordinate; scan step 0.005 = 0.01pi in
    // theta). Then rVQITE sector energies (FixedCharge) match the oracle to
    // 0.02 g at 10 sampled theta values.
    let oracle = Oracle::new();
    let n = 10;
    let energy = |q: i64, t: f64| {
        let p = SchwingerParams::new(n, 1.0, 1.0, t * std::f64::consts::TAU, 0.0).unwrap();
        oracle.sector_lowest(&p, q).unwrap().energy
    };

    let steps = 40usize; // t in [-0.5, -0.3], step 0.005
    let mut crossings_found = [false; 3];
    for (k, q) in [1i64, 2, 3].iter().enumerate() {
        let mut prev = energy(*q, -0.5) - energy(-*q, -0.5);
        for s in 1..=steps {
            let t = -0.5 + 0.005 * s as f64;
            let diff = energy(*q, t) - energy(-*q, t);
            if prev * diff <= 0.0 {
                crossings_found[k] = true;
                break;
            }
            prev = diff;
        }
    }

    // rVQITE FixedCharge(q) sector energies at 10 sampled theta values.
    let spec_qs = [1i64, -1, 2, -2, 3, -3, 1, -1, 2, -2];
    let mut worst_gap: f64 = 0.0;
    for (k, &q) in spec_qs.iter().enumerate() {
        let t = -0.5 + 0.08 * k as f64;
        let p = SchwingerParams::new(n, 1.0, 1.0, t * std::f64::consts::TAU, 0.0).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let spec = AnsatzSpec::new(n, 5, InitMode::FixedCharge(q)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let theta0 = rvqite_lab::engine::random_params(
            circuit.param_count(),
            rvqite_lab::config::mix_seed(BASE_SEED, k as u64),
        );
        // Same total imaginary time as dtau 0.1 x 500 but a finer Euler
        // step: the charged sectors away from theta = 0 drive much larger
        // field energies, where dtau = 0.1 steps can overshoot along the
        // barely-retained eigendirections and bounce instead of converge.
        let config = VqiteConfig {
            seed: BASE_SEED,
            dtau: 0.05,
            max_iters: 1000,
            ..Default::default()
        };
        let outcome = evolve(&circuit, &theta0, &h, &config).unwrap();
        let exact = oracle.sector_lowest(&p, q).unwrap().energy;
        worst_gap = worst_gap.max((outcome.final_energy - exact).abs());
    }

    let pass = crossings_found.iter().all(|&c| c) && worst_gap <= 0.02;
    report(
        "criterion 5 (level crossing)",
        pass,
        &format!(
            "crossings in theta/2pi [-0.5,-0.3] for q=1,2,3: {crossings_found:?}; \
             worst rVQITE sector-energy gap {worst_gap:.4} g <= 0.02 g"
        ),
    );
}

#[test]
fn criterion_6_phase_boundary_consistency() {
    // Reduced sweep: N=8, 21x21 (theta/2pi, mu/g) grid, warm start. Every
    // traced boundary root for q in {-2..2} must lie within one grid cell of
    // the rounded-<Q> step of the rVQITE heat map for >= 90% of traced
    // points.
    let mut config = RunConfig::default();
    config.model.n_sites = 8;
    config.model.m_over_g = 1.0;
    config.solver.seed = BASE_SEED;
    config.sweep.theta_points = 21;
    config.sweep.mu_points = 21;
    config.sweep.boundary_q = vec![-2, -1, 0, 1, 2];
    let output = run_grid(&config, true).expect("sweep");

    let cell_width = (output.axis2[1] - output.axis2[0]).abs();
    let mut traced = 0usize;
    let mut matched = 0usize;
    for &(q, t, mu_root, _residual) in &output.boundary {
        traced += 1;
        // Column of this root (outer values came from axis1).
        let col = output
            .axis1
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (*a - t).abs().partial_cmp(&(*b - t).abs()).unwrap()
            })
            .map(|(idx, _)| idx)
            .unwrap();
        let column = &output.cells[col];
        // Distance from the root to the nearest row interval whose rounded
        // charge steps across the q | q+1 divide.
        let mut best = f64::INFINITY;
        for row in 0..column.len() - 1 {
            let (a, b) = (&column[row], &column[row + 1]);
            if a.error.is_some() || b.error.is_some() {
                continue;
            }
            let qa = a.charge.round() as i64;
            let qb = b.charge.round() as i64;
            if qa <= q && qb >= q + 1 {
                let (lo, hi) = (output.axis2[row], output.axis2[row + 1]);
                let dist = if mu_root < lo {
                    lo - mu_root
                } else if mu_root > hi {
                    mu_root - hi
                } else {
                    0.0
                };
                best = best.min(dist);
            }
        }
        if best <= cell_width {
            matched += 1;
        }
    }
    let fraction = matched as f64 / traced.max(1) as f64;
    let pass = traced > 0 && fraction >= 0.9;
    report(
        "criterion 6 (phase-boundary consistency)",
        pass,
        &format!("{matched}/{traced} traced roots within one grid cell ({:.1}%)", 100.0 * fraction),
    );
}

#[test]
fn criterion_7_numerical_core_properties() {
    // Finite-difference checks of C and A, protocol equivalence of the
    // shifted-circuit routes, the per-step descent certificate, and the
    // frozen truncation example.
    let n = 4;
    let p = SchwingerParams::new(n, 1.0, 1.0, 0.4, 0.1).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    let spec = AnsatzSpec::new(n, 2, InitMode::FreeCharge).unwrap();
    let circuit = build_circuit(&spec).unwrap();
    let params = rvqite_lab::engine::random_params(circuit.param_count(), 123);
    let sys = assemble(&circuit, &params, &h).unwrap();

    // C = (1/2) grad E by central differences; relative error on the vector.
    let step = 1e-4;
    let mut fd = vec![0.0; circuit.param_count()];
    for k in 0..circuit.param_count() {
        let mut plus = params.clone();
        plus[k] += step;
        let mut minus = params.clone();
        minus[k] -= step;
        let ep = h.expectation(&circuit.evaluate(&plus).unwrap()).unwrap();
        let em = h.expectation(&circuit.evaluate(&minus).unwrap()).unwrap();
        fd[k] = 0.5 * (ep - em) / (2.0 * step);
    }
    let num: f64 = sys
        .c
        .iter()
        .zip(&fd)
        .map(|(c, f)| (c - f) * (c - f))
        .sum::<f64>()
        .sqrt();
    let den: f64 = fd.iter().map(|f| f * f).sum::<f64>().sqrt();
    let c_rel_err = num / den;

    // A vs the finite-difference derivative Gram matrix (absolute error).
    let fd_state = |k: usize| {
        let mut plus = params.clone();
        plus[k] += step;
        let mut minus = params.clone();
        minus[k] -= step;
        let sp = circuit.evaluate(&plus).unwrap();
        let sm = circuit.evaluate(&minus).unwrap();
        sp.amplitudes()
            .iter()
            .zip(sm.amplitudes())
            .map(|(a, b)| (a - b) / (2.0 * step))
            .collect::<Vec<_>>()
    };
    let fd_states: Vec<_> = (0..circuit.param_count()).map(fd_state).collect();
    let mut a_abs_err: f64 = 0.0;
    for i in 0..circuit.param_count() {
        for j in 0..circuit.param_count() {
            let want: f64 = fd_states[i]
                .iter()
                .zip(&fd_states[j])
                .map(|(x, y)| x.re * y.re + x.im * y.im)
                .sum();
            a_abs_err = a_abs_err.max((sys.a[(i, j)] - want).abs());
        }
    }

    // Shifted-circuit protocols reproduce the analytic system.
    let c_shift = shift_rule_c(&circuit, &params, &h).unwrap();
    let a_ancilla = ancilla_a(&circuit, &params).unwrap();
    let mut shift_err: f64 = 0.0;
    let mut ancilla_err: f64 = 0.0;
    for i in 0..circuit.param_count() {
        shift_err = shift_err.max((c_shift[i] - sys.c[i]).abs());
        for j in 0..circuit.param_count() {
            ancilla_err = ancilla_err.max((a_ancilla[(i, j)] - sys.a[(i, j)]).abs());
        }
    }

    // Descent property on every recorded step of a short run.
    let config = VqiteConfig {
        max_iters: 120,
        ..Default::default()
    };
    let outcome = evolve(&circuit, &params, &h, &config).unwrap();
    let descent_ok = outcome
        .steps
        .iter()
        .all(|s| s.delta2 <= s.var_h + 1e-9);

    // Frozen truncation example: A = diag(2, 1e-9, -0.3) keeps only the
    // first coordinate.
    let trunc_sys = McLachlanSystem {
        a: nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1e-9, -0.3])),
        c: nalgebra::DVector::from_vec(vec![0.8, -1.3, 2.2]),
        var_h: 1.0,
        energy: 0.0,
    };
    let (theta_dot, _) = regularized_update(&trunc_sys, 1e-6);
    let trunc_ok = theta_dot[0] == -0.4 && theta_dot[1] == 0.0 && theta_dot[2] == 0.0;

    let pass = c_rel_err < 1e-5
        && a_abs_err < 1e-5
        && shift_err < 1e-8
        && ancilla_err < 1e-8
        && descent_ok
        && trunc_ok;
    report(
        "criterion 7 (numerical-core properties)",
        pass,
        &format!(
            "C rel err {c_rel_err:.2e}, A abs err {a_abs_err:.2e}, shift-rule err {shift_err:.2e}, \
             ancilla err {ancilla_err:.2e}, descent {descent_ok}, truncation exact {trunc_ok}"
        ),
    );
}

#[test]
fn criterion_8_determinism() {
    // Byte-identical CSV output for identical config and seed, analytic mode.
    let bin = env!("CARGO_BIN_EXE_rvqite-lab");
    let work = tempfile::tempdir().unwrap();
    let config_path = work.path().join("det.toml");
    std::fs::write(
        &config_path,
        r#"
[model]
n_sites = 4

[ansatz]
depth = 2

[solver]
max_iters = 40
seed = 11

[spectrum]
samples = 3
"#,
    )
    .unwrap();

    let run_to = |sub: &str, dir: &Path| {
        let status = Command::new(bin)
            .args([
                sub,
                "--config",
                config_path.to_str().unwrap(),
                "--out-dir",
                dir.to_str().unwrap(),
            ])
            .status()
            .expect("binary runs");
        assert!(status.success(), "{sub} exited with {status}");
    };

    let mut identical = true;
    let mut checked = Vec::new();
    for (sub, files) in [
        ("ground", vec!["ground_trajectory.csv", "ground_summary.csv"]),
        ("spectrum", vec!["spectrum_eigenvalues.csv", "spectrum_kappa.csv"]),
    ] {
        let dir_a = work.path().join(format!("{sub}_a"));
        let dir_b = work.path().join(format!("{sub}_b"));
        std::fs::create_dir_all(&dir_a).unwrap();
        std::fs::create_dir_all(&dir_b).unwrap();
        run_to(sub, &dir_a);
        run_to(sub, &dir_b);
        for file in files {
            let a = std::fs::read(dir_a.join(file)).expect("first run output");
            let b = std::fs::read(dir_b.join(file)).expect("second run output");
            identical = identical && a == b;
            checked.push(format!("{sub}/{file}"));
        }
    }
    report(
        "criterion 8 (determinism)",
        identical,
        &format!("byte-identical outputs: {}", checked.join(", ")),
    );
}
