use rvqite::ansatz::{build_circuit, AnsatzSpec, InitMode};
use rvqite::exact::Oracle;
use rvqite::schwinger::{build_hamiltonian, SchwingerParams};
use rvqite::vqite::{evolve, VqiteConfig};
use rand::{Rng, SeedableRng};

fn random_params(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

fn main() {
    let n = 10;
    let oracle = Oracle::new();
    // the worst case: q=+3, t=-0.18
    let q = 3i64;
    let t = -0.18;
    let p = SchwingerParams::new(n, 1.0, 1.0, t * std::f64::consts::TAU, 0.0).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    let exact = oracle.sector_lowest(&p, q).unwrap().energy;
    let spec = AnsatzSpec::new(n, 5, InitMode::FixedCharge(q)).unwrap();
    let circuit = build_circuit(&spec).unwrap();

    println!("exact: {exact:+.6}");
    for (label, seed, iters, dtau, eps) in [
        ("s1 base          ", 1u64, 500usize, 0.1, 1e-6),
        ("s1 iters 2000    ", 1, 2000, 0.1, 1e-6),
        ("s1 dtau.05 x1000 ", 1, 1000, 0.05, 1e-6),
        ("s1 dtau.02 x2500 ", 1, 2500, 0.02, 1e-6),
        ("s1 eps 1e-4      ", 1, 500, 0.1, 1e-4),
        ("s1 eps 1e-3      ", 1, 500, 0.1, 1e-3),
        ("s2 dtau.05 x1000 ", 2, 1000, 0.05, 1e-6),
        ("s2 eps 1e-4      ", 2, 500, 0.1, 1e-4),
    ] {
        let theta0 = random_params(circuit.param_count(), seed);
        let config = VqiteConfig { max_iters: iters, dtau, epsilon: eps, ..Default::default() };
        let out = evolve(&circuit, &theta0, &h, &config).unwrap();
        let last = out.steps.last().unwrap();
        println!(
            "{label}: E={:+.6} gap={:+.3e} iters={} d2={:.2e} varH={:.2e}",
            out.final_energy, out.final_energy - exact, out.steps.len(), last.delta2, last.var_h
        );
    }
}
