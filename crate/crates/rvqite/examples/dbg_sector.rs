use rvqite::ansatz::{build_circuit, AnsatzSpec, InitMode};
use rvqite::exact::Oracle;
use rvqite::schwinger::{build_hamiltonian, SchwingerParams};
use rvqite::vqite::{evolve, VqiteConfig};

fn mix_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn random_params(count: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

fn main() {
    let n = 10;
    let oracle = Oracle::new();
    let spec_qs = [1i64, -1, 2, -2, 3, -3, 1, -1, 2, -2];
    for (k, &q) in spec_qs.iter().enumerate() {
        let t = -0.5 + 0.08 * k as f64;
        let p = SchwingerParams::new(n, 1.0, 1.0, t * std::f64::consts::TAU, 0.0).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let spec = AnsatzSpec::new(n, 5, InitMode::FixedCharge(q)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let theta0 = random_params(circuit.param_count(), mix_seed(7, k as u64));
        let config = VqiteConfig { seed: 7, ..Default::default() };
        let out = evolve(&circuit, &theta0, &h, &config).unwrap();
        let exact = oracle.sector_lowest(&p, q).unwrap().energy;
        let last = out.steps.last().unwrap();
        println!(
            "k={k} q={q:+} t={t:+.2}: E={:+.6} exact={:+.6} gap={:+.3e} iters={} stalled={} d2={:.2e} varH={:.2e} trunc={}/{}",
            out.final_energy, exact, out.final_energy - exact, out.steps.len(),
            out.stalled, last.delta2, last.var_h, last.truncated_count, circuit.param_count()
        );
    }
}
