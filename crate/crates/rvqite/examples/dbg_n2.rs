use rvqite::ansatz::{build_circuit, AnsatzSpec, InitMode};
use rvqite::schwinger::{build_hamiltonian, SchwingerParams};
use rvqite::vqite::{evolve, VqiteConfig};
use rand::{Rng, SeedableRng};

fn main() {
    let n = 2;
    let spec = AnsatzSpec::new(n, 2, InitMode::FreeCharge).unwrap();
    let circuit = build_circuit(&spec).unwrap();
    let p = SchwingerParams::new(n, 1.0, 0.0, 0.0, 0.0).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    for seed in 0..6u64 {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let theta0: Vec<f64> = (0..circuit.param_count())
            .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        let config = VqiteConfig { max_iters: 300, ..Default::default() };
        let out = evolve(&circuit, &theta0, &h, &config).unwrap();
        let last = out.steps.last().unwrap();
        println!(
            "seed {seed}: E={:+.9} iters={} delta2={:.3e} charge={:+.4} stalled={} converged={} trunc={}/{}",
            out.final_energy, out.steps.len(), last.delta2, last.charge,
            out.stalled, out.converged, last.truncated_count, circuit.param_count()
        );
    }
}
