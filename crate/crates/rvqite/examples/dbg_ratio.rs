use rvqite::ansatz::{build_circuit, AnsatzSpec, InitMode};
use rvqite::exact::Oracle;
use rvqite::schwinger::{build_hamiltonian, SchwingerParams};
use rvqite::vqite::{evolve, VqiteConfig};
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn main() {
    let n = 10;
    let p = SchwingerParams::new(n, 1.0, 1.0, 0.0, 0.0).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    let oracle = Oracle::new();
    let t0 = Instant::now();
    let (e_min, e_max) = oracle.extremal_energies(&p).unwrap();
    println!("sector extremes: E_min={e_min:.6} E_max={e_max:.6} ({:?})", t0.elapsed());
    let t0 = Instant::now();
    let full = rvqite::exact::full_spectrum(&p).unwrap();
    println!("dense 1024 full_spectrum: E_min={:.6} E_max={:.6} ({:?})", full[0], full.last().unwrap(), t0.elapsed());

    for depth in [1usize, 5] {
        let spec = AnsatzSpec::new(n, depth, InitMode::FreeCharge).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let mut ratios = Vec::new();
        let t0 = Instant::now();
        for seed in 0..4u64 {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let theta0: Vec<f64> = (0..circuit.param_count())
                .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            let config = VqiteConfig { max_iters: 500, ..Default::default() };
            let out = evolve(&circuit, &theta0, &h, &config).unwrap();
            let r = (e_max - out.final_energy) / (e_max - e_min);
            ratios.push(r);
            println!("  depth {depth} seed {seed}: E={:+.6} ratio={:.5} iters={} stalled={}",
                out.final_energy, r, out.steps.len(), out.stalled);
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        println!("depth {depth}: mean ratio {mean:.5} over {} samples, total {:?}", ratios.len(), t0.elapsed());
    }
}
