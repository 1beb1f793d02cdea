use rvqite::ansatz::{build_circuit, AnsatzSpec, InitMode};
use rvqite::exact::Oracle;
use rvqite::schwinger::{build_hamiltonian, SchwingerParams};
use rvqite::vqite::{evolve, UpdateRule, VqiteConfig};
use rand::{Rng, SeedableRng};

fn main() {
    let n = 10;
    let p = SchwingerParams::new(n, 1.0, 1.0, 0.0, 0.0).unwrap();
    let h = build_hamiltonian(&p).unwrap();
    let oracle = Oracle::new();
    let (e_min, e_max) = oracle.extremal_energies(&p).unwrap();
    let spec = AnsatzSpec::new(n, 5, InitMode::FreeCharge).unwrap();
    let circuit = build_circuit(&spec).unwrap();
    for rule in [UpdateRule::PseudoInverse, UpdateRule::Gradient] {
        let mut finals = Vec::new();
        for seed in 0..4u64 {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let theta0: Vec<f64> = (0..circuit.param_count())
                .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            let config = VqiteConfig { max_iters: 500, update_rule: rule, ..Default::default() };
            match evolve(&circuit, &theta0, &h, &config) {
                Ok(out) => {
                    let r = (e_max - out.final_energy) / (e_max - e_min);
                    finals.push(r);
                    println!("{rule:?} seed {seed}: ratio={r:.5} iters={}", out.steps.len());
                }
                Err(e) => println!("{rule:?} seed {seed}: ERROR {e}"),
            }
        }
        let mean = finals.iter().sum::<f64>() / finals.len().max(1) as f64;
        println!("{rule:?}: mean final ratio {mean:.5}");
    }
}
