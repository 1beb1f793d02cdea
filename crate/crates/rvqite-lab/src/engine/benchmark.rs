//! Benchmark runs: per-iteration mean and standard deviation of the Ratio
//! over seeded random initializations, for each (method, depth) pair. Sample
//! k uses the same initial parameters across methods, so the comparison is
//! paired.

use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;

use rvqite::ansatz::{build_circuit, AnsatzSpec};
use rvqite::exact::Oracle;
use rvqite::schwinger::build_hamiltonian;
use rvqite::vqite::evolve;

use crate::config::{mix_seed, parse_update_rule, RunConfig};
use crate::engine::random_params;
use crate::output::{fmt_f64, out_path, CsvWriter};

#[derive(Debug, Clone)]
pub struct BenchmarkCurve {
    pub method: String,
    pub depth: usize,
    /// ratio trajectories indexed [sample][iter] (padded to max_iters with
    /// the last value when a run stops early).
    pub ratios: Vec<Vec<f64>>,
}

impl BenchmarkCurve {
    pub fn mean_at(&self, iter: usize) -> f64 {
        let values: Vec<f64> = self.ratios.iter().map(|r| r[iter]).collect();
        values.iter().sum::<f64>() / values.len() as f64
    }

    pub fn std_at(&self, iter: usize) -> f64 {
        let mean = self.mean_at(iter);
        let n = self.ratios.len() as f64;
        if n < 2.0 {
            return 0.0;
        }
        (self
            .ratios
            .iter()
            .map(|r| (r[iter] - mean).powi(2))
            .sum::<f64>()
            / n)
            .sqrt()
    }

    pub fn final_iter(&self) -> usize {
        self.ratios[0].len() - 1
    }
}

pub fn run_curves(config: &RunConfig) -> Result<Vec<BenchmarkCurve>> {
    let params = config.model.params()?;
    let h = build_hamiltonian(&params)?;
    let oracle = Oracle::new();
    let (e_min, e_max) = oracle.extremal_energies(&params)?;
    let solver_base = config.solver.vqite()?;
    let span = e_max - e_min;

    let base_spec = config.ansatz.spec(params.n_sites)?;
    let mut curves = Vec::new();
    for &depth in &config.benchmark.depths {
        let spec = AnsatzSpec::new(params.n_sites, depth, base_spec.init)?;
        let circuit = build_circuit(&spec)?;
        // Common seeds across methods: sample k's draw depends only on
        // (solver.seed, depth, k).
        let inits: Vec<Vec<f64>> = (0..config.benchmark.samples)
            .map(|k| {
                random_params(
                    circuit.param_count(),
                    mix_seed(solver_base.seed, (depth as u64) << 32 | k as u64),
                )
            })
            .collect();
        for method in &config.benchmark.methods {
            let rule = parse_update_rule(method)?;
            let mut solver = solver_base;
            solver.update_rule = rule;
            let ratios: Vec<Vec<f64>> = inits
                .par_iter()
                .map(|theta0| -> Result<Vec<f64>> {
                    let outcome = evolve(&circuit, theta0, &h, &solver)?;
                    let mut track: Vec<f64> = outcome
                        .steps
                        .iter()
                        .map(|s| (e_max - s.energy) / span)
                        .collect();
                    let last = *track.last().expect("non-empty trajectory");
                    track.resize(solver.max_iters, last);
                    Ok(track)
                })
                .collect::<Result<Vec<_>>>()?;
            curves.push(BenchmarkCurve {
                method: method.clone(),
                depth,
                ratios,
            });
        }
    }
    Ok(curves)
}

pub fn run(config: &RunConfig, out_dir: &Path) -> Result<Vec<BenchmarkCurve>> {
    let curves = run_curves(config)?;
    let mut csv = CsvWriter::new(
        &config.metadata(),
        &["method", "depth", "iter", "ratio_mean", "ratio_std"],
    );
    for curve in &curves {
        for iter in 0..=curve.final_iter() {
            csv.row(&[
                curve.method.clone(),
                curve.depth.to_string(),
                (iter + 1).to_string(),
                fmt_f64(curve.mean_at(iter)),
                fmt_f64(curve.std_at(iter)),
            ]);
        }
    }
    csv.write_to(&out_path(out_dir, "benchmark_stats.csv"))?;
    Ok(curves)
}
