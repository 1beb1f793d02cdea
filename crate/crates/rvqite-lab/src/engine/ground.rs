//! Ground-state run: one rVQITE evolution, trajectory CSV, and a summary
//! with energy, Ratio, and observables.

use std::path::Path;

use anyhow::Result;

use rvqite::ansatz::build_circuit;
use rvqite::exact::Oracle;
use rvqite::schwinger::{build_hamiltonian, observables};
use rvqite::vqite::{evolve, EvolveOutcome};

use crate::config::RunConfig;
use crate::engine::random_params;
use crate::output::{fmt_f64, out_path, CsvWriter};

pub struct GroundReport {
    pub outcome: EvolveOutcome,
    pub ratio: f64,
    pub charge: f64,
    pub chiral_condensate: f64,
    pub electric_field: f64,
}

pub fn run(config: &RunConfig, out_dir: &Path, dump_hamiltonian: bool, dump_state: bool) -> Result<GroundReport> {
    let params = config.model.params()?;
    let h = build_hamiltonian(&params)?;
    let spec = config.ansatz.spec(params.n_sites)?;
    let circuit = build_circuit(&spec)?;
    let solver = config.solver.vqite()?;

    if dump_hamiltonian {
        std::fs::write(out_path(out_dir, "hamiltonian.txt"), h.to_string())?;
    }

    let theta0 = random_params(circuit.param_count(), solver.seed);
    let outcome = evolve(&circuit, &theta0, &h, &solver)?;

    let oracle = Oracle::new();
    let (e_min, e_max) = oracle.extremal_energies(&params)?;

    let metadata = config.metadata();
    let mut trajectory = CsvWriter::new(
        &metadata,
        &[
            "iter",
            "energy",
            "ratio",
            "delta2",
            "kappa",
            "truncated_count",
            "charge",
            "lambda_min",
            "lambda_max",
        ],
    );
    for step in &outcome.steps {
        let ratio = (e_max - step.energy) / (e_max - e_min);
        trajectory.row(&[
            step.iter.to_string(),
            fmt_f64(step.energy),
            fmt_f64(ratio),
            fmt_f64(step.delta2),
            fmt_f64(step.condition_number),
            step.truncated_count.to_string(),
            fmt_f64(step.charge),
            fmt_f64(*step.eigenvalues.first().unwrap_or(&f64::NAN)),
            fmt_f64(*step.eigenvalues.last().unwrap_or(&f64::NAN)),
        ]);
    }
    trajectory.write_to(&out_path(out_dir, "ground_trajectory.csv"))?;

    let obs = observables(&outcome.final_state, &params)?;
    let ratio = (e_max - outcome.final_energy) / (e_max - e_min);
    let mut summary = CsvWriter::new(
        &metadata,
        &[
            "energy",
            "ratio",
            "charge",
            "chiral_condensate",
            "electric_field",
            "iterations",
            "converged",
            "stalled",
        ],
    );
    summary.row(&[
        fmt_f64(outcome.final_energy),
        fmt_f64(ratio),
        fmt_f64(obs.charge),
        fmt_f64(obs.chiral_condensate),
        fmt_f64(obs.electric_field),
        outcome.steps.len().to_string(),
        outcome.converged.to_string(),
        outcome.stalled.to_string(),
    ]);
    summary.write_to(&out_path(out_dir, "ground_summary.csv"))?;

    if dump_state {
        std::fs::write(
            out_path(out_dir, "ground_state.bin"),
            outcome.final_state.to_le_bytes(),
        )?;
    }

    Ok(GroundReport {
        ratio,
        charge: obs.charge,
        chiral_condensate: obs.chiral_condensate,
        electric_field: obs.electric_field,
        outcome,
    })
}
