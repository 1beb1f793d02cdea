//! Phase-diagram sweeps over (theta, mu) or (theta, m) grids with optional
//! warm starting along the second axis and an exact-oracle boundary overlay.
//!
//! Columns (theta values) are dispatched to the worker pool; within a column
//! cells run in axis order so each warm start sees its converged neighbor.
//! Output rows are grid-ordered regardless of completion order.

use std::path::Path;

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use rvqite::ansatz::build_circuit;
use rvqite::boundary::{trace_boundary, BoundaryAxis, TraceSpec};
use rvqite::exact::Oracle;
use rvqite::schwinger::{build_hamiltonian, observables, SchwingerParams};
use rvqite::vqite::evolve;

use crate::config::{mix_seed, RunConfig};
use crate::engine::random_params;
use crate::output::{fmt_f64, out_path, CsvWriter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    ThetaMu,
    ThetaM,
}

impl Plane {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "theta_mu" => Plane::ThetaMu,
            "theta_m" => Plane::ThetaM,
            other => bail!("unknown sweep plane '{other}' (theta_mu | theta_m)"),
        })
    }

    pub fn axis2_name(self) -> &'static str {
        match self {
            Plane::ThetaMu => "mu_over_g",
            Plane::ThetaM => "m_over_g",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub energy: f64,
    pub ratio: f64,
    pub charge: f64,
    pub chiral_condensate: f64,
    pub electric_field: f64,
    pub delta2: f64,
    pub iterations: usize,
    pub seed: u64,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub plane: Plane,
    /// theta/2pi column values.
    pub axis1: Vec<f64>,
    /// mu/g or m/g row values.
    pub axis2: Vec<f64>,
    /// cells[col][row].
    pub cells: Vec<Vec<CellResult>>,
    /// (q, theta/2pi, root along axis2, residual)
    pub boundary: Vec<(i64, f64, f64, f64)>,
    pub boundary_diagnostics: Vec<String>,
    /// max |<Q>(mu,theta) + <Q>(-mu,-theta)| over the grid, when symmetric.
    pub quasi_symmetry: Option<f64>,
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
        .collect()
}

fn cell_params(base: &SchwingerParams, plane: Plane, theta_over_2pi: f64, axis2: f64) -> SchwingerParams {
    let mut p = *base;
    p.theta = theta_over_2pi * std::f64::consts::TAU;
    match plane {
        Plane::ThetaMu => p.mu_over_g = axis2,
        Plane::ThetaM => p.m_over_g = axis2,
    }
    p
}

pub fn run_grid(config: &RunConfig, warm_start: bool) -> Result<SweepOutput> {
    let sweep = &config.sweep;
    let plane = Plane::parse(&sweep.plane)?;
    if sweep.theta_points < 2 {
        bail!("sweep needs >= 2 theta points");
    }
    let axis1 = linspace(sweep.theta_min, sweep.theta_max, sweep.theta_points);
    let axis2 = match plane {
        Plane::ThetaMu => linspace(sweep.mu_min, sweep.mu_max, sweep.mu_points),
        Plane::ThetaM => linspace(sweep.m_min, sweep.m_max, sweep.m_points),
    };
    if axis2.len() < 2 {
        bail!("sweep needs >= 2 points on the second axis");
    }

    let base = config.model.params()?;
    let spec = config.ansatz.spec(base.n_sites)?;
    let solver_base = config.solver.vqite()?;
    let circuit = build_circuit(&spec)?;
    let oracle = Oracle::new();

    // One warm-started pass along a column in the given row order. The
    // first visited cell gets the full iteration budget; later cells start
    // from the previous converged parameters plus a seeded jitter (a
    // converged neighbor is an exact eigenstate of the next Hamiltonian and
    // would otherwise be a stationary point of the flow).
    let run_column_pass = |col: usize, theta_over_2pi: f64, rows: Vec<usize>, pass: u64| {
        let mut results: Vec<(usize, CellResult)> = Vec::with_capacity(rows.len());
        let mut warm_params: Option<Vec<f64>> = None;
        for (visit, &row) in rows.iter().enumerate() {
            let a2 = axis2[row];
            let cell_seed = mix_seed(
                solver_base.seed,
                (pass << 62) | ((col as u64) << 32) | row as u64,
            );
            let p = cell_params(&base, plane, theta_over_2pi, a2);
            let mut solver = solver_base;
            let theta0 = match (&warm_params, warm_start && visit > 0) {
                (Some(prev), true) => {
                    solver.max_iters = sweep.warm_iters.max(1);
                    let mut rng = ChaCha12Rng::seed_from_u64(cell_seed);
                    prev.iter()
                        .map(|v| v + rng.gen_range(-sweep.warm_jitter..=sweep.warm_jitter))
                        .collect()
                }
                _ => random_params(circuit.param_count(), cell_seed),
            };
            let result = (|| -> Result<CellResult> {
                let h = build_hamiltonian(&p)?;
                let outcome = evolve(&circuit, &theta0, &h, &solver)?;
                let obs = observables(&outcome.final_state, &p)?;
                let (e_min, e_max) = oracle.extremal_energies(&p)?;
                let ratio = (e_max - outcome.final_energy) / (e_max - e_min);
                let delta2 = outcome.steps.last().map(|s| s.delta2).unwrap_or(f64::NAN);
                warm_params = Some(outcome.final_params.clone());
                Ok(CellResult {
                    energy: outcome.final_energy,
                    ratio,
                    charge: obs.charge,
                    chiral_condensate: obs.chiral_condensate,
                    electric_field: obs.electric_field,
                    delta2,
                    iterations: outcome.steps.len(),
                    seed: cell_seed,
                    error: None,
                })
            })();
            results.push((
                row,
                result.unwrap_or_else(|err| CellResult {
                    energy: f64::NAN,
                    ratio: f64::NAN,
                    charge: f64::NAN,
                    chiral_condensate: f64::NAN,
                    electric_field: f64::NAN,
                    delta2: f64::NAN,
                    iterations: 0,
                    seed: cell_seed,
                    error: Some(err.to_string()),
                }),
            ));
        }
        results
    };

    let cells: Vec<Vec<CellResult>> = axis1
        .par_iter()
        .enumerate()
        .map(|(col, &theta_over_2pi)| {
            let ascending: Vec<usize> = (0..axis2.len()).collect();
            let up = run_column_pass(col, theta_over_2pi, ascending.clone(), 0);
            if !warm_start {
                return up.into_iter().map(|(_, cell)| cell).collect();
            }
            // Warm starting lags by up to a cell behind each phase boundary
            // (the previous sector's eigenstate takes a while to escape), and
            // the lag points along the walk direction. A second pass in the
            // opposite direction lags the other way; keeping the lower-energy
            // result per cell (the variational criterion) removes the lag on
            // both sides.
            let descending: Vec<usize> = (0..axis2.len()).rev().collect();
            let down = run_column_pass(col, theta_over_2pi, descending, 1);
            let mut column: Vec<Option<CellResult>> = vec![None; axis2.len()];
            for (row, cell) in up.into_iter().chain(down.into_iter()) {
                let slot = &mut column[row];
                *slot = Some(match slot.take() {
                    None => cell,
                    Some(existing) => pick_better(existing, cell),
                });
            }
            column.into_iter().map(|c| c.expect("both passes fill")).collect()
        })
        .collect();

    // Exact-oracle boundary overlay on the same grid geometry.
    let mut boundary = Vec::new();
    let mut boundary_diagnostics = Vec::new();
    if sweep.boundary_overlay {
        let (inner_axis, inner_range) = match plane {
            Plane::ThetaMu => (BoundaryAxis::Mu, (sweep.mu_min, sweep.mu_max)),
            Plane::ThetaM => (BoundaryAxis::M, (sweep.m_min, sweep.m_max)),
        };
        for &q in &sweep.boundary_q {
            let trace = trace_boundary(
                &oracle,
                q,
                &TraceSpec {
                    base,
                    outer_axis: BoundaryAxis::Theta,
                    outer_values: axis1.iter().map(|t| t * std::f64::consts::TAU).collect(),
                    inner_axis,
                    inner_range,
                    inner_subdivisions: config.boundary.inner_subdivisions.max(axis2.len() - 1),
                    tol: config.boundary.tol,
                },
            )?;
            for point in trace.points {
                boundary.push((
                    q,
                    point.outer_value / std::f64::consts::TAU,
                    point.root.value,
                    point.root.residual,
                ));
            }
            boundary_diagnostics.extend(trace.diagnostics);
        }
    }

    // Quasi-symmetry report over the theta_mu grid (reported, not asserted).
    let quasi_symmetry = if plane == Plane::ThetaMu && grid_is_symmetric(&axis1, &axis2) {
        let n1 = axis1.len();
        let n2 = axis2.len();
        let mut worst: f64 = 0.0;
        for col in 0..n1 {
            for row in 0..n2 {
                let a = &cells[col][row];
                let b = &cells[n1 - 1 - col][n2 - 1 - row];
                if a.error.is_none() && b.error.is_none() {
                    worst = worst.max((a.charge + b.charge).abs());
                }
            }
        }
        Some(worst)
    } else {
        None
    };

    Ok(SweepOutput {
        plane,
        axis1,
        axis2,
        cells,
        boundary,
        boundary_diagnostics,
        quasi_symmetry,
    })
}

fn pick_better(a: CellResult, b: CellResult) -> CellResult {
    match (a.error.is_some(), b.error.is_some()) {
        (true, false) => b,
        (false, true) => a,
        (true, true) => a,
        (false, false) => {
            if b.energy < a.energy {
                b
            } else {
                a
            }
        }
    }
}

fn grid_is_symmetric(axis1: &[f64], axis2: &[f64]) -> bool {
    let sym = |axis: &[f64]| {
        axis.iter()
            .zip(axis.iter().rev())
            .all(|(a, b)| (a + b).abs() < 1e-9)
    };
    sym(axis1) && sym(axis2)
}

pub fn run(config: &RunConfig, out_dir: &Path, warm_start: bool) -> Result<SweepOutput> {
    let output = run_grid(config, warm_start)?;
    let metadata = config.metadata();

    let mut cells_csv = CsvWriter::new(
        &metadata,
        &[
            "theta_over_2pi",
            output.plane.axis2_name(),
            "energy",
            "ratio",
            "charge",
            "chiral_condensate",
            "electric_field",
            "delta2",
            "iterations",
            "seed",
            "error",
        ],
    );
    for (col, &t) in output.axis1.iter().enumerate() {
        for (row, &a2) in output.axis2.iter().enumerate() {
            let cell = &output.cells[col][row];
            cells_csv.row(&[
                fmt_f64(t),
                fmt_f64(a2),
                fmt_f64(cell.energy),
                fmt_f64(cell.ratio),
                fmt_f64(cell.charge),
                fmt_f64(cell.chiral_condensate),
                fmt_f64(cell.electric_field),
                fmt_f64(cell.delta2),
                cell.iterations.to_string(),
                cell.seed.to_string(),
                cell.error.clone().unwrap_or_default(),
            ]);
        }
    }
    cells_csv.write_to(&out_path(out_dir, "sweep_cells.csv"))?;

    if config.sweep.boundary_overlay {
        let mut boundary_csv = CsvWriter::new(
            &metadata,
            &["q", "theta_over_2pi", output.plane.axis2_name(), "residual"],
        );
        for &(q, t, root, residual) in &output.boundary {
            boundary_csv.row(&[
                q.to_string(),
                fmt_f64(t),
                fmt_f64(root),
                fmt_f64(residual),
            ]);
        }
        boundary_csv.write_to(&out_path(out_dir, "sweep_boundary.csv"))?;
    }

    if let Some(worst) = output.quasi_symmetry {
        println!("quasi-symmetry report: max |<Q>(mu,theta) + <Q>(-mu,-theta)| = {worst:.6}");
    }
    for diag in &output.boundary_diagnostics {
        eprintln!("boundary: {diag}");
    }
    Ok(output)
}
