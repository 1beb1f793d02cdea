//! `rvqite-lab`: regularized variational quantum imaginary-time evolution
//! runs for the lattice Schwinger model.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on solver failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rvqite_lab::config::RunConfig;
use rvqite_lab::engine;

#[derive(Parser)]
#[command(
    name = "rvqite-lab",
    about = "Schwinger-model rVQITE runs: ground states, benchmarks, spectra, sweeps, boundaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV files.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Worker threads for grids and samples (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Override solver.seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override solver.epsilon (truncation threshold).
    #[arg(long, global = true)]
    epsilon: Option<f64>,

    /// Override solver.dtau (imaginary-time step).
    #[arg(long, global = true)]
    dtau: Option<f64>,

    /// Override ansatz.depth.
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Override model.n_sites.
    #[arg(long = "N", global = true)]
    n_sites: Option<usize>,

    /// Write the Hamiltonian Pauli sum as text (ground runs).
    #[arg(long, global = true)]
    dump_hamiltonian: bool,

    /// Write final statevector amplitudes as little-endian f64 pairs
    /// (ground runs).
    #[arg(long, global = true)]
    dump_state: bool,

    /// Fresh random initialization for every sweep cell.
    #[arg(long, global = true)]
    no_warm_start: bool,

    /// Also emit a gnuplot script next to the CSV output.
    #[arg(long, global = true)]
    gnuplot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// One rVQITE ground-state run: trajectory and summary CSV.
    Ground,
    /// Ratio statistics over seeded random initializations per method/depth.
    Benchmark,
    /// Phase-diagram grid sweep with optional exact boundary overlay.
    Sweep,
    /// Eigenvalue and condition-number diagnostics of the metric A.
    Spectrum,
    /// Exact charge-sector spectra versus theta.
    Spectra,
    /// Exact phase-boundary roots on the sweep grid geometry.
    Boundary,
}

fn apply_overrides(config: &mut RunConfig, cli: &Cli) {
    if let Some(seed) = cli.seed {
        config.solver.seed = seed;
    }
    if let Some(epsilon) = cli.epsilon {
        config.solver.epsilon = epsilon;
    }
    if let Some(dtau) = cli.dtau {
        config.solver.dtau = dtau;
    }
    if let Some(depth) = cli.depth {
        config.ansatz.depth = depth;
    }
    if let Some(n) = cli.n_sites {
        config.model.n_sites = n;
    }
    if cli.no_warm_start {
        config.sweep.warm_start = false;
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let mut config = RunConfig::load(cli.config.as_deref())?;
    apply_overrides(&mut config, cli);

    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .ok();
    }

    let out_dir = cli.out_dir.as_path();
    match cli.command {
        Command::Ground => {
            let report =
                engine::ground::run(&config, out_dir, cli.dump_hamiltonian, cli.dump_state)?;
            println!(
                "ground: energy={:.9} ratio={:.6} charge={:+.4} chi={:+.6} efield={:+.6} iters={}",
                report.outcome.final_energy,
                report.ratio,
                report.charge,
                report.chiral_condensate,
                report.electric_field,
                report.outcome.steps.len()
            );
        }
        Command::Benchmark => {
            let curves = engine::benchmark::run(&config, out_dir)?;
            if cli.gnuplot {
                rvqite_lab::gnuplot::benchmark_script(out_dir)?;
            }
            for curve in &curves {
                let last = curve.final_iter();
                println!(
                    "benchmark: method={} depth={} final ratio mean={:.6} std={:.3e}",
                    curve.method,
                    curve.depth,
                    curve.mean_at(last),
                    curve.std_at(last)
                );
            }
        }
        Command::Sweep => {
            let output = engine::sweep::run(&config, out_dir, config.sweep.warm_start)?;
            if cli.gnuplot {
                rvqite_lab::gnuplot::sweep_script(out_dir, output.plane, config.sweep.boundary_overlay)?;
            }
            let failed: usize = output
                .cells
                .iter()
                .flatten()
                .filter(|c| c.error.is_some())
                .count();
            println!(
                "sweep: {} x {} cells, {} boundary points, {} failed cells",
                output.axis1.len(),
                output.axis2.len(),
                output.boundary.len(),
                failed
            );
        }
        Command::Spectrum => {
            let stats = engine::spectrum::run(&config, out_dir)?;
            if cli.gnuplot {
                rvqite_lab::gnuplot::spectrum_script(out_dir)?;
            }
            println!(
                "spectrum: {} negative / {} positive eigenvalues, max kappa {:.3e}",
                stats.negative.len(),
                stats.positive.len(),
                stats
                    .condition_numbers
                    .iter()
                    .cloned()
                    .fold(f64::NEG_INFINITY, f64::max)
            );
        }
        Command::Spectra => {
            let rows = engine::spectra::run(&config, out_dir)?;
            if cli.gnuplot {
                rvqite_lab::gnuplot::spectra_script(out_dir)?;
            }
            println!("spectra: {} rows", rows.len());
        }
        Command::Boundary => {
            let rows = engine::boundary::run(&config, out_dir)?;
            println!("boundary: {} roots", rows.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            // Solver aborts exit 3; everything else is config/input: exit 2.
            let is_solver = err
                .chain()
                .any(|cause| cause.to_string().contains("solver aborted"));
            if is_solver {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
