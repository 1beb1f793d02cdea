//! A^R spectrum diagnostics: sample the metric at random parameter draws,
//! pool eigenvalues split by sign, and report per-sample condition numbers.

use std::path::Path;

use anyhow::Result;

use rvqite::ansatz::build_circuit;
use rvqite::schwinger::build_hamiltonian;
use rvqite::vqite::{sample_random_systems, spectrum_statistics, SpectrumStats};

use crate::config::RunConfig;
use crate::output::{fmt_f64, out_path, CsvWriter};

pub fn run(config: &RunConfig, out_dir: &Path) -> Result<SpectrumStats> {
    let params = config.model.params()?;
    let h = build_hamiltonian(&params)?;
    let spec = config.ansatz.spec(params.n_sites)?;
    let circuit = build_circuit(&spec)?;
    let solver = config.solver.vqite()?;

    let systems = sample_random_systems(&circuit, &h, config.spectrum.samples, solver.seed)?;
    let stats = spectrum_statistics(&systems);

    let metadata = config.metadata();

    let mut raw = CsvWriter::new(&metadata, &["sign", "eigenvalue"]);
    for v in &stats.negative {
        raw.row(&["negative".into(), fmt_f64(*v)]);
    }
    for v in &stats.positive {
        raw.row(&["positive".into(), fmt_f64(*v)]);
    }
    raw.write_to(&out_path(out_dir, "spectrum_eigenvalues.csv"))?;

    let bins = config.spectrum.histogram_bins;
    let mut hist = CsvWriter::new(&metadata, &["sign", "log10_abs_lo", "log10_abs_hi", "count"]);
    for (lo, hi, count) in SpectrumStats::log_histogram(&stats.negative, bins) {
        hist.row(&["negative".into(), fmt_f64(lo), fmt_f64(hi), count.to_string()]);
    }
    for (lo, hi, count) in SpectrumStats::log_histogram(&stats.positive, bins) {
        hist.row(&["positive".into(), fmt_f64(lo), fmt_f64(hi), count.to_string()]);
    }
    hist.write_to(&out_path(out_dir, "spectrum_hist.csv"))?;

    let mut kappa = CsvWriter::new(&metadata, &["sample", "kappa"]);
    for (k, value) in stats.condition_numbers.iter().enumerate() {
        kappa.row(&[k.to_string(), fmt_f64(*value)]);
    }
    kappa.write_to(&out_path(out_dir, "spectrum_kappa.csv"))?;

    Ok(stats)
}
