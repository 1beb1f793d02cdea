//! Exact sector spectra vs theta: the data behind the level-crossing figure.

use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;

use rvqite::exact::Oracle;
use rvqite::schwinger::SchwingerParams;

use crate::config::RunConfig;
use crate::output::{fmt_f64, out_path, CsvWriter};

pub struct SpectraRow {
    pub q: i64,
    pub level: usize,
    pub energy: f64,
    pub theta_over_2pi: f64,
}

pub fn run(config: &RunConfig, out_dir: &Path) -> Result<Vec<SpectraRow>> {
    let base = config.model.params()?;
    let spectra = &config.spectra;
    let thetas: Vec<f64> = (0..spectra.theta_points)
        .map(|k| {
            spectra.theta_min
                + (spectra.theta_max - spectra.theta_min) * k as f64
                    / (spectra.theta_points.max(2) - 1) as f64
        })
        .collect();

    let oracle = Oracle::new();
    let mut rows: Vec<SpectraRow> = Vec::new();
    for &q in &spectra.q_values {
        let per_theta: Vec<Vec<SpectraRow>> = thetas
            .par_iter()
            .map(|&t| -> Result<Vec<SpectraRow>> {
                let p = SchwingerParams::new(
                    base.n_sites,
                    base.a_g,
                    base.m_over_g,
                    t * std::f64::consts::TAU,
                    base.mu_over_g,
                )?;
                let spectrum = oracle.sector_spectrum(&p, q)?;
                Ok(spectrum
                    .iter()
                    .take(spectra.levels.max(1))
                    .enumerate()
                    .map(|(level, &energy)| SpectraRow {
                        q,
                        level,
                        energy,
                        theta_over_2pi: t,
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(per_theta.into_iter().flatten());
    }

    let mut csv = CsvWriter::new(
        &config.metadata(),
        &["q", "n", "energy", "theta_over_2pi", "m_over_g", "mu_over_g"],
    );
    for row in &rows {
        csv.row(&[
            row.q.to_string(),
            row.level.to_string(),
            fmt_f64(row.energy),
            fmt_f64(row.theta_over_2pi),
            fmt_f64(base.m_over_g),
            fmt_f64(base.mu_over_g),
        ]);
    }
    csv.write_to(&out_path(out_dir, "spectra.csv"))?;
    Ok(rows)
}
