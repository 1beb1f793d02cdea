//! Boundary tracing as a standalone command: roots of f^(q) on the sweep
//! grid geometry, without running the sweep itself.

use std::path::Path;

use anyhow::Result;

use rvqite::boundary::{trace_boundary, BoundaryAxis, TraceSpec};
use rvqite::exact::Oracle;

use crate::config::RunConfig;
use crate::engine::sweep::Plane;
use crate::output::{fmt_f64, out_path, CsvWriter};

pub fn run(config: &RunConfig, out_dir: &Path) -> Result<Vec<(i64, f64, f64, f64)>> {
    let base = config.model.params()?;
    let sweep = &config.sweep;
    let plane = Plane::parse(&sweep.plane)?;
    let outer_values: Vec<f64> = (0..sweep.theta_points)
        .map(|k| {
            let t = sweep.theta_min
                + (sweep.theta_max - sweep.theta_min) * k as f64
                    / (sweep.theta_points.max(2) - 1) as f64;
            t * std::f64::consts::TAU
        })
        .collect();
    let (inner_axis, inner_range, inner_cells) = match plane {
        Plane::ThetaMu => (
            BoundaryAxis::Mu,
            (sweep.mu_min, sweep.mu_max),
            sweep.mu_points.max(2) - 1,
        ),
        Plane::ThetaM => (
            BoundaryAxis::M,
            (sweep.m_min, sweep.m_max),
            sweep.m_points.max(2) - 1,
        ),
    };

    let oracle = Oracle::new();
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for &q in &config.boundary.q_values {
        let trace = trace_boundary(
            &oracle,
            q,
            &TraceSpec {
                base,
                outer_axis: BoundaryAxis::Theta,
                outer_values: outer_values.clone(),
                inner_axis,
                inner_range,
                inner_subdivisions: config.boundary.inner_subdivisions.max(inner_cells),
                tol: config.boundary.tol,
            },
        )?;
        for point in trace.points {
            rows.push((
                q,
                point.outer_value / std::f64::consts::TAU,
                point.root.value,
                point.root.residual,
            ));
        }
        diagnostics.extend(trace.diagnostics);
    }

    let mut csv = CsvWriter::new(
        &config.metadata(),
        &["q", "theta_over_2pi", plane.axis2_name(), "residual"],
    );
    for &(q, t, root, residual) in &rows {
        csv.row(&[
            q.to_string(),
            fmt_f64(t),
            fmt_f64(root),
            fmt_f64(residual),
        ]);
    }
    csv.write_to(&out_path(out_dir, "boundary.csv"))?;
    for diag in &diagnostics {
        eprintln!("boundary: {diag}");
    }
    Ok(rows)
}
