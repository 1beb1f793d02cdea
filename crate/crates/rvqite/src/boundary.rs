//! Phase-boundary solver: roots of f^(q)(mu, m, theta) = mu - (E_0^(q+1) -
//! E_0^(q)) along a chosen parameter axis, by bisection on exact-oracle
//! energies. Along mu the equation is affine with unit slope, so the root is
//! closed-form.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Oracle;
use crate::schwinger::SchwingerParams;

/// Which model parameter the root is searched along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryAxis {
    Mu,
    Theta,
    M,
}

/// Root query for the boundary between charge q and q+1.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryQuery {
    pub q: i64,
    pub axis: BoundaryAxis,
    /// Fixed values for the non-axis parameters (and N, a_g).
    pub base: SchwingerParams,
    pub bracket: (f64, f64),
    /// Root localization tolerance in axis units.
    pub tol: f64,
}

impl BoundaryQuery {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.bracket.0 < self.bracket.1) {
            return Err(Error::InvalidConfig(format!(
                "bracket lo {} must be below hi {}",
                self.bracket.0, self.bracket.1
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// A localized root.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryRoot {
    /// Axis value at the root.
    pub value: f64,
    pub q: i64,
    /// |f^(q)| at the returned value.
    pub residual: f64,
    pub f_lo_sign: f64,
    pub f_hi_sign: f64,
    /// f evaluations spent (2 sector solves each; cached by the oracle).
    pub oracle_evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub enum BisectOutcome {
    Root(BoundaryRoot),
    /// Same-sign bracket: no root reported, not an error.
    NoRoot { f_lo: f64, f_hi: f64 },
}

fn with_axis(base: &SchwingerParams, axis: BoundaryAxis, value: f64) -> SchwingerParams {
    let mut p = *base;
    match axis {
        BoundaryAxis::Mu => p.mu_over_g = value,
        BoundaryAxis::Theta => p.theta = value,
        BoundaryAxis::M => p.m_over_g = value,
    }
    p
}

/// f^(q)(mu, m, theta) = mu - (E_0^(q+1)(0, m, theta) - E_0^(q)(0, m, theta)).
/// The gap term is mu-independent (the chemical-potential shift is rigid),
/// so sector energies are evaluated at mu = 0.
pub fn f_q(
    oracle: &Oracle,
    base: &SchwingerParams,
    q: i64,
    mu: f64,
    m_over_g: f64,
    theta: f64,
) -> Result<f64> {
    let p = SchwingerParams::new(base.n_sites, base.a_g, m_over_g, theta, 0.0)?;
    let upper = oracle.sector_lowest(&p, q + 1)?.energy;
    let lower = oracle.sector_lowest(&p, q)?.energy;
    if !(upper.is_finite() && lower.is_finite()) {
        return Err(Error::NonFinite {
            context: "sector energy",
        });
    }
    Ok(mu - (upper - lower))
}

fn f_at(oracle: &Oracle, query: &BoundaryQuery, value: f64) -> Result<f64> {
    let p = with_axis(&query.base, query.axis, value);
    f_q(oracle, &p, query.q, p.mu_over_g, p.m_over_g, p.theta)
}

/// Locates a root in the bracket. Along mu the root is returned in closed
/// form (f is affine with slope 1); along theta or m, plain bisection with at
/// most ceil(log2((hi - lo)/tol)) midpoint evaluations.
pub fn bisect(oracle: &Oracle, query: &BoundaryQuery) -> Result<BisectOutcome> {
    query.validate()?;
    let (lo, hi) = query.bracket;

    if query.axis == BoundaryAxis::Mu {
        // f(mu) = mu - gap: root at mu = gap, two sector solves.
        let f_lo = f_at(oracle, query, lo)?;
        let root = lo - f_lo;
        if root < lo || root > hi {
            return Ok(BisectOutcome::NoRoot {
                f_lo,
                f_hi: hi - lo + f_lo,
            });
        }
        return Ok(BisectOutcome::Root(BoundaryRoot {
            value: root,
            q: query.q,
            residual: 0.0,
            f_lo_sign: f_lo.signum(),
            f_hi_sign: (hi - lo + f_lo).signum(),
            oracle_evals: 2,
        }));
    }

    let mut f_lo = f_at(oracle, query, lo)?;
    let f_hi = f_at(oracle, query, hi)?;
    if !f_lo.is_finite() || !f_hi.is_finite() {
        return Err(Error::NonFinite {
            context: "boundary function",
        });
    }
    if f_lo == 0.0 {
        return Ok(BisectOutcome::Root(BoundaryRoot {
            value: lo,
            q: query.q,
            residual: 0.0,
            f_lo_sign: 0.0,
            f_hi_sign: f_hi.signum(),
            oracle_evals: 2,
        }));
    }
    if f_lo.signum() == f_hi.signum() {
        return Ok(BisectOutcome::NoRoot { f_lo, f_hi });
    }

    let (mut a, mut b) = (lo, hi);
    let budget = ((hi - lo) / query.tol).log2().ceil().max(0.0) as usize;
    let mut evals = 2;
    let mut f_mid = f_lo;
    for _ in 0..budget {
        if (b - a).abs() <= query.tol {
            break;
        }
        let mid = 0.5 * (a + b);
        f_mid = f_at(oracle, query, mid)?;
        evals += 1;
        if f_mid == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            a = mid;
            f_lo = f_mid;
        } else {
            b = mid;
        }
    }
    Ok(BisectOutcome::Root(BoundaryRoot {
        value: 0.5 * (a + b),
        q: query.q,
        residual: f_mid.abs(),
        f_lo_sign: f_at(oracle, query, lo)?.signum(),
        f_hi_sign: f_hi.signum(),
        oracle_evals: evals,
    }))
}

/// One traced column: the outer-axis value and the located root.
#[derive(Debug, Clone, Copy)]
pub struct TracePoint {
    pub outer_value: f64,
    pub root: BoundaryRoot,
}

/// Boundary trace over a grid plane.
#[derive(Debug, Clone)]
pub struct TraceSpec {
    /// N, a_g, and the fixed third parameter.
    pub base: SchwingerParams,
    pub outer_axis: BoundaryAxis,
    pub outer_values: Vec<f64>,
    pub inner_axis: BoundaryAxis,
    pub inner_range: (f64, f64),
    /// Bracketing resolution: the inner range is subdivided into this many
    /// cells and each sign change is bisected.
    pub inner_subdivisions: usize,
    pub tol: f64,
}

#[derive(Debug, Clone)]
pub struct TraceResult {
    pub points: Vec<TracePoint>,
    /// Columns skipped with the reason (capacity, no bracket, ...).
    pub diagnostics: Vec<String>,
}

/// For each outer-axis value, locates root(s) of f^(q) along the inner axis.
/// Columns with no sign change leave gaps; sector-capacity failures are
/// reported as diagnostics rather than errors.
pub fn trace_boundary(oracle: &Oracle, q: i64, spec: &TraceSpec) -> Result<TraceResult> {
    if spec.inner_subdivisions == 0 || !(spec.inner_range.0 < spec.inner_range.1) {
        return Err(Error::InvalidConfig(
            "trace needs a non-empty inner range and >= 1 subdivision".into(),
        ));
    }
    let half = spec.base.n_sites as i64 / 2;
    if q >= half || q < -half {
        return Ok(TraceResult {
            points: Vec::new(),
            diagnostics: vec![format!(
                "boundary q={q}/{q1} outside sector capacity for N={n}",
                q1 = q + 1,
                n = spec.base.n_sites
            )],
        });
    }

    let columns: Vec<(usize, Result<Vec<TracePoint>>)> = spec
        .outer_values
        .par_iter()
        .enumerate()
        .map(|(idx, &outer)| {
            let base = with_axis(&spec.base, spec.outer_axis, outer);
            let mut found = Vec::new();
            let (lo, hi) = spec.inner_range;
            let step = (hi - lo) / spec.inner_subdivisions as f64;
            let result = (|| -> Result<()> {
                for cell in 0..spec.inner_subdivisions {
                    let a = lo + cell as f64 * step;
                    let b = if cell + 1 == spec.inner_subdivisions {
                        hi
                    } else {
                        lo + (cell + 1) as f64 * step
                    };
                    let query = BoundaryQuery {
                        q,
                        axis: spec.inner_axis,
                        base,
                        bracket: (a, b),
                        tol: spec.tol,
                    };
                    if let BisectOutcome::Root(root) = bisect(oracle, &query)? {
                        found.push(TracePoint {
                            outer_value: outer,
                            root,
                        });
                        if spec.inner_axis == BoundaryAxis::Mu {
                            // Affine in mu: a single root exists in the range.
                            break;
                        }
                    }
                }
                Ok(())
            })();
            (idx, result.map(|()| found))
        })
        .collect();

    let mut points = Vec::new();
    let mut diagnostics = Vec::new();
    let mut ordered = columns;
    ordered.sort_by_key(|(idx, _)| *idx);
    for (idx, column) in ordered {
        match column {
            Ok(mut found) => points.append(&mut found),
            Err(err) => diagnostics.push(format!(
                "column {idx} (outer = {}): {err}",
                spec.outer_values[idx]
            )),
        }
    }
    Ok(TraceResult {
        points,
        diagnostics,
    })
}
