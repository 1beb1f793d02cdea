//! McLachlan-principle imaginary-time evolution with eigenvalue-truncation
//! regularization, plus the pseudo-inverse and plain-gradient baselines and
//! the hardware-faithful parameter-shift / ancilla-overlap assembly.
//!
//! Per step the linear system `A theta_dot = -C` is formed from derivative
//! states, `A` is eigendecomposed, directions with eigenvalue <= epsilon
//! (including every negative one) are discarded, and the update is solved on
//! the surviving eigenbasis coordinates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::statevector::{Circuit, StateVector};

/// Real McLachlan system at one parameter point: metric `A`, force `C`,
/// energy variance, and energy.
#[derive(Debug, Clone)]
pub struct McLachlanSystem {
    pub a: DMatrix<f64>,
    pub c: DVector<f64>,
    pub var_h: f64,
    pub energy: f64,
}

/// Update rules: the regularized solve, the pseudo-inverse baseline, and
/// plain gradient descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateRule {
    Regularized,
    PseudoInverse,
    Gradient,
}

/// How A and C are produced: exact generator-insertion derivatives, or the
/// shifted-circuit protocols (parameter-shift C, ancilla-overlap A).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    ParameterShift,
}

/// Solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct VqiteConfig {
    /// Imaginary-time step, units 1/g.
    pub dtau: f64,
    /// Truncation threshold for A's eigenvalues.
    pub epsilon: f64,
    pub max_iters: usize,
    /// Stop once the squared McLachlan distance falls below this.
    pub stop_delta2: f64,
    pub update_rule: UpdateRule,
    pub derivative_mode: DerivativeMode,
    /// Cutoff for the pseudo-inverse baseline, relative to the largest |eigenvalue|.
    pub pinv_rcond: f64,
    pub seed: u64,
}

impl Default for VqiteConfig {
    fn default() -> Self {
        Self {
            dtau: 0.1,
            epsilon: 1e-6,
            max_iters: 500,
            stop_delta2: 1e-10,
            update_rule: UpdateRule::Regularized,
            derivative_mode: DerivativeMode::Analytic,
            pinv_rcond: 1e-15,
            seed: 0,
        }
    }
}

impl VqiteConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("dtau", self.dtau),
            ("epsilon", self.epsilon),
            ("stop_delta2", self.stop_delta2),
            ("pinv_rcond", self.pinv_rcond),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        if self.dtau == 0.0 {
            return Err(Error::InvalidConfig("dtau must be positive".into()));
        }
        Ok(())
    }
}

/// Per-iteration record.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub iter: usize,
    pub energy: f64,
    pub delta2: f64,
    /// Eigenvalues of A, ascending.
    pub eigenvalues: Vec<f64>,
    /// max|lambda| / min|lambda|.
    pub condition_number: f64,
    /// Dimensions with lambda <= epsilon (for the regularized rule; for the
    /// baselines this still reports what the rule would truncate).
    pub truncated_count: usize,
    pub charge: f64,
    /// Var(H) at this step; Delta^2 <= Var(H) is the descent certificate.
    pub var_h: f64,
}

/// Result of an [`evolve`] run.
#[derive(Debug, Clone)]
pub struct EvolveOutcome {
    pub steps: Vec<StepReport>,
    pub final_params: Vec<f64>,
    pub final_state: StateVector,
    pub final_energy: f64,
    /// True if every direction was truncated at some step (update stalled).
    pub stalled: bool,
    pub converged: bool,
}

fn re_dot(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re * y.re + x.im * y.im)
        .sum()
}

fn im_dot(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re * y.im - x.im * y.re)
        .sum()
}

/// Analytic assembly: A_ij = Re<d_i psi|d_j psi> from the Gram matrix of the
/// derivative states, C_i = Re<d_i psi|H|psi>, Var(H) = |H psi|^2 - E^2.
pub fn assemble(circuit: &Circuit, params: &[f64], h: &PauliSum) -> Result<McLachlanSystem> {
    Ok(assemble_with_state(circuit, params, h)?.0)
}

pub fn assemble_with_mode(
    circuit: &Circuit,
    params: &[f64],
    h: &PauliSum,
    mode: DerivativeMode,
) -> Result<McLachlanSystem> {
    match mode {
        DerivativeMode::Analytic => assemble(circuit, params, h),
        DerivativeMode::ParameterShift => {
            let psi = circuit.evaluate(params)?;
            let h_psi = h.apply(&psi)?;
            let energy = energy_from(&psi, &h_psi)?;
            let var_h = variance_from(&h_psi, energy)?;
            let a = ancilla_a(circuit, params)?;
            let c = shift_rule_c(circuit, params, h)?;
            Ok(McLachlanSystem {
                a,
                c,
                var_h,
                energy,
            })
        }
    }
}

fn assemble_with_state(
    circuit: &Circuit,
    params: &[f64],
    h: &PauliSum,
) -> Result<(McLachlanSystem, StateVector)> {
    let psi = circuit.evaluate(params)?;
    let h_psi = h.apply(&psi)?;
    let energy = energy_from(&psi, &h_psi)?;
    let var_h = variance_from(&h_psi, energy)?;

    let derivs = circuit.derivative_states(params)?;
    let m = derivs.len();

    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let di = derivs[i].amplitudes();
            (i..m)
                .map(|j| re_dot(di, derivs[j].amplitudes()))
                .collect()
        })
        .collect();
    let mut a = DMatrix::<f64>::zeros(m, m);
    for (i, row) in rows.iter().enumerate() {
        for (offset, &value) in row.iter().enumerate() {
            let j = i + offset;
            a[(i, j)] = value;
            a[(j, i)] = value;
        }
    }

    let c = DVector::from_iterator(
        m,
        derivs
            .iter()
            .map(|d| re_dot(d.amplitudes(), h_psi.amplitudes())),
    );

    Ok((
        McLachlanSystem {
            a,
            c,
            var_h,
            energy,
        },
        psi,
    ))
}

fn energy_from(psi: &StateVector, h_psi: &StateVector) -> Result<f64> {
    let energy = re_dot(psi.amplitudes(), h_psi.amplitudes());
    let residual = im_dot(psi.amplitudes(), h_psi.amplitudes()).abs();
    if residual > 1e-10 {
        return Err(Error::ImaginaryResidual { residual });
    }
    Ok(energy)
}

fn variance_from(h_psi: &StateVector, energy: f64) -> Result<f64> {
    let raw = re_dot(h_psi.amplitudes(), h_psi.amplitudes()) - energy * energy;
    if raw < -1e-10 {
        return Err(Error::NonFinite {
            context: "energy variance",
        });
    }
    Ok(raw.max(0.0))
}

/// Eigendecomposition diagnostics shared by the update rules.
#[derive(Debug, Clone)]
pub struct UpdateDiagnostics {
    /// Ascending eigenvalues of A.
    pub eigenvalues: Vec<f64>,
    pub condition_number: f64,
    pub truncated_count: usize,
    pub stalled: bool,
}

fn eigendecompose(a: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    // Symmetrize first; assembly already produces a symmetric matrix but the
    // rule is defined on (A + A^T)/2.
    let sym = (a + a.transpose()) * 0.5;
    let eigen = sym.symmetric_eigen();
    (eigen.eigenvectors, eigen.eigenvalues)
}

fn condition_number(eigenvalues: &DVector<f64>) -> f64 {
    let mut max_abs: f64 = 0.0;
    let mut min_abs = f64::INFINITY;
    for &l in eigenvalues.iter() {
        max_abs = max_abs.max(l.abs());
        min_abs = min_abs.min(l.abs());
    }
    if min_abs == 0.0 {
        f64::INFINITY
    } else {
        max_abs / min_abs
    }
}

fn sorted_eigenvalues(eigenvalues: &DVector<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = eigenvalues.iter().copied().collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// The regularized update: diagonalize A, zero every eigendirection with
/// lambda <= epsilon (negative eigenvalues included), solve per-coordinate on
/// the rest, and rotate back.
pub fn regularized_update(
    sys: &McLachlanSystem,
    epsilon: f64,
) -> (DVector<f64>, UpdateDiagnostics) {
    let (vectors, values) = eigendecompose(&sys.a);
    let projected = vectors.transpose() * &sys.c;
    let mut g = DVector::<f64>::zeros(values.len());
    let mut truncated = 0;
    for k in 0..values.len() {
        if values[k] > epsilon {
            g[k] = -projected[k] / values[k];
        } else {
            truncated += 1;
        }
    }
    let theta_dot = &vectors * g;
    let stalled = truncated == values.len();
    let diagnostics = UpdateDiagnostics {
        eigenvalues: sorted_eigenvalues(&values),
        condition_number: condition_number(&values),
        truncated_count: truncated,
        stalled,
    };
    (theta_dot, diagnostics)
}

/// Pseudo-inverse baseline: `theta_dot = -pinv(A) C`, zeroing singular values
/// below `rcond * sigma_max` (for symmetric A the singular values are the
/// |eigenvalues|).
pub fn pseudo_inverse_update(sys: &McLachlanSystem, rcond: f64) -> (DVector<f64>, UpdateDiagnostics) {
    let (vectors, values) = eigendecompose(&sys.a);
    let sigma_max = values.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let cutoff = rcond * sigma_max;
    let projected = vectors.transpose() * &sys.c;
    let mut g = DVector::<f64>::zeros(values.len());
    let mut dropped = 0;
    for k in 0..values.len() {
        if values[k].abs() > cutoff {
            g[k] = -projected[k] / values[k];
        } else {
            dropped += 1;
        }
    }
    let theta_dot = &vectors * g;
    let diagnostics = UpdateDiagnostics {
        eigenvalues: sorted_eigenvalues(&values),
        condition_number: condition_number(&values),
        truncated_count: dropped,
        stalled: dropped == values.len(),
    };
    (theta_dot, diagnostics)
}

/// Gradient baseline: `theta_dot = -2C` (the energy gradient is `2 C`);
/// A is ignored entirely. The step size is the shared dtau.
pub fn gradient_update(sys: &McLachlanSystem) -> DVector<f64> {
    sys.c.map(|c| -2.0 * c)
}

/// Squared McLachlan distance for a candidate update:
/// `theta_dot^T A theta_dot + 2 theta_dot^T C + Var(H)`.
///
/// Tiny negative values (cancellation) are clamped to zero; a value negative
/// beyond 1e-6 relative to the quadratic-form magnitudes signals broken
/// assembly and is an error.
pub fn mclachlan_delta2(sys: &McLachlanSystem, theta_dot: &DVector<f64>) -> Result<f64> {
    let quad = (theta_dot.transpose() * &sys.a * theta_dot)[(0, 0)];
    let lin = 2.0 * theta_dot.dot(&sys.c);
    let raw = quad + lin + sys.var_h;
    let scale = (quad.abs() + lin.abs() + sys.var_h).max(1.0);
    if raw < -1e-6 * scale {
        return Err(Error::NegativeDistance { value: raw });
    }
    Ok(raw.max(0.0))
}

/// Runs imaginary-time evolution: `theta <- theta + dtau * theta_dot` until
/// `max_iters` or `delta2 < stop_delta2`. Deterministic for fixed inputs.
pub fn evolve(
    circuit: &Circuit,
    theta0: &[f64],
    h: &PauliSum,
    config: &VqiteConfig,
) -> Result<EvolveOutcome> {
    config.validate()?;
    let mut params = theta0.to_vec();
    let mut steps = Vec::with_capacity(config.max_iters);
    let mut stalled = false;
    let mut converged = false;

    let mut iter = 0;
    loop {
        iter += 1;
        let (sys, psi) = match config.derivative_mode {
            DerivativeMode::Analytic => assemble_with_state(circuit, &params, h)?,
            DerivativeMode::ParameterShift => {
                let sys = assemble_with_mode(circuit, &params, h, DerivativeMode::ParameterShift)?;
                let psi = circuit.evaluate(&params)?;
                (sys, psi)
            }
        };
        let (theta_dot, diagnostics) = match config.update_rule {
            UpdateRule::Regularized => regularized_update(&sys, config.epsilon),
            UpdateRule::PseudoInverse => pseudo_inverse_update(&sys, config.pinv_rcond),
            UpdateRule::Gradient => {
                let theta_dot = gradient_update(&sys);
                // Eigen diagnostics are still recorded for the trajectory CSV.
                let (_, diagnostics) = regularized_update(&sys, config.epsilon);
                (theta_dot, diagnostics)
            }
        };
        let delta2 = mclachlan_delta2(&sys, &theta_dot)?;
        let charge = 0.5 * psi.z_expectations().iter().sum::<f64>();
        steps.push(StepReport {
            iter,
            energy: sys.energy,
            delta2,
            eigenvalues: diagnostics.eigenvalues,
            condition_number: diagnostics.condition_number,
            truncated_count: diagnostics.truncated_count,
            charge,
            var_h: sys.var_h,
        });

        // Delta^2 alone certifies flow faithfulness, not arrival: an ansatz
        // whose tangent space is complete keeps Delta^2 = 0 all along the
        // path. A fixed point of the flow additionally has Var(H) -> 0.
        if delta2 < config.stop_delta2 && sys.var_h < config.stop_delta2 {
            converged = true;
            break;
        }
        if diagnostics.stalled && config.update_rule == UpdateRule::Regularized {
            stalled = true;
            break;
        }
        if iter >= config.max_iters {
            break;
        }

        for (p, dot) in params.iter_mut().zip(theta_dot.iter()) {
            *p += config.dtau * dot;
            if !p.is_finite() {
                return Err(Error::SolverAbort {
                    iter,
                    reason: "non-finite parameter after update".into(),
                });
            }
        }
    }

    let final_state = circuit.evaluate(&params)?;
    let final_energy = steps.last().map(|s| s.energy).unwrap_or(f64::NAN);
    Ok(EvolveOutcome {
        steps,
        final_params: params,
        final_state,
        final_energy,
        stalled,
        converged,
    })
}

/// Parameter-shift evaluation of C: for every generator insertion of every
/// parameter, half the energy difference at +-pi/4 term shifts. Calibrated to
/// the analytic `C_i = Re<d_i psi|H|psi>`.
pub fn shift_rule_c(circuit: &Circuit, params: &[f64], h: &PauliSum) -> Result<DVector<f64>> {
    let insertions = circuit.insertion_points();
    let shift = std::f64::consts::FRAC_PI_4;
    let entries: Vec<f64> = insertions
        .par_iter()
        .map(|points| -> Result<f64> {
            let mut total = 0.0;
            for &(gate_idx, term_idx, _, _) in points {
                let plus = circuit.evaluate_term_shifted(params, gate_idx, term_idx, shift)?;
                let minus = circuit.evaluate_term_shifted(params, gate_idx, term_idx, -shift)?;
                total += 0.5 * (h.expectation(&plus)? - h.expectation(&minus)?);
            }
            Ok(total)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(DVector::from_vec(entries))
}

/// Ancilla-overlap evaluation of A: each generator insertion corresponds to a
/// +pi/2 shift of its term (the extra factor is exactly `i sign P`); entries
/// are sums of ancilla-measured real overlaps of the shifted states.
pub fn ancilla_a(circuit: &Circuit, params: &[f64]) -> Result<DMatrix<f64>> {
    let insertions = circuit.insertion_points();
    let m = insertions.len();
    let shift = std::f64::consts::FRAC_PI_2;

    // One shifted state per insertion point.
    let mut states: Vec<Vec<StateVector>> = Vec::with_capacity(m);
    for points in &insertions {
        let mut group = Vec::with_capacity(points.len());
        for &(gate_idx, term_idx, _, _) in points {
            group.push(circuit.evaluate_term_shifted(params, gate_idx, term_idx, shift)?);
        }
        states.push(group);
    }

    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mut entry = 0.0;
            for si in &states[i] {
                for sj in &states[j] {
                    let tilde = StateVector::with_ancilla(si, sj)?;
                    entry += tilde.z_expectation(circuit.qubit_count());
                }
            }
            a[(i, j)] = entry;
            a[(j, i)] = entry;
        }
    }
    Ok(a)
}

/// Pooled eigenvalue statistics over sampled systems.
#[derive(Debug, Clone)]
pub struct SpectrumStats {
    pub negative: Vec<f64>,
    pub positive: Vec<f64>,
    pub condition_numbers: Vec<f64>,
}

impl SpectrumStats {
    /// Histogram over log10|value| with equal-width bins.
    pub fn log_histogram(values: &[f64], bins: usize) -> Vec<(f64, f64, usize)> {
        if values.is_empty() || bins == 0 {
            return Vec::new();
        }
        let logs: Vec<f64> = values
            .iter()
            .filter(|v| **v != 0.0)
            .map(|v| v.abs().log10())
            .collect();
        if logs.is_empty() {
            return Vec::new();
        }
        let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let width = ((hi - lo) / bins as f64).max(1e-12);
        let mut counts = vec![0usize; bins];
        for l in &logs {
            let mut idx = ((l - lo) / width) as usize;
            if idx >= bins {
                idx = bins - 1;
            }
            counts[idx] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .map(|(k, count)| (lo + k as f64 * width, lo + (k + 1) as f64 * width, count))
            .collect()
    }
}

/// Sign-split pooled eigenvalues and per-sample condition numbers of the
/// sampled systems.
pub fn spectrum_statistics(systems: &[McLachlanSystem]) -> SpectrumStats {
    let mut stats = SpectrumStats {
        negative: Vec::new(),
        positive: Vec::new(),
        condition_numbers: Vec::new(),
    };
    for sys in systems {
        let (_, values) = eigendecompose(&sys.a);
        stats.condition_numbers.push(condition_number(&values));
        for &l in values.iter() {
            if l < 0.0 {
                stats.negative.push(l);
            } else if l > 0.0 {
                stats.positive.push(l);
            }
        }
    }
    stats.negative.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stats.positive.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stats
}

/// Assembles systems at uniformly random parameter draws (the Fig-1 style
/// sampling protocol). Deterministic for a fixed seed.
pub fn sample_random_systems(
    circuit: &Circuit,
    h: &PauliSum,
    samples: usize,
    seed: u64,
) -> Result<Vec<McLachlanSystem>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut systems = Vec::with_capacity(samples);
    for _ in 0..samples {
        let params: Vec<f64> = (0..circuit.param_count())
            .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        systems.push(assemble(circuit, &params, h)?);
    }
    Ok(systems)
}
