//! Run configuration: a single TOML tree with full defaulting, so an empty
//! file (or no file) is a valid config. Every numeric knob the paper's
//! experiments need is representable here; the checked-in `configs/` files
//! pin one experiment each.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use rvqite::ansatz::{AnsatzSpec, InitMode};
use rvqite::schwinger::SchwingerParams;
use rvqite::vqite::{DerivativeMode, UpdateRule, VqiteConfig};

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub ansatz: AnsatzConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub benchmark: BenchmarkConfig,
    #[serde(default)]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub spectra: SpectraConfig,
    #[serde(default)]
    pub boundary: BoundaryConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub n_sites: usize,
    pub a_g: f64,
    pub m_over_g: f64,
    pub theta_over_2pi: f64,
    pub mu_over_g: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            n_sites: 10,
            a_g: 1.0,
            m_over_g: 1.0,
            theta_over_2pi: 0.0,
            mu_over_g: 0.0,
        }
    }
}

impl ModelConfig {
    pub fn params(&self) -> Result<SchwingerParams> {
        Ok(SchwingerParams::new(
            self.n_sites,
            self.a_g,
            self.m_over_g,
            self.theta_over_2pi * std::f64::consts::TAU,
            self.mu_over_g,
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnsatzConfig {
    pub depth: usize,
    /// "free_charge" or "fixed_charge".
    pub init: String,
    /// Charge sector for fixed_charge.
    pub q: i64,
}

impl Default for AnsatzConfig {
    fn default() -> Self {
        Self {
            depth: 5,
            init: "free_charge".into(),
            q: 0,
        }
    }
}

impl AnsatzConfig {
    pub fn spec(&self, n_sites: usize) -> Result<AnsatzSpec> {
        let init = match self.init.as_str() {
            "free_charge" => InitMode::FreeCharge,
            "fixed_charge" => InitMode::FixedCharge(self.q),
            other => bail!("unknown ansatz init '{other}' (free_charge | fixed_charge)"),
        };
        Ok(AnsatzSpec::new(n_sites, self.depth, init)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub dtau: f64,
    pub epsilon: f64,
    pub max_iters: usize,
    pub stop_delta2: f64,
    /// "regularized", "pseudo_inverse", or "gradient".
    pub update_rule: String,
    /// "analytic" or "parameter_shift".
    pub derivative_mode: String,
    pub pinv_rcond: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dtau: 0.1,
            epsilon: 1e-6,
            max_iters: 500,
            stop_delta2: 1e-10,
            update_rule: "regularized".into(),
            derivative_mode: "analytic".into(),
            pinv_rcond: 1e-15,
            seed: 7,
        }
    }
}

pub fn parse_update_rule(name: &str) -> Result<UpdateRule> {
    Ok(match name {
        "regularized" => UpdateRule::Regularized,
        "pseudo_inverse" => UpdateRule::PseudoInverse,
        "gradient" => UpdateRule::Gradient,
        other => bail!("unknown update rule '{other}' (regularized | pseudo_inverse | gradient)"),
    })
}

impl SolverConfig {
    pub fn vqite(&self) -> Result<VqiteConfig> {
        let update_rule = parse_update_rule(&self.update_rule)?;
        let derivative_mode = match self.derivative_mode.as_str() {
            "analytic" => DerivativeMode::Analytic,
            "parameter_shift" => DerivativeMode::ParameterShift,
            other => bail!("unknown derivative mode '{other}' (analytic | parameter_shift)"),
        };
        let config = VqiteConfig {
            dtau: self.dtau,
            epsilon: self.epsilon,
            max_iters: self.max_iters,
            stop_delta2: self.stop_delta2,
            update_rule,
            derivative_mode,
            pinv_rcond: self.pinv_rcond,
            seed: self.seed,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchmarkConfig {
    pub samples: usize,
    pub depths: Vec<usize>,
    pub methods: Vec<String>,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            samples: 20,
            depths: vec![5],
            methods: vec!["regularized".into()],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// "theta_mu" (m fixed) or "theta_m" (mu fixed).
    pub plane: String,
    pub theta_points: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub mu_points: usize,
    pub mu_min: f64,
    pub mu_max: f64,
    pub m_points: usize,
    pub m_min: f64,
    pub m_max: f64,
    pub warm_start: bool,
    /// Iteration budget for warm-started cells.
    pub warm_iters: usize,
    /// Uniform jitter half-width applied to warm-start parameters; breaks
    /// the exact-eigenstate stationarity inherited from the neighbor cell.
    pub warm_jitter: f64,
    pub boundary_overlay: bool,
    pub boundary_q: Vec<i64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            plane: "theta_mu".into(),
            theta_points: 41,
            theta_min: -1.0,
            theta_max: 1.0,
            mu_points: 31,
            mu_min: -1.5,
            mu_max: 1.5,
            m_points: 31,
            m_min: -1.0,
            m_max: 1.0,
            warm_start: true,
            warm_iters: 200,
            warm_jitter: 0.05,
            boundary_overlay: true,
            boundary_q: vec![-2, -1, 0, 1, 2],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub samples: usize,
    pub histogram_bins: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            samples: 10,
            histogram_bins: 40,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectraConfig {
    pub q_values: Vec<i64>,
    pub theta_points: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    /// Levels per sector (1 = ground level only).
    pub levels: usize,
}

impl Default for SpectraConfig {
    fn default() -> Self {
        Self {
            q_values: vec![-3, -2, -1, 0, 1, 2, 3],
            theta_points: 81,
            theta_min: -1.0,
            theta_max: 1.0,
            levels: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundaryConfig {
    pub q_values: Vec<i64>,
    /// Root localization tolerance in axis units.
    pub tol: f64,
    /// Bracketing cells along the inner axis before bisection.
    pub inner_subdivisions: usize,
}

impl Default for BoundaryConfig {
    fn default() -> Self {
        Self {
            q_values: vec![-2, -1, 0, 1, 2],
            tol: 1e-6,
            inner_subdivisions: 16,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                let config: RunConfig = toml::from_str(&text)
                    .with_context(|| format!("parsing config {}", path.display()))?;
                Ok(config)
            }
        }
    }

    /// Flat `key=value` lines of the resolved configuration, for the CSV
    /// metadata block. Deterministic ordering.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        push("model.n_sites", self.model.n_sites.to_string());
        push("model.a_g", self.model.a_g.to_string());
        push("model.m_over_g", self.model.m_over_g.to_string());
        push("model.theta_over_2pi", self.model.theta_over_2pi.to_string());
        push("model.mu_over_g", self.model.mu_over_g.to_string());
        push("ansatz.depth", self.ansatz.depth.to_string());
        push("ansatz.init", self.ansatz.init.clone());
        push("ansatz.q", self.ansatz.q.to_string());
        push("solver.dtau", self.solver.dtau.to_string());
        push("solver.epsilon", self.solver.epsilon.to_string());
        push("solver.max_iters", self.solver.max_iters.to_string());
        push("solver.stop_delta2", self.solver.stop_delta2.to_string());
        push("solver.update_rule", self.solver.update_rule.clone());
        push("solver.derivative_mode", self.solver.derivative_mode.clone());
        push("solver.pinv_rcond", self.solver.pinv_rcond.to_string());
        push("solver.seed", self.solver.seed.to_string());
        out
    }
}

/// Stable seed mixing for per-sample / per-cell streams (splitmix64 step).
pub fn mix_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
