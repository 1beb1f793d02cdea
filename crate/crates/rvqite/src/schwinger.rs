//! The lattice Schwinger model in spin form: Hamiltonian with theta-term and
//! chemical potential, the U(1) charge operator, and the three observables
//! (charge, chiral condensate, electric field).
//!
//! Everything is expressed in units of the coupling g. The model parameters
//! fix J = a_g/2 and w = 1/(2 a_g); they are never set independently.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::pauli::{Axis, PauliSum, PauliTerm};
use crate::statevector::StateVector;

/// Model parameters. `theta` is in radians; the CLI surfaces theta/2pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwingerParams {
    /// Even, positive site count.
    pub n_sites: usize,
    /// Lattice spacing in units 1/g (a*g).
    pub a_g: f64,
    pub m_over_g: f64,
    pub theta: f64,
    pub mu_over_g: f64,
}

impl SchwingerParams {
    pub fn new(n_sites: usize, a_g: f64, m_over_g: f64, theta: f64, mu_over_g: f64) -> Result<Self> {
        let params = Self {
            n_sites,
            a_g,
            m_over_g,
            theta,
            mu_over_g,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 || self.n_sites % 2 != 0 {
            return Err(Error::OddSiteCount { n: self.n_sites });
        }
        if !(self.a_g > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "lattice spacing a*g must be positive, got {}",
                self.a_g
            )));
        }
        for (name, v) in [
            ("m/g", self.m_over_g),
            ("theta", self.theta),
            ("mu/g", self.mu_over_g),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// J = g^2 a / 2, in units of g.
    pub fn coupling_j(&self) -> f64 {
        self.a_g / 2.0
    }

    /// w = 1 / (2a), in units of g.
    pub fn coupling_w(&self) -> f64 {
        1.0 / (2.0 * self.a_g)
    }

    pub fn theta_over_2pi(&self) -> f64 {
        self.theta / (2.0 * PI)
    }
}

/// H(mu, m, theta) = H(m, theta) - mu Q as a simplified Pauli sum.
///
/// The squared electric-field sum is expanded symbolically into Z_i Z_j
/// couplings, linear Z_i terms, and a constant; the constant is kept so that
/// energies compare directly against exact diagonalization of the same
/// operator.
pub fn build_hamiltonian(p: &SchwingerParams) -> Result<PauliSum> {
    p.validate()?;
    let n = p.n_sites;
    let j = p.coupling_j();
    let w = p.coupling_w();
    let theta0 = p.theta_over_2pi();

    let mut h = PauliSum::zero(n);

    // J * sum_j (L_j + theta/2pi)^2 with L_j = sum_{i<=j} (Z_i + (-1)^i)/2.
    for link in 0..n - 1 {
        let mut field = PauliSum::zero(n);
        let mut offset = theta0;
        for site in 0..=link {
            field.push(PauliTerm::single(0.5, site, Axis::Z))?;
            offset += 0.5 * stagger(site);
        }
        field.push(PauliTerm::identity(offset))?;
        h = h.add(&field.mul(&field)?.scale(j))?;
    }

    // (w/2) * sum_j (X_j X_{j+1} + Y_j Y_{j+1})
    for site in 0..n - 1 {
        h.push(PauliTerm::new(
            0.5 * w,
            vec![(site, Axis::X), (site + 1, Axis::X)],
        )?)?;
        h.push(PauliTerm::new(
            0.5 * w,
            vec![(site, Axis::Y), (site + 1, Axis::Y)],
        )?)?;
    }

    // (m/2) * sum_j (-1)^j Z_j
    for site in 0..n {
        h.push(PauliTerm::single(
            0.5 * p.m_over_g * stagger(site),
            site,
            Axis::Z,
        ))?;
    }

    // -mu Q
    if p.mu_over_g != 0.0 {
        h = h.add(&charge_operator(n).scale(-p.mu_over_g))?;
    }

    Ok(h.simplify())
}

/// Total U(1) charge Q = (1/2) sum_j Z_j.
pub fn charge_operator(n_sites: usize) -> PauliSum {
    let terms = (0..n_sites)
        .map(|site| PauliTerm::single(0.5, site, Axis::Z))
        .collect();
    PauliSum::new(n_sites, terms).expect("sites in range")
}

/// Per-site charge Q_i = (Z_i + (-1)^i)/2.
pub fn site_charge_operator(n_sites: usize, site: usize) -> Result<PauliSum> {
    if site >= n_sites {
        return Err(Error::SiteOutOfRange {
            site,
            qubit_count: n_sites,
        });
    }
    PauliSum::new(
        n_sites,
        vec![
            PauliTerm::single(0.5, site, Axis::Z),
            PauliTerm::identity(0.5 * stagger(site)),
        ],
    )
}

fn stagger(site: usize) -> f64 {
    if site % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Observables of a state under the model conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    /// <Q>, a pure number.
    pub charge: f64,
    /// Chiral condensate chi = (a g / 2N) sum_i (-1)^i <Z_i>.
    pub chiral_condensate: f64,
    /// Total electric field in units of g, including the g*theta/2pi offset.
    pub electric_field: f64,
}

/// Evaluates <Q>, chi, and the electric field from one pass of per-site
/// <sigma_z> values.
pub fn observables(psi: &StateVector, p: &SchwingerParams) -> Result<Observables> {
    if psi.qubit_count() != p.n_sites {
        return Err(Error::DimensionMismatch {
            left: p.n_sites,
            right: psi.qubit_count(),
        });
    }
    let deviation = (psi.norm() - 1.0).abs();
    if deviation > 1e-8 {
        return Err(Error::NotNormalized { deviation });
    }
    let z = psi.z_expectations();
    let n = p.n_sites as f64;

    let charge = 0.5 * z.iter().sum::<f64>();
    let chiral_condensate = (p.a_g / (2.0 * n))
        * z.iter()
            .enumerate()
            .map(|(i, zi)| stagger(i) * zi)
            .sum::<f64>();
    // E = (g/2N) sum_{i} sum_{k<=i} (<Z_k> + (-1)^k) + g theta/2pi
    //   = (g/2N) sum_k (N - k)(<Z_k> + (-1)^k) + g theta/2pi
    let electric_field = (1.0 / (2.0 * n))
        * z.iter()
            .enumerate()
            .map(|(k, zk)| (n - k as f64) * (zk + stagger(k)))
            .sum::<f64>()
        + p.theta_over_2pi();

    Ok(Observables {
        charge,
        chiral_condensate,
        electric_field,
    })
}
