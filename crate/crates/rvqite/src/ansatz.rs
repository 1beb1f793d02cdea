//! Hamiltonian variational ansatz construction, charge-sector initial
//! states, and the trainable R_x initialization layer for runs where the
//! charge is not fixed.
//!
//! One layer applies, in order: U_z (N gates), U_zz over odd bonds, U_xy over
//! odd bonds, U_zz over even bonds, U_xy over even bonds. Parameters follow
//! gate order, so the global layout is `[tau_0..tau_{N-1}] (FreeCharge only)`
//! followed by `depth` blocks of `alpha (N), gamma_odd, beta_odd, gamma_even,
//! beta_even` (3N-2 per block).

use crate::error::{Error, Result};
use crate::statevector::{Circuit, Gate, GateKind};

/// Initial-state mode: a fixed-charge product state, or the all-zeros state
/// with N trainable R_x(tau_i) gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    FixedCharge(i64),
    FreeCharge,
}

/// Ansatz description: sites, layer count, and initialization mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSpec {
    pub n_sites: usize,
    pub depth: usize,
    pub init: InitMode,
}

impl AnsatzSpec {
    pub fn new(n_sites: usize, depth: usize, init: InitMode) -> Result<Self> {
        let spec = Self {
            n_sites,
            depth,
            init,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 || self.n_sites % 2 != 0 {
            return Err(Error::OddSiteCount { n: self.n_sites });
        }
        if self.depth == 0 {
            return Err(Error::InvalidConfig("ansatz depth must be >= 1".into()));
        }
        if let InitMode::FixedCharge(q) = self.init {
            if 2 * q.unsigned_abs() as usize > self.n_sites {
                return Err(Error::ChargeCapacity {
                    q,
                    n: self.n_sites,
                });
            }
        }
        Ok(())
    }

    /// p (3N - 2) + N for FreeCharge.
    pub fn parameter_count(&self) -> usize {
        let per_layer = 3 * self.n_sites - 2;
        let init = match self.init {
            InitMode::FreeCharge => self.n_sites,
            InitMode::FixedCharge(_) => 0,
        };
        self.depth * per_layer + init
    }
}

/// The staggered product state with per-site charge Q_i = 0 everywhere:
/// even sites sigma_z = -1 (bit set), odd sites sigma_z = +1 (bit clear).
pub fn vacuum_bitstring(n_sites: usize) -> Result<u64> {
    if n_sites == 0 || n_sites % 2 != 0 {
        return Err(Error::OddSiteCount { n: n_sites });
    }
    let mut bits = 0u64;
    for site in (0..n_sites).step_by(2) {
        bits |= 1 << site;
    }
    Ok(bits)
}

/// Product state of total charge q: the first 2|q| sites aligned with
/// sign(q) (sigma_z = +1 for q > 0, -1 for q < 0), the rest in the vacuum
/// pattern.
pub fn charged_bitstring(n_sites: usize, q: i64) -> Result<u64> {
    if n_sites == 0 || n_sites % 2 != 0 {
        return Err(Error::OddSiteCount { n: n_sites });
    }
    let charged_sites = 2 * q.unsigned_abs() as usize;
    if charged_sites > n_sites {
        return Err(Error::ChargeCapacity { q, n: n_sites });
    }
    let mut bits = 0u64;
    for site in 0..n_sites {
        let down = if site < charged_sites {
            q < 0
        } else {
            site % 2 == 0
        };
        if down {
            bits |= 1 << site;
        }
    }
    Ok(bits)
}

/// Builds the HVA circuit for a spec. For `FixedCharge(q)` every gate
/// generator commutes with Q, so <Q> = q for all parameter values.
pub fn build_circuit(spec: &AnsatzSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n_sites;
    let mut gates = Vec::new();
    let mut param = 0;

    let initial_bits = match spec.init {
        InitMode::FixedCharge(q) => charged_bitstring(n, q)?,
        InitMode::FreeCharge => {
            for site in 0..n {
                gates.push(Gate::new(GateKind::Rx, [site, 0], param));
                param += 1;
            }
            0
        }
    };

    for _ in 0..spec.depth {
        for site in 0..n {
            gates.push(Gate::new(GateKind::Rz, [site, 0], param));
            param += 1;
        }
        for (kind_pass, parity) in [(0, 1), (1, 1), (0, 0), (1, 0)] {
            let kind = if kind_pass == 0 {
                GateKind::Rzz
            } else {
                GateKind::Rxxyy
            };
            let mut bond = parity;
            while bond + 1 < n {
                gates.push(Gate::new(kind, [bond, bond + 1], param));
                param += 1;
                bond += 2;
            }
        }
    }

    debug_assert_eq!(param, spec.parameter_count());
    Circuit::new(n, initial_bits, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwinger::charge_operator;
    use crate::statevector::StateVector;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_params(count: usize, rng: &mut ChaCha12Rng) -> Vec<f64> {
        (0..count)
            .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect()
    }

    #[test]
    fn vacuum_has_zero_charge_everywhere() {
        for n in [4usize, 10] {
            let bits = vacuum_bitstring(n).unwrap();
            let psi = StateVector::from_bitstring(n, bits).unwrap();
            let q = charge_operator(n).expectation(&psi).unwrap();
            assert_abs_diff_eq!(q, 0.0, epsilon = 1e-14);
            for site in 0..n {
                let qi = crate::schwinger::site_charge_operator(n, site)
                    .unwrap()
                    .expectation(&psi)
                    .unwrap();
                assert_abs_diff_eq!(qi, 0.0, epsilon = 1e-14);
            }
        }
        assert!(vacuum_bitstring(5).is_err());
    }

    #[test]
    fn charged_bitstring_hits_target_charge() {
        for (n, q) in [(4usize, 1i64), (10, -3), (10, 5), (6, 0)] {
            let bits = charged_bitstring(n, q).unwrap();
            let psi = StateVector::from_bitstring(n, bits).unwrap();
            let got = charge_operator(n).expectation(&psi).unwrap();
            assert_abs_diff_eq!(got, q as f64, epsilon = 1e-14);
        }
        assert!(matches!(
            charged_bitstring(4, 3),
            Err(Error::ChargeCapacity { .. })
        ));
    }

    #[test]
    fn parameter_count_formula() {
        for n in (2..=10).step_by(2) {
            for depth in 1..=10 {
                let fixed = AnsatzSpec::new(n, depth, InitMode::FixedCharge(0)).unwrap();
                assert_eq!(fixed.parameter_count(), depth * (3 * n - 2));
                let free = AnsatzSpec::new(n, depth, InitMode::FreeCharge).unwrap();
                assert_eq!(free.parameter_count(), depth * (3 * n - 2) + n);
            }
        }
        // The headline case: p=5, N=10, FreeCharge -> 150.
        let spec = AnsatzSpec::new(10, 5, InitMode::FreeCharge).unwrap();
        assert_eq!(spec.parameter_count(), 150);
    }

    #[test]
    fn zero_params_reproduce_initial_bitstring() {
        let spec = AnsatzSpec::new(4, 1, InitMode::FixedCharge(0)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let psi = circuit.evaluate(&vec![0.0; circuit.param_count()]).unwrap();
        let target = vacuum_bitstring(4).unwrap() as usize;
        assert_abs_diff_eq!(psi.amplitudes()[target].norm(), 1.0, epsilon = 1e-14);

        let spec = AnsatzSpec::new(4, 2, InitMode::FixedCharge(-1)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let psi = circuit.evaluate(&vec![0.0; circuit.param_count()]).unwrap();
        let target = charged_bitstring(4, -1).unwrap() as usize;
        assert_abs_diff_eq!(psi.amplitudes()[target].norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn layer_gate_order_is_pinned() {
        // Application order per layer: U_z, U_zz(odd), U_xy(odd), U_zz(even),
        // U_xy(even). Even and odd bond gates do not all commute, so this
        // order is load-bearing.
        use crate::statevector::GateKind;
        let spec = AnsatzSpec::new(4, 1, InitMode::FreeCharge).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let got: Vec<(GateKind, usize)> = circuit
            .gates()
            .iter()
            .map(|g| (g.kind, g.sites[0]))
            .collect();
        let want = vec![
            (GateKind::Rx, 0),
            (GateKind::Rx, 1),
            (GateKind::Rx, 2),
            (GateKind::Rx, 3),
            (GateKind::Rz, 0),
            (GateKind::Rz, 1),
            (GateKind::Rz, 2),
            (GateKind::Rz, 3),
            (GateKind::Rzz, 1),
            (GateKind::Rxxyy, 1),
            (GateKind::Rzz, 0),
            (GateKind::Rzz, 2),
            (GateKind::Rxxyy, 0),
            (GateKind::Rxxyy, 2),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn fixed_charge_is_invariant_over_parameters() {
        let spec = AnsatzSpec::new(6, 3, InitMode::FixedCharge(2)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let q = charge_operator(6);
        let mut rng = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..100 {
            let params = random_params(circuit.param_count(), &mut rng);
            let psi = circuit.evaluate(&params).unwrap();
            assert_abs_diff_eq!(q.expectation(&psi).unwrap(), 2.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn hva_generators_commute_with_charge() {
        // Per gate: the full generator sum (XX + YY for the hopping gate)
        // commutes with Q even though its terms individually do not.
        let spec = AnsatzSpec::new(4, 1, InitMode::FixedCharge(0)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let q = charge_operator(4);
        for gate in circuit.gates() {
            let mut gen = crate::pauli::PauliSum::zero(4);
            for (mut term, sign) in gate.generator() {
                term.coefficient *= sign;
                gen.push(term).unwrap();
            }
            assert_abs_diff_eq!(gen.commutator_norm(&q).unwrap(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn free_charge_half_pi_taus_give_all_ones() {
        // R_x(pi/2)|0> = -i|1>, frozen from the dense exponential; with all
        // other parameters zero the state is the all-ones bitstring up to phase.
        let n = 4;
        let spec = AnsatzSpec::new(n, 1, InitMode::FreeCharge).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let mut params = vec![0.0; circuit.param_count()];
        for tau in params.iter_mut().take(n) {
            *tau = std::f64::consts::FRAC_PI_2;
        }
        let psi = circuit.evaluate(&params).unwrap();
        let all_ones = (1usize << n) - 1;
        assert_abs_diff_eq!(psi.amplitudes()[all_ones].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn norm_is_one_for_random_params() {
        let spec = AnsatzSpec::new(6, 2, InitMode::FreeCharge).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..20 {
            let params = random_params(circuit.param_count(), &mut rng);
            let psi = circuit.evaluate(&params).unwrap();
            assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn evaluate_periodicity_up_to_global_phase() {
        // 2pi-periodic in alpha and gamma; pi-periodic in beta. Fidelity-based
        // so global phases do not matter.
        let n = 4;
        let spec = AnsatzSpec::new(n, 1, InitMode::FixedCharge(0)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let base = random_params(circuit.param_count(), &mut rng);
        let psi0 = circuit.evaluate(&base).unwrap();

        // layout per layer: alpha N, gamma_odd, beta_odd, gamma_even, beta_even
        let alpha_idx = 1;
        let gamma_idx = n; // first odd-bond zz
        let beta_idx = n + (n / 2 - 1); // first odd-bond xy
        for (idx, period) in [
            (alpha_idx, 2.0 * std::f64::consts::PI),
            (gamma_idx, 2.0 * std::f64::consts::PI),
            (beta_idx, std::f64::consts::PI),
        ] {
            let mut shifted = base.clone();
            shifted[idx] += period;
            let psi1 = circuit.evaluate(&shifted).unwrap();
            let fidelity = psi0.inner(&psi1).unwrap().norm();
            assert_abs_diff_eq!(fidelity, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gate_level_charge_conservation() {
        // Every HVA gate kind leaves <Q> unchanged on a random state; R_x is
        // exempt (it is the charge-tuning layer).
        use crate::statevector::{apply_gate, Gate, GateKind};
        let n = 4;
        let q = charge_operator(n);
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let spec = AnsatzSpec::new(n, 1, InitMode::FixedCharge(1)).unwrap();
        let circuit = build_circuit(&spec).unwrap();
        let psi = circuit
            .evaluate(&random_params(circuit.param_count(), &mut rng))
            .unwrap();
        let before = q.expectation(&psi).unwrap();
        for gate in [
            Gate::new(GateKind::Rz, [2, 0], 0),
            Gate::new(GateKind::Rzz, [1, 2], 0),
            Gate::new(GateKind::Rxxyy, [2, 3], 0),
        ] {
            let after = apply_gate(&psi, &gate, rng.gen_range(-3.0..3.0)).unwrap();
            assert_abs_diff_eq!(q.expectation(&after).unwrap(), before, epsilon = 1e-10);
        }
    }
}
