//! Dense statevector engine: parameterized gates, analytic derivative states
//! via generator insertion, inner products, and the ancilla-overlap
//! construction.
//!
//! Amplitude ordering is little-endian: bit `i` of the index is site `i`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{Axis, PauliTerm};

/// Dense complex amplitude vector over `qubit_count` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
    normalized: bool,
}

impl StateVector {
    /// Computational basis state |bits>.
    pub fn from_bitstring(qubit_count: usize, bits: u64) -> Result<Self> {
        let dim = 1usize << qubit_count;
        if bits as usize >= dim {
            return Err(Error::SiteOutOfRange {
                site: 64 - bits.leading_zeros() as usize,
                qubit_count,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[bits as usize] = Complex64::new(1.0, 0.0);
        Ok(Self {
            qubit_count,
            amplitudes,
            normalized: true,
        })
    }

    /// Physical (normalized) state from raw amplitudes.
    pub fn from_amplitudes(qubit_count: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1usize << qubit_count {
            return Err(Error::DimensionMismatch {
                left: 1usize << qubit_count,
                right: amplitudes.len(),
            });
        }
        let state = Self {
            qubit_count,
            amplitudes,
            normalized: true,
        };
        let deviation = (state.norm() - 1.0).abs();
        if deviation > 1e-10 {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(state)
    }

    /// Unnormalized state (derivative states, operator images); flagged as such.
    pub fn unnormalized(qubit_count: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1usize << qubit_count);
        Self {
            qubit_count,
            amplitudes,
            normalized: false,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn is_flagged_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `<self|other>` with conjugation on `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.qubit_count != other.qubit_count {
            return Err(Error::DimensionMismatch {
                left: self.qubit_count,
                right: other.qubit_count,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Per-site `<sigma_z>` values, one pass over the amplitudes.
    pub fn z_expectations(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.qubit_count];
        for (b, amp) in self.amplitudes.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            for (site, value) in out.iter_mut().enumerate() {
                if b & (1 << site) == 0 {
                    *value += p;
                } else {
                    *value -= p;
                }
            }
        }
        out
    }

    /// Ancilla-overlap state `(|+>(x)a + |->(x)b)/sqrt(2)` on one extra qubit
    /// (the ancilla is the new highest bit). Measuring `sigma_z` on the
    /// ancilla yields `Re<a|b>` exactly.
    pub fn with_ancilla(a: &StateVector, b: &StateVector) -> Result<StateVector> {
        if a.qubit_count != b.qubit_count {
            return Err(Error::DimensionMismatch {
                left: a.qubit_count,
                right: b.qubit_count,
            });
        }
        for (name, s) in [("a", a), ("b", b)] {
            let deviation = (s.norm() - 1.0).abs();
            if deviation > 1e-8 {
                let _ = name;
                return Err(Error::NotNormalized { deviation });
            }
        }
        let dim = a.amplitudes.len();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * dim];
        // |+-> = (|0> +- |1>)/sqrt(2) on the ancilla bit.
        for x in 0..dim {
            amplitudes[x] = (a.amplitudes[x] + b.amplitudes[x]) * 0.5;
            amplitudes[x + dim] = (a.amplitudes[x] - b.amplitudes[x]) * 0.5;
        }
        Ok(StateVector {
            qubit_count: a.qubit_count + 1,
            amplitudes,
            normalized: true,
        })
    }

    /// `<sigma_z>` on a single site.
    pub fn z_expectation(&self, site: usize) -> f64 {
        let mask = 1usize << site;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(b, a)| {
                if b & mask == 0 {
                    a.norm_sqr()
                } else {
                    -a.norm_sqr()
                }
            })
            .sum()
    }

    /// Raw little-endian float64 (re, im) pairs, for the binary debug dump.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.amplitudes.len() * 16);
        for amp in &self.amplitudes {
            out.extend_from_slice(&amp.re.to_le_bytes());
            out.extend_from_slice(&amp.im.to_le_bytes());
        }
        out
    }
}

/// Parameterized gate kinds of the ansatz.
///
/// Every gate is `exp(+i * value * sum_k sign_k P_k)`; the generator list
/// below fixes the Pauli strings and signs. `Rx` is `exp(-i * value * X)`,
/// so its generator carries sign -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Rx,
    Rz,
    Rzz,
    Rxxyy,
}

impl GateKind {
    pub fn site_count(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Rz => 1,
            GateKind::Rzz | GateKind::Rxxyy => 2,
        }
    }
}

/// One parameterized gate. Two-site kinds use both entries of `sites`;
/// single-site kinds ignore the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub sites: [usize; 2],
    pub param_index: usize,
}

impl Gate {
    pub fn new(kind: GateKind, sites: [usize; 2], param_index: usize) -> Self {
        Self {
            kind,
            sites,
            param_index,
        }
    }

    /// Generator as (Pauli string, sign): the gate is
    /// `exp(+i * value * sum_k sign_k P_k)`. The terms mutually commute.
    pub fn generator(&self) -> Vec<(PauliTerm, f64)> {
        let [s, t] = self.sites;
        match self.kind {
            GateKind::Rx => vec![(PauliTerm::single(1.0, s, Axis::X), -1.0)],
            GateKind::Rz => vec![(PauliTerm::single(1.0, s, Axis::Z), 1.0)],
            GateKind::Rzz => vec![(
                PauliTerm::new(1.0, vec![(s, Axis::Z), (t, Axis::Z)]).expect("distinct sites"),
                1.0,
            )],
            GateKind::Rxxyy => vec![
                (
                    PauliTerm::new(1.0, vec![(s, Axis::X), (t, Axis::X)]).expect("distinct sites"),
                    1.0,
                ),
                (
                    PauliTerm::new(1.0, vec![(s, Axis::Y), (t, Axis::Y)]).expect("distinct sites"),
                    1.0,
                ),
            ],
        }
    }

    fn check_sites(&self, qubit_count: usize) -> Result<()> {
        for &site in &self.sites[..self.kind.site_count()] {
            if site >= qubit_count {
                return Err(Error::SiteOutOfRange { site, qubit_count });
            }
        }
        Ok(())
    }
}

/// Applies `exp(i * angle * P)` in place for a Pauli string `P` (an
/// involution): `cos(angle) I + i sin(angle) P`. Sign conventions are folded
/// into `angle` by the caller.
fn apply_pauli_exponential(amps: &mut [Complex64], term: &PauliTerm, angle: f64) {
    let (flip, phase, y_count) = term_masks(term);
    let cos = angle.cos();
    let i_sin_g = Complex64::new(0.0, angle.sin()) * i_pow(y_count);
    if flip == 0 {
        for (b, amp) in amps.iter_mut().enumerate() {
            let sign = parity_sign(b as u64 & phase);
            *amp = *amp * (cos + i_sin_g * sign);
        }
    } else {
        let pivot = 63 - flip.leading_zeros() as usize;
        let pivot_mask = 1usize << pivot;
        let flip = flip as usize;
        for b in 0..amps.len() {
            if b & pivot_mask != 0 {
                continue;
            }
            let b2 = b ^ flip;
            let sign_b = parity_sign(b as u64 & phase);
            let sign_b2 = parity_sign(b2 as u64 & phase);
            let (a, a2) = (amps[b], amps[b2]);
            amps[b] = a * cos + i_sin_g * sign_b2 * a2;
            amps[b2] = a2 * cos + i_sin_g * sign_b * a;
        }
    }
}

/// Applies `i * sign * P` in place (derivative-state insertion).
fn apply_pauli_insertion(amps: &mut [Complex64], term: &PauliTerm, sign: f64) {
    let (flip, phase, y_count) = term_masks(term);
    let global = Complex64::new(0.0, sign) * i_pow(y_count);
    if flip == 0 {
        for (b, amp) in amps.iter_mut().enumerate() {
            *amp = *amp * global * parity_sign(b as u64 & phase);
        }
    } else {
        let pivot = 63 - flip.leading_zeros() as usize;
        let pivot_mask = 1usize << pivot;
        let flip = flip as usize;
        for b in 0..amps.len() {
            if b & pivot_mask != 0 {
                continue;
            }
            let b2 = b ^ flip;
            let sign_b = parity_sign(b as u64 & phase);
            let sign_b2 = parity_sign(b2 as u64 & phase);
            let (a, a2) = (amps[b], amps[b2]);
            amps[b] = global * sign_b2 * a2;
            amps[b2] = global * sign_b * a;
        }
    }
}

fn term_masks(term: &PauliTerm) -> (u64, u64, u32) {
    let mut flip = 0u64;
    let mut phase = 0u64;
    let mut y_count = 0u32;
    for &(site, axis) in term.factors() {
        let bit = 1u64 << site;
        match axis {
            Axis::X => flip |= bit,
            Axis::Y => {
                flip |= bit;
                phase |= bit;
                y_count += 1;
            }
            Axis::Z => phase |= bit,
        }
    }
    (flip, phase, y_count)
}

fn parity_sign(masked: u64) -> f64 {
    if masked.count_ones() & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn insert_zero_bit(index: usize, pos: usize) -> usize {
    ((index >> pos) << (pos + 1)) | (index & ((1 << pos) - 1))
}

fn apply_rz(amps: &mut [Complex64], site: usize, value: f64) {
    let mask = 1usize << site;
    let plus = Complex64::from_polar(1.0, value);
    let minus = plus.conj();
    for (b, amp) in amps.iter_mut().enumerate() {
        *amp *= if b & mask == 0 { plus } else { minus };
    }
}

fn apply_rzz(amps: &mut [Complex64], s: usize, t: usize, value: f64) {
    let ms = 1usize << s;
    let mt = 1usize << t;
    let plus = Complex64::from_polar(1.0, value);
    let minus = plus.conj();
    for (b, amp) in amps.iter_mut().enumerate() {
        let aligned = (b & ms == 0) == (b & mt == 0);
        *amp *= if aligned { plus } else { minus };
    }
}

fn apply_rx(amps: &mut [Complex64], site: usize, value: f64) {
    let mask = 1usize << site;
    let cos = value.cos();
    let m_i_sin = Complex64::new(0.0, -value.sin());
    for base in 0..amps.len() / 2 {
        let b0 = insert_zero_bit(base, site);
        let b1 = b0 | mask;
        let (a0, a1) = (amps[b0], amps[b1]);
        amps[b0] = a0 * cos + m_i_sin * a1;
        amps[b1] = m_i_sin * a0 + a1 * cos;
    }
}

/// One pass of exp(i v (XX + YY)): identity on aligned pairs, a rotation by
/// 2v with an i phase on the {|01>, |10>} block.
fn apply_rxxyy(amps: &mut [Complex64], s: usize, t: usize, value: f64) {
    let (lo, hi) = if s < t { (s, t) } else { (t, s) };
    let ms = 1usize << lo;
    let mt = 1usize << hi;
    let cos = (2.0 * value).cos();
    let i_sin = Complex64::new(0.0, (2.0 * value).sin());
    for base in 0..amps.len() / 4 {
        let b00 = insert_zero_bit(insert_zero_bit(base, lo), hi);
        let b01 = b00 | ms;
        let b10 = b00 | mt;
        let (a01, a10) = (amps[b01], amps[b10]);
        amps[b01] = a01 * cos + i_sin * a10;
        amps[b10] = i_sin * a01 + a10 * cos;
    }
}

fn apply_gate_kernel(amps: &mut [Complex64], gate: &Gate, value: f64) {
    let [s, t] = gate.sites;
    match gate.kind {
        GateKind::Rx => apply_rx(amps, s, value),
        GateKind::Rz => apply_rz(amps, s, value),
        GateKind::Rzz => apply_rzz(amps, s, t, value),
        GateKind::Rxxyy => apply_rxxyy(amps, s, t, value),
    }
}

/// Adds a diagonal gate's phase angles into a per-basis-state accumulator;
/// a run of diagonal gates then costs one complex pass for every state it is
/// applied to.
fn accumulate_diagonal_angle(angles: &mut [f64], gate: &Gate, value: f64) {
    let [s, t] = gate.sites;
    match gate.kind {
        GateKind::Rz => {
            let mask = 1usize << s;
            for (b, angle) in angles.iter_mut().enumerate() {
                *angle += if b & mask == 0 { value } else { -value };
            }
        }
        GateKind::Rzz => {
            let ms = 1usize << s;
            let mt = 1usize << t;
            for (b, angle) in angles.iter_mut().enumerate() {
                let aligned = (b & ms == 0) == (b & mt == 0);
                *angle += if aligned { value } else { -value };
            }
        }
        _ => unreachable!("only diagonal gates accumulate"),
    }
}

fn is_diagonal(kind: GateKind) -> bool {
    matches!(kind, GateKind::Rz | GateKind::Rzz)
}

/// Unitary gate action on a state; norm is preserved.
pub fn apply_gate(psi: &StateVector, gate: &Gate, value: f64) -> Result<StateVector> {
    gate.check_sites(psi.qubit_count)?;
    let mut out = psi.clone();
    apply_gate_kernel(&mut out.amplitudes, gate, value);
    Ok(out)
}

/// Ordered parameterized gates applied to a computational basis state.
#[derive(Debug, Clone)]
pub struct Circuit {
    qubit_count: usize,
    initial_bits: u64,
    gates: Vec<Gate>,
    param_count: usize,
}

impl Circuit {
    /// Validates site ranges and that every parameter index in
    /// `0..param_count` is used by at least one gate.
    pub fn new(qubit_count: usize, initial_bits: u64, gates: Vec<Gate>) -> Result<Self> {
        if initial_bits >= (1u64 << qubit_count) {
            return Err(Error::SiteOutOfRange {
                site: 64 - initial_bits.leading_zeros() as usize,
                qubit_count,
            });
        }
        let param_count = gates
            .iter()
            .map(|g| g.param_index + 1)
            .max()
            .unwrap_or(0);
        let mut used = vec![false; param_count];
        for gate in &gates {
            gate.check_sites(qubit_count)?;
            used[gate.param_index] = true;
        }
        if let Some(index) = used.iter().position(|&u| !u) {
            return Err(Error::ParamIndexOutOfRange {
                index,
                count: param_count,
            });
        }
        Ok(Self {
            qubit_count,
            initial_bits,
            gates,
            param_count,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn initial_bits(&self) -> u64 {
        self.initial_bits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn param_count(&self) -> usize {
        self.param_count
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_count {
            return Err(Error::ParamCountMismatch {
                expected: self.param_count,
                got: params.len(),
            });
        }
        Ok(())
    }

    /// |psi(params)>, normalized.
    pub fn evaluate(&self, params: &[f64]) -> Result<StateVector> {
        self.check_params(params)?;
        let mut state = StateVector::from_bitstring(self.qubit_count, self.initial_bits)?;
        for gate in &self.gates {
            apply_gate_kernel(&mut state.amplitudes, gate, params[gate.param_index]);
        }
        Ok(state)
    }

    /// d|psi>/d(theta_k): sum over gates bound to parameter `k` and generator
    /// terms, of the circuit run with `i * sign * P` inserted right after the
    /// gate. Unnormalized in general.
    pub fn derivative_state(&self, params: &[f64], k: usize) -> Result<StateVector> {
        if k >= self.param_count {
            return Err(Error::ParamIndexOutOfRange {
                index: k,
                count: self.param_count,
            });
        }
        let states = self.derivative_states_filtered(params, Some(k))?;
        Ok(states.into_iter().nth(k).expect("filtered state present"))
    }

    /// All parameter derivative states in one forward co-evolution pass.
    pub fn derivative_states(&self, params: &[f64]) -> Result<Vec<StateVector>> {
        self.derivative_states_filtered(params, None)
    }

    fn derivative_states_filtered(
        &self,
        params: &[f64],
        only: Option<usize>,
    ) -> Result<Vec<StateVector>> {
        self.check_params(params)?;
        let dim = 1usize << self.qubit_count;
        let mut psi = StateVector::from_bitstring(self.qubit_count, self.initial_bits)?;
        let mut active: Vec<(usize, Vec<Complex64>)> = Vec::new();
        let mut angles = vec![0.0f64; dim];
        let mut phases = vec![Complex64::new(1.0, 0.0); dim];

        // Runs of diagonal gates commute among themselves and with their own
        // generator insertions, so each run is fused into a single phase pass
        // per evolving state and the run's insertions spawn after it.
        let mut idx = 0;
        while idx < self.gates.len() {
            let run_end = if is_diagonal(self.gates[idx].kind) {
                let mut end = idx;
                while end < self.gates.len() && is_diagonal(self.gates[end].kind) {
                    end += 1;
                }
                end
            } else {
                idx + 1
            };

            if is_diagonal(self.gates[idx].kind) {
                for angle in angles.iter_mut() {
                    *angle = 0.0;
                }
                for gate in &self.gates[idx..run_end] {
                    accumulate_diagonal_angle(&mut angles, gate, params[gate.param_index]);
                }
                for (phase, angle) in phases.iter_mut().zip(&angles) {
                    *phase = Complex64::from_polar(1.0, *angle);
                }
                let apply_phases = |amps: &mut Vec<Complex64>| {
                    for (a, p) in amps.iter_mut().zip(&phases) {
                        *a *= p;
                    }
                };
                if active.len() >= 8 {
                    active.par_iter_mut().for_each(|(_, amps)| apply_phases(amps));
                } else {
                    for (_, amps) in active.iter_mut() {
                        apply_phases(amps);
                    }
                }
                apply_phases(&mut psi.amplitudes);
            } else {
                let gate = &self.gates[idx];
                let value = params[gate.param_index];
                if active.len() >= 8 {
                    active
                        .par_iter_mut()
                        .for_each(|(_, amps)| apply_gate_kernel(amps, gate, value));
                } else {
                    for (_, amps) in active.iter_mut() {
                        apply_gate_kernel(amps, gate, value);
                    }
                }
                apply_gate_kernel(&mut psi.amplitudes, gate, value);
            }

            for gate in &self.gates[idx..run_end] {
                if only.is_none() || only == Some(gate.param_index) {
                    for (term, sign) in gate.generator() {
                        let mut spawned = psi.amplitudes.clone();
                        apply_pauli_insertion(&mut spawned, &term, sign);
                        active.push((gate.param_index, spawned));
                    }
                }
            }
            idx = run_end;
        }

        let mut out: Vec<Vec<Complex64>> =
            vec![vec![Complex64::new(0.0, 0.0); dim]; self.param_count];
        for (k, amps) in active {
            for (acc, a) in out[k].iter_mut().zip(&amps) {
                *acc += a;
            }
        }
        Ok(out
            .into_iter()
            .map(|amps| StateVector::unnormalized(self.qubit_count, amps))
            .collect())
    }

    /// Insertion points for derivative and shift rules: for each parameter,
    /// the (gate index, term index, generator term, sign) tuples bound to it.
    pub(crate) fn insertion_points(&self) -> Vec<Vec<(usize, usize, PauliTerm, f64)>> {
        let mut out = vec![Vec::new(); self.param_count];
        for (g_idx, gate) in self.gates.iter().enumerate() {
            for (t_idx, (term, sign)) in gate.generator().into_iter().enumerate() {
                out[gate.param_index].push((g_idx, t_idx, term, sign));
            }
        }
        out
    }

    /// Evaluates the circuit with one generator term of one gate shifted:
    /// gate `gate_idx` is applied as the product of its per-term exponentials
    /// (exact, the terms commute) with term `term_idx`'s angle offset by
    /// `delta`. Used by the parameter-shift rules.
    pub(crate) fn evaluate_term_shifted(
        &self,
        params: &[f64],
        gate_idx: usize,
        term_idx: usize,
        delta: f64,
    ) -> Result<StateVector> {
        self.check_params(params)?;
        let mut state = StateVector::from_bitstring(self.qubit_count, self.initial_bits)?;
        for (g, gate) in self.gates.iter().enumerate() {
            let value = params[gate.param_index];
            if g == gate_idx {
                for (t, (term, sign)) in gate.generator().iter().enumerate() {
                    let offset = if t == term_idx { delta } else { 0.0 };
                    apply_pauli_exponential(&mut state.amplitudes, term, sign * (value + offset));
                }
            } else {
                apply_gate_kernel(&mut state.amplitudes, gate, value);
            }
        }
        Ok(state)
    }
}
