//! Pauli-string algebra: weighted sums of Pauli strings, products and
//! commutators, expectation values against statevectors, and dense
//! realization for the exact oracle.
//!
//! Sign convention throughout the crate: `sigma_z |0> = +|0>`, and bit `i` of
//! an amplitude index is site `i` (little-endian).

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevector::StateVector;

/// Coefficients with magnitude below this are dropped by [`PauliSum::simplify`].
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Default qubit cap for [`PauliSum::to_dense`].
pub const DENSE_CAP: usize = 14;

const IMAG_RESIDUAL_TOL: f64 = 1e-10;

/// Single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn label(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

/// Product of two single-site Paulis: returns (power of i, resulting axis).
/// `None` means the identity (equal inputs).
fn axis_product(a: Axis, b: Axis) -> (u8, Option<Axis>) {
    use Axis::*;
    if a == b {
        return (0, None);
    }
    match (a, b) {
        (X, Y) => (1, Some(Z)),
        (Y, X) => (3, Some(Z)),
        (Y, Z) => (1, Some(X)),
        (Z, Y) => (3, Some(X)),
        (Z, X) => (1, Some(Y)),
        (X, Z) => (3, Some(Y)),
        _ => unreachable!(),
    }
}

/// One weighted Pauli string. The identity is the empty factor set.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    factors: Vec<(usize, Axis)>,
}

impl PauliTerm {
    /// Builds a term, sorting factors by site. Duplicate sites are an error.
    pub fn new(coefficient: f64, mut factors: Vec<(usize, Axis)>) -> Result<Self> {
        factors.sort_by_key(|&(site, _)| site);
        for pair in factors.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateSite { site: pair[0].0 });
            }
        }
        Ok(Self {
            coefficient,
            factors,
        })
    }

    pub fn identity(coefficient: f64) -> Self {
        Self {
            coefficient,
            factors: Vec::new(),
        }
    }

    pub fn single(coefficient: f64, site: usize, axis: Axis) -> Self {
        Self {
            coefficient,
            factors: vec![(site, axis)],
        }
    }

    pub fn factors(&self) -> &[(usize, Axis)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    fn max_site(&self) -> Option<usize> {
        self.factors.last().map(|&(site, _)| site)
    }

    /// Bit masks over sites: (flip = X|Y sites, phase-flip = Y|Z sites, y count).
    fn masks(&self) -> (u64, u64, u32) {
        let mut flip = 0u64;
        let mut phase = 0u64;
        let mut y_count = 0u32;
        for &(site, axis) in &self.factors {
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
}

/// Product of two factor lists. Returns the power of i picked up and the
/// merged factor list (site-sorted, identities dropped).
fn mul_factors(a: &[(usize, Axis)], b: &[(usize, Axis)]) -> (u8, Vec<(usize, Axis)>) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut phase_pow = 0u8;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (sa, xa) = a[i];
        let (sb, xb) = b[j];
        if sa < sb {
            out.push((sa, xa));
            i += 1;
        } else if sb < sa {
            out.push((sb, xb));
            j += 1;
        } else {
            let (pow, axis) = axis_product(xa, xb);
            phase_pow = (phase_pow + pow) % 4;
            if let Some(axis) = axis {
                out.push((sa, axis));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    (phase_pow, out)
}

fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Weighted sum of Pauli strings on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    qubit_count: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn new(qubit_count: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        for term in &terms {
            if let Some(site) = term.max_site() {
                if site >= qubit_count {
                    return Err(Error::SiteOutOfRange {
                        site,
                        qubit_count,
                    });
                }
            }
        }
        Ok(Self { qubit_count, terms })
    }

    pub fn zero(qubit_count: usize) -> Self {
        Self {
            qubit_count,
            terms: Vec::new(),
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn push(&mut self, term: PauliTerm) -> Result<()> {
        if let Some(site) = term.max_site() {
            if site >= self.qubit_count {
                return Err(Error::SiteOutOfRange {
                    site,
                    qubit_count: self.qubit_count,
                });
            }
        }
        self.terms.push(term);
        Ok(())
    }

    /// Merges like terms and drops coefficients below [`DROP_TOLERANCE`].
    /// Term order is canonical (sorted by factor list), so downstream
    /// float summations are reproducible.
    pub fn simplify(&self) -> PauliSum {
        let mut merged: BTreeMap<Vec<(usize, Axis)>, f64> = BTreeMap::new();
        for term in &self.terms {
            *merged.entry(term.factors.clone()).or_insert(0.0) += term.coefficient;
        }
        let terms = merged
            .into_iter()
            .filter(|&(_, c)| c.abs() >= DROP_TOLERANCE)
            .map(|(factors, coefficient)| PauliTerm {
                coefficient,
                factors,
            })
            .collect();
        PauliSum {
            qubit_count: self.qubit_count,
            terms,
        }
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.qubit_count != other.qubit_count {
            return Err(Error::DimensionMismatch {
                left: self.qubit_count,
                right: other.qubit_count,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(PauliSum {
            qubit_count: self.qubit_count,
            terms,
        })
    }

    pub fn scale(&self, factor: f64) -> PauliSum {
        let terms = self
            .terms
            .iter()
            .map(|t| PauliTerm {
                coefficient: factor * t.coefficient,
                factors: t.factors.clone(),
            })
            .collect();
        PauliSum {
            qubit_count: self.qubit_count,
            terms,
        }
    }

    /// Operator product. Errors if the result picks up an imaginary
    /// coefficient beyond tolerance (public sums are real-weighted).
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.qubit_count != other.qubit_count {
            return Err(Error::DimensionMismatch {
                left: self.qubit_count,
                right: other.qubit_count,
            });
        }
        let mut merged: BTreeMap<Vec<(usize, Axis)>, Complex64> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let (pow, factors) = mul_factors(&a.factors, &b.factors);
                let coeff = i_pow(pow) * (a.coefficient * b.coefficient);
                *merged.entry(factors).or_insert(Complex64::new(0.0, 0.0)) += coeff;
            }
        }
        let mut terms = Vec::with_capacity(merged.len());
        for (factors, coeff) in merged {
            if coeff.norm() < DROP_TOLERANCE {
                continue;
            }
            if coeff.im.abs() > 1e-10 {
                return Err(Error::ImaginaryCoefficient {
                    residual: coeff.im.abs(),
                });
            }
            terms.push(PauliTerm {
                coefficient: coeff.re,
                factors,
            });
        }
        Ok(PauliSum {
            qubit_count: self.qubit_count,
            terms,
        })
    }

    /// `<psi| self |psi>` for a normalized state. The imaginary residual of
    /// the raw bra-ket must stay below 1e-10 (sums are Hermitian) and is
    /// discarded.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        if psi.qubit_count() != self.qubit_count {
            return Err(Error::DimensionMismatch {
                left: self.qubit_count,
                right: psi.qubit_count(),
            });
        }
        let deviation = (psi.norm() - 1.0).abs();
        if deviation > 1e-8 {
            return Err(Error::NotNormalized { deviation });
        }
        let raw = self.bra_ket(psi);
        if raw.im.abs() > IMAG_RESIDUAL_TOL {
            return Err(Error::ImaginaryResidual {
                residual: raw.im.abs(),
            });
        }
        Ok(raw.re)
    }

    /// Raw `<psi| self |psi>` without normalization or Hermiticity checks.
    pub(crate) fn bra_ket(&self, psi: &StateVector) -> Complex64 {
        let amps = psi.amplitudes();
        let mut total = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let (flip, phase, y_count) = term.masks();
            let global = i_pow((y_count % 4) as u8);
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, &amp) in amps.iter().enumerate() {
                let sign = if ((b as u64 & phase).count_ones() & 1) == 1 {
                    -1.0
                } else {
                    1.0
                };
                let target = b ^ flip as usize;
                acc += amps[target].conj() * amp * sign;
            }
            total += global * term.coefficient * acc;
        }
        total
    }

    /// `self |psi>`; generally unnormalized.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.qubit_count() != self.qubit_count {
            return Err(Error::DimensionMismatch {
                left: self.qubit_count,
                right: psi.qubit_count(),
            });
        }
        let amps = psi.amplitudes();
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for term in &self.terms {
            let (flip, phase, y_count) = term.masks();
            let global = i_pow((y_count % 4) as u8) * term.coefficient;
            for (b, &amp) in amps.iter().enumerate() {
                let sign = if ((b as u64 & phase).count_ones() & 1) == 1 {
                    -1.0
                } else {
                    1.0
                };
                out[b ^ flip as usize] += global * sign * amp;
            }
        }
        Ok(StateVector::unnormalized(self.qubit_count, out))
    }

    /// Dense matrix realization, capped at [`DENSE_CAP`] qubits.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        self.to_dense_with_cap(DENSE_CAP)
    }

    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DMatrix<Complex64>> {
        if self.qubit_count > cap {
            return Err(Error::DenseCapExceeded {
                n: self.qubit_count,
                cap,
            });
        }
        let dim = 1usize << self.qubit_count;
        let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
        for term in &self.terms {
            let (flip, phase, y_count) = term.masks();
            let global = i_pow((y_count % 4) as u8) * term.coefficient;
            for b in 0..dim {
                let sign = if ((b as u64 & phase).count_ones() & 1) == 1 {
                    -1.0
                } else {
                    1.0
                };
                matrix[(b ^ flip as usize, b)] += global * sign;
            }
        }
        Ok(matrix)
    }

    /// Frobenius norm of `[self, other]`, computed symbolically. The reported
    /// value is the l2 norm of the commutator's Pauli coefficients (the
    /// 2^(N/2) trace factor is not folded in).
    pub fn commutator_norm(&self, other: &PauliSum) -> Result<f64> {
        if self.qubit_count != other.qubit_count {
            return Err(Error::DimensionMismatch {
                left: self.qubit_count,
                right: other.qubit_count,
            });
        }
        let mut merged: BTreeMap<Vec<(usize, Axis)>, Complex64> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let weight = a.coefficient * b.coefficient;
                let (pow_ab, factors) = mul_factors(&a.factors, &b.factors);
                let (pow_ba, _) = mul_factors(&b.factors, &a.factors);
                let delta = (i_pow(pow_ab) - i_pow(pow_ba)) * weight;
                if delta.norm() > 0.0 {
                    *merged.entry(factors).or_insert(Complex64::new(0.0, 0.0)) += delta;
                }
            }
        }
        let sum_sq: f64 = merged
            .values()
            .map(|c| c.norm_sqr())
            .filter(|&n| n >= DROP_TOLERANCE * DROP_TOLERANCE)
            .sum();
        Ok(sum_sq.sqrt())
    }
}

/// Text format used by `--dump-hamiltonian`: one term per line,
/// `coeff  X3 Y4 Z7`, identity spelled `coeff  I`.
impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for term in &self.terms {
            write!(f, "{}  ", term.coefficient)?;
            if term.is_identity() {
                write!(f, "I")?;
            } else {
                let mut first = true;
                for &(site, axis) in &term.factors {
                    if !first {
                        write!(f, " ")?;
                    }
                    write!(f, "{}{}", axis.label(), site)?;
                    first = false;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn x(site: usize) -> PauliTerm {
        PauliTerm::single(1.0, site, Axis::X)
    }
    fn z(site: usize) -> PauliTerm {
        PauliTerm::single(1.0, site, Axis::Z)
    }

    #[test]
    fn simplify_merges_like_terms() {
        let s = PauliSum::new(1, vec![x(0), x(0)]).unwrap().simplify();
        assert_eq!(s.terms().len(), 1);
        assert_abs_diff_eq!(s.terms()[0].coefficient, 2.0);
    }

    #[test]
    fn simplify_cancels_and_drops() {
        let s = PauliSum::new(1, vec![x(0), PauliTerm::single(-1.0, 0, Axis::X)])
            .unwrap()
            .simplify();
        assert!(s.terms().is_empty());

        let s = PauliSum::new(1, vec![PauliTerm::single(1e-15, 0, Axis::Z)])
            .unwrap()
            .simplify();
        assert!(s.terms().is_empty());
    }

    #[test]
    fn product_table_closed_over_all_single_site_pairs() {
        // Every product of two single-site Paulis (incl. identity) is a single
        // term with phase in {1, i, -1, -i}; checked against dense 2x2 matrices.
        let dense = |factors: &[(usize, Axis)]| {
            PauliSum::new(1, vec![PauliTerm::new(1.0, factors.to_vec()).unwrap()])
                .unwrap()
                .to_dense()
                .unwrap()
        };
        let options = [None, Some(Axis::X), Some(Axis::Y), Some(Axis::Z)];
        for &a in &options {
            for &b in &options {
                let fa: Vec<_> = a.map(|ax| (0, ax)).into_iter().collect();
                let fb: Vec<_> = b.map(|ax| (0, ax)).into_iter().collect();
                let (pow, prod) = mul_factors(&fa, &fb);
                let got = dense(&prod) * i_pow(pow);
                let want = dense(&fa) * dense(&fb);
                for i in 0..2 {
                    for j in 0..2 {
                        assert_abs_diff_eq!(got[(i, j)].re, want[(i, j)].re, epsilon = 1e-14);
                        assert_abs_diff_eq!(got[(i, j)].im, want[(i, j)].im, epsilon = 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn expectation_of_z_eigenstates() {
        let zero = StateVector::from_bitstring(1, 0).unwrap();
        let s = PauliSum::new(1, vec![z(0)]).unwrap();
        assert_abs_diff_eq!(s.expectation(&zero).unwrap(), 1.0, epsilon = 1e-14);

        let plus = StateVector::from_amplitudes(
            1,
            vec![
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        )
        .unwrap();
        assert_abs_diff_eq!(s.expectation(&plus).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn expectation_rejects_bad_inputs() {
        let s = PauliSum::new(2, vec![z(0)]).unwrap();
        let wrong_size = StateVector::from_bitstring(1, 0).unwrap();
        assert!(matches!(
            s.expectation(&wrong_size),
            Err(Error::DimensionMismatch { .. })
        ));

        let unnorm = StateVector::unnormalized(
            2,
            vec![Complex64::new(2.0, 0.0); 4],
        );
        assert!(matches!(
            s.expectation(&unnorm),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn apply_flips_and_cancels() {
        let zero = StateVector::from_bitstring(1, 0).unwrap();
        let s = PauliSum::new(1, vec![x(0)]).unwrap();
        let out = s.apply(&zero).unwrap();
        assert_abs_diff_eq!(out.amplitudes()[1].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(out.amplitudes()[0].norm(), 0.0, epsilon = 1e-14);

        // (Z0 + Z1)|01> = (-1 + 1)|01> = 0  (bit 0 set -> site 0 down)
        let s = PauliSum::new(2, vec![z(0), z(1)]).unwrap();
        let psi = StateVector::from_bitstring(2, 0b01).unwrap();
        let out = s.apply(&psi).unwrap();
        assert!(out.amplitudes().iter().all(|a| a.norm() < 1e-14));
    }

    #[test]
    fn dense_single_z_matches_convention() {
        let s = PauliSum::new(1, vec![z(0)]).unwrap();
        let m = s.to_dense().unwrap();
        assert_abs_diff_eq!(m[(0, 0)].re, 1.0);
        assert_abs_diff_eq!(m[(1, 1)].re, -1.0);
        assert_abs_diff_eq!(m[(0, 1)].norm(), 0.0);
    }

    #[test]
    fn dense_hopping_block() {
        // X0X1 + Y0Y1 has a 2 in the |01> <-> |10> block and zeros elsewhere.
        let s = PauliSum::new(
            2,
            vec![
                PauliTerm::new(1.0, vec![(0, Axis::X), (1, Axis::X)]).unwrap(),
                PauliTerm::new(1.0, vec![(0, Axis::Y), (1, Axis::Y)]).unwrap(),
            ],
        )
        .unwrap();
        let m = s.to_dense().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (1, 2) || (i, j) == (2, 1) {
                    2.0
                } else {
                    0.0
                };
                assert_abs_diff_eq!(m[(i, j)].re, want, epsilon = 1e-14);
                assert_abs_diff_eq!(m[(i, j)].im, 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn dense_cap_enforced() {
        let s = PauliSum::new(15, vec![z(0)]).unwrap();
        assert!(matches!(
            s.to_dense(),
            Err(Error::DenseCapExceeded { .. })
        ));
    }

    #[test]
    fn commutator_norm_basics() {
        let z0 = PauliSum::new(2, vec![z(0)]).unwrap();
        let z1 = PauliSum::new(2, vec![z(1)]).unwrap();
        assert_abs_diff_eq!(z0.commutator_norm(&z1).unwrap(), 0.0);

        // [X0, Z0] = -2i Y0 -> coefficient norm 2
        let x0 = PauliSum::new(2, vec![x(0)]).unwrap();
        assert_abs_diff_eq!(x0.commutator_norm(&z0).unwrap(), 2.0, epsilon = 1e-14);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_sum(n: usize) -> impl Strategy<Value = PauliSum> {
            let term = (
                -2.0f64..2.0,
                proptest::collection::vec((0..n, 0usize..4), 0..=n),
            )
                .prop_map(move |(coeff, picks)| {
                    let mut by_site = std::collections::BTreeMap::new();
                    for (site, axis) in picks {
                        let axis = match axis {
                            0 => continue,
                            1 => Axis::X,
                            2 => Axis::Y,
                            _ => Axis::Z,
                        };
                        by_site.insert(site, axis);
                    }
                    PauliTerm::new(coeff, by_site.into_iter().collect()).unwrap()
                });
            proptest::collection::vec(term, 1..6)
                .prop_map(move |terms| PauliSum::new(n, terms).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn expectation_equals_inner_with_apply(seed in 0u64..500, sum in arb_sum(3)) {
                // Real-weighted Pauli sums are Hermitian, so both routes are
                // defined: <psi|s|psi> = <psi | apply(s, psi)>.
                let psi = haar_random_state(3, seed);
                let applied = sum.apply(&psi).unwrap();
                let via_apply = psi.inner(&applied).unwrap();
                let direct = sum.expectation(&psi).unwrap();
                prop_assert!((direct - via_apply.re).abs() < 1e-12);
                prop_assert!(via_apply.im.abs() < 1e-12);
            }

            #[test]
            fn simplify_preserves_dense_matrix(sum in arb_sum(3)) {
                let before = sum.to_dense().unwrap();
                let after = sum.simplify().to_dense().unwrap();
                for (a, b) in before.iter().zip(after.iter()) {
                    prop_assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn mul_squares_projector() {
        // ((Z0 + I)/2)^2 = (Z0 + I)/2
        let s = PauliSum::new(1, vec![PauliTerm::single(0.5, 0, Axis::Z), PauliTerm::identity(0.5)])
            .unwrap();
        let sq = s.mul(&s).unwrap().simplify();
        let expect = s.simplify();
        assert_eq!(sq, expect);
    }

    fn haar_random_state(n: usize, seed: u64) -> StateVector {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| {
                // Box-Muller pairs: rotation-invariant, so the normalized
                // vector is Haar on the sphere.
                let (u1, u2): (f64, f64) = (rng.gen_range(1e-12..1.0), rng.gen_range(0.0..1.0));
                let r = (-2.0 * u1.ln()).sqrt();
                Complex64::new(
                    r * (std::f64::consts::TAU * u2).cos(),
                    r * (std::f64::consts::TAU * u2).sin(),
                )
            })
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::from_amplitudes(n, amps).unwrap()
    }

    #[test]
    fn expectation_matches_dense_quadratic_form() {
        // Haar-random psi against H(0, m=g, theta=0) at N=4: the symbolic
        // expectation must match the dense matrix-vector route to 1e-10.
        let p = crate::schwinger::SchwingerParams::new(4, 1.0, 1.0, 0.0, 0.0).unwrap();
        let h = crate::schwinger::build_hamiltonian(&p).unwrap();
        for seed in 0..5 {
            let psi = haar_random_state(4, seed);
            let symbolic = h.expectation(&psi).unwrap();
            let dense = h.to_dense().unwrap();
            let mut h_psi = vec![Complex64::new(0.0, 0.0); 16];
            for col in 0..16 {
                for row in 0..16 {
                    h_psi[row] += dense[(row, col)] * psi.amplitudes()[col];
                }
            }
            let quad: Complex64 = psi
                .amplitudes()
                .iter()
                .zip(&h_psi)
                .map(|(a, b)| a.conj() * b)
                .sum();
            assert_abs_diff_eq!(symbolic, quad.re, epsilon = 1e-10);
            assert!(quad.im.abs() < 1e-10);
        }
    }

    #[test]
    fn apply_reproduces_eigenvector_action() {
        // H |psi_gs> = E_min |psi_gs> for the dense-diagonalization ground
        // state at N=4; residual below 1e-8.
        let p = crate::schwinger::SchwingerParams::new(4, 1.0, 1.0, 0.0, 0.0).unwrap();
        let h = crate::schwinger::build_hamiltonian(&p).unwrap();
        let dense = h.to_dense().unwrap().map(|v| v.re);
        let eigen = dense.symmetric_eigen();
        let ground_idx = (0..eigen.eigenvalues.len())
            .min_by(|&a, &b| {
                eigen.eigenvalues[a]
                    .partial_cmp(&eigen.eigenvalues[b])
                    .unwrap()
            })
            .unwrap();
        let e_min = eigen.eigenvalues[ground_idx];
        let amps: Vec<Complex64> = eigen
            .eigenvectors
            .column(ground_idx)
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let psi = StateVector::from_amplitudes(4, amps).unwrap();
        let h_psi = h.apply(&psi).unwrap();
        let mut residual: f64 = 0.0;
        for (hp, a) in h_psi.amplitudes().iter().zip(psi.amplitudes()) {
            residual = residual.max((hp - a * e_min).norm());
        }
        assert!(residual < 1e-8, "residual {residual}");
    }

    #[test]
    fn display_format() {
        let s = PauliSum::new(
            8,
            vec![
                PauliTerm::identity(0.25),
                PauliTerm::new(-1.5, vec![(3, Axis::X), (4, Axis::Y), (7, Axis::Z)]).unwrap(),
            ],
        )
        .unwrap();
        let text = s.to_string();
        assert_eq!(text, "0.25  I\n-1.5  X3 Y4 Z7\n");
    }
}
