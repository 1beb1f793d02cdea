//! Classical oracle: dense diagonalization of the model Hamiltonian, charge-
//! sector spectra E_n^(q), extremal eigenvalues, and the Ratio metric.
//!
//! Computational basis states are Q eigenstates (q = N/2 - popcount), so
//! sector restriction is plain basis filtering.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::schwinger::{build_hamiltonian, SchwingerParams};

/// One charge-sector energy level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorEnergy {
    pub q: i64,
    /// Level index within the sector, 0 = lowest.
    pub level: usize,
    /// Energy in units of g.
    pub energy: f64,
    pub params: SchwingerParams,
}

/// Ratio = (E_max - E_QA) / (E_max - E_min); 1 means the exact ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioResult {
    pub e_max: f64,
    pub e_min: f64,
    pub e_qa: f64,
    pub ratio: f64,
}

const N_CAP: usize = 14;

/// Charge of a computational basis state under the crate's sign convention.
pub fn basis_charge(n_sites: usize, bits: usize) -> i64 {
    n_sites as i64 / 2 - bits.count_ones() as i64
}

fn dense_real(h: &PauliSum) -> Result<DMatrix<f64>> {
    let dense = h.to_dense()?;
    let mut max_im: f64 = 0.0;
    for v in dense.iter() {
        max_im = max_im.max(v.im.abs());
    }
    if max_im > 1e-12 {
        return Err(Error::ImaginaryResidual { residual: max_im });
    }
    Ok(dense.map(|v| v.re))
}

fn sorted_symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// All 2^N eigenvalues of H(p), ascending, from one dense eigensolve of the
/// whole matrix (no sector shortcut; this is the reference route).
pub fn full_spectrum(p: &SchwingerParams) -> Result<Vec<f64>> {
    p.validate()?;
    if p.n_sites > N_CAP {
        return Err(Error::DenseCapExceeded {
            n: p.n_sites,
            cap: N_CAP,
        });
    }
    let h = build_hamiltonian(p)?;
    Ok(sorted_symmetric_eigenvalues(dense_real(&h)?))
}

/// Eigenvalues of H(p) restricted to the charge-q sector, ascending.
pub fn sector_spectrum(p: &SchwingerParams, q: i64) -> Result<Vec<f64>> {
    p.validate()?;
    if p.n_sites > N_CAP {
        return Err(Error::DenseCapExceeded {
            n: p.n_sites,
            cap: N_CAP,
        });
    }
    if q.unsigned_abs() as usize > p.n_sites / 2 {
        return Err(Error::ChargeCapacity { q, n: p.n_sites });
    }
    let n = p.n_sites;
    let dim = 1usize << n;
    let basis: Vec<usize> = (0..dim).filter(|&b| basis_charge(n, b) == q).collect();
    if basis.is_empty() {
        return Err(Error::EmptySector { q, n });
    }
    let mut position = vec![usize::MAX; dim];
    for (k, &b) in basis.iter().enumerate() {
        position[b] = k;
    }

    let h = build_hamiltonian(p)?;
    let mut block = DMatrix::<f64>::zeros(basis.len(), basis.len());
    for term in h.terms() {
        let (flip, phase, y_count) = term_masks_public(term);
        // Real-weighted Hermitian sums carry Y factors in pairs.
        let global = match y_count % 4 {
            0 => 1.0,
            2 => -1.0,
            _ => {
                return Err(Error::ImaginaryCoefficient {
                    residual: term.coefficient.abs(),
                })
            }
        } * term.coefficient;
        for (col, &b) in basis.iter().enumerate() {
            let target = b ^ flip as usize;
            let row = position[target];
            if row == usize::MAX {
                continue;
            }
            let sign = if ((b as u64 & phase).count_ones() & 1) == 1 {
                -1.0
            } else {
                1.0
            };
            block[(row, col)] += global * sign;
        }
    }
    Ok(sorted_symmetric_eigenvalues(block))
}

fn term_masks_public(term: &crate::pauli::PauliTerm) -> (u64, u64, u32) {
    use crate::pauli::Axis;
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

/// Lowest level of the charge-q sector.
pub fn sector_lowest(p: &SchwingerParams, q: i64) -> Result<SectorEnergy> {
    let spectrum = sector_spectrum(p, q)?;
    Ok(SectorEnergy {
        q,
        level: 0,
        energy: spectrum[0],
        params: *p,
    })
}

/// Ratio from spectrum extremes; errors on a degenerate spectrum or an
/// energy outside the spectral range beyond 1e-8 slack.
pub fn ratio_from_extremes(e_min: f64, e_max: f64, e_qa: f64) -> Result<RatioResult> {
    if e_max == e_min {
        return Err(Error::DegenerateSpectrum { energy: e_max });
    }
    let slack = 1e-8 * (e_max - e_min).abs().max(1.0);
    if e_qa < e_min - slack || e_qa > e_max + slack {
        return Err(Error::InvalidConfig(format!(
            "energy {e_qa} outside spectral range [{e_min}, {e_max}]"
        )));
    }
    Ok(RatioResult {
        e_max,
        e_min,
        e_qa,
        ratio: (e_max - e_qa) / (e_max - e_min),
    })
}

/// Ratio for a quantum-algorithm energy against the dense spectrum of H(p).
pub fn ratio(p: &SchwingerParams, e_qa: f64) -> Result<RatioResult> {
    let spectrum = full_spectrum(p)?;
    ratio_from_extremes(spectrum[0], *spectrum.last().unwrap(), e_qa)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct ParamsKey {
    n: usize,
    a_g: u64,
    m: u64,
    theta: u64,
    mu: u64,
}

impl ParamsKey {
    fn of(p: &SchwingerParams) -> Self {
        Self {
            n: p.n_sites,
            a_g: p.a_g.to_bits(),
            m: p.m_over_g.to_bits(),
            theta: p.theta.to_bits(),
            mu: p.mu_over_g.to_bits(),
        }
    }
}

/// Memoizing oracle front-end. Safe for concurrent readers; insertions take
/// the write lock briefly.
#[derive(Debug, Default)]
pub struct Oracle {
    sector: RwLock<HashMap<(ParamsKey, i64), Arc<Vec<f64>>>>,
    full: RwLock<HashMap<ParamsKey, Arc<Vec<f64>>>>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sector_spectrum(&self, p: &SchwingerParams, q: i64) -> Result<Arc<Vec<f64>>> {
        let key = (ParamsKey::of(p), q);
        if let Some(hit) = self.sector.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let spectrum = Arc::new(sector_spectrum(p, q)?);
        self.sector
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&spectrum));
        Ok(spectrum)
    }

    pub fn sector_lowest(&self, p: &SchwingerParams, q: i64) -> Result<SectorEnergy> {
        let spectrum = self.sector_spectrum(p, q)?;
        Ok(SectorEnergy {
            q,
            level: 0,
            energy: spectrum[0],
            params: *p,
        })
    }

    pub fn full_spectrum(&self, p: &SchwingerParams) -> Result<Arc<Vec<f64>>> {
        let key = ParamsKey::of(p);
        if let Some(hit) = self.full.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let spectrum = Arc::new(full_spectrum(p)?);
        self.full
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| Arc::clone(&spectrum));
        Ok(spectrum)
    }

    /// (E_min, E_max) of H(p) assembled from the charge-sector spectra (the
    /// blocks partition the full spectrum; the equality with the dense route
    /// is a tested invariant).
    pub fn extremal_energies(&self, p: &SchwingerParams) -> Result<(f64, f64)> {
        let half = p.n_sites as i64 / 2;
        let mut e_min = f64::INFINITY;
        let mut e_max = f64::NEG_INFINITY;
        for q in -half..=half {
            let spectrum = self.sector_spectrum(p, q)?;
            e_min = e_min.min(spectrum[0]);
            e_max = e_max.max(*spectrum.last().unwrap());
        }
        Ok((e_min, e_max))
    }

    pub fn ratio(&self, p: &SchwingerParams, e_qa: f64) -> Result<RatioResult> {
        let (e_min, e_max) = self.extremal_energies(p)?;
        ratio_from_extremes(e_min, e_max, e_qa)
    }
}
