//! Statevector simulation of regularized variational quantum imaginary-time
//! evolution (rVQITE) for the lattice Schwinger model with a topological
//! theta-term and chemical potential.
//!
//! The crate is organized around the stages of a run:
//!
//! - [`pauli`]: Pauli-string operators, expectation values, dense realization.
//! - [`statevector`]: dense amplitudes, parameterized gates, derivative states.
//! - [`schwinger`]: the spin Hamiltonian, charge operator, and observables.
//! - [`ansatz`]: Hamiltonian variational ansatz and charge-sector initial states.
//! - [`vqite`]: McLachlan system assembly, the truncated-eigenvalue update,
//!   pseudo-inverse and gradient baselines, and the imaginary-time loop.
//! - [`exact`]: dense diagonalization oracle, charge-sector energies, Ratio.
//! - [`boundary`]: phase-boundary roots of `mu - (E0^(q+1) - E0^(q))` by bisection.

pub mod ansatz;
pub mod boundary;
pub mod error;
pub mod exact;
pub mod pauli;
pub mod schwinger;
pub mod statevector;
pub mod vqite;

pub use error::{Error, Result};
