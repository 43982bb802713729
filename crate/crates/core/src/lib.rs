//! Coherent dynamics of two interacting particles in a double well.
//!
//! Each particle sits in the left or right well, so the pair is a two-qubit
//! system on the basis `|LL⟩, |LR⟩, |RL⟩, |RR⟩` with Hamiltonian
//!
//! ```text
//! H = 2ε₀·I + Δ(σx⊗I + I⊗σx) + U σz⊗σz
//! ```
//!
//! When the contact interaction `U` dominates the tunneling `Δ` the
//! eigenstates approach the four Bell states, and the squared concurrence of
//! an evolving state turns into a fast carrier under a slow envelope. That
//! envelope follows the Shannon entropy of the four occupation probabilities.
//! This crate computes the spectrum, evolves states exactly, and measures how
//! closely the two curves track each other.
//!
//! ```
//! use bellbeat::{build_hamiltonian, diagonalize, HamiltonianParams};
//!
//! let params = HamiltonianParams::new(0.0, 1.0, 4.0)?;
//! let es = diagonalize(&build_hamiltonian(&params))?;
//! let e = es.energies();
//! assert!((e[0] + 20f64.sqrt()).abs() < 1e-12);
//! assert!((e[3] - e[2] - (e[1] - e[0])).abs() < 1e-12);
//! # Ok::<(), bellbeat::Error>(())
//! ```
//!
//! The guide in `book/` walks through the model, the measures and the
//! command-line tool; its code blocks are compiled as doc-tests of this
//! crate.

pub mod bell;
pub mod cli;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod hamiltonian;
pub mod io;
mod jacobi;
pub mod measures;
pub mod series;
pub mod spectrum;

pub use bell::{bell_basis, bell_fidelity, BellState, Configuration};
pub use dynamics::{
    basis_probabilities, bell_limit_probabilities, evolve, expand_initial_state, trajectory, trajectory_in,
    BasisProbabilities, ExpansionCoefficients, TimeGrid, Trajectory, TwoQubitState,
};
pub use error::{Error, Result};
pub use experiments::{
    analyze, characteristic_timescale, preset, ratio_sweep, run_figure, table1, FigureId, FigureScenario, Preset,
};
pub use hamiltonian::{build_hamiltonian, HamiltonianParams, HermitianMatrix4};
pub use measures::{concurrence, shannon_entropy};
pub use series::TimeSeries;
pub use spectrum::{bell_limit_eigensystem, closed_form_spectrum, diagonalize, spectral_gaps, EigenSystem, SpectralGaps};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/measures.md")]
    mod measures {}
    #[doc = include_str!("../../../book/src/envelope.md")]
    mod envelope {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
