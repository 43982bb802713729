//! The positional product basis and the four Bell states.
//!
//! Amplitude vectors are always ordered `(|LL⟩, |LR⟩, |RL⟩, |RR⟩)`, where the
//! first letter labels particle 1 and the second particle 2.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::Vector4;
use num_complex::Complex64 as C64;

use crate::spectrum::EigenSystem;

/// One of the four positional product states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Configuration {
    LL,
    LR,
    RL,
    RR,
}

impl Configuration {
    pub const ALL: [Configuration; 4] = [Self::LL, Self::LR, Self::RL, Self::RR];

    /// Position of this configuration in amplitude vectors.
    pub fn index(self) -> usize {
        match self {
            Self::LL => 0,
            Self::LR => 1,
            Self::RL => 2,
            Self::RR => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::LL => "LL",
            Self::LR => "LR",
            Self::RL => "RL",
            Self::RR => "RR",
        }
    }

    pub fn vector(self) -> Vector4<C64> {
        let mut v = Vector4::zeros();
        v[self.index()] = C64::new(1.0, 0.0);
        v
    }
}

/// A maximally entangled Bell state.
///
/// The variants are declared in the order in which they are paired with the
/// ascending eigenstates of a repulsive (`U > 0`) Hamiltonian:
/// `ES₁ ↔ Ψ⁺`, `ES₂ ↔ Ψ⁻`, `ES₃ ↔ Φ⁻`, `ES₄ ↔ Φ⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellState {
    /// `(|LR⟩ + |RL⟩)/√2`
    PsiPlus,
    /// `(|LR⟩ − |RL⟩)/√2`
    PsiMinus,
    /// `(|LL⟩ − |RR⟩)/√2`
    PhiMinus,
    /// `(|LL⟩ + |RR⟩)/√2`
    PhiPlus,
}

impl BellState {
    /// Pairing order with the eigenstates `ES₁..ES₄`.
    pub const PAIRING: [BellState; 4] = [
        Self::PsiPlus,
        Self::PsiMinus,
        Self::PhiMinus,
        Self::PhiPlus,
    ];

    pub fn amplitudes(self) -> [f64; 4] {
        let s = FRAC_1_SQRT_2;
        match self {
            Self::PsiPlus => [0.0, s, s, 0.0],
            Self::PsiMinus => [0.0, s, -s, 0.0],
            Self::PhiMinus => [s, 0.0, 0.0, -s],
            Self::PhiPlus => [s, 0.0, 0.0, s],
        }
    }

    pub fn vector(self) -> Vector4<C64> {
        Vector4::from_iterator(self.amplitudes().into_iter().map(|a| C64::new(a, 0.0)))
    }

    /// Sign `s` such that `α_LL α_RR − α_LR α_RL = ½ Σ sᵢ aᵢ²` for a state
    /// `Σ aᵢ |Bellᵢ⟩`.
    pub fn parity(self) -> f64 {
        match self {
            Self::PsiPlus | Self::PhiMinus => -1.0,
            Self::PsiMinus | Self::PhiPlus => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PsiPlus => "Psi+",
            Self::PsiMinus => "Psi-",
            Self::PhiMinus => "Phi-",
            Self::PhiPlus => "Phi+",
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The Bell basis as an ordered array of vectors, in [`BellState::PAIRING`]
/// order.
pub fn bell_basis() -> [Vector4<C64>; 4] {
    BellState::PAIRING.map(BellState::vector)
}

/// Squared overlaps `|⟨Bellᵢ|ESᵢ⟩|²` with the pairing
/// `(ES₁, Ψ⁺), (ES₂, Ψ⁻), (ES₃, Φ⁻), (ES₄, Φ⁺)`.
///
/// The pairing is the one realized by repulsive interaction; for `U < 0` the
/// Φ and Ψ pairs swap places in the spectrum and these numbers stop being
/// meaningful.
pub fn bell_fidelity(es: &EigenSystem) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, bell) in BellState::PAIRING.iter().enumerate() {
        let overlap = bell.vector().dotc(es.vector(i));
        out[i] = overlap.norm_sqr().clamp(0.0, 1.0);
    }
    out
}
