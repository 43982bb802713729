//! Eigenvalues and eigenvectors of the two-particle Hamiltonian.
//!
//! Two independent routes produce an [`EigenSystem`]:
//!
//! * [`closed_form_spectrum`] block-diagonalizes in the Bell basis. Ψ⁻ and Φ⁻
//!   are exact eigenvectors at `∓U`; Ψ⁺ and Φ⁺ mix through the 2×2 block
//!   `[[−U, 2Δ], [2Δ, U]]` with eigenvalues `±√(U² + 4Δ²)`.
//! * [`diagonalize`] runs a cyclic Jacobi solver on any Hermitian 4×4 matrix.
//!
//! Both routes end in the same canonicalization so their output can be
//! compared vector by vector:
//!
//! 1. eigenpairs are sorted by ascending energy;
//! 2. inside a degenerate cluster (gap below `1e-10` of the spectral radius)
//!    the vectors are replaced by projections of the Bell states onto the
//!    cluster subspace, taken in the order Ψ⁺, Ψ⁻, Φ⁻, Φ⁺ and orthonormalized;
//! 3. every vector is rephased so that its largest-magnitude component (the
//!    first one, on ties) is real and positive.

use nalgebra::Vector4;
use num_complex::Complex64 as C64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::bell::{bell_basis, BellState};
use crate::constants::HBAR_EV_S;
use crate::error::Result;
use crate::hamiltonian::{HamiltonianParams, HermitianMatrix4};
use crate::io::Sci;
use crate::jacobi;

/// Relative eigenvalue gap below which two levels are treated as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Magnitudes within this relative distance of the maximum count as ties when
/// picking the component that fixes a vector's phase.
const PHASE_TIE_TOLERANCE: f64 = 1e-9;

/// Ascending energies `E₁ ≤ … ≤ E₄` with orthonormal eigenvectors `|ESᵢ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    offset: f64,
    relative: [f64; 4],
    vectors: [Vector4<C64>; 4],
}

impl EigenSystem {
    /// Energies in eV.
    pub fn energies(&self) -> [f64; 4] {
        self.relative.map(|e| e + self.offset)
    }

    /// Energies measured from the scalar shift `tr(H)/4` (i.e. from `2ε₀`).
    pub fn relative_energies(&self) -> [f64; 4] {
        self.relative
    }

    /// The scalar shift `tr(H)/4` in eV.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `|ESᵢ⟩` for `i` in `0..4` (zero-based).
    pub fn vector(&self, i: usize) -> &Vector4<C64> {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vector4<C64>; 4] {
        &self.vectors
    }

    /// `Eⱼ − Eᵢ` in eV (zero-based indices).
    pub fn gap(&self, i: usize, j: usize) -> f64 {
        self.relative[j] - self.relative[i]
    }

    pub fn gaps(&self) -> SpectralGaps {
        spectral_gaps(self)
    }

    /// Sign of `2(v_LL v_RR − v_LR v_RL)` for each eigenvector: the Bell parity
    /// of the state it is closest to (−1 for Ψ⁺ and Φ⁻, +1 for Ψ⁻ and Φ⁺).
    pub fn bell_parities(&self) -> [f64; 4] {
        self.vectors.map(|v| {
            let q = (v[0] * v[3] - v[1] * v[2]) * 2.0;
            if q.re >= 0.0 {
                1.0
            } else {
                -1.0
            }
        })
    }

    /// Largest `‖(H − s)v − (E − s)v‖` over the four eigenpairs, where `s` is
    /// the scalar shift of `h`.
    pub fn max_residual(&self, h: &HermitianMatrix4) -> f64 {
        let shift_delta = self.offset - h.shift();
        (0..4)
            .map(|k| {
                let v = &self.vectors[k];
                let lambda = C64::new(self.relative[k] + shift_delta, 0.0);
                (h.centered() * v - v * lambda).norm()
            })
            .fold(0.0, f64::max)
    }

    fn canonical(offset: f64, mut pairs: Vec<(f64, Vector4<C64>)>) -> Self {
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let radius = pairs.iter().map(|p| p.0.abs()).fold(0.0, f64::max);

        let mut start = 0;
        while start < pairs.len() {
            let mut end = start + 1;
            while end < pairs.len()
                && pairs[end].0 - pairs[end - 1].0 <= DEGENERACY_TOLERANCE * radius
            {
                end += 1;
            }
            if end - start > 1 {
                let span: Vec<_> = pairs[start..end].iter().map(|p| p.1).collect();
                for (slot, v) in pairs[start..end].iter_mut().zip(symmetry_adapted(&span)) {
                    slot.1 = v;
                }
            }
            start = end;
        }

        let mut relative = [0.0; 4];
        let mut vectors = [Vector4::zeros(); 4];
        for (k, (e, mut v)) in pairs.into_iter().enumerate() {
            fix_phase(&mut v);
            relative[k] = e;
            vectors[k] = v;
        }
        Self {
            offset,
            relative,
            vectors,
        }
    }
}

/// Orthonormal basis of `span` built from projected Bell states.
fn symmetry_adapted(span: &[Vector4<C64>]) -> Vec<Vector4<C64>> {
    let project = |target: &Vector4<C64>, onto: &[Vector4<C64>]| -> Vector4<C64> {
        onto.iter()
            .fold(Vector4::zeros(), |acc, s| acc + s * s.dotc(target))
    };
    let mut chosen: Vec<Vector4<C64>> = Vec::with_capacity(span.len());
    let candidates = bell_basis().into_iter().chain(span.iter().copied());
    for threshold in [0.25, 1e-6] {
        for candidate in candidates.clone() {
            if chosen.len() == span.len() {
                return chosen;
            }
            let mut p = project(&candidate, span);
            p -= project(&p, &chosen);
            let n = p.norm();
            if n * n >= threshold {
                chosen.push(p / C64::new(n, 0.0));
            }
        }
    }
    chosen
}

fn fix_phase(v: &mut Vector4<C64>) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= (1.0 - PHASE_TIE_TOLERANCE) * max)
        .unwrap_or(0);
    let magnitude = v[pivot].norm();
    let rotation = v[pivot].conj() / magnitude;
    *v *= rotation;
    v[pivot] = C64::new(magnitude, 0.0);
}

/// Numeric eigendecomposition of a Hermitian 4×4 matrix (cyclic Jacobi, at
/// most 100 sweeps, off-diagonal tolerance `1e-14·‖H‖`).
pub fn diagonalize(h: &HermitianMatrix4) -> Result<EigenSystem> {
    let (values, vectors) = jacobi::hermitian_eigen(h.centered())?;
    let pairs = (0..4)
        .map(|k| (values[k], vectors.column(k).into_owned()))
        .collect();
    Ok(EigenSystem::canonical(h.shift(), pairs))
}

/// Analytic spectrum: `{2ε₀ − W, 2ε₀ − U, 2ε₀ + U, 2ε₀ + W}` with
/// `W = √(U² + 4Δ²)`. The mixed pair is `cos θ Ψ⁺ − sin θ Φ⁺` (at `−W`) and
/// `sin θ Ψ⁺ + cos θ Φ⁺` (at `+W`) with `tan 2θ = 2Δ/U`.
pub fn closed_form_spectrum(params: &HamiltonianParams) -> EigenSystem {
    let w = params.mixed_pair_energy();
    let theta = 0.5 * (2.0 * params.delta()).atan2(params.u());
    let (sin, cos) = theta.sin_cos();
    let psi_plus = BellState::PsiPlus.vector();
    let phi_plus = BellState::PhiPlus.vector();
    let c = |x: f64| C64::new(x, 0.0);
    let pairs = vec![
        (-w, psi_plus * c(cos) - phi_plus * c(sin)),
        (-params.u(), BellState::PsiMinus.vector()),
        (params.u(), BellState::PhiMinus.vector()),
        (w, psi_plus * c(sin) + phi_plus * c(cos)),
    ];
    EigenSystem::canonical(2.0 * params.epsilon0(), pairs)
}

/// The true spectrum paired with exact Bell eigenvectors: the idealized
/// strong-interaction limit in which every eigenstate is a Bell state.
///
/// Each closed-form eigenvector is replaced by the Bell state it overlaps
/// most, with no Bell state used twice.
pub fn bell_limit_eigensystem(params: &HamiltonianParams) -> EigenSystem {
    let exact = closed_form_spectrum(params);
    let mut used = [false; 4];
    let mut vectors = [Vector4::zeros(); 4];
    for (k, slot) in vectors.iter_mut().enumerate() {
        let (best, _) = BellState::PAIRING
            .iter()
            .enumerate()
            .filter(|(b, _)| !used[*b])
            .map(|(b, bell)| (b, bell.vector().dotc(exact.vector(k)).norm()))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 + 1e-12 { x } else { acc });
        used[best] = true;
        *slot = BellState::PAIRING[best].vector();
    }
    EigenSystem {
        offset: exact.offset,
        relative: exact.relative,
        vectors,
    }
}

/// All six pairwise transition frequencies in rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralGaps {
    /// `(E₄ − E₃)/ħ`
    pub omega_a: f64,
    /// `(E₂ − E₁)/ħ`
    pub omega_b: f64,
    /// `(E₃ − E₁)/ħ`
    pub omega_fast: f64,
    /// `(E₄ − E₂)/ħ`
    pub omega_42: f64,
    /// `(E₃ − E₂)/ħ`
    pub omega_32: f64,
    /// `(E₄ − E₁)/ħ`
    pub omega_41: f64,
}

pub fn spectral_gaps(es: &EigenSystem) -> SpectralGaps {
    let w = |i: usize, j: usize| (es.gap(i, j) / HBAR_EV_S).max(0.0);
    SpectralGaps {
        omega_a: w(2, 3),
        omega_b: w(0, 1),
        omega_fast: w(0, 2),
        omega_42: w(1, 3),
        omega_32: w(1, 2),
        omega_41: w(0, 3),
    }
}

impl Serialize for SpectralGaps {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectralGaps", 6)?;
        st.serialize_field("omega_a", &Sci(self.omega_a))?;
        st.serialize_field("omega_b", &Sci(self.omega_b))?;
        st.serialize_field("omega_fast", &Sci(self.omega_fast))?;
        st.serialize_field("omega_42", &Sci(self.omega_42))?;
        st.serialize_field("omega_32", &Sci(self.omega_32))?;
        st.serialize_field("omega_41", &Sci(self.omega_41))?;
        st.end()
    }
}

#[derive(serde::Serialize)]
struct ComplexDoc {
    re: Sci,
    im: Sci,
}

impl Serialize for EigenSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let energies: Vec<Sci> = self.energies().into_iter().map(Sci).collect();
        let vectors: Vec<Vec<ComplexDoc>> = self
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|z| ComplexDoc {
                        re: Sci(z.re),
                        im: Sci(z.im),
                    })
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("EigenSystem", 3)?;
        st.serialize_field("energies_eV", &energies)?;
        st.serialize_field("vectors", &vectors)?;
        st.serialize_field("gaps_rad_per_s", &self.gaps())?;
        st.end()
    }
}
