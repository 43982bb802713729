//! The two-site contact-interaction Hamiltonian
//!
//! ```text
//! H = 2ε₀·I + Δ(σx⊗I + I⊗σx) + U σz⊗σz
//! ```
//!
//! with `σz|L⟩ = +|L⟩` and `σx|L⟩ = |R⟩`, so that repulsive `U > 0` raises the
//! doubly occupied configurations `|LL⟩` and `|RR⟩`.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The energy triple `(ε₀, Δ, U)`, all in eV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct HamiltonianParams {
    epsilon0: f64,
    delta: f64,
    u: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(rename = "epsilon0_eV", default)]
    epsilon0: f64,
    #[serde(rename = "delta_eV")]
    delta: f64,
    #[serde(rename = "u_eV")]
    u: f64,
}

impl TryFrom<RawParams> for HamiltonianParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.epsilon0, raw.delta, raw.u)
    }
}

impl From<HamiltonianParams> for RawParams {
    fn from(p: HamiltonianParams) -> Self {
        RawParams {
            epsilon0: p.epsilon0,
            delta: p.delta,
            u: p.u,
        }
    }
}

impl HamiltonianParams {
    /// Validates and builds a parameter set. `delta` must be non-negative; its
    /// sign is only a basis-phase convention.
    pub fn new(epsilon0: f64, delta: f64, u: f64) -> Result<Self> {
        for (name, value) in [("epsilon0", epsilon0), ("delta", delta), ("u", u)] {
            if !value.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite, got {value}")));
            }
        }
        if delta < 0.0 {
            return Err(Error::InvalidInput(format!(
                "tunneling strength delta must be >= 0, got {delta}"
            )));
        }
        Ok(Self { epsilon0, delta, u })
    }

    /// Shorthand for `new(0.0, delta, u)`.
    pub fn with_zero_offset(delta: f64, u: f64) -> Result<Self> {
        Self::new(0.0, delta, u)
    }

    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `U/Δ`; infinite when `Δ = 0`.
    pub fn ratio(&self) -> f64 {
        self.u / self.delta
    }

    /// The Ψ⁺/Φ⁺ mixed pair sits at `±√(U² + 4Δ²)` relative to `2ε₀`.
    pub fn mixed_pair_energy(&self) -> f64 {
        self.u.hypot(2.0 * self.delta)
    }

    /// `E₄ − E₃ = E₂ − E₁ = √(U² + 4Δ²) − |U|`, evaluated without
    /// cancellation.
    pub fn slow_gap(&self) -> f64 {
        let w = self.mixed_pair_energy();
        if w == 0.0 {
            return 0.0;
        }
        4.0 * self.delta * self.delta / (w + self.u.abs())
    }
}

/// A 4×4 Hermitian matrix over `(|LL⟩, |LR⟩, |RL⟩, |RR⟩)` in eV.
///
/// Stored as a scalar shift plus a traceless part. The shift commutes with
/// everything, so keeping it apart means a large `ε₀` never swamps a tiny `Δ`
/// or `U` in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix4 {
    shift: f64,
    centered: Matrix4<C64>,
}

impl HermitianMatrix4 {
    /// Relative tolerance on `|Hᵢⱼ − conj(Hⱼᵢ)|` accepted by [`Self::from_entries`].
    pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

    /// Accepts an arbitrary matrix that is Hermitian to within
    /// `1e-12·‖H‖_F`, then symmetrizes it exactly.
    pub fn from_entries(entries: Matrix4<C64>) -> Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        let scale = entries.norm();
        let tolerance = Self::HERMITIAN_TOLERANCE * scale;
        let mut asymmetry: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                asymmetry = asymmetry.max((entries[(i, j)] - entries[(j, i)].conj()).norm());
            }
        }
        if asymmetry > tolerance {
            return Err(Error::NonHermitian {
                asymmetry,
                tolerance,
            });
        }
        let sym = (entries + entries.adjoint()).map(|z| z * 0.5);
        let shift = sym.trace().re / 4.0;
        let mut centered = sym;
        for i in 0..4 {
            centered[(i, i)] = C64::new(centered[(i, i)].re - shift, 0.0);
        }
        Ok(Self { shift, centered })
    }

    /// The scalar part `tr(H)/4`.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `H − shift·I`.
    pub fn centered(&self) -> &Matrix4<C64> {
        &self.centered
    }

    /// The full matrix `centered + shift·I`.
    pub fn to_matrix(&self) -> Matrix4<C64> {
        let mut m = self.centered;
        for i in 0..4 {
            m[(i, i)] += C64::new(self.shift, 0.0);
        }
        m
    }

    /// Frobenius norm of the full matrix.
    pub fn norm(&self) -> f64 {
        self.to_matrix().norm()
    }
}

/// Builds `2ε₀·I + Δ(σx⊗I + I⊗σx) + U σz⊗σz`.
pub fn build_hamiltonian(params: &HamiltonianParams) -> HermitianMatrix4 {
    let d = C64::new(params.delta, 0.0);
    let u = C64::new(params.u, 0.0);
    let z = C64::new(0.0, 0.0);
    // σx⊗I couples LL↔RL and LR↔RR; I⊗σx couples LL↔LR and RL↔RR.
    #[rustfmt::skip]
    let centered = Matrix4::new(
        u, d, d, z,
        d, -u, z, d,
        d, z, -u, d,
        z, d, d, u,
    );
    HermitianMatrix4 {
        shift: 2.0 * params.epsilon0,
        centered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(m: &Matrix4<C64>) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[(i, j)].im, 0.0);
                out[i][j] = m[(i, j)].re;
            }
        }
        out
    }

    #[test]
    fn interaction_only_is_diagonal() {
        let h = build_hamiltonian(&HamiltonianParams::new(0.0, 0.0, 1.0).unwrap());
        let m = real(&h.to_matrix());
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i != j {
                    0.0
                } else if i == 0 || i == 3 {
                    1.0
                } else {
                    -1.0
                };
                assert_eq!(m[i][j], expected);
            }
        }
    }

    #[test]
    fn tunneling_only_couples_single_flips() {
        let h = build_hamiltonian(&HamiltonianParams::new(0.0, 1.0, 0.0).unwrap());
        let m = real(&h.to_matrix());
        let coupled = [(0, 1), (0, 2), (1, 3), (2, 3)];
        for i in 0..4 {
            assert_eq!(m[i][i], 0.0);
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let expected = if coupled.contains(&(i.min(j), i.max(j))) { 1.0 } else { 0.0 };
                assert_eq!(m[i][j], expected, "({i},{j})");
            }
        }
    }

    #[test]
    fn offset_is_a_uniform_shift() {
        let shifted = build_hamiltonian(&HamiltonianParams::new(5.0, 0.7, -1.3).unwrap());
        let base = build_hamiltonian(&HamiltonianParams::new(0.0, 0.7, -1.3).unwrap());
        let expected = base.to_matrix() + Matrix4::identity().map(|z: C64| z * 10.0);
        assert_eq!(shifted.to_matrix(), expected);
        assert_eq!(shifted.centered(), base.centered());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(HamiltonianParams::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(HamiltonianParams::new(0.0, f64::INFINITY, 1.0).is_err());
        assert!(HamiltonianParams::new(0.0, -0.1, 1.0).is_err());
        assert!(HamiltonianParams::new(0.0, 0.0, -3.0).is_ok());
    }

    #[test]
    fn from_entries_checks_hermiticity() {
        let mut m = Matrix4::<C64>::identity();
        m[(0, 1)] = C64::new(0.5, 0.25);
        assert!(matches!(
            HermitianMatrix4::from_entries(m),
            Err(Error::NonHermitian { .. })
        ));
        m[(1, 0)] = C64::new(0.5, -0.25);
        let h = HermitianMatrix4::from_entries(m).unwrap();
        assert_eq!(h.shift(), 1.0);
        assert_eq!(h.to_matrix(), m);
    }

    #[test]
    fn slow_gap_matches_naive_difference() {
        let p = HamiltonianParams::new(0.0, 1.0, 4.0).unwrap();
        assert!((p.slow_gap() - (20f64.sqrt() - 4.0)).abs() < 1e-15);
        assert_eq!(HamiltonianParams::new(0.0, 0.0, 2.0).unwrap().slow_gap(), 0.0);
    }

    #[test]
    fn params_serde_round_trip() {
        let p = HamiltonianParams::new(0.25, 1.0, -4.0).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: HamiltonianParams = serde_json::from_str(&text).unwrap();
        assert_eq!(p, back);
        let bad = r#"{"delta_eV": -1.0, "u_eV": 1.0}"#;
        assert!(serde_json::from_str::<HamiltonianParams>(bad).is_err());
    }
}
