//! `|C(t)|²` as a constant plus six cosines, one per pair of levels.
//!
//! Writing the evolved state as `Σ aᵢ |ESᵢ⟩` with `aᵢ = cᵢ e^{−iEᵢt/ħ}` and
//! eigenvectors equal to Bell states, the concurrence is `|Σ sᵢ aᵢ²|` with
//! Bell parities `sᵢ = ±1`. Squaring gives, for real `cᵢ`,
//!
//! ```text
//! |C|² = Σᵢ cᵢ⁴ + Σ_{i<j} 2 sᵢ sⱼ cᵢ² cⱼ² cos[2(Eⱼ − Eᵢ)t/ħ]
//! ```
//!
//! The two pairs inside the Ψ and Φ doublets oscillate slowly (the low band);
//! the four pairs that cross between doublets oscillate near `2·2U/ħ` (the
//! high band).

use crate::constants::HBAR_EV_S;
use crate::dynamics::ExpansionCoefficients;
use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::spectrum::EigenSystem;

/// Frequency band of a pair term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Band {
    Low,
    High,
}

/// How each pair term is weighted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairWeighting {
    /// `2 sᵢ sⱼ cᵢ² cⱼ²`: what squaring the Bell-limit concurrence gives.
    Signed,
    /// `cᵢ² cⱼ² / 4` on every term: the shorthand commonly quoted for this
    /// expansion. It carries the right frequencies but not the right
    /// amplitudes or signs, so it only matches `|C|²` up to an affine map
    /// when a single term is present.
    Uniform,
}

/// One contribution `weight · cos(omega · t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosineTerm {
    /// Zero-based level indices `(i, j)`, `i < j`.
    pub pair: (usize, usize),
    pub band: Band,
    pub weight: f64,
    /// `2(Eⱼ − Eᵢ)/ħ` in rad/s.
    pub omega: f64,
}

impl CosineTerm {
    pub fn evaluate(&self, t: f64) -> f64 {
        self.weight * (self.omega * t).cos()
    }
}

/// Pairs in presentation order: the two slow terms `(3,4)`, `(1,2)`, then
/// `(2,4)`, `(2,3)`, `(1,4)`, `(1,3)`.
const PAIRS: [(usize, usize, Band); 6] = [
    (2, 3, Band::Low),
    (0, 1, Band::Low),
    (1, 3, Band::High),
    (1, 2, Band::High),
    (0, 3, Band::High),
    (0, 2, Band::High),
];

pub fn six_cosine_terms(
    c: &ExpansionCoefficients,
    es: &EigenSystem,
    weighting: PairWeighting,
) -> [CosineTerm; 6] {
    let w = c.weights();
    let parity = es.bell_parities();
    PAIRS.map(|(i, j, band)| {
        let weight = match weighting {
            PairWeighting::Signed => 2.0 * parity[i] * parity[j] * w[i] * w[j],
            PairWeighting::Uniform => 0.25 * w[i] * w[j],
        };
        CosineTerm {
            pair: (i, j),
            band,
            weight,
            omega: 2.0 * es.gap(i, j) / HBAR_EV_S,
        }
    })
}

fn sum_terms(terms: &[CosineTerm], t: f64) -> f64 {
    terms.iter().map(|term| term.evaluate(t)).sum()
}

/// The signed six-cosine sum at time `t`, plus the offset `c1`.
pub fn concurrence_sq_expansion(c: &ExpansionCoefficients, es: &EigenSystem, t: f64, c1: f64) -> f64 {
    sum_terms(&six_cosine_terms(c, es, PairWeighting::Signed), t) + c1
}

/// Least-squares offset for a six-cosine expansion against a sampled `|C|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OffsetCalibration {
    pub c1: f64,
    pub max_residual: f64,
    pub rms_residual: f64,
}

/// Finds the constant `C₁` minimizing `Σ (y − expansion − C₁)²`, which is the
/// mean of `y − expansion`.
pub fn calibrate_offset(
    series: &TimeSeries,
    c: &ExpansionCoefficients,
    es: &EigenSystem,
    weighting: PairWeighting,
) -> OffsetCalibration {
    let terms = six_cosine_terms(c, es, weighting);
    let diff: Vec<f64> = series
        .times()
        .iter()
        .zip(series.values())
        .map(|(&t, &y)| y - sum_terms(&terms, t))
        .collect();
    let c1 = diff.iter().sum::<f64>() / diff.len() as f64;
    let residuals = diff.iter().map(|d| d - c1);
    let max_residual = residuals.clone().map(f64::abs).fold(0.0, f64::max);
    let rms_residual = (residuals.map(|r| r * r).sum::<f64>() / diff.len() as f64).sqrt();
    OffsetCalibration {
        c1,
        max_residual,
        rms_residual,
    }
}

/// Relative depth of the fast carrier under the slow envelope:
///
/// ```text
/// β = [(c₃² + c₄²)(c₁² + c₂²) − |c₄² − c₃²|·|c₂² − c₁²|] / [2(c₃²c₄² + c₁²c₂²)]
/// ```
///
/// Fails with [`Error::UndefinedBeta`] when the denominator vanishes.
pub fn beta_coefficient(c: &ExpansionCoefficients) -> Result<f64> {
    let [p1, p2, p3, p4] = c.weights();
    let denominator = 2.0 * (p3 * p4 + p1 * p2);
    if denominator <= 1e-12 {
        return Err(Error::UndefinedBeta);
    }
    let numerator = (p3 + p4) * (p1 + p2) - (p4 - p3).abs() * (p2 - p1).abs();
    Ok(numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, expand_initial_state, TwoQubitState};
    use crate::hamiltonian::HamiltonianParams;
    use crate::measures::concurrence;
    use crate::spectrum::bell_limit_eigensystem;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn coeffs(c: [f64; 4]) -> ExpansionCoefficients {
        ExpansionCoefficients::from_real(c).unwrap()
    }

    fn ideal() -> EigenSystem {
        bell_limit_eigensystem(&HamiltonianParams::new(0.0, 0.1, 1.0).unwrap())
    }

    /// Direct `|C(t)|²` on the ideal eigensystem, independent of the cosine
    /// bookkeeping.
    fn brute_force(c: &ExpansionCoefficients, es: &EigenSystem, t: f64) -> f64 {
        concurrence(&evolve(c, es, t)).value().powi(2)
    }

    #[test]
    fn beta_examples() {
        assert!((beta_coefficient(&coeffs([0.5; 4])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            beta_coefficient(&coeffs([0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2])).unwrap(),
            0.0
        );
        assert_eq!(
            beta_coefficient(&coeffs([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])),
            Err(Error::UndefinedBeta)
        );
    }

    #[test]
    fn single_slow_term_for_doubly_occupied_start() {
        let es = ideal();
        let c = coeffs([0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let terms = six_cosine_terms(&c, &es, PairWeighting::Signed);
        let nonzero: Vec<_> = terms.iter().filter(|t| t.weight != 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].pair, (2, 3));
        assert_eq!(nonzero[0].band, Band::Low);
        assert!((nonzero[0].weight + 0.5).abs() < 1e-15);

        let uniform = six_cosine_terms(&c, &es, PairWeighting::Uniform);
        assert!((uniform[0].weight - 1.0 / 16.0).abs() < 1e-16);
    }

    #[test]
    fn single_eigenstate_is_time_independent() {
        let es = ideal();
        let c = coeffs([1.0, 0.0, 0.0, 0.0]);
        let v0 = concurrence_sq_expansion(&c, &es, 0.0, 1.0);
        for k in 1..10 {
            assert_eq!(concurrence_sq_expansion(&c, &es, k as f64 * 1e-13, 1.0), v0);
        }
    }

    #[test]
    fn signed_expansion_matches_brute_force() {
        let es = ideal();
        let c = coeffs([0.5; 4]);
        let t_max = 4.0 * std::f64::consts::PI * HBAR_EV_S / es.gap(2, 3);
        let times: Vec<f64> = (0..4000).map(|k| t_max * k as f64 / 3999.0).collect();
        let series = TimeSeries::from_fn(&times, |t| brute_force(&c, &es, t)).unwrap();
        let cal = calibrate_offset(&series, &c, &es, PairWeighting::Signed);
        let sum_c4: f64 = c.weights().iter().map(|w| w * w).sum();
        assert!((cal.c1 - sum_c4).abs() < 1e-12);
        assert!(cal.max_residual < 1e-12, "{cal:?}");

        let uniform = calibrate_offset(&series, &c, &es, PairWeighting::Uniform);
        assert!(uniform.max_residual > 0.1);
    }

    #[test]
    fn parity_follows_eigenvectors_for_attractive_interaction() {
        let es = bell_limit_eigensystem(&HamiltonianParams::new(0.0, 0.1, -1.0).unwrap());
        let psi = TwoQubitState::from_real([1.0, 1.0, 0.0, 1.0]).unwrap();
        let c = expand_initial_state(&psi, &es);
        for k in 0..50 {
            let t = k as f64 * 7e-16;
            let direct = brute_force(&c, &es, t);
            let sum_c4: f64 = c.weights().iter().map(|w| w * w).sum();
            assert!((concurrence_sq_expansion(&c, &es, t, sum_c4) - direct).abs() < 1e-12);
        }
    }
}
