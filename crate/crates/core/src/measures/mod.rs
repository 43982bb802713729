//! Observables computed from two-particle states and their time series.
//!
//! * [`shannon_entropy`] and [`concurrence`] act on single states.
//! * [`expansion`] holds the six-cosine decomposition of `|C(t)|²` and the
//!   beat coefficient β.
//! * [`envelope`] extracts the slow upper envelope of a fast oscillation.
//! * [`fit`] calibrates the free constants of the two-cosine entropy model and
//!   of the envelope model by least squares.
//! * [`alignment`] compares two series: correlation, extremum timing and
//!   spectral concentration.

pub mod alignment;
pub mod envelope;
pub mod expansion;
pub mod fit;

use crate::dynamics::{BasisProbabilities, TwoQubitState};

pub use alignment::{alignment_score, extrema_times, spectral_concentration, AlignmentScore, Extremum, ExtremumKind};
pub use envelope::{envelope_extract, Envelope};
pub use expansion::{
    beta_coefficient, calibrate_offset, concurrence_sq_expansion, six_cosine_terms, Band, CosineTerm,
    OffsetCalibration, PairWeighting,
};
pub use fit::{fit_envelope_model, fit_two_cosine, EnvelopeModel, FitReport, TwoCosineModel};

/// Shannon entropy of the four joint occupation probabilities, in bits.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct EntropyValue(f64);

impl EntropyValue {
    pub fn bits(self) -> f64 {
        self.0
    }
}

/// Pure-state concurrence, in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ConcurrenceValue(f64);

impl ConcurrenceValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `S = −Σ p log₂ p` with `0·log₂0 = 0`. Probabilities are clamped to
/// `[0, 1]` first.
pub fn shannon_entropy(p: &BasisProbabilities) -> EntropyValue {
    let s: f64 = p
        .as_array()
        .iter()
        .map(|&x| x.clamp(0.0, 1.0))
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.log2())
        .sum();
    EntropyValue(s.clamp(0.0, 2.0))
}

/// `C = 2|α_LL α_RR − α_LR α_RL|`.
pub fn concurrence(psi: &TwoQubitState) -> ConcurrenceValue {
    let a = psi.amplitudes();
    let c = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
    ConcurrenceValue(c.min(1.0))
}
