//! Least-squares calibration of the free constants in the entropy and
//! envelope models.
//!
//! Both models share the slow basis function
//!
//! ```text
//! g(t) = w₃₄ cos(2ω_a t) + w₁₂ cos(2ω_b t),   w₃₄ = c₃²c₄²/4,  w₁₂ = c₁²c₂²/4
//! ```
//!
//! The entropy model is `A·g + C₀`. The envelope of `|C|²` is the envelope
//! term times the carrier at its crest, `B(g + α)(1 + |β|)`.

use serde::Serialize;

use crate::dynamics::ExpansionCoefficients;
use crate::error::{Error, Result};
use crate::io::SciOpt;
use crate::measures::expansion::beta_coefficient;
use crate::series::TimeSeries;
use crate::spectrum::SpectralGaps;

/// `A·g(t) + C₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoCosineModel {
    pub a: f64,
    pub c0: f64,
    pub w34: f64,
    pub w12: f64,
    /// Angular frequency of the first slow term, `2ω_a`, in rad/s.
    pub omega_34: f64,
    /// `2ω_b`, rad/s.
    pub omega_12: f64,
    pub residual_rms: f64,
}

impl TwoCosineModel {
    pub fn basis(&self, t: f64) -> f64 {
        self.w34 * (self.omega_34 * t).cos() + self.w12 * (self.omega_12 * t).cos()
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.a * self.basis(t) + self.c0
    }
}

/// `B(g + α)(1 + |β|)` evaluated on the extracted envelope's grid.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeModel {
    pub b: f64,
    pub alpha: f64,
    /// `None` when the printed formula is undefined for these coefficients.
    pub beta: Option<f64>,
    /// Offset of the six-cosine expansion, supplied by the caller.
    pub c1: f64,
    /// Model values at the envelope's sample times.
    pub values: Vec<f64>,
    pub residual_rms: f64,
}

/// Below this the slow basis is rounding noise and nothing can be fitted.
const MIN_SLOW_WEIGHT: f64 = 1e-12;

fn slow_weights(c: &ExpansionCoefficients) -> Result<(f64, f64)> {
    let [p1, p2, p3, p4] = c.weights();
    let (w34, w12) = (p3 * p4 / 4.0, p1 * p2 / 4.0);
    if w34 + w12 <= MIN_SLOW_WEIGHT {
        return Err(Error::DegenerateFit("c3²c4² and c1²c2² both vanish".into()));
    }
    Ok((w34, w12))
}

struct Line {
    slope: f64,
    intercept: f64,
    residual_rms: f64,
}

/// Ordinary least squares of `y` onto `{x, 1}` in centered form.
fn fit_line(x: &[f64], y: &[f64]) -> Result<Line> {
    let n = x.len();
    if n < 3 {
        return Err(Error::DegenerateFit(format!("need at least 3 samples, got {n}")));
    }
    let nf = n as f64;
    let x_mean = x.iter().sum::<f64>() / nf;
    let y_mean = y.iter().sum::<f64>() / nf;
    let sum_sq: f64 = x.iter().map(|v| v * v).sum();
    let sxx: f64 = x.iter().map(|v| (v - x_mean).powi(2)).sum();
    if sum_sq == 0.0 || sxx <= 1e-20 * sum_sq {
        return Err(Error::DegenerateFit("basis function is constant over the window".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - x_mean) * (b - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let residual_rms = (x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - slope * a - intercept).powi(2))
        .sum::<f64>()
        / nf)
        .sqrt();
    Ok(Line {
        slope,
        intercept,
        residual_rms,
    })
}

/// Fits `A` and `C₀` so that `A·g(t) + C₀` best matches `series`.
pub fn fit_two_cosine(
    series: &TimeSeries,
    c: &ExpansionCoefficients,
    gaps: &SpectralGaps,
) -> Result<TwoCosineModel> {
    let (w34, w12) = slow_weights(c)?;
    let mut model = TwoCosineModel {
        a: 0.0,
        c0: 0.0,
        w34,
        w12,
        omega_34: 2.0 * gaps.omega_a,
        omega_12: 2.0 * gaps.omega_b,
        residual_rms: 0.0,
    };
    let g: Vec<f64> = series.times().iter().map(|&t| model.basis(t)).collect();
    let line = fit_line(&g, series.values())?;
    model.a = line.slope;
    model.c0 = line.intercept;
    model.residual_rms = line.residual_rms;
    Ok(model)
}

/// Fits `B` and `α` against an extracted envelope of `|C|²`.
///
/// `β` comes from the printed formula; when it is undefined the carrier
/// factor is taken as 1 and `B` absorbs the whole slope.
pub fn fit_envelope_model(
    envelope: &TimeSeries,
    c: &ExpansionCoefficients,
    gaps: &SpectralGaps,
    c1: f64,
) -> Result<EnvelopeModel> {
    let (w34, w12) = slow_weights(c)?;
    let basis = |t: f64| w34 * (2.0 * gaps.omega_a * t).cos() + w12 * (2.0 * gaps.omega_b * t).cos();
    let g: Vec<f64> = envelope.times().iter().map(|&t| basis(t)).collect();
    let line = fit_line(&g, envelope.values())?;
    let beta = beta_coefficient(c).ok();
    let crest = 1.0 + beta.map_or(0.0, f64::abs);
    Ok(EnvelopeModel {
        b: line.slope / crest,
        alpha: line.intercept / line.slope,
        beta,
        c1,
        values: g.iter().map(|x| line.slope * x + line.intercept).collect(),
        residual_rms: line.residual_rms,
    })
}

/// Serialized fit summary. Fields that could not be fitted are `null`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FitReport {
    pub entropy: Option<TwoCosineModel>,
    pub envelope: Option<EnvelopeModel>,
    pub beta: Option<f64>,
    pub c1: Option<f64>,
    /// Largest pointwise gap between the calibrated six-cosine sum and `|C|²`.
    pub expansion_residual_max: Option<f64>,
}

impl Serialize for FitReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(9))?;
        m.serialize_entry("A", &SciOpt(self.entropy.map(|e| e.a)))?;
        m.serialize_entry("C0", &SciOpt(self.entropy.map(|e| e.c0)))?;
        m.serialize_entry("B", &SciOpt(self.envelope.as_ref().map(|e| e.b)))?;
        m.serialize_entry("alpha", &SciOpt(self.envelope.as_ref().map(|e| e.alpha)))?;
        m.serialize_entry("beta", &SciOpt(self.beta))?;
        m.serialize_entry("C1", &SciOpt(self.c1))?;
        m.serialize_entry("residual_rms", &SciOpt(self.entropy.map(|e| e.residual_rms)))?;
        m.serialize_entry(
            "envelope_residual_rms",
            &SciOpt(self.envelope.as_ref().map(|e| e.residual_rms)),
        )?;
        m.serialize_entry("expansion_residual_max", &SciOpt(self.expansion_residual_max))?;
        m.end()
    }
}
