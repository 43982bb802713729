//! Comparing the timing of two series.

use rustfft::{num_complex::Complex, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::SciOpt;
use crate::series::TimeSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub t: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Strict interior extrema, in time order.
///
/// Each one is moved to the vertex of the parabola through it and its two
/// neighbours. Endpoints are never reported: a series that starts at its
/// maximum has no detectable turning point there.
pub fn extrema_times(series: &TimeSeries) -> Vec<Extremum> {
    let t = series.times();
    let y = series.values();
    let mut out = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        let (prev, mid, next) = (y[i - 1], y[i], y[i + 1]);
        let kind = if mid > prev && mid > next {
            ExtremumKind::Max
        } else if mid < prev && mid < next {
            ExtremumKind::Min
        } else {
            continue;
        };
        let curvature = prev - 2.0 * mid + next;
        let shift = 0.5 * (prev - next) / curvature;
        let dt = 0.5 * (t[i + 1] - t[i - 1]);
        out.push(Extremum {
            t: t[i] + shift * dt,
            value: mid - 0.25 * (prev - next) * shift,
            kind,
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlignmentScore {
    /// Pearson correlation of the two affine-normalized series; `None` when
    /// either is constant.
    pub pearson: Option<f64>,
    /// Largest time offset between matched extrema, in seconds. `None` when
    /// nothing could be matched; 0 when both series are constant.
    pub max_extremum_offset_s: Option<f64>,
    pub matched_extrema: usize,
}

impl Serialize for AlignmentScore {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("pearson", &SciOpt(self.pearson))?;
        m.serialize_entry("max_extremum_offset_s", &SciOpt(self.max_extremum_offset_s))?;
        m.serialize_entry("matched_extrema", &self.matched_extrema)?;
        m.end()
    }
}

/// Scores how closely `b` follows `a` on a shared grid.
///
/// Extrema are matched greedily: each extremum of the series with fewer of
/// them takes the nearest unused extremum of the same kind in the other.
pub fn alignment_score(a: &TimeSeries, b: &TimeSeries) -> Result<AlignmentScore> {
    if a.times() != b.times() {
        return Err(Error::InvalidInput("series must share a time grid".into()));
    }
    let (na, nb) = (a.normalized(), b.normalized());
    let pearson = match (&na, &nb) {
        (Some(x), Some(y)) => pearson(x.values(), y.values()),
        _ => None,
    };
    if na.is_none() && nb.is_none() {
        return Ok(AlignmentScore {
            pearson,
            max_extremum_offset_s: Some(0.0),
            matched_extrema: 0,
        });
    }
    if na.is_none() || nb.is_none() {
        return Ok(AlignmentScore {
            pearson,
            max_extremum_offset_s: None,
            matched_extrema: 0,
        });
    }

    let (ea, eb) = (extrema_times(a), extrema_times(b));
    let (reference, other) = if eb.len() < ea.len() { (eb, ea) } else { (ea, eb) };
    let mut used = vec![false; other.len()];
    let mut worst: Option<f64> = None;
    let mut matched = 0;
    for r in &reference {
        let best = other
            .iter()
            .enumerate()
            .filter(|(j, o)| !used[*j] && o.kind == r.kind)
            .min_by(|(_, x), (_, y)| (x.t - r.t).abs().total_cmp(&(y.t - r.t).abs()));
        if let Some((j, o)) = best {
            used[j] = true;
            matched += 1;
            let d = (o.t - r.t).abs();
            worst = Some(worst.map_or(d, |w| w.max(d)));
        }
    }
    Ok(AlignmentScore {
        pearson,
        max_extremum_offset_s: worst,
        matched_extrema: matched,
    })
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Fraction of the AC power of a uniformly sampled series that falls in the
/// discrete Fourier bins nearest `omega` (rad/s), including one neighbour on
/// each side.
///
/// The last sample is dropped so that a window spanning whole periods maps
/// onto whole bins. `None` for a constant or very short series.
pub fn spectral_concentration(series: &TimeSeries, omega: f64) -> Option<f64> {
    let t = series.times();
    let y = series.values();
    if y.len() < 5 {
        return None;
    }
    let n = y.len() - 1;
    let dt = (t[n] - t[0]) / n as f64;
    let window = dt * n as f64;
    let mean = y[..n].iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = y[..n].iter().map(|v| Complex::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    let power: Vec<f64> = buf[..=half].iter().map(|z| z.norm_sqr()).collect();
    let total: f64 = power[1..].iter().sum();
    if total <= 0.0 {
        return None;
    }
    let k = (omega * window / (2.0 * std::f64::consts::PI)).round() as usize;
    let lo = k.saturating_sub(1).max(1);
    let hi = (k + 1).min(half);
    let band: f64 = if lo <= hi { power[lo..=hi].iter().sum() } else { 0.0 };
    Some(band / total)
}
