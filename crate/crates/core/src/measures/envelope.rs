//! Upper envelope of a fast oscillation.
//!
//! Peaks are the strict interior local maxima; each peak height is lifted to
//! the vertex of the parabola through the peak and its two neighbours, and the
//! knots are joined by a monotone (Fritsch–Carlson) cubic so the envelope
//! never overshoots between peaks. Outside the first and last knot the
//! envelope is held at the nearest knot value.
//!
//! An endpoint becomes a knot only if it rises above its neighbour and is not
//! lower than the nearest interior peak. A carrier sampled mid-swing at the
//! edge of the window would otherwise pull the envelope down to an arbitrary
//! point of the fast cycle.

use crate::series::TimeSeries;

/// An envelope sampled on the times of the input series.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    /// Envelope value at each input time.
    pub values: Vec<f64>,
    /// Sample indices used as knots.
    pub peaks: Vec<usize>,
    /// Set when fewer than two knots were found; `values` is then the series
    /// maximum everywhere.
    pub degenerate: bool,
}

impl Envelope {
    pub fn to_series(&self, like: &TimeSeries) -> TimeSeries {
        like.with_values(self.values.clone())
            .expect("envelope values are finite and aligned with the input")
    }
}

pub fn envelope_extract(series: &TimeSeries) -> Envelope {
    let t = series.times();
    let y = series.values();
    let n = y.len();

    let interior: Vec<usize> = (1..n.saturating_sub(1))
        .filter(|&i| y[i] > y[i - 1] && y[i] > y[i + 1])
        .collect();

    let mut peaks = Vec::with_capacity(interior.len() + 2);
    if n >= 2 && y[0] > y[1] && interior.first().is_none_or(|&p| y[0] >= y[p]) {
        peaks.push(0);
    }
    peaks.extend_from_slice(&interior);
    if n >= 2 && y[n - 1] > y[n - 2] && interior.last().is_none_or(|&p| y[n - 1] >= y[p]) {
        peaks.push(n - 1);
    }

    if peaks.len() < 2 {
        return Envelope {
            values: vec![series.max(); n],
            peaks,
            degenerate: true,
        };
    }

    let knot_t: Vec<f64> = peaks.iter().map(|&i| t[i]).collect();
    let knot_y: Vec<f64> = peaks
        .iter()
        .map(|&i| {
            if i == 0 || i == n - 1 {
                y[i]
            } else {
                vertex_height(y[i - 1], y[i], y[i + 1])
            }
        })
        .collect();
    let spline = MonotoneCubic::new(&knot_t, &knot_y);
    Envelope {
        values: t.iter().map(|&x| spline.eval(x)).collect(),
        peaks,
        degenerate: false,
    }
}

/// Height of the parabola vertex through three equally spaced samples whose
/// middle one is a strict maximum.
fn vertex_height(prev: f64, mid: f64, next: f64) -> f64 {
    let curvature = prev - 2.0 * mid + next;
    if curvature >= 0.0 {
        return mid;
    }
    mid - (prev - next).powi(2) / (8.0 * curvature)
}

/// Piecewise cubic Hermite interpolant with Fritsch–Carlson slopes
/// (weighted harmonic mean inside, shape-preserving three-point ends).
pub(crate) struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    pub(crate) fn new(x: &[f64], y: &[f64]) -> Self {
        assert!(x.len() == y.len() && x.len() >= 2);
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
        } else {
            for k in 1..n - 1 {
                if delta[k - 1] * delta[k] > 0.0 {
                    let w1 = 2.0 * h[k] + h[k - 1];
                    let w2 = h[k] + 2.0 * h[k - 1];
                    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
                }
            }
            d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Self {
            x: x.to_vec(),
            y: y.to_vec(),
            d,
        }
    }

    pub(crate) fn eval(&self, at: f64) -> f64 {
        let n = self.x.len();
        if at <= self.x[0] {
            return self.y[0];
        }
        if at >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let k = self.x.partition_point(|&xi| xi <= at) - 1;
        let h = self.x[k + 1] - self.x[k];
        let s = (at - self.x[k]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.y[k] + h10 * h * self.d[k] + h01 * self.y[k + 1] + h11 * h * self.d[k + 1]
    }
}

fn end_slope(h0: f64, h1: f64, delta0: f64, delta1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * delta0 - h0 * delta1) / (h0 + h1);
    if d.signum() != delta0.signum() || delta0 == 0.0 {
        0.0
    } else if delta0.signum() != delta1.signum() && d.abs() > 3.0 * delta0.abs() {
        3.0 * delta0
    } else {
        d
    }
}
