use crate::error::{Error, Result};

/// Real samples on strictly increasing times.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    t: Vec<f64>,
    y: Vec<f64>,
}

impl TimeSeries {
    pub fn new(t: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if t.len() != y.len() {
            return Err(Error::InvalidInput(format!(
                "series has {} times but {} values",
                t.len(),
                y.len()
            )));
        }
        if t.is_empty() {
            return Err(Error::InvalidInput("series is empty".into()));
        }
        if t.iter().chain(&y).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("series contains non-finite samples".into()));
        }
        if t.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("series times must be strictly increasing".into()));
        }
        Ok(Self { t, y })
    }

    /// Samples `f` on the given times.
    pub fn from_fn(t: &[f64], f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(t.to_vec(), t.iter().map(|&x| f(x)).collect())
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Same times, new values.
    pub fn with_values(&self, y: Vec<f64>) -> Result<Self> {
        Self::new(self.t.clone(), y)
    }

    pub fn min(&self) -> f64 {
        self.y.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.y.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.y.iter().sum::<f64>() / self.y.len() as f64
    }

    /// `(max − min)/|mean|`.
    pub fn relative_variation(&self) -> f64 {
        (self.max() - self.min()) / self.mean().abs()
    }

    /// Affine map of the values onto `[0, 1]`; `None` for a constant series.
    pub fn normalized(&self) -> Option<Self> {
        let (lo, hi) = (self.min(), self.max());
        if is_flat(lo, hi) {
            return None;
        }
        let y = self.y.iter().map(|v| (v - lo) / (hi - lo)).collect();
        Some(Self { t: self.t.clone(), y })
    }

    pub fn is_constant(&self) -> bool {
        is_flat(self.min(), self.max())
    }
}

/// A range narrower than `1e-12` of the magnitude (or of 1) counts as flat.
fn is_flat(lo: f64, hi: f64) -> bool {
    hi - lo <= 1e-12 * lo.abs().max(hi.abs()).max(1.0)
}
