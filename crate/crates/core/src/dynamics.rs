//! Expansion over the eigenbasis and unitary propagation.
//!
//! An initial state is written as `ψ₀ = Σ cᵢ |ESᵢ⟩` with `cᵢ = ⟨ESᵢ|ψ₀⟩` and
//! evolves as `ψ(t) = Σ cᵢ e^{−iEᵢt/ħ} |ESᵢ⟩`. The uniform shift `2ε₀` only
//! contributes a global phase; it is dropped, so phases are accumulated from
//! the energies relative to `2ε₀`.

use std::f64::consts::PI;

use nalgebra::Vector4;
use num_complex::Complex64 as C64;

use crate::bell::{BellState, Configuration};
use crate::constants::HBAR_EV_S;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, HamiltonianParams};
use crate::io::CsvTable;
use crate::measures::{concurrence, shannon_entropy};
use crate::series::TimeSeries;
use crate::spectrum::{diagonalize, EigenSystem};

/// Allowed deviation of `Σ|α|²` (or `Σ|cᵢ|²`) from one.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Minimum number of samples per fastest period `2πħ/(E₄ − E₁)`.
pub const SAMPLES_PER_FAST_PERIOD: f64 = 40.0;

/// Floor on the sample count of automatically sized grids.
pub const MIN_AUTO_SAMPLES: usize = 1000;

/// A normalized two-particle state over `(|LL⟩, |LR⟩, |RL⟩, |RR⟩)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    amps: Vector4<C64>,
}

impl TwoQubitState {
    /// Accepts amplitudes that are already normalized to within `1e-12`.
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        let amps = Vector4::from(amps);
        let norm_sq = amps.norm_squared();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amps })
    }

    /// Scales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: [C64; 4]) -> Result<Self> {
        let amps = Vector4::from(amps);
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("state has non-finite amplitudes".into()));
        }
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amps: amps / C64::new(norm, 0.0),
        })
    }

    pub fn from_real(amps: [f64; 4]) -> Result<Self> {
        Self::normalized(amps.map(|a| C64::new(a, 0.0)))
    }

    pub fn configuration(c: Configuration) -> Self {
        Self { amps: c.vector() }
    }

    pub fn bell(b: BellState) -> Self {
        Self { amps: b.vector() }
    }

    pub fn amplitudes(&self) -> &Vector4<C64> {
        &self.amps
    }

    pub fn amplitude(&self, c: Configuration) -> C64 {
        self.amps[c.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    /// Multiplies by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        Self {
            amps: self.amps * C64::from_polar(1.0, phi),
        }
    }

    fn from_vector_unchecked(amps: Vector4<C64>) -> Self {
        Self { amps }
    }
}

/// Overlaps `cᵢ = ⟨ESᵢ|ψ₀⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionCoefficients {
    c: [C64; 4],
}

impl ExpansionCoefficients {
    pub fn new(c: [C64; 4]) -> Result<Self> {
        let norm_sq: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { c })
    }

    pub fn from_real(c: [f64; 4]) -> Result<Self> {
        Self::new(c.map(|x| C64::new(x, 0.0)))
    }

    /// `cᵢ` for zero-based `i`.
    pub fn get(&self, i: usize) -> C64 {
        self.c[i]
    }

    pub fn as_array(&self) -> [C64; 4] {
        self.c
    }

    /// `|cᵢ|²`.
    pub fn weights(&self) -> [f64; 4] {
        self.c.map(|z| z.norm_sqr())
    }

    /// Real parts, when every imaginary part is below `1e-12`.
    pub fn as_real(&self) -> Option<[f64; 4]> {
        self.c
            .iter()
            .all(|z| z.im.abs() <= 1e-12)
            .then(|| self.c.map(|z| z.re))
    }
}

/// Joint occupation probabilities `P_LL, P_LR, P_RL, P_RR`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisProbabilities {
    pub p_ll: f64,
    pub p_lr: f64,
    pub p_rl: f64,
    pub p_rr: f64,
}

impl BasisProbabilities {
    pub fn as_array(&self) -> [f64; 4] {
        [self.p_ll, self.p_lr, self.p_rl, self.p_rr]
    }

    pub fn from_array(p: [f64; 4]) -> Self {
        Self {
            p_ll: p[0],
            p_lr: p[1],
            p_rl: p[2],
            p_rr: p[3],
        }
    }

    pub fn sum(&self) -> f64 {
        self.as_array().iter().sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn expand_initial_state(psi0: &TwoQubitState, es: &EigenSystem) -> ExpansionCoefficients {
    let mut c = [C64::new(0.0, 0.0); 4];
    for (i, ci) in c.iter_mut().enumerate() {
        *ci = es.vector(i).dotc(psi0.amplitudes());
    }
    ExpansionCoefficients { c }
}

/// `ψ(t) = Σ cᵢ e^{−iEᵢt/ħ} |ESᵢ⟩` in the positional basis.
pub fn evolve(c: &ExpansionCoefficients, es: &EigenSystem, t: f64) -> TwoQubitState {
    let energies = es.relative_energies();
    let mut amps = Vector4::<C64>::zeros();
    for i in 0..4 {
        let phase = C64::from_polar(1.0, -energies[i] * t / HBAR_EV_S);
        amps += es.vector(i) * (c.c[i] * phase);
    }
    TwoQubitState::from_vector_unchecked(amps)
}

/// `p_xy = |α_xy|²`.
pub fn basis_probabilities(psi: &TwoQubitState) -> BasisProbabilities {
    BasisProbabilities::from_array(psi.amps.map(|z| z.norm_sqr()).into())
}

/// Strong-interaction closed form for the probabilities:
///
/// ```text
/// P_LR, P_RL = c₁²/2 + c₂²/2 ± c₁c₂ cos[(E₂ − E₁)t/ħ]
/// P_LL, P_RR = c₃²/2 + c₄²/2 ± c₃c₄ cos[(E₄ − E₃)t/ħ]
/// ```
///
/// It assumes `ES₁, ES₂ ≈ Ψ±` and `ES₃, ES₄ ≈ Φ∓` under the crate's phase
/// convention. Complex coefficients are accepted: the cross term is evaluated
/// as `Re(cᵢ c̄ⱼ e^{−i(Eᵢ−Eⱼ)t/ħ})`, which reduces to the form above for real
/// `cᵢ`.
pub fn bell_limit_probabilities(
    c: &ExpansionCoefficients,
    es: &EigenSystem,
    t: f64,
) -> BasisProbabilities {
    let w = c.weights();
    let cross = |i: usize, j: usize| {
        let phase = C64::from_polar(1.0, -es.gap(j, i) * t / HBAR_EV_S);
        (c.c[i] * c.c[j].conj() * phase).re
    };
    let psi_pair = 0.5 * (w[0] + w[1]);
    let phi_pair = 0.5 * (w[2] + w[3]);
    let x12 = cross(0, 1);
    let x34 = cross(2, 3);
    BasisProbabilities {
        p_ll: phi_pair + x34,
        p_lr: psi_pair + x12,
        p_rl: psi_pair - x12,
        p_rr: phi_pair - x34,
    }
}

/// Uniform sampling of `[t_start, t_end]` with `n_samples ≥ 2` points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_samples: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_samples: usize) -> Result<Self> {
        if !t_start.is_finite() || !t_end.is_finite() {
            return Err(Error::InvalidInput("time grid bounds must be finite".into()));
        }
        if t_end <= t_start {
            return Err(Error::InvalidInput(format!(
                "time grid needs t_end > t_start (got {t_start} .. {t_end})"
            )));
        }
        if n_samples < 2 {
            return Err(Error::InvalidInput("time grid needs at least 2 samples".into()));
        }
        Ok(Self {
            t_start,
            t_end,
            n_samples,
        })
    }

    /// `[0, window]` with the smallest sample count that satisfies the
    /// sampling rule, but never fewer than [`MIN_AUTO_SAMPLES`].
    pub fn auto(es: &EigenSystem, window: f64) -> Result<Self> {
        let n = match sampling_limit(es) {
            Some(limit) => (window / limit).ceil() as usize + 1,
            None => MIN_AUTO_SAMPLES,
        };
        Self::new(0.0, window, n.max(MIN_AUTO_SAMPLES))
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n_samples - 1) as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        let last = (self.n_samples - 1) as f64;
        (0..self.n_samples)
            .map(|k| {
                if k == self.n_samples - 1 {
                    self.t_end
                } else {
                    self.t_start + span * (k as f64 / last)
                }
            })
            .collect()
    }
}

/// Largest spacing allowed by the sampling rule: a fortieth of the fastest
/// period `2πħ/(E₄ − E₁)`. `None` when the spectrum is fully degenerate.
pub fn sampling_limit(es: &EigenSystem) -> Option<f64> {
    let spread = es.gap(0, 3);
    (spread > 0.0).then(|| 2.0 * PI * HBAR_EV_S / spread / SAMPLES_PER_FAST_PERIOD)
}

/// Every observable at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: TwoQubitState,
    pub probabilities: BasisProbabilities,
    pub entropy_bits: f64,
    pub concurrence: f64,
    pub concurrence_sq: f64,
}

/// Exact observables on a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    grid: TimeGrid,
    coefficients: ExpansionCoefficients,
    samples: Vec<TrajectorySample>,
}

/// CSV header for trajectories, in column order.
pub const TRAJECTORY_COLUMNS: [&str; 8] = [
    "t_s",
    "p_ll",
    "p_lr",
    "p_rl",
    "p_rr",
    "entropy_bits",
    "concurrence",
    "concurrence_sq",
];

impl Trajectory {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn coefficients(&self) -> &ExpansionCoefficients {
        &self.coefficients
    }

    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    fn series(&self, f: impl Fn(&TrajectorySample) -> f64) -> TimeSeries {
        TimeSeries::new(self.times(), self.samples.iter().map(f).collect())
            .expect("trajectory samples are finite on an increasing grid")
    }

    pub fn entropy_series(&self) -> TimeSeries {
        self.series(|s| s.entropy_bits)
    }

    pub fn concurrence_series(&self) -> TimeSeries {
        self.series(|s| s.concurrence)
    }

    pub fn concurrence_sq_series(&self) -> TimeSeries {
        self.series(|s| s.concurrence_sq)
    }

    /// Largest `|‖ψ(t)‖² − 1|` over the grid.
    pub fn max_norm_deviation(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.state.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// The eight base columns; analysis columns are appended by callers.
    pub fn to_csv_table(&self) -> CsvTable {
        let mut table = CsvTable::new();
        let col = |f: &dyn Fn(&TrajectorySample) -> f64| self.samples.iter().map(f).collect::<Vec<_>>();
        table.push_column(TRAJECTORY_COLUMNS[0], col(&|s| s.t));
        table.push_column(TRAJECTORY_COLUMNS[1], col(&|s| s.probabilities.p_ll));
        table.push_column(TRAJECTORY_COLUMNS[2], col(&|s| s.probabilities.p_lr));
        table.push_column(TRAJECTORY_COLUMNS[3], col(&|s| s.probabilities.p_rl));
        table.push_column(TRAJECTORY_COLUMNS[4], col(&|s| s.probabilities.p_rr));
        table.push_column(TRAJECTORY_COLUMNS[5], col(&|s| s.entropy_bits));
        table.push_column(TRAJECTORY_COLUMNS[6], col(&|s| s.concurrence));
        table.push_column(TRAJECTORY_COLUMNS[7], col(&|s| s.concurrence_sq));
        table
    }
}

/// Diagonalizes the Hamiltonian for `params` and samples every observable on
/// `grid` through the exact route.
pub fn trajectory(
    psi0: &TwoQubitState,
    params: &HamiltonianParams,
    grid: &TimeGrid,
) -> Result<Trajectory> {
    let es = diagonalize(&build_hamiltonian(params))?;
    trajectory_in(psi0, &es, grid)
}

/// Same as [`trajectory`] for a precomputed eigensystem.
pub fn trajectory_in(psi0: &TwoQubitState, es: &EigenSystem, grid: &TimeGrid) -> Result<Trajectory> {
    if let Some(limit) = sampling_limit(es) {
        let spacing = grid.spacing();
        if spacing > limit * (1.0 + 1e-9) {
            return Err(Error::UnderSampled {
                spacing_s: spacing,
                limit_s: limit,
            });
        }
    }
    let coefficients = expand_initial_state(psi0, es);
    let samples = grid
        .times()
        .into_iter()
        .map(|t| {
            let state = evolve(&coefficients, es, t);
            let probabilities = basis_probabilities(&state);
            let c = concurrence(&state).value();
            TrajectorySample {
                t,
                entropy_bits: shannon_entropy(&probabilities).bits(),
                concurrence: c,
                concurrence_sq: c * c,
                probabilities,
                state,
            }
        })
        .collect();
    Ok(Trajectory {
        grid: *grid,
        coefficients,
        samples,
    })
}
