//! Physical presets, figure scenarios and parameter sweeps.

mod svg;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::bell::bell_fidelity;
use crate::constants::PLANCK_EV_S;
use crate::dynamics::{expand_initial_state, trajectory_in, TimeGrid, Trajectory, TwoQubitState};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, HamiltonianParams};
use crate::io::{to_json_string, write_atomic, CsvTable, Sci, SciOpt};
use crate::measures::{
    alignment_score, beta_coefficient, calibrate_offset, envelope_extract, fit_envelope_model, fit_two_cosine,
    AlignmentScore, Envelope, FitReport, PairWeighting,
};
use crate::spectrum::{diagonalize, EigenSystem};

pub use svg::render_svg;

/// How the two single-particle states are labelled in a given experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisLabel {
    /// Left and right well.
    Positional,
    /// Two internal (hyperfine) levels.
    Spin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    OpticalTrap,
    QuantumMagnet,
    SemiconductorDqd,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::OpticalTrap, Preset::QuantumMagnet, Preset::SemiconductorDqd];

    pub fn name(self) -> &'static str {
        match self {
            Preset::OpticalTrap => "optical-trap",
            Preset::QuantumMagnet => "quantum-magnet",
            Preset::SemiconductorDqd => "semiconductor-dqd",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::OpticalTrap => "two 6Li atoms in an optical double well",
            Preset::QuantumMagnet => "two 25Mg+ ions in different hyperfine ground states",
            Preset::SemiconductorDqd => "two electrons in separate double quantum dots",
        }
    }

    pub fn preset(self) -> ExperimentPreset {
        let (u, delta, basis_label, published_timescale_s) = match self {
            Preset::OpticalTrap => (2.7e-12, 2.66e-13, BasisLabel::Positional, 124e-3),
            Preset::QuantumMagnet => (91.1e-12, 17.5e-12, BasisLabel::Spin, 0.31e-3),
            Preset::SemiconductorDqd => (25e-6, 6.25e-6, BasisLabel::Positional, 10.1e-9),
        };
        ExperimentPreset {
            kind: self,
            params: HamiltonianParams::new(0.0, delta, u).expect("preset parameters are valid"),
            basis_label,
            published_timescale_s,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Lookup {
                kind: "preset",
                name: s.to_string(),
                valid: Preset::ALL.map(Preset::name).join(", "),
            })
    }
}

/// One row of published experimental parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentPreset {
    pub kind: Preset,
    pub params: HamiltonianParams,
    pub basis_label: BasisLabel,
    /// Timescale `h/2(E₄ − E₃)` as published alongside the parameters. For
    /// two of the three rows it does not follow from the listed `U` and `Δ`;
    /// see [`table1`].
    pub published_timescale_s: f64,
}

impl ExperimentPreset {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }
}

/// Looks a preset up by name.
pub fn preset(name: &str) -> Result<ExperimentPreset> {
    Ok(name.parse::<Preset>()?.preset())
}

/// `h / (2(E₄ − E₃))`, half the beat period.
pub fn characteristic_timescale(params: &HamiltonianParams) -> Result<f64> {
    let gap = params.slow_gap();
    if gap <= 0.0 {
        return Err(Error::InfiniteTimescale);
    }
    Ok(PLANCK_EV_S / (2.0 * gap))
}

/// `h / (E₄ − E₃)`.
pub fn beat_period(params: &HamiltonianParams) -> Result<f64> {
    Ok(2.0 * characteristic_timescale(params)?)
}

/// Published against recomputed timescale for one preset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimescaleRow {
    pub preset: Preset,
    pub ratio: f64,
    pub published_s: f64,
    pub computed_s: f64,
}

impl TimescaleRow {
    /// `computed / published − 1`.
    pub fn discrepancy(&self) -> f64 {
        self.computed_s / self.published_s - 1.0
    }
}

impl Serialize for TimescaleRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let p = self.preset.preset().params;
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("preset", self.preset.name())?;
        m.serialize_entry("u_eV", &Sci(p.u()))?;
        m.serialize_entry("delta_eV", &Sci(p.delta()))?;
        m.serialize_entry("ratio", &Sci(self.ratio))?;
        m.serialize_entry("published_s", &Sci(self.published_s))?;
        m.serialize_entry("computed_s", &Sci(self.computed_s))?;
        m.serialize_entry("discrepancy", &Sci(self.discrepancy()))?;
        m.end()
    }
}

/// Timescales for all presets, published and recomputed side by side.
pub fn table1() -> Vec<TimescaleRow> {
    Preset::ALL
        .into_iter()
        .map(|kind| {
            let p = kind.preset();
            TimescaleRow {
                preset: kind,
                ratio: p.params.ratio(),
                published_s: p.published_timescale_s,
                computed_s: characteristic_timescale(&p.params).expect("presets have Δ > 0"),
            }
        })
        .collect()
}

/// The published figure panels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4a,
    Fig4b,
    Fig4c,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig3c,
        FigureId::Fig3d,
        FigureId::Fig4a,
        FigureId::Fig4b,
        FigureId::Fig4c,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FigureId::Fig3a => "3a",
            FigureId::Fig3b => "3b",
            FigureId::Fig3c => "3c",
            FigureId::Fig3d => "3d",
            FigureId::Fig4a => "4a",
            FigureId::Fig4b => "4b",
            FigureId::Fig4c => "4c",
        }
    }

    pub fn preset(self) -> Preset {
        match self {
            FigureId::Fig4b => Preset::QuantumMagnet,
            FigureId::Fig4c => Preset::SemiconductorDqd,
            _ => Preset::OpticalTrap,
        }
    }

    /// Initial state as a real amplitude vector over `(LL, LR, RL, RR)`,
    /// before normalization.
    pub fn initial_weights(self) -> [f64; 4] {
        match self {
            FigureId::Fig3a => [1.0, 0.0, 0.0, 0.0],
            FigureId::Fig3b => [1.0, 1.0, 0.0, 0.0],
            FigureId::Fig3c => [1.0, 1.0, 0.0, 1.0],
            FigureId::Fig3d => [1.0, 1.0, 1.0, 1.0],
            FigureId::Fig4a | FigureId::Fig4b | FigureId::Fig4c => [1.0, 0.0, 0.0, 1.0],
        }
    }

    pub fn initial_state(self) -> TwoQubitState {
        TwoQubitState::from_real(self.initial_weights()).expect("figure states are nonzero")
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches("fig").trim_start_matches("Fig").to_ascii_lowercase();
        FigureId::ALL
            .into_iter()
            .find(|f| f.label() == key)
            .ok_or_else(|| Error::Lookup {
                kind: "figure",
                name: s.to_string(),
                valid: FigureId::ALL.map(FigureId::label).join(", "),
            })
    }
}

/// A preset, an initial state and a window length.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureScenario {
    pub id: FigureId,
    pub preset: ExperimentPreset,
    pub initial: TwoQubitState,
    /// Window length in beat periods `h/(E₄ − E₃)`.
    pub beat_periods: f64,
}

impl FigureScenario {
    /// The published panel over two beat periods.
    pub fn new(id: FigureId) -> Self {
        Self {
            id,
            preset: id.preset().preset(),
            initial: id.initial_state(),
            beat_periods: 2.0,
        }
    }

    pub fn grid(&self, es: &EigenSystem) -> Result<TimeGrid> {
        TimeGrid::auto(es, self.beat_periods * beat_period(&self.preset.params)?)
    }
}

/// Timescales of the spectrum that matter for reading a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timescales {
    /// `h/(E₄ − E₃)`; `None` when the slow gap vanishes.
    pub beat_period_s: Option<f64>,
    /// `h/2(E₄ − E₃)`.
    pub characteristic_s: Option<f64>,
    /// `πħ/(E₃ − E₁)`; `None` when the levels coincide.
    pub half_fast_period_s: Option<f64>,
}

impl Timescales {
    pub fn of(es: &EigenSystem) -> Self {
        let slow = es.gap(2, 3);
        let fast = es.gap(0, 2);
        Self {
            beat_period_s: (slow > 0.0).then(|| PLANCK_EV_S / slow),
            characteristic_s: (slow > 0.0).then(|| PLANCK_EV_S / (2.0 * slow)),
            half_fast_period_s: (fast > 0.0).then(|| PLANCK_EV_S / (2.0 * fast)),
        }
    }
}

/// Which bundle files to write.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(default)]
pub struct Emit {
    /// `trajectory.csv`
    pub csv: bool,
    /// `fits.json` and `alignment.json`
    pub json: bool,
    /// `plot.svg`
    pub svg: bool,
}

impl Default for Emit {
    fn default() -> Self {
        Self {
            csv: true,
            json: true,
            svg: false,
        }
    }
}

/// Everything computed for one initial state on one grid.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub params: HamiltonianParams,
    pub eigensystem: EigenSystem,
    pub trajectory: Trajectory,
    /// Upper envelope of `|C(t)|²`.
    pub envelope: Envelope,
    pub fits: FitReport,
    /// Entropy against the envelope of `|C|²`.
    pub alignment: AlignmentScore,
    pub timescales: Timescales,
}

/// Evolves `psi0` under `params` on `grid` and runs every measure on the
/// result.
pub fn analyze(psi0: &TwoQubitState, params: &HamiltonianParams, grid: &TimeGrid) -> Result<Analysis> {
    let es = diagonalize(&build_hamiltonian(params))?;
    analyze_in(psi0, params, es, grid)
}

/// Same as [`analyze`] with a precomputed eigensystem, for instance
/// [`bell_limit_eigensystem`](crate::spectrum::bell_limit_eigensystem).
pub fn analyze_in(
    psi0: &TwoQubitState,
    params: &HamiltonianParams,
    es: EigenSystem,
    grid: &TimeGrid,
) -> Result<Analysis> {
    let trajectory = trajectory_in(psi0, &es, grid)?;
    let entropy = trajectory.entropy_series();
    let c_sq = trajectory.concurrence_sq_series();
    let envelope = envelope_extract(&c_sq);
    let envelope_series = envelope.to_series(&c_sq);

    let c = expand_initial_state(psi0, &es);
    let gaps = es.gaps();
    let calibration = calibrate_offset(&c_sq, &c, &es, PairWeighting::Signed);
    let fits = FitReport {
        entropy: fit_two_cosine(&entropy, &c, &gaps).ok(),
        envelope: fit_envelope_model(&envelope_series, &c, &gaps, calibration.c1).ok(),
        beta: beta_coefficient(&c).ok(),
        c1: Some(calibration.c1),
        expansion_residual_max: Some(calibration.max_residual),
    };
    let alignment = alignment_score(&entropy, &envelope_series)?;
    Ok(Analysis {
        params: *params,
        timescales: Timescales::of(&es),
        eigensystem: es,
        trajectory,
        envelope,
        fits,
        alignment,
    })
}

/// Runs a figure scenario over its default grid.
pub fn run_figure(scenario: &FigureScenario) -> Result<Analysis> {
    let es = diagonalize(&build_hamiltonian(&scenario.preset.params))?;
    let grid = scenario.grid(&es)?;
    analyze(&scenario.initial, &scenario.preset.params, &grid)
}

impl Analysis {
    /// Trajectory columns followed by `concurrence_sq_envelope`,
    /// `entropy_model` and `envelope_model`. Model columns are empty where the
    /// fit was degenerate.
    pub fn to_csv_table(&self) -> CsvTable {
        let mut table = self.trajectory.to_csv_table();
        let times = self.trajectory.times();
        table.push_column("concurrence_sq_envelope", self.envelope.values.iter().copied());
        match &self.fits.entropy {
            Some(m) => table.push_optional_column("entropy_model", times.iter().map(|&t| Some(m.evaluate(t)))),
            None => table.push_optional_column("entropy_model", times.iter().map(|_| None)),
        }
        match &self.fits.envelope {
            Some(m) => table.push_optional_column("envelope_model", m.values.iter().map(|&v| Some(v))),
            None => table.push_optional_column("envelope_model", times.iter().map(|_| None)),
        }
        table
    }

    pub fn alignment_report(&self) -> AlignmentReport {
        let entropy = self.trajectory.entropy_series();
        let envelope = self.envelope.to_series(&self.trajectory.concurrence_sq_series());
        AlignmentReport {
            score: self.alignment,
            half_fast_period_s: self.timescales.half_fast_period_s,
            beat_period_s: self.timescales.beat_period_s,
            characteristic_timescale_s: self.timescales.characteristic_s,
            entropy_relative_variation: entropy.relative_variation(),
            envelope_relative_variation: envelope.relative_variation(),
            envelope_degenerate: self.envelope.degenerate,
            envelope_peaks: self.envelope.peaks.len(),
            samples: self.trajectory.samples().len(),
            max_norm_deviation: self.trajectory.max_norm_deviation(),
        }
    }

    /// Writes `trajectory.csv`, `fits.json`, `alignment.json` and `plot.svg`
    /// into `dir` as selected by `emit`, creating the directory if needed.
    /// Each file is replaced atomically.
    pub fn write_bundle(&self, dir: &Path, emit: Emit) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        if emit.csv {
            write_atomic(&dir.join("trajectory.csv"), self.to_csv_table().render().as_bytes())?;
        }
        if emit.json {
            write_atomic(&dir.join("fits.json"), to_json_string(&self.fits).as_bytes())?;
            write_atomic(&dir.join("alignment.json"), to_json_string(&self.alignment_report()).as_bytes())?;
        }
        if emit.svg {
            write_atomic(&dir.join("plot.svg"), render_svg(self).as_bytes())?;
        }
        Ok(())
    }
}

/// Contents of `alignment.json`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlignmentReport {
    pub score: AlignmentScore,
    pub half_fast_period_s: Option<f64>,
    pub beat_period_s: Option<f64>,
    pub characteristic_timescale_s: Option<f64>,
    pub entropy_relative_variation: f64,
    pub envelope_relative_variation: f64,
    pub envelope_degenerate: bool,
    pub envelope_peaks: usize,
    pub samples: usize,
    pub max_norm_deviation: f64,
}

impl Serialize for AlignmentReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(12))?;
        m.serialize_entry("pearson", &SciOpt(self.score.pearson))?;
        m.serialize_entry("max_extremum_offset_s", &SciOpt(self.score.max_extremum_offset_s))?;
        m.serialize_entry("matched_extrema", &self.score.matched_extrema)?;
        m.serialize_entry("half_fast_period_s", &SciOpt(self.half_fast_period_s))?;
        m.serialize_entry("beat_period_s", &SciOpt(self.beat_period_s))?;
        m.serialize_entry("characteristic_timescale_s", &SciOpt(self.characteristic_timescale_s))?;
        m.serialize_entry("entropy_relative_variation", &Sci(self.entropy_relative_variation))?;
        m.serialize_entry("envelope_relative_variation", &Sci(self.envelope_relative_variation))?;
        m.serialize_entry("envelope_degenerate", &self.envelope_degenerate)?;
        m.serialize_entry("envelope_peaks", &self.envelope_peaks)?;
        m.serialize_entry("samples", &self.samples)?;
        m.serialize_entry("max_norm_deviation", &Sci(self.max_norm_deviation))?;
        m.end()
    }
}

/// Bell fidelities and gap structure at one value of `U/Δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub ratio: f64,
    pub fidelities: [f64; 4],
    /// `E₄ − E₃` in eV.
    pub gap_slow: f64,
    /// `E₃ − E₂` in eV, equal to `2U`.
    pub gap_2u: f64,
}

pub const SWEEP_COLUMNS: [&str; 7] = ["ratio", "f1", "f2", "f3", "f4", "gap_slow_eV", "gap_2U_eV"];

/// `n_points` evenly spaced ratios `U/Δ` from `ratio_min` to `ratio_max` at
/// fixed `Δ`.
pub fn ratio_sweep(ratio_min: f64, ratio_max: f64, n_points: usize, delta: f64) -> Result<Vec<SweepRow>> {
    if !(ratio_min >= 0.0 && ratio_max.is_finite() && ratio_max >= ratio_min) {
        return Err(Error::InvalidInput(format!(
            "ratio range [{ratio_min}, {ratio_max}] must satisfy 0 <= min <= max"
        )));
    }
    if n_points < 2 {
        return Err(Error::InvalidInput(format!("sweep needs at least 2 points, got {n_points}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput(format!("sweep needs a positive tunneling strength, got {delta}")));
    }
    (0..n_points)
        .map(|k| {
            let ratio = ratio_min + (ratio_max - ratio_min) * k as f64 / (n_points - 1) as f64;
            let params = HamiltonianParams::new(0.0, delta, ratio * delta)?;
            let es = diagonalize(&build_hamiltonian(&params))?;
            Ok(SweepRow {
                ratio,
                fidelities: bell_fidelity(&es),
                gap_slow: es.gap(2, 3),
                gap_2u: es.gap(1, 2),
            })
        })
        .collect()
}

pub fn sweep_table(rows: &[SweepRow]) -> CsvTable {
    let mut table = CsvTable::new();
    table.push_column(SWEEP_COLUMNS[0], rows.iter().map(|r| r.ratio));
    for i in 0..4 {
        table.push_column(SWEEP_COLUMNS[1 + i], rows.iter().map(|r| r.fidelities[i]));
    }
    table.push_column(SWEEP_COLUMNS[5], rows.iter().map(|r| r.gap_slow));
    table.push_column(SWEEP_COLUMNS[6], rows.iter().map(|r| r.gap_2u));
    table
}
