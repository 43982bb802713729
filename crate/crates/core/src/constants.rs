//! Physical constants (CODATA 2018), energies in eV.

/// Reduced Planck constant ħ in eV·s.
pub const HBAR_EV_S: f64 = 6.582119569e-16;

/// Planck constant h in eV·s.
pub const PLANCK_EV_S: f64 = 4.135667696e-15;
