use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer};

use super::CliError;
use crate::experiments::{preset, Emit};
use crate::hamiltonian::HamiltonianParams;

/// A number, or `auto` to let the library choose.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Auto {
    Auto,
    Value(f64),
}

impl FromStr for Auto {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Auto::Auto);
        }
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(Auto::Value(x)),
            _ => Err(format!("expected a positive number or \"auto\", got '{s}'")),
        }
    }
}

impl<'de> Deserialize<'de> for Auto {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Auto;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive number or \"auto\"")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Auto, E> {
                s.parse().map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> Result<Auto, E> {
                if x.is_finite() && x > 0.0 {
                    Ok(Auto::Value(x))
                } else {
                    Err(E::custom(format!("expected a positive number, got {x}")))
                }
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<Auto, E> {
                self.visit_f64(x as f64)
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<Auto, E> {
                self.visit_f64(x as f64)
            }
        }
        d.deserialize_any(V)
    }
}

/// Settings read from `--config`. Keys that are not listed here are ignored,
/// so the JSON printed by `eig` can be fed back in.
///
/// ```json
/// {
///   "preset": "optical-trap",
///   "state": "LL + LR",
///   "t_max_s": "auto",
///   "samples": 20000,
///   "out": "run-3b",
///   "emit": { "csv": true, "json": true, "svg": true }
/// }
/// ```
///
/// Instead of `preset`, `params` may hold `{"epsilon0_eV", "delta_eV", "u_eV"}`.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub params: Option<HamiltonianParams>,
    pub state: Option<String>,
    pub t_max_s: Option<Auto>,
    pub samples: Option<Auto>,
    pub out: Option<PathBuf>,
    pub emit: Option<Emit>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The configured parameters, if any. Both `preset` and `params` at once
    /// is an error.
    pub fn hamiltonian(&self) -> Result<Option<HamiltonianParams>, CliError> {
        match (&self.preset, self.params) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "config gives both \"preset\" and \"params\"; keep one".into(),
            )),
            (Some(name), None) => Ok(Some(preset(name)?.params)),
            (None, p) => Ok(p),
        }
    }
}
