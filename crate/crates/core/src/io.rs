//! Measure JSON and CDF CSV formats.
//!
//! A measure is stored as `{"atoms": [{"x": 0.0, "w": 0.5}, ...]}` sorted by
//! `x`. Loading accepts atoms in any order, merges duplicates and tolerates a
//! total mass within `1e-9` of one. The CSV form of a CDF has header `x,F`, a
//! row one unit left of the support with `F = 0`, then one row per atom.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::scalar::Real;

/// Mass tolerance applied when reading measures from files.
pub const LOAD_MASS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomRecord {
    pub x: f64,
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureRecord {
    pub atoms: Vec<AtomRecord>,
}

impl<T: Real> From<&DiscreteMeasure<T>> for MeasureRecord {
    fn from(m: &DiscreteMeasure<T>) -> Self {
        MeasureRecord {
            atoms: m
                .iter()
                .map(|(x, w)| AtomRecord {
                    x: x.as_f64(),
                    w: w.as_f64(),
                })
                .collect(),
        }
    }
}

impl MeasureRecord {
    pub fn into_measure<T: Real>(self) -> Result<DiscreteMeasure<T>> {
        DiscreteMeasure::with_mass_tolerance(
            self.atoms.into_iter().map(|a| (T::lit(a.x), T::lit(a.w))),
            T::lit(LOAD_MASS_TOL),
        )
    }
}

pub fn to_json<T: Real>(m: &DiscreteMeasure<T>) -> String {
    serde_json::to_string_pretty(&MeasureRecord::from(m)).expect("plain numbers serialize")
}

pub fn from_json<T: Real>(text: &str) -> Result<DiscreteMeasure<T>> {
    let record: MeasureRecord =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    record.into_measure()
}

pub fn load_measure<T: Real>(path: impl AsRef<Path>) -> Result<DiscreteMeasure<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_json(&text)
}

pub fn write_measure<T: Real>(path: impl AsRef<Path>, m: &DiscreteMeasure<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json(m) + "\n").map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn cdf_csv<T: Real>(m: &DiscreteMeasure<T>) -> String {
    let mut out = String::from("x,F\n");
    writeln!(out, "{},0", (m.min_atom() - T::one()).as_f64()).unwrap();
    for p in m.cdf_points() {
        writeln!(out, "{},{}", p.location.as_f64(), p.value.as_f64()).unwrap();
    }
    out
}
