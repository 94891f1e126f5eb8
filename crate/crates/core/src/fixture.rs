//! Surface fixture documents and the wire formats for Mukai vectors and
//! divisor classes.
//!
//! A fixture is a JSON document:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "rank": 3,
//!   "gram": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
//!   "ample": [2, 5, 0],
//!   "labels": ["E1", "E2", "D"],
//!   "cone_model": "user-asserted"
//! }
//! ```
//!
//! Mukai vectors travel as `"r; c1,...,cρ; a"` and divisor classes as
//! `"c1,...,cρ"`; components are arbitrary-precision integers.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::lattice::{ConeModel, DivisorClass, IntersectionLattice, SurfaceContext};
use crate::mukai::MukaiVector;
use crate::{Error, Int, Result};

pub const FIXTURE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFixtureDoc {
    pub schema_version: u32,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub ample: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub cone_model: ConeModel,
}

impl SurfaceFixtureDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SurfaceFixtureDoc = serde_json::from_str(text)?;
        Ok(doc)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Validates the document and builds the surface context.
    pub fn to_context(&self) -> Result<SurfaceContext> {
        if self.schema_version != FIXTURE_SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}; expected {FIXTURE_SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        if self.gram.len() != self.rank {
            return Err(Error::Parse(format!(
                "gram has {} rows but rank is {}",
                self.gram.len(),
                self.rank
            )));
        }
        if self.ample.len() != self.rank {
            return Err(Error::Parse(format!(
                "ample vector has length {} but rank is {}",
                self.ample.len(),
                self.rank
            )));
        }
        let gram: Vec<Vec<Int>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&e| Int::from(e)).collect())
            .collect();
        let lattice = IntersectionLattice::new(gram, self.labels.clone())?;
        SurfaceContext::new(lattice, DivisorClass::from_i64s(&self.ample), self.cone_model)
    }
}

fn parse_int(text: &str, what: &str) -> Result<Int> {
    text.trim()
        .parse::<Int>()
        .map_err(|_| Error::Parse(format!("invalid integer {text:?} in {what}")))
}

/// Parses `"c1,...,cρ"`.
pub fn parse_divisor_class(text: &str, rank: usize) -> Result<DivisorClass> {
    let coords: Result<Vec<Int>> = text
        .split(',')
        .map(|p| parse_int(p, "divisor class"))
        .collect();
    let coords = coords?;
    if coords.len() != rank {
        return Err(Error::Parse(format!(
            "divisor class has {} coordinates but rank is {rank}",
            coords.len()
        )));
    }
    Ok(DivisorClass::new(coords))
}

/// Parses `"r; c1,...,cρ; a"`.
pub fn parse_mukai_vector(text: &str, rank: usize) -> Result<MukaiVector> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "Mukai vector {text:?} must have three ';'-separated fields"
        )));
    }
    let r = parse_int(parts[0], "Mukai rank")?;
    let xi = parse_divisor_class(parts[1], rank)?;
    let a = parse_int(parts[2], "Mukai Euler component")?;
    Ok(MukaiVector::new(r, xi, a))
}

/// Canonical rendering; `parse_mukai_vector` round-trips it.
pub fn format_mukai_vector(v: &MukaiVector) -> String {
    v.to_string()
}
