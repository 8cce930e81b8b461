//! JSON cone specifications with exact rational entries written as strings (`"3/2"`).

use serde::{Deserialize, Serialize};

use super::PolyhedralCone;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<String>>>,
}

fn parse_rows(rows: &[Vec<String>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|row| {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            row.iter()
                .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("not an exact rational: {s:?}"))))
                .collect()
        })
        .collect()
}

fn format_rows(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

impl ConeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    pub fn to_cone(&self) -> Result<PolyhedralCone<Rational>> {
        match (&self.generators, &self.inequalities) {
            (Some(g), None) => PolyhedralCone::from_generators_in(self.dim, &parse_rows(g, self.dim)?),
            (None, Some(h)) => PolyhedralCone::from_inequalities_in(self.dim, &parse_rows(h, self.dim)?),
            _ => Err(Error::InvalidInput("exactly one of generators or inequalities is required".into())),
        }
    }

    /// Canonical generator form of a cone.
    pub fn from_cone_generators(name: &str, cone: &PolyhedralCone<Rational>) -> Self {
        ConeSpec {
            name: name.to_string(),
            dim: cone.ambient_dim(),
            generators: Some(format_rows(&cone.generators())),
            inequalities: None,
        }
    }

    /// Canonical inequality form of a cone.
    pub fn from_cone_inequalities(name: &str, cone: &PolyhedralCone<Rational>) -> Self {
        ConeSpec {
            name: name.to_string(),
            dim: cone.ambient_dim(),
            generators: None,
            inequalities: Some(format_rows(&cone.inequalities())),
        }
    }
}
