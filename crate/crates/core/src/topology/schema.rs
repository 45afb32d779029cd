//! Structured-text surface files.
//!
//! ```json
//! {
//!   "genus": 1,
//!   "punctures": 1,
//!   "orientation": "ccw",
//!   "triangles": [[0, 1, 2], [0, 1, 2]],
//!   "curves": [
//!     { "name": "t", "crossings": [1, 2] },
//!     { "name": "w", "start": [0, 1], "turns": "RL" }
//!   ],
//!   "pants": {
//!     "curves": [{ "name": "s" }],
//!     "pants": [{ "legs": [{ "curve": 0 }, { "curve": 0 }, { "boundary": 0 }] }]
//!   }
//! }
//! ```
//!
//! Indices are 0-based. `orientation` is `"ccw"` (default) or `"cw"`; in the
//! latter case every triangle is reversed on load. A curve is either a cyclic
//! list of crossed edges or an explicit start side plus a turn string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::curve::{CurvePath, Turn};
use super::pants::{CutCurve, Pants, PantsDecomposition};
use super::surface::Surface;
use super::triangulation::Triangulation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Default for Orientation {
    fn default() -> Self {
        Orientation::Ccw
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossings: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turns: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsSpec {
    pub curves: Vec<CutCurve>,
    pub pants: Vec<Pants>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub genus: u32,
    pub punctures: u32,
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default)]
    pub triangles: Vec<[usize; 3]>,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pants: Option<PantsSpec>,
}

/// A loaded and validated surface file.
#[derive(Debug, Clone)]
pub struct SurfaceData {
    pub surface: Surface,
    pub triangulation: Option<Triangulation>,
    pub curves: BTreeMap<String, CurvePath>,
    pub pants: Option<PantsDecomposition>,
}

pub fn parse_turns(s: &str) -> Result<Vec<Turn>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'L' | 'l' => Ok(Turn::Left),
            'R' | 'r' => Ok(Turn::Right),
            other => Err(Error::Parse(format!("turn `{other}` is neither L nor R"))),
        })
        .collect()
}

impl SurfaceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface file serializes")
    }

    pub fn load(&self) -> Result<SurfaceData> {
        let surface = Surface::new(self.genus, self.punctures)?;
        let triangulation = if self.triangles.is_empty() {
            None
        } else {
            let tris = self
                .triangles
                .iter()
                .map(|&[a, b, c]| match self.orientation {
                    Orientation::Ccw => [a, b, c],
                    Orientation::Cw => [c, b, a],
                })
                .collect();
            Some(Triangulation::new(surface, tris)?)
        };
        let mut curves = BTreeMap::new();
        for spec in &self.curves {
            let tri = triangulation
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("curve {} needs triangles", spec.name)))?;
            let path = match (&spec.crossings, &spec.start, &spec.turns) {
                (Some(seq), None, None) => CurvePath::from_crossings(tri, seq)?,
                (None, Some([t, s]), Some(turns)) => {
                    CurvePath::from_turns(tri, (*t, *s), &parse_turns(turns)?)?
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "curve {} needs either `crossings` or `start` with `turns`",
                        spec.name
                    )))
                }
            };
            if curves.insert(spec.name.clone(), path).is_some() {
                return Err(Error::Parse(format!("duplicate curve name {}", spec.name)));
            }
        }
        let pants = match &self.pants {
            None => None,
            Some(p) => Some(PantsDecomposition::new(
                surface,
                p.curves.clone(),
                p.pants.clone(),
            )?),
        };
        Ok(SurfaceData {
            surface,
            triangulation,
            curves,
            pants,
        })
    }

    /// The file describing a triangulation and named curves.
    pub fn from_parts(
        tri: &Triangulation,
        curves: &BTreeMap<String, CurvePath>,
        pants: Option<&PantsDecomposition>,
    ) -> Self {
        let s = tri.surface();
        Self {
            genus: s.genus,
            punctures: s.punctures,
            orientation: Orientation::Ccw,
            triangles: tri.triangles().to_vec(),
            curves: curves
                .iter()
                .map(|(name, p)| CurveSpec {
                    name: name.clone(),
                    crossings: None,
                    start: Some([p.start.0, p.start.1]),
                    turns: Some(p.turns().iter().map(|t| t.as_char()).collect()),
                })
                .collect(),
            pants: pants.map(|pd| PantsSpec {
                curves: pd.curves.clone(),
                pants: pd.pants.clone(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C11: &str = r#"{
        "genus": 1, "punctures": 1,
        "triangles": [[0, 1, 2], [0, 1, 2]],
        "curves": [{ "name": "t", "crossings": [1, 2] }],
        "pants": {
            "curves": [{ "name": "s" }],
            "pants": [{ "legs": [{ "curve": 0 }, { "curve": 0 }, { "boundary": 0 }] }]
        }
    }"#;

    #[test]
    fn loads_and_round_trips() {
        let f = SurfaceFile::from_json(C11).unwrap();
        let d = f.load().unwrap();
        let tri = d.triangulation.unwrap();
        assert_eq!(tri.num_edges(), 3);
        assert!(d.pants.is_some());
        let back = SurfaceFile::from_parts(&tri, &d.curves, d.pants.as_ref());
        let d2 = SurfaceFile::from_json(&back.to_json()).unwrap().load().unwrap();
        assert_eq!(d2.curves, d.curves);
    }

    #[test]
    fn reports_parse_errors() {
        assert!(matches!(SurfaceFile::from_json("{"), Err(Error::Parse(_))));
        let bad = r#"{"genus":1,"punctures":1,"triangles":[[0,1,2],[0,1,1]]}"#;
        assert!(SurfaceFile::from_json(bad).unwrap().load().is_err());
        let bad = r#"{"genus":1,"punctures":1,"triangles":[[0,1,2],[0,1,2]],
            "curves":[{"name":"x","start":[0,0],"turns":"Q"}]}"#;
        assert!(SurfaceFile::from_json(bad).unwrap().load().is_err());
    }
}
