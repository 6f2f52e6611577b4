//! The HFD file format: UTF-8 JSON, unknown fields rejected.
//!
//! ```json
//! {
//!   "genus": 1,
//!   "alpha": [["x"]],
//!   "beta": [["x"]],
//!   "regions": [{"genus": 0, "boundary": [[{"curve": "a", "index": 0, "arc": 0, "dir": 1}, ...]]}],
//!   "basepoint_region": 0
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{CurveKind, DiagramError, HeegaardDiagram, OrientedArc, Region};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HfdFile {
    pub genus: usize,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
    pub regions: Vec<HfdRegion>,
    pub basepoint_region: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HfdRegion {
    pub genus: u32,
    pub boundary: Vec<Vec<HfdArcRef>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HfdArcRef {
    pub curve: HfdCurve,
    pub index: usize,
    pub arc: usize,
    pub dir: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HfdCurve {
    #[serde(rename = "a")]
    Alpha,
    #[serde(rename = "b")]
    Beta,
}

impl HeegaardDiagram {
    pub fn from_hfd(file: &HfdFile) -> Result<Self, DiagramError> {
        let mut regions = Vec::with_capacity(file.regions.len());
        for (r, reg) in file.regions.iter().enumerate() {
            let mut boundary = Vec::with_capacity(reg.boundary.len());
            for cycle in &reg.boundary {
                let mut out = Vec::with_capacity(cycle.len());
                for a in cycle {
                    let forward = match a.dir {
                        1 => true,
                        -1 => false,
                        other => {
                            return Err(DiagramError::Malformed(format!(
                                "region {r}: arc dir must be +1 or -1, got {other}"
                            )))
                        }
                    };
                    let kind = match a.curve {
                        HfdCurve::Alpha => CurveKind::Alpha,
                        HfdCurve::Beta => CurveKind::Beta,
                    };
                    out.push(OrientedArc::new(kind, a.index, a.arc, forward));
                }
                boundary.push(out);
            }
            regions.push(Region {
                genus: reg.genus,
                boundary,
            });
        }
        HeegaardDiagram::new(
            file.genus,
            file.alpha.clone(),
            file.beta.clone(),
            regions,
            file.basepoint_region,
        )
    }

    pub fn to_hfd(&self) -> HfdFile {
        let names = |c: &Vec<usize>| c.iter().map(|&p| self.point_name(p).to_string()).collect();
        HfdFile {
            genus: self.genus(),
            alpha: self.alpha().iter().map(names).collect(),
            beta: self.beta().iter().map(names).collect(),
            regions: self
                .regions()
                .iter()
                .map(|r| HfdRegion {
                    genus: r.genus,
                    boundary: r
                        .boundary
                        .iter()
                        .map(|cycle| {
                            cycle
                                .iter()
                                .map(|oa| HfdArcRef {
                                    curve: match oa.arc.kind {
                                        CurveKind::Alpha => HfdCurve::Alpha,
                                        CurveKind::Beta => HfdCurve::Beta,
                                    },
                                    index: oa.arc.curve,
                                    arc: oa.arc.arc,
                                    dir: if oa.forward { 1 } else { -1 },
                                })
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
            basepoint_region: self.basepoint_region(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let file: HfdFile = serde_json::from_str(text).map_err(|e| DiagramError::Malformed(e.to_string()))?;
        Self::from_hfd(&file)
    }

    /// Canonical JSON text (pretty printed, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_hfd()).expect("HFD serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = r#"{"genus":1,"alpha":[["x"]],"beta":[["x"]],
        "regions":[{"genus":0,"boundary":[[
            {"curve":"a","index":0,"arc":0,"dir":1},
            {"curve":"b","index":0,"arc":0,"dir":1},
            {"curve":"a","index":0,"arc":0,"dir":-1},
            {"curve":"b","index":0,"arc":0,"dir":-1}]]}],
        "basepoint_region":0}"#;

    #[test]
    fn parses_and_reserializes() {
        let d = HeegaardDiagram::from_json(S3).unwrap();
        assert_eq!(d.num_points(), 1);
        let again = HeegaardDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = S3.replace("\"basepoint_region\":0", "\"basepoint_region\":0,\"colour\":1");
        assert!(matches!(
            HeegaardDiagram::from_json(&bad),
            Err(DiagramError::Malformed(_))
        ));
    }

    #[test]
    fn bad_direction_rejected() {
        let bad = S3.replacen("\"dir\":1", "\"dir\":2", 1);
        assert!(matches!(
            HeegaardDiagram::from_json(&bad),
            Err(DiagramError::Malformed(_))
        ));
    }

    #[test]
    fn dangling_arc_rejected() {
        let bad = S3.replacen("\"arc\":0", "\"arc\":3", 1);
        assert!(matches!(
            HeegaardDiagram::from_json(&bad),
            Err(DiagramError::Malformed(_))
        ));
    }

    #[test]
    fn truncated_file_rejected() {
        assert!(HeegaardDiagram::from_json(&S3[..S3.len() / 2]).is_err());
    }
}
