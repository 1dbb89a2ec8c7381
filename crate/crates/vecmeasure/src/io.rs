//! JSON schemas for measures, sets, norms, zonal measures, polygons and
//! scenarios, plus the conversions to and from the domain types.

use serde::{Deserialize, Serialize};

use crate::convergence::{builtin_scenario, BuiltinParams, Scenario};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, DualVector, Vector};
use crate::measures::{Atom, AxisBox, MeasurableSet, VectorMeasure};
use crate::norms::{Seminorm, ZonalMeasure};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomJson {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureJson {
    pub space_dim: usize,
    pub dim: usize,
    pub atoms: Vec<AtomJson>,
}

impl MeasureJson {
    pub fn to_measure(&self) -> Result<VectorMeasure> {
        VectorMeasure::new(
            self.space_dim,
            self.dim,
            self.atoms
                .iter()
                .map(|a| Ok((a.x.clone(), Vector::new(a.v.clone())?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn from_measure(m: &VectorMeasure) -> Self {
        Self {
            space_dim: m.space_dim(),
            dim: m.dim(),
            atoms: m
                .atoms()
                .iter()
                .map(|a: &Atom| AtomJson { x: a.site.clone(), v: a.value.coords().to_vec() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxJson {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// {"all":true} | {"boxes":[...]} | {"sites":[...]}
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum SetJson {
    #[serde(rename = "all")]
    All(bool),
    #[serde(rename = "boxes")]
    Boxes(Vec<BoxJson>),
    #[serde(rename = "sites")]
    Sites(Vec<Vec<f64>>),
}

impl SetJson {
    pub fn to_set(&self) -> Result<MeasurableSet> {
        Ok(match self {
            SetJson::All(true) => MeasurableSet::All,
            SetJson::All(false) => {
                return Err(Error::Invalid("{\"all\": false} is not a set".into()))
            }
            SetJson::Boxes(boxes) => MeasurableSet::Boxes(
                boxes
                    .iter()
                    .map(|b| {
                        if b.lo.len() != b.hi.len() {
                            return Err(Error::DimMismatch {
                                expected: b.lo.len(),
                                got: b.hi.len(),
                            });
                        }
                        Ok(AxisBox { lo: b.lo.clone(), hi: b.hi.clone() })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            SetJson::Sites(sites) => MeasurableSet::Sites(sites.clone()),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonJson {
    pub vertices: Vec<Vec<f64>>,
}

impl PolygonJson {
    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::from_points(
            &self
                .vertices
                .iter()
                .map(|v| Vector::new(v.clone()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn from_polygon(p: &ConvexPolygon) -> Self {
        Self { vertices: p.vertices().iter().map(|v| v.coords().to_vec()).collect() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZonalAtomJson {
    pub eta: Vec<f64>,
    pub weight: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZonalJson {
    pub atoms: Vec<ZonalAtomJson>,
}

impl ZonalJson {
    pub fn to_zonal(&self) -> Result<ZonalMeasure> {
        ZonalMeasure::new(
            self.atoms
                .iter()
                .map(|a| Ok((DualVector::new(a.eta.clone())?, a.weight)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn from_zonal(z: &ZonalMeasure) -> Self {
        Self {
            atoms: z
                .atoms()
                .iter()
                .map(|(e, w)| ZonalAtomJson { eta: e.coords().to_vec(), weight: *w })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinParamsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<f64>>,
}

/// Either an explicit sequence-plus-limit or a named builtin.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScenarioJson {
    Explicit {
        name: String,
        norm: Seminorm,
        sequence: Vec<MeasureJson>,
        limit: MeasureJson,
    },
    Builtin {
        builtin: String,
        #[serde(default)]
        params: BuiltinParamsJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        norm: Option<Seminorm>,
        #[serde(rename = "N")]
        n: usize,
    },
}

impl ScenarioJson {
    pub fn to_scenario(&self) -> Result<Scenario> {
        match self {
            ScenarioJson::Explicit { name, norm, sequence, limit } => {
                norm.validate()?;
                let s = Scenario {
                    name: name.clone(),
                    norm: norm.clone(),
                    sequence: sequence
                        .iter()
                        .map(|m| m.to_measure())
                        .collect::<Result<Vec<_>>>()?,
                    limit: limit.to_measure()?,
                };
                s.validate()?;
                Ok(s)
            }
            ScenarioJson::Builtin { builtin, params, norm, n } => {
                let norm = norm.clone().unwrap_or(Seminorm::Euclidean);
                norm.validate()?;
                builtin_scenario(
                    builtin,
                    &BuiltinParams {
                        v: params.v.clone(),
                        w: params.w.clone(),
                        x: params.x.clone(),
                        u: params.u.clone(),
                    },
                    norm,
                    *n,
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_schema_roundtrip() {
        let text = r#"{"space_dim":1,"dim":2,"atoms":[{"x":[0.0],"v":[1.0,0.0]},{"x":[1.0],"v":[0.0,1.0]}]}"#;
        let parsed: MeasureJson = serde_json::from_str(text).unwrap();
        let mu = parsed.to_measure().unwrap();
        assert_eq!(mu.atoms().len(), 2);
        let back = MeasureJson::from_measure(&mu);
        let reparsed: MeasureJson = serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(reparsed.to_measure().unwrap(), mu);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"kind":"euclidean","extra":1}"#;
        assert!(serde_json::from_str::<Seminorm>(text).is_err());
        let text = r#"{"space_dim":1,"dim":2,"atoms":[],"bogus":0}"#;
        assert!(serde_json::from_str::<MeasureJson>(text).is_err());
    }

    #[test]
    fn norm_schema_kinds() {
        for text in [
            r#"{"kind":"euclidean"}"#,
            r#"{"kind":"lp","p":2.5}"#,
            r#"{"kind":"lp","p":1.0,"weights":[1.0,2.0]}"#,
            r#"{"kind":"polygonal","generators":[[1.0,0.0],[0.0,1.0]]}"#,
            r#"{"kind":"sum_of_circles"}"#,
        ] {
            let n: Seminorm = serde_json::from_str(text).unwrap();
            n.validate().unwrap();
        }
    }

    #[test]
    fn set_schema_variants() {
        let all: SetJson = serde_json::from_str(r#"{"all":true}"#).unwrap();
        assert!(matches!(all.to_set().unwrap(), MeasurableSet::All));
        let boxes: SetJson =
            serde_json::from_str(r#"{"boxes":[{"lo":[0.0],"hi":[1.0]}]}"#).unwrap();
        assert!(boxes.to_set().unwrap().contains(&[0.5]));
        let sites: SetJson = serde_json::from_str(r#"{"sites":[[1.0,2.0]]}"#).unwrap();
        assert!(sites.to_set().unwrap().contains(&[1.0, 2.0]));
    }

    #[test]
    fn scenario_builtin_schema() {
        let text = r#"{"builtin":"dirac_split","params":{},"norm":{"kind":"lp","p":1.0},"N":5}"#;
        let s: ScenarioJson = serde_json::from_str(text).unwrap();
        let scenario = s.to_scenario().unwrap();
        assert_eq!(scenario.sequence.len(), 5);
    }
}
