use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::coeff::CoefficientField;
use super::grid::BoxGrid;
use crate::error::{Error, Result};

/// Coefficient configuration file: `{kind, params, box: {L, N}}`.
///
/// `kind` is one of the [`CoefficientField`] kinds, applied to all three axes, or
/// `"fields"` with `params = {"a": [a_1, a_2, a_3]}` giving each axis separately.
/// The optional `robin` and `truncation` blocks feed the Robin and unbounded checkers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientConfig {
    pub kind: String,
    #[serde(default)]
    pub params: Value,
    #[serde(rename = "box")]
    pub grid: BoxGrid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub robin: Option<RobinConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Truncation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobinConfig {
    /// Robin coefficient on the boundary.
    pub a: CoefficientField,
    /// Trace constant; estimated when absent unless `estimate` is false.
    #[serde(default)]
    pub trace_constant: Option<f64>,
    #[serde(default = "yes")]
    pub estimate: bool,
    #[serde(default = "nine")]
    pub estimate_points: usize,
}

fn yes() -> bool {
    true
}

fn nine() -> usize {
    9
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PerAxis {
    a: [CoefficientField; 3],
}

impl CoefficientConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))?;
        c.grid.validate()?;
        c.fields()?;
        Ok(c)
    }

    pub fn fields(&self) -> Result<[CoefficientField; 3]> {
        let bad = |e: serde_json::Error| Error::InvalidInput(format!("config params: {e}"));
        if self.kind == "fields" {
            let p: PerAxis = serde_json::from_value(self.params.clone()).map_err(bad)?;
            return Ok(p.a);
        }
        let mut obj = match &self.params {
            Value::Object(m) => m.clone(),
            Value::Null => Map::new(),
            _ => return Err(Error::InvalidInput("config params must be an object".into())),
        };
        obj.insert("kind".into(), Value::String(self.kind.clone()));
        let f: CoefficientField = serde_json::from_value(Value::Object(obj)).map_err(bad)?;
        Ok([f.clone(), f.clone(), f])
    }
}
