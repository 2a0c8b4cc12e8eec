//! Law files: `{"1,0": "1", "0,1": "1", "1,1": "-b", "cap": 6}`.

use std::collections::BTreeMap;

use serde_json::{Map, Value};
use thiserror::Error;

use super::{make_from_coeffs, FglError, FormalGroupLaw, SERIES_MASK};
use crate::poly::{parse_poly, Poly};

#[derive(Debug, Error)]
pub enum FglFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("law file must be a JSON object")]
    NotObject,
    #[error("missing or invalid \"cap\"")]
    Cap,
    #[error("bad key {0:?}; expected \"i,j\"")]
    Key(String),
    #[error("bad coefficient for {key}: {msg}")]
    Coefficient { key: String, msg: String },
    #[error(transparent)]
    Law(#[from] FglError),
}

pub fn law_from_json(text: &str) -> Result<FormalGroupLaw, FglFileError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or(FglFileError::NotObject)?;
    let cap = obj.get("cap").and_then(Value::as_u64).ok_or(FglFileError::Cap)? as u32;
    let mut table = BTreeMap::new();
    for (key, v) in obj {
        if key == "cap" {
            continue;
        }
        let (i, j) = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<u32>().ok()?, b.trim().parse::<u32>().ok()?)))
            .ok_or_else(|| FglFileError::Key(key.clone()))?;
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(FglFileError::Coefficient { key: key.clone(), msg: "expected a string".into() }),
        };
        let c = parse_poly(&text).map_err(|e| FglFileError::Coefficient { key: key.clone(), msg: e.to_string() })?;
        table.insert((i, j), c);
    }
    Ok(make_from_coeffs(&table, cap)?)
}

pub fn law_to_json(f: &FormalGroupLaw) -> Value {
    let mut obj = Map::new();
    for (m, c) in f.series().coefficients_in(SERIES_MASK) {
        let (i, j) = (m.exponent(crate::poly::Var::U), m.exponent(crate::poly::Var::V));
        obj.insert(format!("{i},{j}"), Value::String(c.to_string()));
    }
    obj.insert("cap".into(), Value::from(f.cap()));
    Value::Object(obj)
}

impl FormalGroupLaw {
    /// Coefficient table as read back from [`law_to_json`].
    pub fn coefficient_table(&self) -> BTreeMap<(u32, u32), Poly> {
        self.series()
            .coefficients_in(SERIES_MASK)
            .into_iter()
            .map(|(m, c)| ((m.exponent(crate::poly::Var::U), m.exponent(crate::poly::Var::V)), c))
            .collect()
    }
}
