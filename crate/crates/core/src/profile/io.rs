//! JSON encoding of profiles.
//!
//! Square classes are written as rational representatives (`"-1"`, `"3/2"`). Classes in
//! `H^2` are `null`, a list of places over `Q` (`["2", "inf"]`), or `0`/`1`/`true`/`false`
//! over a local field.

use serde_json::{json, Value};

use super::{CohomProfile, LefschetzData};
use crate::coh::{BaseField, H2Class, Place, SquareClass};
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(obj: &'a Value, key: &'static str) -> Result<&'a Value> {
    obj.get(key).ok_or(Error::MissingInput(key))
}

fn int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("{what}: expected an integer, got {v}")))
}

fn int_list(v: &Value, what: &str) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))?
        .iter()
        .map(|x| int(x, what))
        .collect()
}

fn square(field: BaseField, v: &Value) -> Result<SquareClass> {
    match v {
        Value::String(s) => SquareClass::parse(field, s),
        Value::Number(_) => SquareClass::parse(field, &v.to_string()),
        _ => Err(parse_err(format!("expected a square class representative, got {v}"))),
    }
}

fn square_list(field: BaseField, v: &Value, what: &str) -> Result<Vec<SquareClass>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))?
        .iter()
        .map(|x| square(field, x))
        .collect()
}

fn h2(field: BaseField, v: &Value) -> Result<Option<H2Class>> {
    let class = match v {
        Value::Null => return Ok(None),
        Value::Bool(b) => H2Class::from_bit(field, *b)?,
        Value::Number(_) => H2Class::parse(field, &v.to_string())?,
        Value::String(s) => H2Class::parse(field, s)?,
        Value::Array(items) => {
            let names: Vec<String> = items
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(_) => Ok(x.to_string()),
                    _ => Err(parse_err(format!("bad place {x}"))),
                })
                .collect::<Result<_>>()?;
            if field == BaseField::Rationals {
                let places = names.iter().map(|s| s.parse::<Place>()).collect::<Result<Vec<_>>>()?;
                H2Class::from_places(places)?
            } else {
                // A local class given by places: only the place of the field itself counts.
                let places = names.iter().map(|s| s.parse::<Place>()).collect::<Result<Vec<_>>>()?;
                let hits = places.iter().filter(|p| p.completion().ok() == Some(field)).count();
                H2Class::from_bit(field, hits % 2 == 1)?
            }
        }
        Value::Object(_) => return Err(parse_err("an H^2 class cannot be an object")),
    };
    Ok(Some(class))
}

fn h2_json(x: &Option<H2Class>) -> Value {
    match x {
        None => Value::Null,
        Some(c) => match (c.places(), c.bit()) {
            (Some(places), _) => Value::Array(places.iter().map(|p| Value::String(p.to_string())).collect()),
            (None, Some(b)) => json!(u8::from(b)),
            _ => Value::Null,
        },
    }
}

impl CohomProfile {
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let field: BaseField = match v.get("field") {
            None => BaseField::Rationals,
            Some(Value::String(s)) => s.parse()?,
            Some(other) => return Err(parse_err(format!("field: expected a string, got {other}"))),
        };
        let n = int(get(v, "n")?, "n")?;
        if n < 0 {
            return Err(parse_err("n must be nonnegative"));
        }
        let hodge = get(v, "hodge")?
            .as_array()
            .ok_or_else(|| parse_err("hodge: expected an array of rows"))?
            .iter()
            .map(|row| int_list(row, "hodge"))
            .collect::<Result<Vec<_>>>()?;
        let ell = int(get(v, "ell")?, "ell")?;
        if ell < 2 {
            return Err(Error::InvalidPrime(ell.max(0) as u64));
        }
        let lef = match v.get("lef") {
            None | Some(Value::Null) => None,
            Some(l) => Some(LefschetzData {
                prim_dims: int_list(get(l, "prim_dims")?, "prim_dims")?,
                prim_dets: square_list(field, get(l, "prim_dets")?, "prim_dets")?,
            }),
        };
        let profile = CohomProfile {
            n: n as usize,
            betti: int_list(get(v, "betti")?, "betti")?,
            hodge,
            d_x: square(field, get(v, "dX")?)?,
            eq_chars: square_list(field, get(v, "eq")?, "eq")?,
            hw2_in: h2(field, v.get("hw2").unwrap_or(&Value::Null))?,
            sw2_in: h2(field, v.get("sw2").unwrap_or(&Value::Null))?,
            ell: ell as u64,
            field,
            lef,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json(&self) -> Value {
        let squares = |xs: &[SquareClass]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut v = json!({
            "n": self.n,
            "betti": self.betti,
            "hodge": self.hodge,
            "dX": self.d_x.to_string(),
            "eq": squares(&self.eq_chars),
            "hw2": h2_json(&self.hw2_in),
            "sw2": h2_json(&self.sw2_in),
            "ell": self.ell,
            "field": self.field.to_string(),
        });
        if let Some(lef) = &self.lef {
            v["lef"] = json!({ "prim_dims": lef.prim_dims, "prim_dets": squares(&lef.prim_dets) });
        }
        v
    }
}
