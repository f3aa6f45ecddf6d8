//! JSON encoding: matrices are arrays of rows of rational strings.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use swhw_core::arith::{format_rational, parse_rational};
use swhw_core::linalg::QMat;

use crate::complex::{dual, Cx, GMap};
use crate::error::{Error, Result};
use crate::sym::SymCx;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn matrix_to_json(m: &QMat) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|x| Value::String(format_rational(x))).collect())).collect())
}

pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<QMat> {
    let arr = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(bad(format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for row in arr {
        let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} columns, got {}", row.len())));
        }
        let parsed = row
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rational(s).map_err(Error::from),
                Value::Number(_) => parse_rational(&x.to_string()).map_err(Error::from),
                _ => Err(bad(format!("bad matrix entry {x}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Ok(if rows == 0 { QMat::zeros(0, cols) } else { QMat::from_rows(out) })
}

impl Cx {
    pub fn to_json(&self) -> Value {
        let dims: Vec<usize> = (self.lo()..self.hi()).map(|i| self.dim(i)).collect();
        let d: Vec<Value> = (self.lo()..self.hi() - 1).map(|i| matrix_to_json(&self.d(i))).collect();
        json!({ "lo": self.lo(), "dims": dims, "d": d })
    }

    pub fn from_json(v: &Value) -> Result<Cx> {
        let lo = v.get("lo").and_then(Value::as_i64).ok_or_else(|| bad("missing lo"))? as i32;
        let dims: Vec<usize> = v
            .get("dims")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing dims"))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad("dims must be nonnegative integers")))
            .collect::<Result<_>>()?;
        let empty = Vec::new();
        let ds = v.get("d").and_then(Value::as_array).unwrap_or(&empty);
        if ds.len() != dims.len().saturating_sub(1) {
            return Err(bad("need one differential between consecutive degrees"));
        }
        let diffs = ds.iter().enumerate().map(|(j, m)| matrix_from_json(m, dims[j + 1], dims[j])).collect::<Result<_>>()?;
        Cx::new(lo, dims, diffs)
    }
}

impl GMap {
    pub fn to_json(&self) -> Value {
        let comps: serde_json::Map<String, Value> = self.components().iter().map(|(i, m)| (i.to_string(), matrix_to_json(m))).collect();
        json!({ "deg": self.deg, "maps": comps })
    }

    pub fn from_json(v: &Value, src: &Cx, tgt: &Cx) -> Result<GMap> {
        let deg = v.get("deg").and_then(Value::as_i64).unwrap_or(0) as i32;
        let maps = v.get("maps").and_then(Value::as_object).ok_or_else(|| bad("missing maps"))?;
        let mut comps = BTreeMap::new();
        for (k, m) in maps {
            let i: i32 = k.parse().map_err(|_| bad(format!("bad degree {k}")))?;
            comps.insert(i, matrix_from_json(m, tgt.dim(i + deg), src.dim(i))?);
        }
        GMap::new(src, tgt, deg, comps)
    }
}

impl SymCx {
    pub fn to_json(&self) -> Value {
        json!({ "complex": self.k.to_json(), "q": self.q.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<SymCx> {
        let k = Cx::from_json(v.get("complex").ok_or_else(|| bad("missing complex"))?)?;
        let q = GMap::from_json(v.get("q").ok_or_else(|| bad("missing q"))?, &k, &dual(&k))?;
        SymCx::new(k, q)
    }
}
