//! JSON input format for actions.
//!
//! ```json
//! {"d": 2, "m": 1, "generators": [[["2"]], [["3"]]], "label": "x2x3"}
//! ```
//!
//! Entries may be strings (`"p/q"`, `"-7"`, `"0.25"`) or JSON numbers;
//! decimals are read exactly from their text. `d` and `m` are optional
//! but checked when present.

use std::fmt;

use num_traits::Zero;
use serde_json::{Map, Value};
use solenoid_core::action::{validate, SolenoidAction};
use solenoid_core::exact::{BigInt, Rat, RatPoly};
use solenoid_core::linalg::QMatrix;

/// A rejected input together with where it went wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    /// `line:column` for syntax errors, a JSON path otherwise.
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.source, self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(source: &str, location: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError {
        source: source.into(),
        location: location.into(),
        message: message.into(),
    }
}

/// Reads an exact rational from "p/q", an integer or a finite decimal.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| Rat::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let n: BigInt = format!("{}{}", int, frac).parse().ok()?;
    let ten = BigInt::from(10);
    let shift = exp - frac.len() as i32;
    let mut r = Rat::from_integer(n);
    if shift >= 0 {
        r *= Rat::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        r /= Rat::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if neg { -r } else { r })
}

fn entry(v: &Value) -> Option<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => parse_rat(&n.to_string()),
        _ => None,
    }
}

fn expect_usize(
    obj: &Map<String, Value>,
    key: &str,
    source: &str,
) -> Result<Option<usize>, ParseError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .filter(|&x| x >= 1)
            .map(|x| Some(x as usize))
            .ok_or_else(|| err(source, key, "expected a positive integer")),
    }
}

/// Parses and validates an action; `source` names the input in errors.
pub fn parse_action(text: &str, source: &str) -> Result<SolenoidAction, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        err(
            source,
            format!("{}:{}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| err(source, "$", "expected an object"))?;
    let d = expect_usize(obj, "d", source)?;
    let m = expect_usize(obj, "m", source)?;
    let label = match obj.get("label") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(err(source, "label", "expected a string")),
    };
    let gens = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| err(source, "generators", "expected an array of matrices"))?;
    if gens.is_empty() {
        return Err(err(
            source,
            "generators",
            "at least one generator is required",
        ));
    }
    let mut mats = Vec::with_capacity(gens.len());
    for (j, g) in gens.iter().enumerate() {
        let rows = g.as_array().ok_or_else(|| {
            err(
                source,
                format!("generators[{}]", j),
                "expected an array of rows",
            )
        })?;
        let size = m.unwrap_or(rows.len());
        if rows.len() != size || size == 0 {
            return Err(err(
                source,
                format!("generators[{}]", j),
                format!("expected {} rows, found {}", size, rows.len()),
            ));
        }
        let mut data = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            let path = format!("generators[{}][{}]", j, i);
            let row = row
                .as_array()
                .ok_or_else(|| err(source, &path, "expected an array of entries"))?;
            if row.len() != size {
                return Err(err(
                    source,
                    &path,
                    format!("expected {} entries, found {}", size, row.len()),
                ));
            }
            for (k, v) in row.iter().enumerate() {
                data.push(entry(v).ok_or_else(|| {
                    err(
                        source,
                        format!("{}[{}]", path, k),
                        format!("not a rational number: {}", v),
                    )
                })?);
            }
        }
        let mat = QMatrix::new(size, size, data)
            .map_err(|e| err(source, format!("generators[{}]", j), e.to_string()))?;
        if j > 0 && mat.rows() != mats.first().map_or(0, QMatrix::rows) {
            return Err(err(
                source,
                format!("generators[{}]", j),
                "generators differ in size",
            ));
        }
        mats.push(mat);
    }
    if let Some(d) = d {
        if d != mats.len() {
            return Err(err(
                source,
                "d",
                format!("d = {} but {} generators given", d, mats.len()),
            ));
        }
    }
    let action =
        SolenoidAction::new(mats, label).map_err(|e| err(source, "generators", e.to_string()))?;
    let v = validate(&action);
    if let Some(first) = v.diagnostics.first() {
        return Err(err(source, "generators", first.to_string()));
    }
    Ok(action)
}

/// "p/q", or "n" for integers.
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

pub fn poly_json(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(rat_string).collect()
}

pub fn matrix_json(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(rat_string).collect())
        .collect()
}

/// Serializes an action in the input schema.
pub fn action_json(a: &SolenoidAction) -> Value {
    let mut obj = Map::new();
    obj.insert("d".into(), a.d().into());
    obj.insert("m".into(), a.m().into());
    obj.insert(
        "generators".into(),
        serde_json::to_value(a.generators().iter().map(matrix_json).collect::<Vec<_>>()).unwrap(),
    );
    if let Some(l) = a.label() {
        obj.insert("label".into(), l.into());
    }
    Value::Object(obj)
}

/// Parses "1,-2,3" into an integer vector.
pub fn parse_vector(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("not an integer: {:?}", t))
        })
        .collect()
}
