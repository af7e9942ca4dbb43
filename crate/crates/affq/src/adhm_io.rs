//! JSON documents for ADHM quadruples and affine transforms.
//!
//! ```json
//! {"a": 1, "n": 1, "B1": [["5"]], "B2": [["7"]], "i": [["0"]], "j": [["0"]],
//!  "transform": ["1", "0", "0", "1", "0", "0"]}
//! ```
//!
//! Matrices are row-major lists of rationals written `"p/q"` (a bare integer,
//! string or number, is accepted too). `transform` is optional and lists
//! `g11, g12, g21, g22, g1, g2`.

use affq_core::adhm::{AdhmDatum, AffineTransform2, RatMatrix, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Serialize, Deserialize)]
pub struct DatumDoc {
    pub a: usize,
    pub n: usize,
    #[serde(rename = "B1")]
    pub b1: Vec<Vec<Value>>,
    #[serde(rename = "B2")]
    pub b2: Vec<Vec<Value>>,
    pub i: Vec<Vec<Value>>,
    pub j: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<Value>>,
}

pub fn parse_rational(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => s.trim().parse::<Rational>().map_err(|e| format!("bad rational {s:?}: {e}")),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| format!("non-integer JSON number {n}; write rationals as \"p/q\"")),
        other => Err(format!("expected a rational, got {other}")),
    }
}

fn matrix(name: &str, rows: &[Vec<Value>], r: usize, c: usize) -> Result<RatMatrix, String> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(format!("{name} must be {r}x{c}"));
    }
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    RatMatrix::from_rows(parsed, c).map_err(|e| e.to_string())
}

fn rows_of(m: &RatMatrix) -> Vec<Vec<Value>> {
    m.to_rows().iter().map(|row| row.iter().map(|x| Value::String(x.to_string())).collect()).collect()
}

impl DatumDoc {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed ADHM document: {e}"))
    }

    pub fn datum(&self) -> Result<AdhmDatum, String> {
        let (a, n) = (self.a, self.n);
        AdhmDatum::new(
            a,
            n,
            matrix("B1", &self.b1, a, a)?,
            matrix("B2", &self.b2, a, a)?,
            matrix("i", &self.i, a, n)?,
            matrix("j", &self.j, n, a)?,
        )
        .map_err(|e| e.to_string())
    }

    pub fn transform(&self) -> Result<Option<AffineTransform2>, String> {
        self.transform.as_ref().map(|g| transform_from_values(g)).transpose()
    }

    pub fn from_datum(d: &AdhmDatum) -> Self {
        Self {
            a: d.a(),
            n: d.n(),
            b1: rows_of(d.b1()),
            b2: rows_of(d.b2()),
            i: rows_of(d.i_map()),
            j: rows_of(d.j_map()),
            transform: None,
        }
    }
}

fn transform_from_values(g: &[Value]) -> Result<AffineTransform2, String> {
    let vals = g.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    let [g11, g12, g21, g22, g1, g2]: [Rational; 6] =
        vals.try_into().map_err(|_| String::from("a transform needs exactly six rationals"))?;
    AffineTransform2::new(g11, g12, g21, g22, g1, g2).map_err(|e| e.to_string())
}

/// `"g11,g12,g21,g22,g1,g2"`.
pub fn parse_transform(s: &str) -> Result<AffineTransform2, String> {
    let vals: Vec<Value> = s.split(',').map(|x| Value::String(x.trim().to_string())).collect();
    transform_from_values(&vals)
}

/// `"z,t;z,t"`, possibly empty.
pub fn parse_points(s: &str) -> Result<Vec<(Rational, Rational)>, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (z, t) = p.split_once(',').ok_or_else(|| format!("point {p:?} is not z,t"))?;
            let z = parse_rational(&Value::String(z.trim().into()))?;
            let t = parse_rational(&Value::String(t.trim().into()))?;
            Ok((z, t))
        })
        .collect()
}
