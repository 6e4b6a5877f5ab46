//! JSON and CSV dataset ingestion.
//!
//! JSON (canonical):
//!
//! ```json
//! {"field": "rational" | {"prime": P} | {"approx": EPS},
//!  "n": N,
//!  "samples": [{"s": "s1", "t": "t1", "value": ["<scalar>", ...]}, ...]}
//! ```
//!
//! CSV: header `s,t,x1,...,xN` (the `s` column is optional); field and
//! dimension are supplied by the caller.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{ApproxField, FieldSpec, PrimeField, Rationals, ScalarField};
use crate::sample::{SampleKey, SampleMap};

/// A sample map whose field is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMap {
    Rational(SampleMap<Rationals>),
    Prime(SampleMap<PrimeField>),
    Approx(SampleMap<ApproxField<f64>>),
}

impl AnyMap {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyMap::Rational(m) => m.field().spec(),
            AnyMap::Prime(m) => m.field().spec(),
            AnyMap::Approx(m) => m.field().spec(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMap::Rational(m) => map_to_json(m),
            AnyMap::Prime(m) => map_to_json(m),
            AnyMap::Approx(m) => map_to_json(m),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Named(String),
    Prime { prime: u64 },
    Approx { approx: f64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRepr {
    #[serde(default)]
    s: Option<String>,
    t: String,
    value: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetRepr {
    field: FieldRepr,
    n: usize,
    samples: Vec<SampleRepr>,
}

/// Serialized form of a key, shared by the dataset and signature formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyRepr {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<String>,
    pub t: String,
}

impl From<&SampleKey> for KeyRepr {
    fn from(k: &SampleKey) -> Self {
        KeyRepr { s: k.s.clone(), t: k.t.clone() }
    }
}

pub fn field_to_json(spec: FieldSpec) -> Value {
    match spec {
        FieldSpec::Rational => json!("rational"),
        FieldSpec::Prime(p) => json!({ "prime": p }),
        FieldSpec::Approx(eps) => json!({ "approx": eps }),
    }
}

pub fn map_to_json<F: ScalarField>(map: &SampleMap<F>) -> Value {
    let f = map.field();
    let samples: Vec<Value> = map
        .iter()
        .map(|(k, v)| {
            let value: Vec<String> = v.iter().map(|x| f.format(x)).collect();
            match &k.s {
                Some(s) => json!({ "s": s, "t": k.t, "value": value }),
                None => json!({ "t": k.t, "value": value }),
            }
        })
        .collect();
    json!({ "field": field_to_json(f.spec()), "n": map.n(), "samples": samples })
}

/// Parses text rows into a typed map.
pub fn map_from_text<F: ScalarField>(field: F, n: usize, rows: Vec<(SampleKey, Vec<String>)>) -> Result<SampleMap<F>> {
    let parsed = rows
        .into_iter()
        .map(|(key, value)| {
            if value.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: value.len() });
            }
            let v = value.iter().map(|x| field.parse(x.trim())).collect::<Result<Vec<_>>>()?;
            Ok((key, v))
        })
        .collect::<Result<Vec<_>>>()?;
    SampleMap::new(field, n, parsed)
}

/// Builds a map over the field named by `spec`.
pub fn any_map_from_text(spec: FieldSpec, n: usize, rows: Vec<(SampleKey, Vec<String>)>) -> Result<AnyMap> {
    Ok(match spec.validate()? {
        FieldSpec::Rational => AnyMap::Rational(map_from_text(Rationals, n, rows)?),
        FieldSpec::Prime(p) => AnyMap::Prime(map_from_text(PrimeField::new(p)?, n, rows)?),
        FieldSpec::Approx(eps) => AnyMap::Approx(map_from_text(ApproxField::new(eps)?, n, rows)?),
    })
}

pub fn parse_json(text: &str) -> Result<AnyMap> {
    let repr: DatasetRepr = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let spec = match repr.field {
        FieldRepr::Named(name) if name == "rational" => FieldSpec::Rational,
        FieldRepr::Named(name) => return Err(Error::InvalidField(format!("unknown field {name:?}"))),
        FieldRepr::Prime { prime } => FieldSpec::prime(prime)?,
        FieldRepr::Approx { approx } => FieldSpec::approx(approx)?,
    };
    let rows = repr.samples.into_iter().map(|s| (SampleKey { s: s.s, t: s.t }, s.value)).collect();
    any_map_from_text(spec, repr.n, rows)
}

pub fn parse_csv(text: &str, spec: FieldSpec, n: usize) -> Result<AnyMap> {
    let schema = |e: csv::Error| Error::Schema(e.to_string());
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().map_err(schema)?.iter().map(str::to_string).collect();
    let has_s = header.first().map(String::as_str) == Some("s");
    let offset = if has_s { 2 } else { 1 };
    let mut expected: Vec<String> = Vec::new();
    if has_s {
        expected.push("s".into());
    }
    expected.push("t".into());
    expected.extend((1..=n).map(|i| format!("x{i}")));
    if header != expected {
        return Err(Error::Schema(format!("expected header {:?}, found {:?}", expected.join(","), header.join(","))));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(schema)?;
        let s = if has_s { Some(record[0].to_string()).filter(|s| !s.is_empty()) } else { None };
        let t = record[offset - 1].to_string();
        let value = record.iter().skip(offset).map(str::to_string).collect();
        rows.push((SampleKey { s, t }, value));
    }
    any_map_from_text(spec, n, rows)
}

/// CSV field and dimension, required only for CSV input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvOptions {
    pub field: FieldSpec,
    pub n: usize,
}

/// Loads a dataset from disk. Files ending in `.csv` are read as CSV,
/// everything else as JSON.
pub fn load_path(path: &Path, csv: Option<CsvOptions>) -> Result<AnyMap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let is_csv = path.extension().and_then(|e| e.to_str()).is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let opts = csv.ok_or_else(|| Error::Schema("CSV input needs --field and --dim".into()))?;
        parse_csv(&text, opts.field, opts.n)
    } else {
        parse_json(&text)
    }
}
