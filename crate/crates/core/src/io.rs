//! JSON file formats. Rationals are always strings (`"p/q"` or integers).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fnspace::{ExtValue, FnOnX};
use crate::magma::{FiniteMetricMagma, MetricTable};
use crate::rational::{self, Rational};

fn from_json<'a, T: Deserialize<'a>>(what: &str, text: &'a str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("{what} line {} column {}", e.line(), e.column()), e.to_string()))
}

fn parse_at(field: String, s: &str) -> Result<Rational> {
    rational::parse(s).map_err(|_| Error::parse(field, format!("bad rational {s:?}")))
}

fn parse_matrix(field: &str, rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_at(format!("{field}[{i}][{j}]"), s))
                .collect()
        })
        .collect()
}

fn format_matrix(m: &MetricTable) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(rational::format).collect()).collect()
}

/// `{"n": int, "labels": [string]?, "law": [[int]], "metric": [[string]]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MagmaFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub law: Vec<Vec<usize>>,
    pub metric: Vec<Vec<String>>,
}

pub fn parse_magma(text: &str) -> Result<FiniteMetricMagma> {
    let file: MagmaFile = from_json("magma", text)?;
    if file.metric.len() != file.n {
        return Err(Error::invariant("metric", format!("has {} rows, expected n = {}", file.metric.len(), file.n)));
    }
    let metric = MetricTable::new(parse_matrix("metric", &file.metric)?)?;
    let m = FiniteMetricMagma::new(metric, file.law)?;
    match file.labels {
        Some(l) => m.with_labels(l),
        None => Ok(m),
    }
}

pub fn magma_to_json(m: &FiniteMetricMagma) -> String {
    let file = MagmaFile {
        n: m.len(),
        labels: m.labels().map(<[String]>::to_vec),
        law: m.law().to_vec(),
        metric: format_matrix(m.metric()),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// `{"n": int, "values": ["p/q" | "+inf", ...]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub n: usize,
    pub values: Vec<String>,
}

pub fn parse_function(text: &str) -> Result<FnOnX> {
    let file: FunctionFile = from_json("function", text)?;
    function_from_file(&file)
}

pub fn function_from_file(file: &FunctionFile) -> Result<FnOnX> {
    if file.values.len() != file.n {
        return Err(Error::invariant("values", format!("has {} entries, expected n = {}", file.values.len(), file.n)));
    }
    let values = file
        .values
        .iter()
        .enumerate()
        .map(|(i, s)| ExtValue::parse(s).map_err(|_| Error::parse(format!("values[{i}]"), format!("bad value {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    FnOnX::new(values)
}

pub fn function_to_json(f: &FnOnX) -> String {
    serde_json::to_string(f).expect("serializable")
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn ser_ext<S: Serializer>(v: &ExtValue, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.serialize(s)
}

impl Serialize for FnOnX {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionFile { n: self.len(), values: self.values().iter().map(ToString::to_string).collect() }.serialize(s)
    }
}

/// `{"n": int, "metric": [[...]], "subset": [int], "values": ["p/q"]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub n: usize,
    pub metric: Vec<Vec<String>>,
    pub subset: Vec<usize>,
    pub values: Vec<String>,
}

pub fn parse_subspace(text: &str) -> Result<crate::katetov::SubspaceFn> {
    let file: SubspaceFile = from_json("subspace", text)?;
    if file.metric.len() != file.n {
        return Err(Error::invariant("metric", format!("expected n = {} rows", file.n)));
    }
    let metric = MetricTable::new(parse_matrix("metric", &file.metric)?)?;
    let values = file
        .values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_at(format!("values[{i}]"), s))
        .collect::<Result<Vec<_>>>()?;
    crate::katetov::SubspaceFn::new(metric, file.subset, values)
}

/// Periodic sequences reuse the function format, one value per residue.
pub fn parse_cyclic(text: &str) -> Result<crate::zline::CyclicSeq> {
    let f = parse_function(text)?;
    let values = f.finite_values()?.into_iter().cloned().collect();
    crate::zline::CyclicSeq::new(values)
}

pub fn cyclic_to_file(s: &crate::zline::CyclicSeq) -> FunctionFile {
    FunctionFile { n: s.period(), values: s.values().iter().map(rational::format).collect() }
}

pub fn cofinite_to_file(s: &crate::zline::CofiniteSeq) -> CofiniteFile {
    CofiniteFile {
        default: rational::format(s.default_value()),
        values: s.exceptions().iter().map(|(k, v)| (k.to_string(), rational::format(v))).collect(),
    }
}

/// `{"default": "p/q", "values": {"<index>": "p/q", ...}}` for cofinite
/// sequences on the integers.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CofiniteFile {
    pub default: String,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
}

pub fn parse_cofinite(text: &str) -> Result<crate::zline::CofiniteSeq> {
    let file: CofiniteFile = from_json("sequence", text)?;
    let default = parse_at("default".into(), &file.default)?;
    let mut exceptions = BTreeMap::new();
    for (k, v) in &file.values {
        let idx: i64 = k.trim().parse().map_err(|_| Error::parse(format!("values.{k}"), "index must be an integer"))?;
        exceptions.insert(idx, parse_at(format!("values.{k}"), v)?);
    }
    Ok(crate::zline::CofiniteSeq::new(default, exceptions))
}

pub fn cofinite_to_json(s: &crate::zline::CofiniteSeq) -> String {
    serde_json::to_string(&cofinite_to_file(s)).expect("serializable")
}

/// `{"breakpoints": [["x", "v"], ...]}`; tail slopes -1 and +1 implicit.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlFile {
    pub breakpoints: Vec<(String, String)>,
}

pub fn parse_pl(text: &str) -> Result<crate::plcone::PlKatetovFn> {
    let file: PlFile = from_json("pl", text)?;
    let pts = file
        .breakpoints
        .iter()
        .enumerate()
        .map(|(i, (x, v))| Ok((parse_at(format!("breakpoints[{i}][0]"), x)?, parse_at(format!("breakpoints[{i}][1]"), v)?)))
        .collect::<Result<Vec<_>>>()?;
    crate::plcone::PlKatetovFn::new(pts)
}

pub fn pl_to_file(f: &crate::plcone::PlKatetovFn) -> PlFile {
    PlFile {
        breakpoints: f.breakpoints().iter().map(|(x, v)| (rational::format(x), rational::format(v))).collect(),
    }
}

pub fn pl_to_json(f: &crate::plcone::PlKatetovFn) -> String {
    serde_json::to_string(&pl_to_file(f)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn magma_roundtrip_with_labels() {
        let text = r#"{"n": 2, "labels": ["e", "s"], "law": [[0,1],[1,0]], "metric": [["0","1/2"],["1/2","0"]]}"#;
        let m = parse_magma(text).unwrap();
        assert_eq!(m.dist(0, 1), &ratio(1, 2));
        assert_eq!(m.labels().unwrap()[1], "s");
        assert_eq!(parse_magma(&magma_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn magma_diagnostics_name_fields() {
        let bad_rat = r#"{"n": 2, "law": [[0,1],[1,0]], "metric": [["0","x"],["1","0"]]}"#;
        assert!(parse_magma(bad_rat).unwrap_err().to_string().contains("metric[0][1]"));
        let bad_law = r#"{"n": 2, "law": [[0,1],[1,5]], "metric": [["0","1"],["1","0"]]}"#;
        let e = parse_magma(bad_law).unwrap_err();
        assert!(matches!(e, Error::Invariant { .. }) && e.to_string().contains("law[1][1]"));
        let bad_json = "{\"n\": 2,\n \"law\": oops}";
        assert!(parse_magma(bad_json).unwrap_err().to_string().contains("line 2"));
    }

    #[test]
    fn function_roundtrip_is_exact() {
        let text = r#"{"n": 3, "values": ["1/3", "+inf", "-2"]}"#;
        let f = parse_function(text).unwrap();
        assert_eq!(parse_function(&function_to_json(&f)).unwrap(), f);
        assert!(parse_function(r#"{"n": 2, "values": ["1"]}"#).is_err());
        assert!(parse_function(r#"{"n": 1, "values": ["+inf"]}"#).is_err());
    }
}
