//! Row types and the JSON / CSV writers.

use hyperslice::InequalityReport;
use serde::Serialize;

use crate::config::Format;
use crate::error::CliError;

/// A row that can be written as CSV with a fixed header.
pub trait Row: Serialize {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn vector(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleColumns {
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub mc_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasureRow {
    pub body: String,
    pub density: String,
    pub n: usize,
    pub mu: f64,
    pub vol: f64,
    pub tolerance: f64,
    pub vol_tolerance: f64,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleColumns>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionRow {
    pub body: String,
    pub density: String,
    pub n: usize,
    pub direction: Vec<f64>,
    pub value: f64,
    pub tolerance: f64,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleColumns>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxSectionRow {
    pub body: String,
    pub density: String,
    pub n: usize,
    pub direction: Vec<f64>,
    pub value: f64,
    pub search_resolution: usize,
}

fn oracle_header(h: &mut Vec<&'static str>) {
    h.extend(["mc_mean", "mc_std_error", "mc_agrees"]);
}

fn oracle_record(r: &mut Vec<String>, o: &Option<OracleColumns>) {
    r.push(opt(&o.as_ref().map(|o| o.mc_mean)));
    r.push(opt(&o.as_ref().map(|o| o.mc_std_error)));
    r.push(opt(&o.as_ref().map(|o| o.mc_agrees)));
}

impl Row for MeasureRow {
    fn header() -> Vec<&'static str> {
        let mut h = vec!["body", "density", "n", "mu", "vol", "tolerance", "vol_tolerance"];
        oracle_header(&mut h);
        h
    }

    fn record(&self) -> Vec<String> {
        let mut r = vec![
            self.body.clone(),
            self.density.clone(),
            self.n.to_string(),
            self.mu.to_string(),
            self.vol.to_string(),
            self.tolerance.to_string(),
            self.vol_tolerance.to_string(),
        ];
        oracle_record(&mut r, &self.oracle);
        r
    }
}

impl Row for SectionRow {
    fn header() -> Vec<&'static str> {
        let mut h = vec!["body", "density", "n", "direction", "value", "tolerance"];
        oracle_header(&mut h);
        h
    }

    fn record(&self) -> Vec<String> {
        let mut r = vec![
            self.body.clone(),
            self.density.clone(),
            self.n.to_string(),
            vector(&self.direction),
            self.value.to_string(),
            self.tolerance.to_string(),
        ];
        oracle_record(&mut r, &self.oracle);
        r
    }
}

impl Row for MaxSectionRow {
    fn header() -> Vec<&'static str> {
        vec!["body", "density", "n", "direction", "value", "search_resolution"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.body.clone(),
            self.density.clone(),
            self.n.to_string(),
            vector(&self.direction),
            self.value.to_string(),
            self.search_resolution.to_string(),
        ]
    }
}

impl Row for InequalityReport {
    fn header() -> Vec<&'static str> {
        vec![
            "name",
            "n",
            "lhs",
            "rhs",
            "bound_constant",
            "margin",
            "tolerance",
            "passed",
            "inputs_digest",
            "epsilon",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            self.n.to_string(),
            self.lhs.to_string(),
            self.rhs.to_string(),
            self.bound_constant.to_string(),
            self.margin.to_string(),
            self.tolerance.to_string(),
            self.passed.to_string(),
            self.inputs_digest.clone(),
            opt(&self.epsilon),
        ]
    }
}

#[derive(Serialize)]
struct Document<'a, T> {
    command: &'a str,
    rows: &'a [T],
}

pub fn render<T: Row>(command: &str, rows: &[T], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(&Document { command, rows })
                .map_err(|e| CliError::Numerical(format!("cannot serialise report: {e}")))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_error = |e: csv::Error| CliError::Output(std::io::Error::other(e));
            w.write_record(T::header()).map_err(csv_error)?;
            for row in rows {
                w.write_record(row.record()).map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| CliError::Output(e.into_error()))
        }
    }
}
