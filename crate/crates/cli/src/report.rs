//! Result records, run manifests and their JSON / CSV layout.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which is
//! enough to round-trip every f64. Non-finite values are written as null
//! in JSON and as an empty cell in CSV.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};
use std::io::{self, Write};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `{:.16e}` with an explicit exponent sign (`1.0e+0`), the form JSON
/// numbers take after a parse round trip.
pub fn format_float(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// A float as a raw JSON number with 17 significant digits.
pub fn float_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format_float(x)).expect("formatted float is a JSON number"))
}

mod f17 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        super::float_value(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

mod f17_opt {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => super::float_value(*v).serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<f64>::deserialize(d)
    }
}

/// One computed quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    /// What the value is, e.g. `c_alpha`, `phi_corrected`, `residual`.
    pub quantity: String,
    /// Inputs specific to this record (sweep coordinates and the like).
    pub params: Map<String, Value>,
    pub k_max: Option<i64>,
    #[serde(with = "f17_opt")]
    pub lambda_max: Option<f64>,
    #[serde(with = "f17")]
    pub value_re: f64,
    #[serde(with = "f17")]
    pub value_im: f64,
    #[serde(with = "f17")]
    pub error_estimate: f64,
    pub notes: Vec<String>,
    /// Outcome of the tolerance gate; null when the record is not gated.
    pub passed: Option<bool>,
}

impl Record {
    pub fn new(command: &str, quantity: &str, re: f64, im: f64) -> Self {
        Record {
            command: command.into(),
            quantity: quantity.into(),
            params: Map::new(),
            k_max: None,
            lambda_max: None,
            value_re: re,
            value_im: im,
            error_estimate: 0.0,
            notes: Vec::new(),
            passed: None,
        }
    }

    pub fn param(mut self, key: &str, v: Value) -> Self {
        self.params.insert(key.into(), v);
        self
    }

    pub fn err(mut self, e: f64) -> Self {
        self.error_estimate = e;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn notes(mut self, s: impl IntoIterator<Item = String>) -> Self {
        self.notes.extend(s);
        self
    }

    /// Gates `measure <= tol` when a tolerance is given.
    pub fn gate(mut self, measure: f64, tol: Option<f64>) -> Self {
        if let Some(t) = tol {
            self.passed = Some(measure <= t);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageError {
    pub stage: String,
    #[serde(with = "f17")]
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Map<String, Value>,
    pub version: String,
    pub threads: usize,
    #[serde(with = "f17")]
    pub wall_time_s: f64,
    pub stage_errors: Vec<StageError>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub results: Vec<Record>,
}

pub const CSV_COLUMNS: [&str; 10] =
    ["command", "quantity", "params", "k_max", "lambda_max", "value_re", "value_im", "error_estimate", "passed", "notes"];

const CSV_DOC: &str = "\
# columns:
#   command         subcommand that produced the row
#   quantity        name of the computed value
#   params          per-row inputs as compact JSON
#   k_max           spectral truncation K, empty if unused
#   lambda_max      spectral cutoff, empty if unused
#   value_re        real part, 17 significant digits
#   value_im        imaginary part
#   error_estimate  estimated absolute error of the value
#   passed          tolerance gate (true/false), empty if not gated
#   notes           free-form notes joined with ' | '
";

fn opt_float(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format_float(v),
        _ => String::new(),
    }
}

/// Writes `results` (and the manifest, if any) to `w`.
///
/// JSON: `{"manifest": ..., "results": [...]}`, or a bare array without a
/// manifest. CSV: `#` comment lines (manifest, column docs), one header
/// row, one row per record.
pub fn write_report<W: Write>(mut w: W, manifest: Option<&RunManifest>, results: &[Record], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            match manifest {
                Some(m) => serde_json::to_writer_pretty(&mut w, &Report { manifest: m.clone(), results: results.to_vec() })?,
                None => serde_json::to_writer_pretty(&mut w, results)?,
            }
            writeln!(w)?;
        }
        Format::Csv => {
            writeln!(w, "# fsol report")?;
            if let Some(m) = manifest {
                writeln!(w, "# manifest: {}", serde_json::to_string(m)?)?;
            }
            w.write_all(CSV_DOC.as_bytes())?;
            let mut cw = csv::Writer::from_writer(&mut w);
            cw.write_record(CSV_COLUMNS).map_err(io::Error::other)?;
            for r in results {
                let row = [
                    r.command.clone(),
                    r.quantity.clone(),
                    serde_json::to_string(&r.params)?,
                    r.k_max.map(|k| k.to_string()).unwrap_or_default(),
                    opt_float(r.lambda_max),
                    opt_float(Some(r.value_re)),
                    opt_float(Some(r.value_im)),
                    opt_float(Some(r.error_estimate)),
                    r.passed.map(|p| p.to_string()).unwrap_or_default(),
                    r.notes.join(" | "),
                ];
                cw.write_record(&row).map_err(io::Error::other)?;
            }
            cw.flush()?;
        }
    }
    Ok(())
}

pub fn to_json_string(report: &Report) -> String {
    let mut buf = Vec::new();
    write_report(&mut buf, Some(&report.manifest), &report.results, Format::Json).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn parse_report(s: &str) -> serde_json::Result<Report> {
    serde_json::from_str(s)
}
