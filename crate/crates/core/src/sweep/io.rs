//! CSV and JSON serialization of sweep records.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::SweepRecord;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "channel",
    "alpha",
    "theta_deg",
    "phi_deg",
    "gamma_t",
    "epsilon",
    "vmin",
    "phi_star_rad",
    "jx",
    "jy",
    "jz",
    "degenerate_mean",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::domain(format!("format must be `csv` or `json`, got `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_csv(records: &[SweepRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.channel.clone(),
            real(r.alpha),
            real(r.theta_deg),
            real(r.phi_deg),
            real(r.gamma_t),
            real(r.epsilon),
            real(r.v_min),
            real(r.phi_star_rad),
            real(r.jx),
            real(r.jy),
            real(r.jz),
            r.degenerate_mean.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn render_json(records: &[SweepRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn render(records: &[SweepRecord], format: Format) -> String {
    match format {
        Format::Csv => render_csv(records),
        Format::Json => render_json(records),
    }
}

/// Serializes all records in memory, then writes the file in one call.
pub fn emit_results(records: &[SweepRecord], format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(records, format)).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_csv(text: &str, path: &Path) -> Result<Vec<SweepRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|source| Error::Csv {
        path: path.to_owned(),
        source,
    })?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::domain(format!("{}: unexpected CSV header", path.display())));
    }
    rdr.deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|source| Error::Csv {
            path: path.to_owned(),
            source,
        })
}

pub fn read_results(path: &Path, format: Format) -> Result<Vec<SweepRecord>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    match format {
        Format::Csv => parse_csv(&text, path),
        Format::Json => serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_owned(),
            source,
        }),
    }
}
