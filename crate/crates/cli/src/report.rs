//! Rendering of reports as JSON, CSV or plain text.

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Formats `x` with 12 significant digits, dropping trailing zeros.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // the exponent after rounding to 12 digits
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().map(sig12).unwrap_or_else(|| n.to_string()),
        other => other.to_string(),
    }
}

fn fields(report: &impl Serialize) -> Result<Vec<(String, Value)>> {
    Ok(match serde_json::to_value(report)? {
        Value::Object(map) => map.into_iter().collect(),
        other => vec![("value".to_string(), other)],
    })
}

/// Renders a single report.
pub fn render(report: &impl Serialize, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let fields = fields(report)?;
            let mut out = csv::Writer::from_writer(Vec::new());
            out.write_record(fields.iter().map(|(k, _)| k.as_str()))?;
            out.write_record(fields.iter().map(|(_, v)| cell(v)))?;
            Ok(String::from_utf8(out.into_inner()?)?)
        }
        Format::Human => {
            let fields = fields(report)?;
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            Ok(fields.iter().map(|(k, v)| format!("{k:<width$}  {}\n", cell(v))).collect())
        }
    }
}

/// Renders rows that share a header.
pub fn render_table(header: &[&str], rows: &[Vec<String>], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(Vec::new());
            out.write_record(header)?;
            for row in rows {
                out.write_record(row)?;
            }
            Ok(String::from_utf8(out.into_inner()?)?)
        }
        Format::Human => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(header.to_vec());
            for row in rows {
                out += &line(row.iter().map(String::as_str).collect());
            }
            Ok(out)
        }
        Format::Json => {
            let objects: Vec<serde_json::Map<String, Value>> = rows
                .iter()
                .map(|row| header.iter().zip(row).map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect())
                .collect();
            Ok(serde_json::to_string_pretty(&objects)? + "\n")
        }
    }
}
