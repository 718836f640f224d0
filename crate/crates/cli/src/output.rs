use std::io::Write;
use std::path::Path;

use corrcount::io::Format;
use corrcount::Result;
use serde::Serialize;

/// A finished report, written once all instances are done so rows keep input order.
pub enum Report {
    Json(serde_json::Value),
    Csv { header: Vec<&'static str>, rows: Vec<Vec<String>> },
    /// One JSON document per line.
    Lines(Vec<serde_json::Value>),
}

impl Report {
    pub fn json<T: Serialize>(value: &T) -> Report {
        Report::Json(serde_json::to_value(value).expect("report is plain data"))
    }

    /// CSV rows from serializable records, or the JSON document otherwise.
    pub fn tabular<T: Serialize>(format: Format, header: Vec<&'static str>, rows: Vec<Vec<String>>, doc: &T) -> Report {
        match format {
            Format::Csv => Report::Csv { header, rows },
            Format::Json => Report::json(doc),
        }
    }

    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        let mut buf = Vec::new();
        match self {
            Report::Json(v) => {
                serde_json::to_writer_pretty(&mut buf, v)?;
                buf.push(b'\n');
            }
            Report::Lines(vs) => {
                for v in vs {
                    serde_json::to_writer(&mut buf, v)?;
                    buf.push(b'\n');
                }
            }
            Report::Csv { header, rows } => {
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record(header).map_err(csv_error)?;
                for r in rows {
                    w.write_record(r).map_err(csv_error)?;
                }
                w.flush()?;
            }
        }
        match out {
            Some(path) => std::fs::write(path, buf)?,
            None => std::io::stdout().lock().write_all(&buf)?,
        }
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> corrcount::Error {
    corrcount::Error::Io(std::io::Error::other(e.to_string()))
}
