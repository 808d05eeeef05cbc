use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::settings::Format;

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // 17 significant digits
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// A command's result in both shapes; the caller picks one.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    fn to_csv(&self, stamp: Option<&str>) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        if let Some(s) = stamp {
            writeln!(buf, "# generated {s}")?;
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        drop(w);
        Ok(buf)
    }

    fn to_json(&self, stamp: Option<&str>) -> Result<Vec<u8>> {
        let mut v = self.json.clone();
        if let (Some(s), Value::Object(m)) = (stamp, &mut v) {
            m.insert("generated".into(), Value::String(s.to_string()));
        }
        let mut out = serde_json::to_vec_pretty(&v)?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn emit(&self, format: Format, timestamp: bool, out: Option<&Path>) -> Result<()> {
        let stamp = timestamp.then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        let bytes = match format {
            Format::Csv => self.to_csv(stamp.as_deref())?,
            Format::Json => self.to_json(stamp.as_deref())?,
        };
        match out {
            Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
            None => io::stdout().write_all(&bytes).context("writing to stdout"),
        }
    }
}
