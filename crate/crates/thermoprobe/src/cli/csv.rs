//! CSV emission with a bit-exact contract: lowercase snake-case headers,
//! '.' decimal separator, "\n" newlines, floats at 17 significant digits so
//! every value round-trips exactly.

use crate::error::Result;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug, PartialEq)]
pub enum CsvValue {
    Float(f64),
    Int(i64),
    Text(String),
}

impl CsvValue {
    fn render(&self) -> String {
        match self {
            CsvValue::Float(x) => format_float(*x),
            CsvValue::Int(i) => i.to_string(),
            CsvValue::Text(s) => s.replace([',', '\n'], ";"),
        }
    }
}

/// 17 significant digits: lossless for any f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Debug, Default)]
pub struct CsvTable {
    /// Metadata lines, emitted with a leading `# `.
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<CsvValue>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push_row(&mut self, row: Vec<CsvValue>) {
        debug_assert_eq!(row.len(), self.header.len(), "rows must be rectangular");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let rendered: Vec<String> = row.iter().map(CsvValue::render).collect();
            let _ = writeln!(out, "{}", rendered.join(","));
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}
