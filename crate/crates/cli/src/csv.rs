//! CSV output with full round-trip precision and a metadata comment footer.
//!
//! Cells are preformatted strings: numbers via [`format_value`] (17
//! significant digits, `inf` / `-inf` / `nan` literals), booleans via
//! [`format_bool`]. Footer lines are `# key: value` comments carrying the
//! fully resolved configuration, so every output file is self-describing and
//! byte-identical across reruns with the same inputs.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Full round-trip decimal formatting: 17 significant digits.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{v:.16e}")
    }
}

pub fn format_bool(b: bool) -> String {
    if b { "true".to_string() } else { "false".to_string() }
}

/// An in-memory CSV file: header, preformatted rows, `key: value` metadata.
#[derive(Debug, Clone)]
pub struct CsvReport {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub metadata: Vec<String>,
}

impl CsvReport {
    pub fn new(header: &[&str], metadata: Vec<String>) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            metadata,
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for line in &self.metadata {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<(), CliError> {
        let mut file = std::fs::File::create(path)
            .map_err(|e| CliError::config(format!("cannot create {}: {e}", path.display())))?;
        file.write_all(self.render().as_bytes())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_round_trip_and_special_values() {
        for v in [0.0, 1.0, -3.5, 0.1, 2.0 / 7.0, 1e-300, 6.02e23] {
            let s = format_value(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s} must round-trip");
        }
        assert_eq!(format_value(f64::NAN), "nan");
        assert_eq!(format_value(f64::INFINITY), "inf");
        assert_eq!(format_value(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_bool(true), "true");
        assert_eq!(format_bool(false), "false");
    }

    #[test]
    fn renders_header_rows_and_footer() {
        let mut report = CsvReport::new(
            &["t", "x"],
            vec!["config.run.t_end: 2".to_string(), "version: 1".to_string()],
        );
        report.push_row(vec![format_value(0.0), format_value(1.0)]);
        report.push_row(vec![format_value(2.0), "inf".to_string()]);
        let text = report.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,x");
        assert_eq!(lines[1], "0.0000000000000000e0,1.0000000000000000e0");
        assert_eq!(lines[2], "2.0000000000000000e0,inf");
        assert_eq!(lines[3], "# config.run.t_end: 2");
        assert_eq!(lines[4], "# version: 1");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    #[should_panic]
    fn rejects_misshapen_rows() {
        let mut report = CsvReport::new(&["a", "b"], Vec::new());
        report.push_row(vec!["1".to_string()]);
    }
}
