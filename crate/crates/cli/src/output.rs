use serde::Serialize;

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough to recover every f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(format!("cannot encode JSON: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// A CSV table whose numeric cells are already formatted.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push_floats(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&x| fmt_float(x)).collect());
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Input(format!("cannot encode CSV: {e}"));
        w.write_record(&self.header).map_err(err)?;
        for row in &self.rows {
            w.write_record(row).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Input(format!("cannot encode CSV: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Input(format!("cannot encode CSV: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        for x in [0.1, 1.0 / 3.0, -2.690e3, 6.02214076e23, f64::MIN_POSITIVE, 5e-324] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push_floats(&[1.0, 2.5]);
        assert_eq!(t.to_csv().unwrap(), "a,b\n1.0000000000000000e0,2.5000000000000000e0\n");
    }
}
