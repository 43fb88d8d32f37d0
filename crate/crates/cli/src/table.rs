//! Row tables and their CSV / JSON serialization.

use std::fmt::Write as _;

use ac_spectra::sae::ExtendedReal;

pub const SCHEMA: &str = "ac-spectra/1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn alpha(alpha: ExtendedReal) -> Self {
        match alpha {
            ExtendedReal::Finite(a) => Cell::Float(a),
            ExtendedReal::Infinite => Cell::text("inf"),
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => format_float(*x),
            Cell::Float(_) | Cell::Empty => "null".to_owned(),
            Cell::Text(s) => serde_json::to_string(s).expect("strings always serialize"),
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self { command, columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::csv_field))?;
        }
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("fields are UTF-8"))
    }

    pub fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let mut out = String::new();
        let _ = write!(out, "{{\"schema\":{},\"command\":{},\"columns\":[", quote(SCHEMA), quote(self.command));
        out.push_str(&self.columns.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
        out.push_str("],\"rows\":[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            out.push('{');
            let fields: Vec<String> =
                self.columns.iter().zip(row).map(|(c, v)| format!("{}:{}", quote(c), v.json_value())).collect();
            out.push_str(&fields.join(","));
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]}\n" } else { "\n]}\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("spectrum", &["m", "energy", "status", "note"]);
        t.push(vec![Cell::Int(1), Cell::Float(-0.125), Cell::text("ok"), Cell::Empty]);
        t.push(vec![Cell::Int(-2), Cell::Float(f64::NAN), Cell::text("a, \"b\""), Cell::Empty]);
        t
    }

    #[test]
    fn float_format_has_17_digits() {
        assert_eq!(format_float(-0.125), "-1.2500000000000000e-1");
        assert_eq!(format_float(1.0 / 3.0), "3.3333333333333331e-1");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv().unwrap();
        assert_eq!(csv, "m,energy,status,note\n1,-1.2500000000000000e-1,ok,\n-2,nan,\"a, \"\"b\"\"\",\n");
    }

    #[test]
    fn json_round_trips() {
        let json = sample().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["rows"][0]["energy"].as_f64().unwrap(), -0.125);
        assert!(v["rows"][1]["energy"].is_null());
        assert_eq!(v["rows"][1]["status"], "a, \"b\"");
        let empty = Table::new("verify", &["x"]).to_json();
        assert!(serde_json::from_str::<serde_json::Value>(&empty).is_ok());
    }
}
