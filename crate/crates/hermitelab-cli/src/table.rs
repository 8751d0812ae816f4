//! Tabular output: CSV (default) or JSON, with floats at 17 significant
//! digits so identical runs emit byte-identical files.

use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    /// Float printed in shortest round-trip form (coefficient tables).
    Shortest(f64),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(csv_cell).collect();
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let columns: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("\"{}\"", c.replace('"', "\\\"")))
            .collect();
        writeln!(out, "{{")?;
        writeln!(out, "  \"columns\": [{}],", columns.join(", "))?;
        writeln!(out, "  \"rows\": [")?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = row.iter().map(json_cell).collect();
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(out, "    [{}]{}", fields.join(", "), comma)?;
        }
        writeln!(out, "  ]")?;
        writeln!(out, "}}")?;
        Ok(())
    }
}

/// 17 significant digits in scientific notation.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => format_float(*v),
        Cell::Shortest(v) => format!("{v}"),
        Cell::Text(s) => s.clone(),
    }
}

fn json_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) if v.is_finite() => format_float(*v),
        Cell::Float(_) => "null".to_string(),
        Cell::Shortest(v) if v.is_finite() => format!("{v}"),
        Cell::Shortest(_) => "null".to_string(),
        Cell::Text(s) => format!("\"{}\"", s.replace('"', "\\\"")),
    }
}

/// Signed-log transform y -> sgn(y) log10(|y| + 1) straight from the
/// log-magnitude representation, exact even when |y| overflows a double.
pub fn signed_log10(value: &hermitelab::scaled::ScaledValue) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let l = value.log_mag();
    // ln(|y| + 1) stable in both regimes.
    let ln1p = if l > 0.0 {
        l + (-l).exp().ln_1p()
    } else {
        l.exp().ln_1p()
    };
    value.sign() as f64 * ln1p / std::f64::consts::LN_10
}
