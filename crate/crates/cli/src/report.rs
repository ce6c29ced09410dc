use std::fmt::Write as _;

use divseries::zetakit::{BigReal, Precision};
use rug::{Integer, Rational};
use serde_json::{Map, Value};

/// Output layouts understood by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned columns for reading in a terminal.
    Table,
    /// Rows only, with a header line.
    Csv,
    /// The full document as JSON.
    Report,
}

/// How numbers are turned into cells.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub precision: Precision,
    /// Print exact rationals as fixed-point decimals with this many
    /// fractional digits instead of `p/q`.
    pub decimal: Option<u32>,
}

/// Exact rationals longer than this are abbreviated in tables.
const TABLE_CELL_LIMIT: usize = 48;

impl Style {
    pub fn exact(&self, q: &Rational) -> String {
        match self.decimal {
            Some(places) => fixed_point(q, places),
            None if *q.denom() == 1 => q.numer().to_string(),
            None => q.to_string(),
        }
    }

    pub fn real(&self, x: &BigReal) -> String {
        x.to_scientific(self.precision.digits())
    }
}

/// `q` rounded half away from zero to `places` fractional digits.
pub fn fixed_point(q: &Rational, places: u32) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, places));
    let twice = Integer::from(q.numer().abs_ref()) * &scale * 2u32 + q.denom();
    let rounded = twice / Integer::from(q.denom() * 2u32);
    let digits = rounded.to_string();
    let sign = if *q < 0 && rounded != 0 { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = padded.split_at(padded.len() - places);
    format!("{sign}{whole}.{frac}")
}

/// Everything a command produced, independent of how it is printed.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub precision: u32,
    pub tool_version: String,
    /// Index of the column printed on its own by `table` when the document
    /// holds a single value.
    pub bare_column: Option<usize>,
}

impl ReportDocument {
    pub fn new(command: &str, columns: &[&str], precision: Precision) -> Self {
        Self {
            command: command.to_string(),
            parameters: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            precision: precision.digits(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            bare_column: None,
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Csv => self.to_csv(),
            Format::Report => self.to_report(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            writer.write_record(row).expect("writing to memory");
        }
        String::from_utf8(writer.into_inner().expect("writing to memory")).expect("cells are UTF-8")
    }

    pub fn to_report(&self) -> String {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command.clone()));
        doc.insert("tool_version".into(), Value::from(self.tool_version.clone()));
        doc.insert("precision".into(), Value::from(self.precision));
        let parameters: Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.clone())))
            .collect();
        doc.insert("parameters".into(), Value::Object(parameters));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let record: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), Value::from(v.clone())))
                    .collect();
                Value::Object(record)
            })
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        if !self.notes.is_empty() {
            doc.insert("notes".into(), Value::from(self.notes.clone()));
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        out.push('\n');
        out
    }

    pub fn to_table(&self) -> String {
        if let (Some(column), [row]) = (self.bare_column, self.rows.as_slice()) {
            let mut out = row[column].clone();
            out.push('\n');
            for note in &self.notes {
                let _ = writeln!(out, "{note}");
            }
            return out;
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| abbreviate(c)).collect())
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, row: &[String]| {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&mut out, &self.columns);
        for row in &cells {
            line(&mut out, row);
        }
        for note in &self.notes {
            let _ = writeln!(out, "{note}");
        }
        out
    }
}

/// Shortens huge exact fractions for terminal display.
fn abbreviate(cell: &str) -> String {
    if cell.len() <= TABLE_CELL_LIMIT {
        return cell.to_string();
    }
    let numeral = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match cell.split_once('/') {
        Some((p, q)) if numeral(p.trim_start_matches('-')) && numeral(q) => {
            format!("({}-digit)/({}-digit)", p.trim_start_matches('-').len(), q.len())
        }
        _ => cell.to_string(),
    }
}
