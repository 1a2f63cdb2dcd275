//! Table and CSV rendering. All comparisons happen on rationals upstream;
//! decimal columns are presentation only (17 significant digits).

use maxbv::Rational;

pub const DECIMAL_DIGITS: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
}

/// Row-oriented output with a fixed header. Commands that want paired
/// rational/decimal columns push both cells explicitly.
pub struct Grid {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new(headers: &[&str]) -> Self {
        Grid {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&csv_line(&self.headers));
        for row in &self.rows {
            out.push_str(&csv_line(row));
        }
        out
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String]| {
            let joined: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
                .collect();
            format!("{}\n", joined.join("  ").trim_end())
        };
        out.push_str(&line(&self.headers));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    let fields: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
    format!("{}\r\n", fields.join(","))
}

pub fn dec(r: &Rational) -> String {
    r.decimal(DECIMAL_DIGITS)
}

/// Key-value block for single-record outputs (table format only).
pub struct Record {
    pairs: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Record { pairs: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.pairs.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => {
                let width = self.pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                self.pairs
                    .iter()
                    .map(|(k, v)| format!("{:<width$}  {v}\n", k, width = width))
                    .collect()
            }
            Format::Csv => {
                let headers: Vec<String> = self.pairs.iter().map(|(k, _)| k.clone()).collect();
                let values: Vec<String> = self.pairs.iter().map(|(_, v)| v.clone()).collect();
                format!("{}{}", csv_line(&headers), csv_line(&values))
            }
        }
    }
}
