//! Reference tables shipped with the crate, and the fixed-width number format
//! their cells are written in.

use thiserror::Error;

pub const EXAMPLE1_NAME: &str = "example1.csv";
pub const EXAMPLE2_NAME: &str = "example2.csv";
/// Potential of e^{−x²}, α = 0.7, γ = 0.5: columns x, exact, abs_error.
pub const EXAMPLE1_CSV: &str = include_str!("../data/example1.csv");
/// Derivative of j_{1/2}, α = 0.2, γ = 2: columns x, paper_numeric, exact,
/// paper_abs_error.
pub const EXAMPLE2_CSV: &str = include_str!("../data/example2.csv");

/// Character width of the `exact` column in each table.
pub const EXAMPLE1_EXACT_WIDTH: usize = 11;
pub const EXAMPLE2_EXACT_WIDTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("{file}: line {line}: {reason}")]
    Malformed { file: String, line: usize, reason: String },
    #[error("{file}: missing column {column}")]
    MissingColumn { file: String, column: String },
}

/// A parsed CSV table; cells keep their original text.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenTable {
    name: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl GoldenTable {
    /// Strict parse: dot decimals, a newline after every line, equal column
    /// counts, every cell a finite number.
    pub fn parse(name: &str, text: &str) -> Result<Self, GoldenError> {
        let bad = |line: usize, reason: String| GoldenError::Malformed {
            file: name.to_string(),
            line,
            reason,
        };
        if !text.ends_with('\n') {
            return Err(bad(text.lines().count(), "missing final newline".into()));
        }
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .filter(|h| !h.is_empty())
            .ok_or_else(|| bad(1, "empty header".into()))?
            .split(',')
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let n = i + 2;
            let cells: Vec<String> = line.split(',').map(str::to_string).collect();
            if cells.len() != header.len() {
                return Err(bad(n, format!("{} cells, header has {}", cells.len(), header.len())));
            }
            for c in &cells {
                match c.parse::<f64>() {
                    Ok(v) if v.is_finite() => {}
                    _ => return Err(bad(n, format!("not a number: {c:?}"))),
                }
            }
            rows.push(cells);
        }
        if rows.is_empty() {
            return Err(bad(2, "no data rows".into()));
        }
        Ok(GoldenTable {
            name: name.to_string(),
            header,
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn column(&self, column: &str) -> Result<usize, GoldenError> {
        self.header
            .iter()
            .position(|h| h == column)
            .ok_or_else(|| GoldenError::MissingColumn {
                file: self.name.clone(),
                column: column.to_string(),
            })
    }

    /// Parsed values of one column.
    pub fn values(&self, column: &str) -> Result<Vec<f64>, GoldenError> {
        let i = self.column(column)?;
        // cells were validated in `parse`
        Ok(self.rows.iter().map(|r| r[i].parse().unwrap_or(f64::NAN)).collect())
    }

    /// Replace the cells of one column, row by row.
    pub fn with_column(mut self, column: &str, cells: Vec<String>) -> Result<Self, GoldenError> {
        let i = self.column(column)?;
        if cells.len() != self.rows.len() {
            return Err(GoldenError::Malformed {
                file: self.name.clone(),
                line: 0,
                reason: format!("{} replacement cells for {} rows", cells.len(), self.rows.len()),
            });
        }
        for (row, c) in self.rows.iter_mut().zip(cells) {
            row[i] = c;
        }
        Ok(self)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn example1() -> GoldenTable {
    GoldenTable::parse(EXAMPLE1_NAME, EXAMPLE1_CSV).expect("embedded table is well formed")
}

pub fn example2() -> GoldenTable {
    GoldenTable::parse(EXAMPLE2_NAME, EXAMPLE2_CSV).expect("embedded table is well formed")
}

/// Fixed-point text of `v` that fits in `width` characters, with trailing
/// zeros (and a bare trailing point) removed.
pub fn format_general(v: f64, width: usize) -> String {
    let int_digits = format!("{:.0}", v.abs().trunc()).len();
    let sign = usize::from(v.is_sign_negative() && v != 0.0);
    let decimals = width.saturating_sub(int_digits + sign + 1);
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse_and_round_trip() {
        let t1 = example1();
        assert_eq!(t1.rows().len(), 25);
        assert_eq!(t1.to_csv(), EXAMPLE1_CSV);
        let t2 = example2();
        assert_eq!(t2.rows().len(), 34);
        assert_eq!(t2.to_csv(), EXAMPLE2_CSV);
        assert_eq!(t2.values("x").unwrap()[33], 9.58);
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let e = GoldenTable::parse("t.csv", "x,exact\n0,01,6\n").unwrap_err();
        assert!(e.to_string().contains("t.csv"));
        assert!(GoldenTable::parse("t.csv", "x,exact\n0.1,abc\n").is_err());
        assert!(GoldenTable::parse("t.csv", "x,exact\n0.1,2").is_err());
        assert!(GoldenTable::parse("t.csv", "x\n").is_err());
        assert!(example1().column("nope").is_err());
    }

    #[test]
    fn general_format() {
        assert_eq!(format_general(6.00476749973, 11), "6.0047675");
        assert_eq!(format_general(-0.1382963, 8), "-0.1383");
        assert_eq!(format_general(1.4137202, 8), "1.41372");
        assert_eq!(format_general(0.0235871, 8), "0.023587");
        assert_eq!(format_general(4.0, 8), "4");
    }
}
