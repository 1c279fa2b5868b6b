//! Number formatting and the three output encodings.

use std::fmt::Write as _;

use serde_json::{Number, Value};

/// Significant digits of every printed real.
pub const SIG_DIGITS: usize = 15;

/// `%.15g`: shortest of fixed and scientific notation at 15 significant
/// digits, trailing zeros removed, negative zero printed as `0`.
pub fn real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number carrying exactly the text of [`real`].
pub fn json_real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(
        real(x)
            .parse::<Number>()
            .expect("formatted real is a JSON number"),
    )
}

/// JSON number for integers beyond `u64`.
pub fn json_u128(x: u128) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integer is a JSON number"),
    )
}

pub fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Header plus rows, comma separated, LF line endings.
    pub fn csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Space-aligned columns, right-justified.
    pub fn aligned(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Human-readable output: `key: value` lines and tables, separated by blank
/// lines.
#[derive(Debug, Default)]
pub struct Text {
    out: String,
}

impl Text {
    pub fn new() -> Self {
        Text::default()
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.out, "{key}: {value}");
        self
    }

    pub fn line(&mut self, text: &str) -> &mut Self {
        self.out.push_str(text);
        self.out.push('\n');
        self
    }

    pub fn table(&mut self, table: &Table) -> &mut Self {
        if !self.out.is_empty() {
            self.out.push('\n');
        }
        self.out.push_str(&table.aligned());
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.out)
    }
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.25, "0.25"),
            (1.0, "1"),
            (-2.0, "-2"),
            (-0.0, "0"),
            (1.0 / 3.0, "0.333333333333333"),
            (2.0 / 3.0, "0.666666666666667"),
            (1e-5, "1e-05"),
            (1.5e-7, "1.5e-07"),
            (0.0001, "0.0001"),
            (123456789012345.0, "123456789012345"),
            (1234567890123456.0, "1.23456789012346e+15"),
            (1e300, "1e+300"),
            (0.9999999999999999, "1"),
            (-1.2345e-17, "-1.2345e-17"),
        ];
        for (x, want) in cases {
            assert_eq!(real(x), want, "{x:e}");
        }
    }

    #[test]
    fn json_numbers_keep_their_text() {
        assert_eq!(json_real(1.5e-7).to_string(), "1.5e-07");
        assert_eq!(json_real(0.1 + 0.2).to_string(), "0.3");
        assert_eq!(json_u128(476_190_476_190).to_string(), "476190476190");
        assert_eq!(
            json_u128(u128::MAX >> 1).to_string(),
            (u128::MAX >> 1).to_string()
        );
        assert_eq!(json_real(f64::NAN), Value::Null);
    }

    #[test]
    fn csv_and_alignment() {
        let mut t = Table::new(["v", "probability"]);
        t.push(["0", "0.25"]);
        t.push(["512", "0.25"]);
        assert_eq!(t.csv(), "v,probability\n0,0.25\n512,0.25\n");
        assert_eq!(
            t.aligned(),
            "  v  probability\n  0         0.25\n512         0.25\n"
        );
    }
}
