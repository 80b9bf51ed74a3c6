use cosecnum::exactnum::rational_to_string;
use cosecnum::{BigRational, RhoPolynomial};
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::args::Format;

/// What a subcommand produces: a table for text/csv, a JSON document, and
/// free-form notes (diff reports, summaries).
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    pub notes: Vec<String>,
    /// A verification step failed; maps to exit code 1.
    pub failed: bool,
}

impl Output {
    pub fn new(headers: &[&str]) -> Self {
        Output { headers: headers.iter().map(|h| h.to_string()).collect(), ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Primary output in `format`. Notes go into text output and are left to
    /// the caller for csv (which stays machine-readable).
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                for line in std::iter::once(&self.headers).chain(&self.rows) {
                    let cells: Vec<String> = line.iter().map(|c| csv_escape(c)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut s = text_table(&self.headers, &self.rows);
                if !self.notes.is_empty() {
                    s.push('\n');
                    for n in &self.notes {
                        s.push_str(n);
                        s.push('\n');
                    }
                }
                s
            }
        }
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn text_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let ncol = headers.len();
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate().take(ncol) {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut out = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(c);
            // no trailing padding on the last column
            if i + 1 < cells.len() {
                out.extend(std::iter::repeat_n(' ', width[i] - c.chars().count()));
            }
        }
        out.push('\n');
        out
    };
    let mut s = line(headers);
    s.push_str(&line(&width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in rows {
        s.push_str(&line(r));
    }
    s
}

/// `c · (a_n x^n + … + a_0)` with integer `a_i`.
pub fn primitive_string(p: &RhoPolynomial, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    if p.degree() == 0 {
        return p.coeff(0).to_string();
    }
    let (factor, ints) = p.primitive_form();
    let mut terms = Vec::new();
    for (i, a) in ints.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let sign = if a.is_negative() { "-" } else { "+" };
        let mag = a.abs();
        let body = match i {
            0 => mag.to_string(),
            1 if mag.is_one() => var.to_string(),
            1 => format!("{mag}{var}"),
            _ if mag.is_one() => format!("{var}^{i}"),
            _ => format!("{mag}{var}^{i}"),
        };
        terms.push((sign, body));
    }
    let mut inner = String::new();
    for (j, (sign, body)) in terms.iter().enumerate() {
        match (j, *sign) {
            (0, "-") => inner.push('-'),
            (0, _) => {}
            (_, s) => inner.push_str(&format!(" {s} ")),
        }
        inner.push_str(body);
    }
    if factor.is_one() {
        inner
    } else if terms.len() == 1 {
        format!("{} · {inner}", rational_to_string(&factor))
    } else {
        format!("{} · ({inner})", rational_to_string(&factor))
    }
}

pub fn fraction(q: &BigRational) -> String {
    rational_to_string(q)
}
