//! Golden data transcribed from the published tables, embedded at build time.
//!
//! Cells known to be misprinted carry an `expect-diff` marker so a
//! regression can be told apart from a bad digit in the source.

use cosecnum::exactnum::{factorial, int, parse_rational};
use cosecnum::{BigInt, BigRational, Error, Result, RhoPolynomial};
use serde::Deserialize;

const TABLE1: &str = include_str!("../fixtures/table1.json");
const TABLE2: &str = include_str!("../fixtures/table2.json");
const TABLE3: &str = include_str!("../fixtures/table3.json");
const TABLE4: &str = include_str!("../fixtures/table4.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Table1 {
    pub k: u32,
    pub rows: Vec<Table1Row>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table1Row {
    pub partition: Vec<u32>,
    /// λ_1 … λ_k
    pub multiplicities: Vec<u32>,
    pub length: u32,
    pub provenance: String,
}

#[derive(Debug, Clone, Deserialize)]
struct Table2File {
    rows: Vec<Table2Row>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table2Row {
    pub k: u32,
    /// e.g. `2/(9*15!)`
    pub prefactor: String,
    /// Integer multipliers of ρ^0 … ρ^k inside the bracket.
    pub coefficients: Vec<String>,
    pub provenance: String,
    #[serde(rename = "expect-diff", default)]
    pub expect_diff: Vec<CellDiff>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CellDiff {
    pub index: usize,
    pub computed: String,
    pub note: String,
}

impl Table2Row {
    pub fn prefactor_value(&self) -> Result<BigRational> {
        parse_prefactor(&self.prefactor)
    }

    /// The printed row as a polynomial, typos included.
    pub fn polynomial(&self) -> Result<RhoPolynomial> {
        let pre = self.prefactor_value()?;
        let coeffs = self.coefficients.iter().map(|c| Ok(parse_rational(c)? * &pre)).collect::<Result<Vec<_>>>()?;
        Ok(RhoPolynomial::new(coeffs))
    }

    pub fn expected_diff(&self, index: usize) -> Option<&CellDiff> {
        self.expect_diff.iter().find(|d| d.index == index)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table3 {
    pub places: usize,
    pub cells: Vec<Table3Cell>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table3Cell {
    pub rho: i64,
    pub k: u32,
    pub value: String,
    pub provenance: String,
    #[serde(rename = "expect-diff", default)]
    pub expect_diff: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
struct Table4File {
    rows: Vec<Table4Row>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table4Row {
    pub ell: u32,
    pub scale: String,
    /// Odd rows are printed as `k(k−1)` times the inner polynomial.
    pub k_k_minus_1_factor: bool,
    /// Ascending powers of `k`.
    pub inner: Vec<String>,
    pub provenance: String,
    #[serde(rename = "expect-diff", default)]
    pub expect_diff: Option<String>,
}

impl Table4Row {
    pub fn polynomial(&self) -> Result<RhoPolynomial> {
        let inner = self.inner.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        let mut p = RhoPolynomial::new(inner).scale(&parse_rational(&self.scale)?);
        if self.k_k_minus_1_factor {
            p = &p * &RhoPolynomial::new(vec![int(0), int(-1), int(1)]);
        }
        Ok(p)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> T {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("embedded fixture {name} is malformed: {e}"))
}

pub fn table1() -> Table1 {
    parse("table1", TABLE1)
}

pub fn table2() -> Vec<Table2Row> {
    parse::<Table2File>("table2", TABLE2).rows
}

pub fn table3() -> Table3 {
    parse("table3", TABLE3)
}

pub fn table4() -> Vec<Table4Row> {
    parse::<Table4File>("table4", TABLE4).rows
}

/// `n`, `n/d`, or `n/(a*b!*…)` with factorials allowed in the denominator.
pub fn parse_prefactor(s: &str) -> Result<BigRational> {
    let Some((num, den)) = s.split_once('/') else {
        return parse_rational(s);
    };
    let num = parse_rational(num.trim())?;
    let den = den.trim().trim_start_matches('(').trim_end_matches(')');
    let mut d = BigInt::from(1);
    for factor in den.split('*') {
        let factor = factor.trim();
        d *= match factor.strip_suffix('!') {
            Some(n) => factorial(n.parse().map_err(|_| Error::Parse(format!("bad factorial {factor:?}")))?),
            None => factor.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad factor {factor:?}")))?,
        };
    }
    Ok(num / BigRational::from_integer(d))
}
