//! Elementary symmetric polynomials of `{1², 2², …, (v−1)²}` and the exact
//! identities linking them, the generalized cosecant numbers at `ρ = 2v`,
//! and the partial sums `ζ(2m) − ζ(2m, v) = Σ_{j<v} j^{−2m}`.
//!
//! The Hurwitz differences are always carried as exact partial sums, so
//! every identity here is an equality of rationals. Only
//! [`riemann_limit`] touches floating point, to compare against `ζ(2m)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{factorial, int, pi_hp, rat, rational_to_string, FloatHP, Precision, RhoPolynomial};
use crate::genseries::{cosecant_value, cosecant_values_at};
use crate::partitions::enumerate_partitions;
use crate::{Error, Result};

/// Outcome of checking one instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub left: String,
    pub right: String,
    pub pass: bool,
    /// False for instances that are run and reported but not required to pass.
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn exact(id: &str, params: &[(&str, i64)], left: &BigRational, right: &BigRational) -> Self {
        IdentityReport {
            id: id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            left: rational_to_string(left),
            right: rational_to_string(right),
            pass: left == right,
            asserted: true,
            note: None,
        }
    }

    pub fn polynomial(id: &str, params: &[(&str, i64)], left: &RhoPolynomial, right: &RhoPolynomial) -> Self {
        IdentityReport {
            id: id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            left: left.to_strings().join(" "),
            right: right.to_strings().join(" "),
            pass: left == right,
            asserted: true,
            note: None,
        }
    }

    /// A comparison that holds up to `bound` rather than exactly.
    pub fn within(id: &str, params: &[(&str, i64)], left: &FloatHP, right: &FloatHP, bound: &FloatHP) -> Self {
        let digits = left.precision().digits as usize;
        IdentityReport {
            id: id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            left: left.to_decimal(digits),
            right: right.to_decimal(digits),
            pass: (left - right).abs() < *bound,
            asserted: true,
            note: Some(format!("bound {}", bound.to_decimal(6))),
        }
    }

    pub fn unasserted(mut self, note: &str) -> Self {
        self.asserted = false;
        self.note = Some(note.to_string());
        self
    }

    /// Failing instances that were required to pass.
    pub fn is_failure(&self) -> bool {
        self.asserted && !self.pass
    }
}

/// `s(v, n)` for `0 ≤ n ≤ v−1`, the coefficients of `Π_{j=1}^{v−1} (1 + j² t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTable {
    pub v: u32,
    values: Vec<BigInt>,
}

impl SymTable {
    pub fn new(v: u32) -> Result<Self> {
        if v < 1 {
            return Err(Error::domain("symmetric polynomials need v ≥ 1"));
        }
        let mut values = vec![BigInt::one()];
        for j in 1..v {
            let sq = BigInt::from(j) * BigInt::from(j);
            values.push(BigInt::zero());
            for n in (1..values.len()).rev() {
                let add = &values[n - 1] * &sq;
                values[n] += add;
            }
        }
        Ok(SymTable { v, values })
    }

    pub fn get(&self, n: u32) -> Result<&BigInt> {
        self.values
            .get(n as usize)
            .ok_or_else(|| Error::domain(format!("s(v,n) needs n < v, got v = {}, n = {n}", self.v)))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// `s(v, n)`, the `n`th elementary symmetric polynomial of `1², …, (v−1)²`.
pub fn sym_poly(v: u32, n: u32) -> Result<BigInt> {
    if v < 2 {
        return Err(Error::domain(format!("sym_poly needs v ≥ 2, got {v}")));
    }
    SymTable::new(v)?.get(n).cloned()
}

/// Closed forms for `n = 0, 1, 2`:
/// `1`, `(v−1)v(2v−1)/6` and `((5v+1)/(4·6!)) (2v−4)_5`.
pub fn sym_closed_low(v: u32, n: u32) -> Result<BigRational> {
    let vv = int(i64::from(v));
    match n {
        0 if v >= 2 => Ok(int(1)),
        1 if v >= 2 => Ok((&vv - int(1)) * &vv * (int(2) * &vv - int(1)) / int(6)),
        2 if v >= 3 => {
            let base = int(2) * &vv - int(4);
            let rising = (0..5).fold(int(1), |acc, i| acc * (&base + int(i)));
            Ok((int(5) * &vv + int(1)) / (int(4) * int(720)) * rising)
        }
        _ => Err(Error::domain(format!("sym_closed_low covers n ≤ 2 (n = 2 needs v ≥ 3), got v = {v}, n = {n}"))),
    }
}

/// `T_m = Σ_{j=1}^{v−1} j^{−2m}` for `m = 1, …, m_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    pub v: u32,
    sums: Vec<BigRational>,
}

impl PowerSums {
    pub fn new(v: u32, m_max: u32) -> Self {
        let sums = (1..=m_max)
            .map(|m| {
                (1..v).fold(BigRational::zero(), |acc, j| {
                    acc + BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(j), 2 * m as usize))
                })
            })
            .collect();
        PowerSums { v, sums }
    }

    /// `T_m`, `m ≥ 1`.
    pub fn get(&self, m: u32) -> &BigRational {
        &self.sums[m as usize - 1]
    }
}

/// `s(v, v−ℓ)` from power sums of reciprocal squares:
///
/// ```text
/// s(v, v−ℓ) = ((v−1)!)² / (ℓ−1)! · Σ_{π ⊢ ℓ−1} (−1)^{ℓ−1−N} · (ℓ−1)!/(Π λ_i! i^{λ_i}) · Π T_i^{λ_i}
/// ```
///
/// The all-ones partition enters with a plus sign; `N` is the length of `π`.
pub fn sym_high_partition(v: u32, ell: u32) -> Result<BigRational> {
    if ell < 1 || ell > v {
        return Err(Error::domain(format!("sym_high_partition needs 1 ≤ ℓ ≤ v, got v = {v}, ℓ = {ell}")));
    }
    let weight = ell - 1;
    let sums = PowerSums::new(v, weight.max(1));
    let wf = BigRational::from_integer(factorial(weight as usize));
    let mut total = BigRational::zero();
    for pm in enumerate_partitions(weight) {
        let mut term = wf.clone();
        for &(i, m) in pm.multiplicities() {
            let denom = factorial(m as usize) * num_traits::pow(BigInt::from(i), m as usize);
            term = term / BigRational::from_integer(denom) * sums.get(i).pow(m as i32);
        }
        if (weight - pm.length()) % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    let gamma_sq = BigRational::from_integer(factorial(v as usize - 1).pow(2));
    Ok(gamma_sq / wf * total)
}

/// `Γ(2v−2i)/Γ(2v) = 1/((2v−2i)(2v−2i+1)…(2v−1))`.
fn gamma_ratio(v: u32, i: u32) -> BigRational {
    let prod: BigInt = (2 * v - 2 * i..2 * v).map(BigInt::from).product();
    BigRational::new(BigInt::one(), prod)
}

/// Checks `c_{2v,i} = 2^{2i} Γ(2v−2i)/Γ(2v) s(v,i)` for `0 ≤ i < v`.
pub fn identity_nine(v: u32, i: u32) -> Result<IdentityReport> {
    if i >= v {
        return Err(Error::domain(format!("identity_nine needs i < v, got v = {v}, i = {i}")));
    }
    let left = cosecant_value(&int(2 * i64::from(v)), i);
    let s = BigRational::from_integer(SymTable::new(v)?.get(i)?.clone());
    let right = BigRational::from_integer(BigInt::one() << (2 * i as usize)) * gamma_ratio(v, i) * s;
    Ok(IdentityReport::exact("nine", &[("v", i64::from(v)), ("i", i64::from(i))], &left, &right))
}

/// `H_{v−1,r} = Σ_{k=1}^{v−1} k^{−r}` for even `r ≤ 10`.
pub fn harmonic_power_sum(v: u32, r: u32) -> Result<BigRational> {
    if v < 2 || !matches!(r, 2 | 4 | 6 | 8 | 10) {
        return Err(Error::domain(format!(
            "harmonic_power_sum needs v ≥ 2 and r ∈ {{2,…,10}} even, got v = {v}, r = {r}"
        )));
    }
    Ok(PowerSums::new(v, r / 2).get(r / 2).clone())
}

/// `R_1, …, R_m` with `R_j = c_{2v,v−1−j} / c_{2v,v−1}`.
fn cosecant_ratios(v: u32, m: u32) -> Vec<BigRational> {
    let c = cosecant_values_at(&int(2 * i64::from(v)), v - 1);
    let top = &c[v as usize - 1];
    (1..=m).map(|j| &c[(v - 1 - j) as usize] / top).collect()
}

/// Right-hand side of the order-`2m` Hurwitz identity, an exact combination
/// of cosecant-number ratios equal to `Σ_{k<v} k^{−2m}`. Needs `v ≥ m+1`.
pub fn hurwitz_rhs(v: u32, m: u32) -> Result<BigRational> {
    if !(1..=5).contains(&m) {
        return Err(Error::domain(format!("Hurwitz identities exist for m ∈ 1..=5, got {m}")));
    }
    if v < m + 1 {
        return Err(Error::domain(format!("order-{} identity needs v ≥ {}, got {v}", 2 * m, m + 1)));
    }
    let r = cosecant_ratios(v, m);
    let r1 = &r[0];
    let rr = |j: usize| r[j - 1].clone();
    Ok(match m {
        1 => rat(2, 3) * r1,
        2 => rat(4, 9) * r1.pow(2) - rat(4, 15) * rr(2),
        3 => rat(4, 105) * rr(3) - rat(4, 15) * rr(2) * r1 + rat(8, 27) * r1.pow(3),
        4 => {
            rat(8, 14175)
                * (int(350) * r1.pow(4) - int(420) * rr(2) * r1.pow(2) + int(63) * rr(2).pow(2) + int(60) * rr(3) * r1
                    - int(5) * rr(4))
        }
        _ => {
            rat(4, 93555)
                * (int(3080) * r1.pow(5) - int(4620) * rr(2) * r1.pow(3)
                    + int(1386) * rr(2).pow(2) * r1
                    + int(660) * rr(3) * r1.pow(2)
                    - int(198) * rr(3) * rr(2)
                    - int(55) * rr(4) * r1
                    + int(3) * rr(5))
        }
    })
}

/// Checks `Σ_{k<v} k^{−2m}` against [`hurwitz_rhs`], exactly.
/// Valid for `v ≥ m+2`.
pub fn hurwitz_identity(v: u32, m: u32) -> Result<IdentityReport> {
    if (1..=5).contains(&m) && v < m + 2 {
        return Err(Error::domain(format!("order-{} identity holds for v ≥ {}, got {v}", 2 * m, m + 2)));
    }
    hurwitz_report(v, m)
}

/// Like [`hurwitz_identity`] but also runs the boundary `v = m+1`, where the
/// identity is not claimed; such reports are marked unasserted.
pub fn hurwitz_report(v: u32, m: u32) -> Result<IdentityReport> {
    let right = hurwitz_rhs(v, m)?;
    let left = harmonic_power_sum(v, 2 * m)?;
    let report = IdentityReport::exact("hurwitz", &[("v", i64::from(v)), ("m", i64::from(m))], &left, &right);
    Ok(if v < m + 2 { report.unasserted("below the stated range of validity") } else { report })
}

/// `ζ(2m) = q_m π^{2m}` with `q = 1/6, 1/90, 1/945, 1/9450, 1/93555`.
pub fn zeta_even_rational(m: u32) -> Result<BigRational> {
    let d = match m {
        1 => 6,
        2 => 90,
        3 => 945,
        4 => 9450,
        5 => 93555,
        _ => return Err(Error::domain(format!("ζ(2m) constant tabulated for m ∈ 1..=5, got {m}"))),
    };
    Ok(rat(1, d))
}

/// Finite-`v` estimate of `ζ(2m)` and its bracketing.
#[derive(Debug, Clone)]
pub struct RiemannLimit {
    pub m: u32,
    pub v: u32,
    /// The cosecant-ratio combination, exactly `Σ_{k<v} k^{−2m}`.
    pub estimate: FloatHP,
    pub zeta: FloatHP,
    /// `ζ(2m) − estimate`, i.e. `ζ(2m, v)`.
    pub deviation: FloatHP,
    /// `v^{1−2m}/(2m−1)`.
    pub lower: FloatHP,
    /// `(v−1)^{1−2m}/(2m−1)`.
    pub upper: FloatHP,
}

impl RiemannLimit {
    pub fn within_bounds(&self) -> bool {
        self.lower <= self.deviation && self.deviation <= self.upper
    }
}

pub fn riemann_limit(m: u32, v: u32, digits: u32) -> Result<RiemannLimit> {
    if digits < 30 {
        return Err(Error::domain("riemann_limit needs at least 30 digits"));
    }
    if v < m + 2 {
        return Err(Error::domain(format!("riemann_limit needs v ≥ m+2, got m = {m}, v = {v}")));
    }
    let prec = Precision::digits(digits);
    let rhs = hurwitz_rhs(v, m)?;
    let estimate = FloatHP::from_rational(&rhs, prec);
    let zeta = &FloatHP::from_rational(&zeta_even_rational(m)?, prec) * &pi_hp(digits).powi(2 * m);
    let deviation = &zeta - &estimate;
    let tail = |x: u32| {
        let x = int(i64::from(x));
        crate::exactnum::rational_powi(&x, 1 - 2 * i64::from(m)) / int(2 * i64::from(m) - 1)
    };
    Ok(RiemannLimit {
        m,
        v,
        estimate,
        zeta,
        deviation,
        lower: FloatHP::from_rational(&tail(v), prec),
        upper: FloatHP::from_rational(&tail(v - 1), prec),
    })
}
