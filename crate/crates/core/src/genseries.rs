//! The partition-method transform and the series it generates.
//!
//! For an inner series `1 − Σ_{i≥1} p_i w^i` raised to the power `−ρ`, the
//! coefficient of `w^k` is a sum over the partitions of `k`:
//!
//! ```text
//!   Σ_{λ ⊢ k} (ρ)_{N} Π_i p_i^{λ_i} / λ_i!
//! ```
//!
//! With `w = z²` and `p_i = (−1)^{i+1}/(2i+1)!` this yields `(z/sin z)^ρ`
//! and the generalized cosecant numbers `c_{ρ,k}`; with `p_i =
//! (−1)^{i+1}/(2i)!` it yields `sec^ρ z` and the generalized secant numbers
//! `d_{ρ,k}`. [`oracle_explog`] computes the same rows by series log/exp and
//! shares no code with the partition sum.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::{factorial, int, pi_hp, pochhammer_poly, rational_powi, FloatHP, Precision, RhoPolynomial};
use crate::partitions::{enumerate_partitions, PartitionMultiset};
use crate::symzeta::IdentityReport;
use crate::{Error, Result};

type InnerFn = dyn Fn(u32) -> Option<BigRational> + Send + Sync;
type WeightFn = dyn Fn(u32) -> BigRational + Send + Sync;

/// Weight attached to a partition of length `N`.
#[derive(Clone)]
pub enum OuterWeight {
    /// `(ρ)_N`, the binomial-series weight `(ρ)_N/N!` times the multinomial `N!`.
    Pochhammer,
    /// A fixed scalar per length, in place of `(ρ)_N`.
    Scalar(Arc<WeightFn>),
}

/// Everything the partition transform needs to know about one series.
#[derive(Clone)]
pub struct SeriesSpec {
    pub name: String,
    /// Value assigned to part `i`; `None` means the series is not defined there.
    pub inner: Arc<InnerFn>,
    pub outer: OuterWeight,
    /// Prefactor depending only on `k`.
    pub global_sign: fn(u32) -> i32,
    /// Whether each partition also carries `(−1)^{N}`.
    pub length_sign: bool,
}

fn alternating(k: u32) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn no_sign(_: u32) -> i32 {
    1
}

impl SeriesSpec {
    /// Unsigned part values with the `(−1)^k (−1)^N` sign rule.
    pub fn alternating(name: &str, inner: impl Fn(u32) -> Option<BigRational> + Send + Sync + 'static) -> Self {
        SeriesSpec {
            name: name.to_string(),
            inner: Arc::new(inner),
            outer: OuterWeight::Pochhammer,
            global_sign: alternating,
            length_sign: true,
        }
    }

    /// Part values that already carry their signs; no extra sign rule.
    pub fn signed(name: &str, inner: impl Fn(u32) -> Option<BigRational> + Send + Sync + 'static) -> Self {
        SeriesSpec {
            name: name.to_string(),
            inner: Arc::new(inner),
            outer: OuterWeight::Pochhammer,
            global_sign: no_sign,
            length_sign: false,
        }
    }

    pub fn with_outer(mut self, outer: OuterWeight) -> Self {
        self.outer = outer;
        self
    }
}

/// `p_i = 1/(2i+1)!` under the alternating sign rule.
pub fn cosecant_spec() -> SeriesSpec {
    SeriesSpec::alternating("cosecant", |i| Some(BigRational::new(BigInt::one(), factorial(2 * i as usize + 1))))
}

/// `p_i = 1/(2i)!` under the alternating sign rule.
pub fn secant_spec() -> SeriesSpec {
    SeriesSpec::alternating("secant", |i| Some(BigRational::new(BigInt::one(), factorial(2 * i as usize))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Cosecant,
    Secant,
}

impl SeriesKind {
    pub fn spec(self) -> SeriesSpec {
        match self {
            SeriesKind::Cosecant => cosecant_spec(),
            SeriesKind::Secant => secant_spec(),
        }
    }
}

/// `inner(i)^m / m!` for every part `i ≤ k` and `m ≤ ⌊k/i⌋`.
struct PowerTable {
    rows: Vec<Vec<BigRational>>,
}

impl PowerTable {
    fn new(k: u32, spec: &SeriesSpec) -> Result<Self> {
        let mut rows = vec![Vec::new()];
        for i in 1..=k {
            let v = (spec.inner)(i)
                .ok_or_else(|| Error::Config(format!("series {:?} has no value for part {i}", spec.name)))?;
            let mut row = vec![BigRational::one()];
            for m in 1..=(k / i) {
                let next = row.last().unwrap() * &v / BigRational::from_integer(BigInt::from(m));
                row.push(next);
            }
            rows.push(row);
        }
        Ok(PowerTable { rows })
    }

    fn product(&self, pm: &PartitionMultiset) -> BigRational {
        pm.multiplicities().iter().fold(BigRational::one(), |acc, &(i, m)| acc * &self.rows[i as usize][m as usize])
    }
}

fn sign_of(spec: &SeriesSpec, k: u32, n: u32) -> i32 {
    let s = (spec.global_sign)(k);
    if spec.length_sign && n % 2 == 1 {
        -s
    } else {
        s
    }
}

fn outer_poly(spec: &SeriesSpec, n: u32) -> RhoPolynomial {
    match &spec.outer {
        OuterWeight::Pochhammer => pochhammer_poly(n as usize),
        OuterWeight::Scalar(w) => RhoPolynomial::constant(w(n)),
    }
}

fn assemble(spec: &SeriesSpec, k: u32, by_length: BTreeMap<u32, BigRational>) -> RhoPolynomial {
    by_length.into_iter().fold(RhoPolynomial::zero(), |acc, (n, s)| {
        let s = if sign_of(spec, k, n) < 0 { -s } else { s };
        &acc + &outer_poly(spec, n).scale(&s)
    })
}

/// Coefficient of `w^k` by summing over every partition of `k`.
///
/// Partitions of equal length share the factor `(ρ)_N`, so the scalar
/// products are first summed per length and the polynomial is formed once
/// per length.
pub fn partition_transform(k: u32, spec: &SeriesSpec) -> Result<RhoPolynomial> {
    let table = PowerTable::new(k, spec)?;
    let mut by_length: BTreeMap<u32, BigRational> = BTreeMap::new();
    for pm in enumerate_partitions(k) {
        *by_length.entry(pm.length()).or_insert_with(BigRational::zero) += table.product(&pm);
    }
    Ok(assemble(spec, k, by_length))
}

/// Same result as [`partition_transform`], with the per-partition products
/// computed on the rayon pool. Exact addition makes the reduction order
/// irrelevant, so the output is identical.
pub fn partition_transform_par(k: u32, spec: &SeriesSpec) -> Result<RhoPolynomial> {
    let table = PowerTable::new(k, spec)?;
    let by_length = enumerate_partitions(k)
        .par_bridge()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u32, BigRational>, pm| {
            *acc.entry(pm.length()).or_insert_with(BigRational::zero) += table.product(&pm);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (n, s) in b {
                *a.entry(n).or_insert_with(BigRational::zero) += s;
            }
            a
        });
    Ok(assemble(spec, k, by_length))
}

/// The signed contribution of every partition of `k`, in enumeration order.
pub fn partition_contributions(k: u32, spec: &SeriesSpec) -> Result<Vec<(PartitionMultiset, RhoPolynomial)>> {
    let table = PowerTable::new(k, spec)?;
    Ok(enumerate_partitions(k)
        .map(|pm| {
            let n = pm.length();
            let mut s = table.product(&pm);
            if sign_of(spec, k, n) < 0 {
                s = -s;
            }
            let poly = outer_poly(spec, n).scale(&s);
            (pm, poly)
        })
        .collect())
}

/// `c_{ρ,k}`, coefficient of `z^{2k}` in `(z/sin z)^ρ`.
pub fn gen_cosecant(k: u32) -> RhoPolynomial {
    partition_transform(k, &cosecant_spec()).expect("cosecant parts are defined for every i")
}

/// `d_{ρ,k}`, coefficient of `z^{2k}` in `sec^ρ z`.
pub fn gen_secant(k: u32) -> RhoPolynomial {
    partition_transform(k, &secant_spec()).expect("secant parts are defined for every i")
}

static COSECANT_ROWS: OnceLock<RwLock<Vec<Arc<RhoPolynomial>>>> = OnceLock::new();

/// Memoized [`gen_cosecant`]. Rows are computed once and shared.
pub fn cosecant_row(k: u32) -> Arc<RhoPolynomial> {
    let cache = COSECANT_ROWS.get_or_init(|| RwLock::new(Vec::new()));
    if let Some(row) = cache.read().expect("cosecant cache poisoned").get(k as usize) {
        return Arc::clone(row);
    }
    let start = cache.read().expect("cosecant cache poisoned").len() as u32;
    let fresh: Vec<Arc<RhoPolynomial>> = (start..=k).into_par_iter().map(|j| Arc::new(gen_cosecant(j))).collect();
    let mut rows = cache.write().expect("cosecant cache poisoned");
    for (j, row) in (start..=k).zip(fresh) {
        if rows.len() == j as usize {
            rows.push(row);
        }
    }
    Arc::clone(&rows[k as usize])
}

/// `c_{ρ,k}` evaluated at `ρ`.
pub fn cosecant_value(rho: &BigRational, k: u32) -> BigRational {
    cosecant_row(k).eval(rho)
}

/// Rows `0..=k_max` of a generated series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub k_max: u32,
    pub rows: Vec<RhoPolynomial>,
}

/// Coefficients of `log(1/f(w))` where `f` is `sin z / z` or `cos z` in `w = z²`.
pub fn log_reciprocal_series(kind: SeriesKind, k_max: u32) -> Vec<BigRational> {
    let n_max = k_max as usize;
    let f: Vec<BigRational> = (0..=n_max)
        .map(|n| {
            let d = match kind {
                SeriesKind::Cosecant => factorial(2 * n + 1),
                SeriesKind::Secant => factorial(2 * n),
            };
            let sign = if n % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), d)
        })
        .collect();
    // g = log f from g' f = f': n g_n = n f_n − Σ_{j=1}^{n−1} j g_j f_{n−j}
    let mut g = vec![BigRational::zero(); n_max + 1];
    for n in 1..=n_max {
        let mut acc = int(n as i64) * &f[n];
        for j in 1..n {
            acc -= int(j as i64) * &g[j] * &f[n - j];
        }
        g[n] = acc / int(n as i64);
    }
    g.into_iter().map(|c| -c).collect()
}

/// `c_{ρ,0}, …, c_{ρ,k_max}` at a fixed rational `ρ`, by the same
/// exponential recurrence as [`oracle_explog`] but on scalars. Quadratic in
/// `k_max`, so usable far beyond the reach of partition enumeration.
pub fn cosecant_values_at(rho: &BigRational, k_max: u32) -> Vec<BigRational> {
    let log = log_reciprocal_series(SeriesKind::Cosecant, k_max);
    let mut e = vec![BigRational::one()];
    for n in 1..=k_max as usize {
        let mut acc = BigRational::zero();
        for j in 1..=n {
            acc += int(j as i64) * &log[j] * &e[n - j];
        }
        e.push(acc * rho / int(n as i64));
    }
    e
}

/// Rows of `exp(ρ·L(w))` with `L` from [`log_reciprocal_series`].
///
/// Uses `E' = ρ L' E`, i.e. `n E_n = ρ Σ_{j=1}^{n} j L_j E_{n−j}`.
pub fn oracle_explog(k_max: u32, kind: SeriesKind) -> SeriesTable {
    let log = log_reciprocal_series(kind, k_max);
    let rho = RhoPolynomial::rho();
    let mut rows: Vec<RhoPolynomial> = vec![RhoPolynomial::one()];
    for n in 1..=k_max as usize {
        let mut acc = RhoPolynomial::zero();
        for j in 1..=n {
            acc = &acc + &rows[n - j].scale(&(int(j as i64) * &log[j]));
        }
        let row = (&acc * &rho).scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        rows.push(row);
    }
    SeriesTable { k_max, rows }
}

/// Classic cosecant number `c_k = c_{1,k}`.
pub fn cosecant_number(k: u32) -> BigRational {
    cosecant_value(&BigRational::one(), k)
}

/// `B_{2k} = (−1)^{k+1} (2k)! c_k / (2^{2k} − 2)`.
pub fn bernoulli_from_cosecant(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::domain("bernoulli_from_cosecant needs k ≥ 1"));
    }
    let ck = cosecant_number(k);
    let denom = (BigInt::one() << (2 * k as usize)) - BigInt::from(2);
    let b = ck * BigRational::new(factorial(2 * k as usize), denom);
    Ok(if k % 2 == 1 { b } else { -b })
}

/// `ζ(2k) = c_k π^{2k} / (2(1 − 2^{1−2k}))` at `digits` significant digits.
pub fn zeta_even_from_cosecant(k: u32, digits: u32) -> Result<FloatHP> {
    if k == 0 {
        return Err(Error::domain("zeta_even_from_cosecant needs k ≥ 1"));
    }
    if digits < 20 {
        return Err(Error::domain("zeta_even_from_cosecant needs at least 20 digits"));
    }
    let prec = Precision::digits(digits);
    let two = int(2);
    // exact rational factor c_k / (2(1 − 2^{1−2k}))
    let factor = cosecant_number(k) / (&two * (BigRational::one() - rational_powi(&two, 1 - 2 * k as i64)));
    let pi_pow = pi_hp(digits).powi(2 * k);
    Ok(&FloatHP::from_rational(&factor, prec) * &pi_pow)
}

/// `poly_eval(c_{ρ,k}, −1) = (−1)^k / (2k+1)!`: `ρ = −1` gives back `sin z / z`.
pub fn rho_minus_one_identity(k: u32) -> IdentityReport {
    let left = cosecant_value(&int(-1), k);
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let right = BigRational::new(BigInt::from(sign), factorial(2 * k as usize + 1));
    IdentityReport::exact("rho-minus-one", &[("k", k as i64)], &left, &right)
}

/// `c_{2,k} = (2k−1) c_k / (1 − 2^{1−2k})`, the cosecant-squared numbers.
pub fn rho_two_identity(k: u32) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::domain("the cosecant-squared relation needs k ≥ 1"));
    }
    let left = cosecant_value(&int(2), k);
    let right =
        int(2 * k as i64 - 1) * cosecant_number(k) / (BigRational::one() - rational_powi(&int(2), 1 - 2 * k as i64));
    Ok(IdentityReport::exact("rho-two", &[("k", k as i64)], &left, &right))
}

/// Partition transform and exp-log oracle agree on row `k`.
pub fn oracle_identity(kind: SeriesKind, oracle: &SeriesTable, k: u32) -> IdentityReport {
    let via_partitions = partition_transform(k, &kind.spec()).expect("built-in spec");
    let id = match kind {
        SeriesKind::Cosecant => "oracle-cosecant",
        SeriesKind::Secant => "oracle-secant",
    };
    let mut report = IdentityReport::polynomial(id, &[("k", k as i64)], &via_partitions, &oracle.rows[k as usize]);
    report.note = Some(format!("{} partitions", crate::partitions::partition_count(k)));
    report
}

/// One row in the JSON exchange format: `{"k": 2, "coeffs": [["0","1"], ["1","180"], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub k: u32,
    pub coeffs: Vec<[String; 2]>,
}

impl SeriesRow {
    pub fn new(k: u32, poly: &RhoPolynomial) -> Self {
        let coeffs = poly.coeffs().iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect();
        SeriesRow { k, coeffs }
    }

    pub fn to_polynomial(&self) -> Result<RhoPolynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|[n, d]| crate::exactnum::parse_rational(&format!("{n}/{d}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(RhoPolynomial::new(coeffs))
    }

    /// CSV lines `k,i,num,den`, one per coefficient.
    pub fn csv_lines(&self) -> Vec<String> {
        self.coeffs.iter().enumerate().map(|(i, [n, d])| format!("{},{},{},{}", self.k, i, n, d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn row(scale: BigRational, ints: &[i64]) -> RhoPolynomial {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(ints.iter().map(|&n| int(n) * &scale));
        RhoPolynomial::new(coeffs)
    }

    #[test]
    fn small_rows() {
        assert_eq!(gen_cosecant(0), RhoPolynomial::one());
        assert_eq!(gen_cosecant(1), row(rat(1, 6), &[1]));
        assert_eq!(gen_cosecant(2), row(rat(2, 720), &[2, 5]));
        let f15 = BigRational::from_integer(factorial(15));
        let k7 = row(rat(1, 27) / f15, &[552960, 1810176, 2471456, 1849848, 820820, 210210, 25025]);
        assert_eq!(gen_cosecant(7), k7);
    }

    #[test]
    fn signed_and_alternating_forms_agree() {
        let signed = SeriesSpec::signed("cosecant-signed", |i| {
            let s = if i % 2 == 1 { 1 } else { -1 };
            Some(BigRational::new(BigInt::from(s), factorial(2 * i as usize + 1)))
        });
        for k in 0..=12 {
            assert_eq!(partition_transform(k, &signed).unwrap(), gen_cosecant(k));
        }
    }

    #[test]
    fn scalar_outer_weight_counts_compositions() {
        // weight N! with p_i = 1 gives Σ N!/Πλ! = compositions of k = 2^{k−1}
        let spec = SeriesSpec::signed("compositions", |_| Some(BigRational::one()))
            .with_outer(OuterWeight::Scalar(Arc::new(|n| BigRational::from_integer(factorial(n as usize)))));
        for k in 1..=10u32 {
            let p = partition_transform(k, &spec).unwrap();
            assert_eq!(p, RhoPolynomial::constant(int(1 << (k - 1))));
        }
    }

    #[test]
    fn undefined_part_is_a_configuration_error() {
        let spec = SeriesSpec::signed("short", |i| (i < 3).then(BigRational::one));
        assert!(partition_transform(2, &spec).is_ok());
        assert!(matches!(partition_transform(3, &spec), Err(Error::Config(_))));
    }

    #[test]
    fn secant_rows() {
        assert_eq!(gen_secant(0), RhoPolynomial::one());
        assert_eq!(gen_secant(1), row(rat(1, 2), &[1]));
        assert_eq!(gen_secant(2).eval(&int(1)), rat(5, 24));
        // sec z = 1 + z²/2 + 5z⁴/24 + 61z⁶/720 + 277z⁸/8064
        assert_eq!(gen_secant(3).eval(&int(1)), rat(61, 720));
        assert_eq!(gen_secant(4).eval(&int(1)), rat(277, 8064));
    }

    #[test]
    fn log_series_leading_terms() {
        let l = log_reciprocal_series(SeriesKind::Cosecant, 3);
        assert_eq!(l[0], int(0));
        assert_eq!(l[1], rat(1, 6));
        assert_eq!(l[2], rat(1, 180));
        // log sec z = z²/2 + z⁴/12 + …
        let s = log_reciprocal_series(SeriesKind::Secant, 2);
        assert_eq!(s[1], rat(1, 2));
        assert_eq!(s[2], rat(1, 12));
    }

    #[test]
    fn oracle_matches_partitions() {
        for kind in [SeriesKind::Cosecant, SeriesKind::Secant] {
            let oracle = oracle_explog(16, kind);
            assert_eq!(oracle.rows[0], RhoPolynomial::one());
            for k in 0..=16 {
                assert!(oracle_identity(kind, &oracle, k).pass, "{kind:?} k = {k}");
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        for k in [0, 1, 9, 18] {
            assert_eq!(partition_transform_par(k, &cosecant_spec()).unwrap(), gen_cosecant(k));
        }
    }

    #[test]
    fn classic_numbers() {
        assert_eq!(cosecant_number(0), int(1));
        assert_eq!(cosecant_number(1), rat(1, 6));
        assert_eq!(cosecant_number(2), rat(7, 360));
        assert_eq!(cosecant_number(3), rat(31, 15120));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_from_cosecant(1).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_from_cosecant(2).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_from_cosecant(8).unwrap(), rat(-3617, 510));
        assert!(bernoulli_from_cosecant(0).is_err());
    }

    #[test]
    fn zeta_two_and_four() {
        let pi = pi_hp(40);
        let z2 = zeta_even_from_cosecant(1, 30).unwrap();
        let want = &pi.powi(2) / &FloatHP::from_int(6, pi.precision());
        assert_eq!(z2.to_decimal(30), want.to_decimal(30));
        let z4 = zeta_even_from_cosecant(2, 30).unwrap();
        let want = &pi.powi(4) / &FloatHP::from_int(90, pi.precision());
        assert_eq!(z4.to_decimal(30), want.to_decimal(30));
        assert!(zeta_even_from_cosecant(2, 10).is_err());
    }

    #[test]
    fn contribution_signs_follow_length_parity() {
        for k in 1..=12u32 {
            let contributions = partition_contributions(k, &cosecant_spec()).unwrap();
            let mut total = RhoPolynomial::zero();
            for (pm, poly) in &contributions {
                let v = poly.eval(&int(1));
                let expect_positive = (k + pm.length()) % 2 == 0;
                assert_eq!(v > BigRational::zero(), expect_positive, "k = {k}, {pm}");
                total = &total + poly;
            }
            assert_eq!(total, gen_cosecant(k));
        }
    }

    #[test]
    fn row_json_and_csv() {
        let r = SeriesRow::new(1, &gen_cosecant(1));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"k":1,"coeffs":[["0","1"],["1","6"]]}"#);
        assert_eq!(r.csv_lines(), ["1,0,0,1", "1,1,1,6"]);
        assert_eq!(r.to_polynomial().unwrap(), gen_cosecant(1));
    }

    #[test]
    fn scalar_values_match_rows() {
        for rho in [rat(7, 3), int(-4), int(20)] {
            let vals = cosecant_values_at(&rho, 12);
            for (k, c) in vals.iter().enumerate() {
                assert_eq!(c, &cosecant_value(&rho, k as u32), "ρ = {rho}, k = {k}");
            }
        }
    }
}
