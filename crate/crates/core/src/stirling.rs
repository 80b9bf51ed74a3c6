//! Signed Stirling numbers of the first kind and the polynomials `r_ℓ(k)`
//! with `s_k^{(k−ℓ)} = (−1)^ℓ C(k, ℓ+1) r_ℓ(k)`.
//!
//! Sign convention: `s_{k+1}^{(j)} = s_k^{(j−1)} − k s_k^{(j)}`, so
//! `sign(s_k^{(j)}) = (−1)^{k−j}` and
//! `(ρ)_k = (−1)^k Σ_j (−1)^j s_k^{(j)} ρ^j`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{binomial, int, RhoPolynomial};
use crate::{Error, Result};

/// Largest `j` accepted by [`stirling1_nested`].
pub const NESTED_MAX_J: u32 = 6;
/// Largest `k` accepted by [`stirling1_nested`].
pub const NESTED_MAX_K: u32 = 14;
/// `r_ℓ` is validated against the recurrence for every `k` up to this value.
pub const R_POLY_VALIDATION_K: u32 = 40;

/// Triangle `s_k^{(j)}` for `0 ≤ j ≤ k ≤ k_max`, filled by the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(k_max: u32) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for k in 0..k_max as usize {
            let prev = &rows[k];
            let kk = BigInt::from(k);
            let next: Vec<BigInt> = (0..=k + 1)
                .map(|j| {
                    let left = if j >= 1 { prev[j - 1].clone() } else { BigInt::zero() };
                    let right = prev.get(j).map_or_else(BigInt::zero, |s| &kk * s);
                    left - right
                })
                .collect();
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn k_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn get(&self, k: u32, j: u32) -> Result<&BigInt> {
        if j > k {
            return Err(Error::domain(format!("Stirling number needs j ≤ k, got k = {k}, j = {j}")));
        }
        self.rows
            .get(k as usize)
            .map(|row| &row[j as usize])
            .ok_or_else(|| Error::domain(format!("k = {k} beyond table size {}", self.k_max())))
    }
}

/// `s_k^{(j)}` by the recurrence.
pub fn stirling1(k: i64, j: i64) -> Result<BigInt> {
    if k < 0 || j < 0 || j > k {
        return Err(Error::domain(format!("stirling1 needs 0 ≤ j ≤ k, got k = {k}, j = {j}")));
    }
    StirlingTable::new(k as u32).get(k as u32, j as u32).cloned()
}

/// `s_k^{(k−j)}` as the nested sum
/// `(−1)^j Σ_{i_j=j}^{k−1} i_j Σ_{i_{j−1}=j−1}^{i_j−1} i_{j−1} … Σ_{i_1=1}^{i_2−1} i_1`,
/// evaluated term by term over all chains `1 ≤ i_1 < … < i_j ≤ k−1`.
///
/// Limited to `1 ≤ j ≤ 6`, `j < k ≤ 14`; the number of terms is `C(k−1, j)`.
pub fn stirling1_nested(k: u32, j: u32) -> Result<BigInt> {
    if j == 0 || j >= k || j > NESTED_MAX_J || k > NESTED_MAX_K {
        return Err(Error::domain(format!(
            "nested sum needs 1 ≤ j ≤ {NESTED_MAX_J} and j < k ≤ {NESTED_MAX_K}, got k = {k}, j = {j}"
        )));
    }
    let j = j as usize;
    // odometer over i_1 < i_2 < … < i_j, starting from the smallest chain
    let mut idx: Vec<u64> = (1..=j as u64).collect();
    let top = u64::from(k) - 1;
    let mut sum = BigInt::zero();
    loop {
        sum += idx.iter().map(|&i| BigInt::from(i)).product::<BigInt>();
        // advance the lowest index that can still move, reset those below it
        let mut pos = 0;
        loop {
            let limit = if pos + 1 < j { idx[pos + 1] - 1 } else { top };
            if idx[pos] < limit {
                idx[pos] += 1;
                for (q, slot) in idx.iter_mut().enumerate().take(pos) {
                    *slot = q as u64 + 1;
                }
                break;
            }
            pos += 1;
            if pos == j {
                return Ok(if j.is_multiple_of(2) { sum } else { -sum });
            }
        }
    }
}

/// `r_ℓ(k)`, a polynomial in `k` of degree `ℓ−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPolynomial {
    pub ell: u32,
    /// Coefficients in ascending powers of `k`.
    pub poly: RhoPolynomial,
}

impl RPolynomial {
    pub fn eval(&self, k: u32) -> BigRational {
        self.poly.eval(&int(i64::from(k)))
    }

    /// `(−1)^ℓ C(k, ℓ+1) r_ℓ(k)`, which should equal `s_k^{(k−ℓ)}`.
    pub fn stirling_value(&self, k: u32) -> BigRational {
        let c = BigRational::from_integer(binomial(u64::from(k), u64::from(self.ell) + 1));
        let v = c * self.eval(k);
        if self.ell.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }
}

/// Lagrange interpolation through `(x_i, y_i)`, exact.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> RhoPolynomial {
    let mut out = RhoPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = RhoPolynomial::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &RhoPolynomial::new(vec![-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
        }
        out = &out + &basis.scale(&(yi / denom));
    }
    out
}

/// Derives `r_ℓ` from the recurrence by interpolating
/// `s_k^{(k−ℓ)} / ((−1)^ℓ C(k, ℓ+1))` at `k = ℓ+1, …, 2ℓ`, then checks the
/// result for every `k` from `ℓ+1` to 40.
pub fn r_poly(ell: u32) -> Result<RPolynomial> {
    if !(1..=10).contains(&ell) {
        return Err(Error::domain(format!("r_poly needs 1 ≤ ℓ ≤ 10, got {ell}")));
    }
    let table = StirlingTable::new(R_POLY_VALIDATION_K);
    let target = |k: u32| BigRational::from_integer(table.get(k, k - ell).unwrap().clone());
    let points: Vec<(BigRational, BigRational)> = (ell + 1..=2 * ell)
        .map(|k| {
            let c = BigRational::from_integer(binomial(u64::from(k), u64::from(ell) + 1));
            let y = target(k) / c;
            let y = if ell.is_multiple_of(2) { y } else { -y };
            (int(i64::from(k)), y)
        })
        .collect();
    let r = RPolynomial { ell, poly: interpolate(&points) };
    for k in ell + 1..=R_POLY_VALIDATION_K {
        if r.stirling_value(k) != target(k) {
            return Err(Error::Validation(format!("r_{ell} disagrees with the recurrence at k = {k}")));
        }
    }
    Ok(r)
}
