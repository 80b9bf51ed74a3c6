//! Coefficients `C_{k,i}` of `c_{ρ,k} = Σ_i C_{k,i} ρ^i`: closed forms for
//! the four highest, the large-`ρ` approximation built from them, and the
//! three routes to `c_{2v,v−1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{binomial, factorial, int, pi_hp, rat, truncate_decimal, FloatHP, Precision, RhoPolynomial};
use crate::genseries::cosecant_row;
use crate::stirling::{interpolate, StirlingTable};
use crate::{Error, Result};

/// Decimal places of the accuracy-ratio table.
pub const BETA_PLACES: usize = 6;

fn six_pow(e: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(6), e as usize))
}

fn fact(n: u32) -> BigRational {
    BigRational::from_integer(factorial(n as usize))
}

/// `C_{k,i}`, read off `c_{ρ,k}`.
pub fn coefficient(k: u32, i: u32) -> Result<BigRational> {
    if i > k {
        return Err(Error::domain(format!("coefficient needs 0 ≤ i ≤ k, got k = {k}, i = {i}")));
    }
    Ok(cosecant_row(k).coeff(i as usize))
}

/// `C_{k,k−ℓ}` for `ℓ ≤ 4` from its closed form; defined for `k ≥ ℓ+1`.
pub fn leading_closed(k: u32, ell: u32) -> Result<BigRational> {
    if ell > 4 {
        return Err(Error::domain(format!("closed forms exist for ℓ ≤ 4, got {ell}")));
    }
    if k < ell + 1 {
        return Err(Error::domain(format!("C_{{k,k−{ell}}} starts at k = {}, got k = {k}", ell + 1)));
    }
    let kk = int(i64::from(k));
    Ok(match ell {
        0 => (six_pow(k) * fact(k)).recip(),
        1 => (int(5) * six_pow(k) * fact(k - 2)).recip(),
        2 => (int(21) * &kk + int(17)) / (int(175) * six_pow(k + 1) * fact(k - 3)),
        3 => (&kk * &kk + int(17) * &kk / int(7)) / (int(125) * six_pow(k + 1) * fact(k - 4)),
        _ => {
            let cubic = int(3) * kk.pow(3) + int(102) * kk.pow(2) / int(7) + int(289) * &kk / int(49) - rat(11170, 539);
            int(3) * cubic / (int(625) * six_pow(k + 3) * fact(k - 5))
        }
    })
}

/// `C_{k,k−2}` assembled from the four partitions that reach `ρ^{k−2}`:
/// `{1^k}`, `{2,1^{k−2}}`, `{3,1^{k−3}}` and `{2,2,1^{k−4}}`, each through a
/// Stirling number of its Pochhammer factor.
pub fn four_partition_assembly(k: u32) -> Result<BigRational> {
    if k < 3 {
        return Err(Error::domain(format!("C_{{k,k−2}} starts at k = 3, got {k}")));
    }
    let t = StirlingTable::new(k);
    let s = |n: u32, j: u32| BigRational::from_integer(t.get(n, j).unwrap().clone());
    let mut total = s(k, k - 2) / (six_pow(k) * fact(k))
        + s(k - 1, k - 2) / (fact(5) * six_pow(k - 2) * fact(k - 2))
        + s(k - 2, k - 2) / (fact(7) * six_pow(k - 3) * fact(k - 3));
    if k >= 4 {
        total += s(k - 2, k - 2) / (int(2) * fact(5).pow(2) * six_pow(k - 4) * fact(k - 4));
    }
    Ok(total)
}

/// Reproduces the conjecture-fit derivation of `C_{k,k−ℓ}` for `1 ≤ ℓ ≤ 4`:
/// assume `C_{k,k−ℓ} = q(k) / ((3!)^{k+ℓ−1} (k−ℓ−1)!)` with `q` of degree
/// `ℓ−1`, and solve for `q` from the exact coefficients at `k = ℓ+1, …, 2ℓ`.
///
/// Returns `q` together with its sample points.
pub fn conjecture_fit(ell: u32) -> Result<(RhoPolynomial, Vec<(u32, BigRational)>)> {
    if !(1..=4).contains(&ell) {
        return Err(Error::domain(format!("conjecture fit covers 1 ≤ ℓ ≤ 4, got {ell}")));
    }
    let samples: Vec<(u32, BigRational)> = (ell + 1..=2 * ell)
        .map(|k| {
            let c = coefficient(k, k - ell).expect("in range");
            (k, c * six_pow(k + ell - 1) * fact(k - ell - 1))
        })
        .collect();
    let points: Vec<_> = samples.iter().map(|(k, y)| (int(i64::from(*k)), y.clone())).collect();
    Ok((interpolate(&points), samples))
}

/// Evaluates a fitted numerator back into `C_{k,k−ℓ}`.
pub fn conjecture_value(q: &RhoPolynomial, k: u32, ell: u32) -> BigRational {
    q.eval(&int(i64::from(k))) / (six_pow(k + ell - 1) * fact(k - ell - 1))
}

/// Four-term large-`ρ` approximation of `c_{ρ,k}` from `C_{k,k}`, …,
/// `C_{k,k−3}`, exact.
pub fn approx_cosecant_exact(rho: &BigRational, k: u32) -> Result<BigRational> {
    if k < 4 {
        return Err(Error::domain(format!("the four-term approximation needs k ≥ 4, got {k}")));
    }
    (0..=3u32).try_fold(BigRational::zero(), |acc, ell| Ok(acc + leading_closed(k, ell)? * rho.pow((k - ell) as i32)))
}

pub fn approx_cosecant(rho: &BigRational, k: u32, digits: u32) -> Result<FloatHP> {
    if digits < 20 {
        return Err(Error::domain("approx_cosecant needs at least 20 digits"));
    }
    Ok(FloatHP::from_rational(&approx_cosecant_exact(rho, k)?, Precision::digits(digits)))
}

/// Accuracy ratio `β(ρ,k)` = approximation / exact, as an exact rational.
pub fn beta_ratio_exact(rho: &BigRational, k: u32) -> Result<BigRational> {
    let exact = cosecant_row(k).eval(rho);
    if exact.is_zero() {
        return Err(Error::domain(format!("c_{{ρ,{k}}} vanishes at ρ = {rho}")));
    }
    Ok(approx_cosecant_exact(rho, k)? / exact)
}

/// One cell of the accuracy-ratio table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaCell {
    pub rho: i64,
    pub k: u32,
    /// Truncated (never rounded) to six decimals.
    pub truncated: String,
    pub exact: BigRational,
    /// The exact value lies within `10^{−12}` above a six-decimal boundary.
    pub near_boundary: bool,
}

pub fn beta_cell(rho: i64, k: u32) -> Result<BetaCell> {
    if rho < 1 {
        return Err(Error::domain(format!("β(ρ,k) needs ρ ≥ 1, got {rho}")));
    }
    let exact = beta_ratio_exact(&int(rho), k)?;
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), BETA_PLACES));
    let scaled = &exact * &scale;
    let frac = &scaled - scaled.floor();
    let near_boundary = frac * BigRational::from_integer(num_traits::pow(BigInt::from(10), 6)) < BigRational::one();
    Ok(BetaCell { rho, k, truncated: truncate_decimal(&exact, BETA_PLACES), exact, near_boundary })
}

/// `β(ρ,k)` truncated to six decimals, e.g. `"0.998905"` for `(10, 6)`.
pub fn beta_ratio(rho: i64, k: u32) -> Result<String> {
    Ok(beta_cell(rho, k)?.truncated)
}

/// `c_{2v,v−1} = B(v,1/2)/2`. With `Γ(v+1/2) = (2v)!√π/(4^v v!)` the `√π`
/// cancels and this is `(v−1)! 4^v v! / (2·(2v)!)`.
pub fn c2v_vm1_beta(v: u32) -> Result<BigRational> {
    if v < 2 {
        return Err(Error::domain(format!("c2v_vm1_beta needs v ≥ 2, got {v}")));
    }
    let four_v = BigInt::one() << (2 * v as usize);
    Ok(BigRational::new(
        factorial(v as usize - 1) * four_v * factorial(v as usize),
        BigInt::from(2) * factorial(2 * v as usize),
    ))
}

/// `c_{2v,v−1} = 2^{2−2v} Σ_{k=0}^{v−1} (−1)^{v−k−1} C(2v−1,k)/(2v−2k−1)`.
pub fn c2v_vm1_sum(v: u32) -> Result<BigRational> {
    if v < 1 {
        return Err(Error::domain("c2v_vm1_sum needs v ≥ 1"));
    }
    let sum = (0..v).fold(BigRational::zero(), |acc, k| {
        let term = BigRational::new(binomial(u64::from(2 * v - 1), u64::from(k)), BigInt::from(2 * v - 2 * k - 1));
        if (v - k - 1).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    });
    Ok(sum / BigRational::from_integer(BigInt::one() << (2 * v as usize - 2)))
}

/// Chebyshev `T_n(3) = ((3+√8)^n + (3−√8)^n)/2`, an integer.
fn chebyshev_t_at_three(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::from(3));
    for _ in 0..n {
        let next = BigInt::from(6) * &b - &a;
        a = b;
        b = next;
    }
    a
}

/// Number of accelerated terms making `2/(3+√8)^n` smaller than `10^{−d}`.
fn acceleration_terms(decimal_digits: u32) -> u32 {
    // log10(3+√8) > 0.7655
    (decimal_digits * 10_000).div_ceil(7655) + 2
}

/// `Σ_{j≥0} (−1)^j/(x+j)` for rational `x > 0`, which equals
/// `(ψ((x+1)/2) − ψ(x/2))/2`.
///
/// The alternating series is summed with the Cohen–Villegas–Zagier
/// acceleration. `1/(x+j)` is a moment sequence, so the error after `n`
/// accelerated terms is at most `2|S|/(3+√8)^n`; `n` is chosen to push this
/// below the guarded precision. All intermediate arithmetic is exact.
pub fn alternating_beta(x: &BigRational, prec: Precision) -> Result<FloatHP> {
    if !x.is_positive() {
        return Err(Error::domain(format!("alternating_beta needs x > 0, got {x}")));
    }
    let n = acceleration_terms(prec.digits + prec.guard);
    let d = BigRational::from_integer(chebyshev_t_at_three(n));
    let nn = i64::from(n);
    let mut b = int(-1);
    let mut c = -d.clone();
    let mut s = BigRational::zero();
    for k in 0..nn {
        c = &b - &c;
        s += &c / (x + int(k));
        b = b * int((k + nn) * (k - nn)) / ((int(k) + rat(1, 2)) * int(k + 1));
    }
    Ok(FloatHP::from_rational(&(s / d), prec))
}

/// Which bracket to use in the large-`v` form of `c_{2v,v−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticForm {
    /// `π/4 + (−1)^{v−1}β/2 + (−1)^{v−1}⌊v/2⌋/(2v) − 5(1−(−1)^v)/(8v) + (3/(4v))(−1)^{v−1}β/2`.
    Displayed,
    /// As `Displayed` with the sign of the `3/(4v)` term reversed.
    AlternateSign,
    /// `π/4` alone.
    LeadingOnly,
}

/// `2^{2−2v} C(2v−1, v) × bracket`, with `β = β(v+1/2)` from [`alternating_beta`].
pub fn c2v_vm1_asymptotic_form(v: u32, digits: u32, form: AsymptoticForm) -> Result<FloatHP> {
    if v < 2 {
        return Err(Error::domain(format!("c2v_vm1_asymptotic needs v ≥ 2, got {v}")));
    }
    if digits < 30 {
        return Err(Error::domain("c2v_vm1_asymptotic needs at least 30 digits"));
    }
    let prec = Precision::digits(digits);
    let pi = pi_hp(digits);
    let quarter_pi = &pi / &FloatHP::from_int(4, prec);
    let prefactor =
        BigRational::new(binomial(u64::from(2 * v - 1), u64::from(v)), BigInt::one() << (2 * v as usize - 2));
    let prefactor = FloatHP::from_rational(&prefactor, prec);
    if form == AsymptoticForm::LeadingOnly {
        return Ok(&prefactor * &quarter_pi);
    }

    let vv = int(i64::from(v));
    let sign = if v % 2 == 1 { int(1) } else { int(-1) }; // (−1)^{v−1}
    let half_beta = &alternating_beta(&(&vv + rat(1, 2)), prec)? / &FloatHP::from_int(2, prec);
    let signed_half_beta = &FloatHP::from_rational(&sign, prec) * &half_beta;
    let one_minus_parity = if v.is_multiple_of(2) { int(0) } else { int(2) }; // 1 − (−1)^v
    let rational_part = &sign * int(i64::from(v / 2)) / (int(2) * &vv) - int(5) * one_minus_parity / (int(8) * &vv);
    let correction_factor = match form {
        AsymptoticForm::Displayed => rat(3, 4) / &vv,
        _ => -rat(3, 4) / &vv,
    };
    let correction = &FloatHP::from_rational(&correction_factor, prec) * &signed_half_beta;
    let bracket = &(&(&quarter_pi + &signed_half_beta) + &FloatHP::from_rational(&rational_part, prec)) + &correction;
    Ok(&prefactor * &bracket)
}

/// The large-`v` approximation of `c_{2v,v−1}` in its displayed form.
pub fn c2v_vm1_asymptotic(v: u32, digits: u32) -> Result<FloatHP> {
    c2v_vm1_asymptotic_form(v, digits, AsymptoticForm::Displayed)
}

/// `|approx − exact| / exact` for one asymptotic form.
pub fn c2v_vm1_relative_error(v: u32, digits: u32, form: AsymptoticForm) -> Result<FloatHP> {
    let approx = c2v_vm1_asymptotic_form(v, digits, form)?;
    let exact = FloatHP::from_rational(&c2v_vm1_beta(v)?, approx.precision());
    Ok(&(&approx - &exact).abs() / &exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rational;

    #[test]
    fn quoted_coefficients() {
        assert_eq!(coefficient(4, 1).unwrap(), rat(144, 5443200));
        assert_eq!(coefficient(6, 6).unwrap(), (six_pow(6) * fact(6)).recip());
        for k in 1..=10 {
            assert_eq!(coefficient(k, 0).unwrap(), int(0));
        }
        assert!(coefficient(3, 4).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(leading_closed(8, 3).unwrap(), rat(73, 26_453_952_000));
        assert_eq!(leading_closed(9, 4).unwrap(), parse_rational("229051/733303549440000").unwrap());
        assert_eq!(leading_closed(2, 1).unwrap(), rat(1, 180));
        assert_eq!(leading_closed(2, 1).unwrap(), coefficient(2, 1).unwrap());
        assert!(leading_closed(3, 3).is_err());
        assert!(leading_closed(9, 5).is_err());
    }

    #[test]
    fn closed_forms_match_exact_coefficients() {
        for ell in 0..=4 {
            for k in ell + 1..=20 {
                assert_eq!(leading_closed(k, ell).unwrap(), coefficient(k, k - ell).unwrap(), "k = {k}, ℓ = {ell}");
            }
        }
    }

    #[test]
    fn four_partition_assembly_matches() {
        for k in 3..=20 {
            assert_eq!(four_partition_assembly(k).unwrap(), coefficient(k, k - 2).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn conjecture_fit_reproduces_linear_system() {
        let (q, samples) = conjecture_fit(3).unwrap();
        let rhs: Vec<_> = samples.iter().map(|(_, y)| y.clone()).collect();
        assert_eq!(rhs, vec![rat(216, 175), rat(312, 175), rat(2124, 875)]);
        assert_eq!(q, RhoPolynomial::new(vec![int(0), rat(102, 875), rat(6, 125)]));
        for ell in 1..=4 {
            let (q, _) = conjecture_fit(ell).unwrap();
            assert_eq!(q.degree() as u32, ell - 1);
            for k in ell + 1..=20 {
                assert_eq!(conjecture_value(&q, k, ell), leading_closed(k, ell).unwrap());
            }
        }
    }

    #[test]
    fn approximation_needs_k_four() {
        assert!(approx_cosecant_exact(&int(10), 3).is_err());
        assert!(approx_cosecant(&int(10), 6, 10).is_err());
        let a = approx_cosecant(&int(10), 6, 30).unwrap();
        assert_eq!(
            a.to_rational(),
            FloatHP::from_rational(&approx_cosecant_exact(&int(10), 6).unwrap(), a.precision()).to_rational()
        );
    }

    #[test]
    fn beta_ratio_quoted_cells() {
        // exact ratio 0.99890472…; rounding, not truncation, would give 0.998905
        assert_eq!(beta_ratio(10, 6).unwrap(), "0.998904");
        assert_eq!(beta_ratio(1000, 15).unwrap(), "0.999999");
        assert_eq!(beta_ratio(50, 10).unwrap(), "0.999644");
        assert_eq!(beta_ratio(30, 12).unwrap(), "0.990752");
    }

    #[test]
    fn beta_ratio_tends_to_one() {
        let mut prev = BigRational::zero();
        for rho in [10, 100, 1000, 10_000, 100_000] {
            let b = beta_ratio_exact(&int(rho), 8).unwrap();
            let dist = (int(1) - &b).abs();
            if rho > 10 {
                assert!(dist < prev);
            }
            prev = dist;
        }
        assert!(prev < rat(1, 1_000_000_000));
    }

    #[test]
    fn c2v_routes() {
        assert_eq!(c2v_vm1_beta(5).unwrap(), rat(128, 315));
        assert_eq!(c2v_vm1_sum(5).unwrap(), rat(128, 315));
        assert_eq!(c2v_vm1_beta(2).unwrap(), rat(2, 3));
        assert_eq!(c2v_vm1_beta(3).unwrap(), rat(8, 15));
        assert_eq!(c2v_vm1_sum(1).unwrap(), int(1));
        assert!(c2v_vm1_beta(1).is_err());
        for v in 2..=40 {
            assert_eq!(c2v_vm1_sum(v).unwrap(), c2v_vm1_beta(v).unwrap(), "v = {v}");
        }
        for v in 2..=25u32 {
            let via_row = cosecant_row(v - 1).eval(&int(2 * i64::from(v)));
            assert_eq!(via_row, c2v_vm1_beta(v).unwrap(), "v = {v}");
        }
    }

    #[test]
    fn alternating_beta_against_pi_quarter_identity() {
        // Σ_j (−1)^j/(v+1/2+j) = 2(−1)^v (π/4 − Σ_{n<v} (−1)^n/(2n+1))
        let prec = Precision::digits(40);
        let pi = pi_hp(40);
        for v in [1u32, 2, 3, 7, 10, 25] {
            let partial = (0..v).fold(BigRational::zero(), |acc, n| {
                let t = rat(1, 2 * i64::from(n) + 1);
                if n % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            });
            let quarter = &pi / &FloatHP::from_int(4, prec);
            let diff = &quarter - &FloatHP::from_rational(&partial, prec);
            let sign = if v % 2 == 0 { 2 } else { -2 };
            let want = &FloatHP::from_int(sign, prec) * &diff;
            let got = alternating_beta(&(int(i64::from(v)) + rat(1, 2)), prec).unwrap();
            assert_eq!(got.to_decimal(38), want.to_decimal(38), "v = {v}");
        }
        // x = 1 gives log 2
        let ln2 = "0.6931471805599453094172321214581765680755";
        assert_eq!(alternating_beta(&int(1), prec).unwrap().to_decimal(40), ln2);
        assert!(alternating_beta(&int(0), prec).is_err());
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_t_at_three(0), BigInt::from(1));
        assert_eq!(chebyshev_t_at_three(1), BigInt::from(3));
        assert_eq!(chebyshev_t_at_three(2), BigInt::from(17));
        assert_eq!(chebyshev_t_at_three(3), BigInt::from(99));
    }

    #[test]
    fn leading_term_error_shrinks() {
        let mut prev: Option<FloatHP> = None;
        for v in [4, 8, 16, 32, 64] {
            let e = c2v_vm1_relative_error(v, 30, AsymptoticForm::LeadingOnly).unwrap();
            if let Some(p) = prev {
                assert!(e < p);
            }
            prev = Some(e);
        }
    }

    #[test]
    fn displayed_form_error_is_monotone_but_does_not_vanish() {
        let errs: Vec<FloatHP> =
            [4, 8, 16, 32].iter().map(|&v| c2v_vm1_relative_error(v, 30, AsymptoticForm::Displayed).unwrap()).collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]));
        // the ⌊v/2⌋/(2v) term is O(1); the error levels off near 1/3
        let third = FloatHP::from_rational(&rat(3, 10), Precision::digits(30));
        assert!(errs.iter().all(|e| *e > third));
        let v10 = c2v_vm1_relative_error(10, 30, AsymptoticForm::Displayed).unwrap();
        let lead10 = c2v_vm1_relative_error(10, 30, AsymptoticForm::LeadingOnly).unwrap();
        assert!(v10 > lead10);
    }

    #[test]
    fn small_v_is_finite() {
        let a = c2v_vm1_asymptotic(2, 30).unwrap();
        assert!(!a.is_zero());
        assert!(c2v_vm1_asymptotic(1, 30).is_err());
        assert!(c2v_vm1_asymptotic(4, 20).is_err());
    }
}
