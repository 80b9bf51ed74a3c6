//! Exact scalars and the high-precision real used for `π`-dependent checks.
//!
//! [`BigRational`] from `num-rational` is the universal scalar. It keeps
//! itself in lowest terms with a positive denominator after every
//! operation, so identities are compared by plain equality.

mod float;
mod poly;

pub use float::{pi_hp, FloatHP, Precision, DEFAULT_GUARD_DIGITS};
pub use poly::{pochhammer_poly, poly_eval, RhoPolynomial};

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `"num/den"` with the denominator always written, e.g. `"-1/30"`, `"0/1"`.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"`, a bare integer, or a finite decimal such as `"2.5"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, d));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Truncates `q` toward zero to `places` decimals and renders it, e.g.
/// `0.9989052…` with 6 places gives `"0.998905"`.
pub fn truncate_decimal(q: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (q.numer().abs() * &scale) / q.denom();
    let (whole, frac) = scaled.div_rem(&scale);
    let sign = if q.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = places)
}

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// `n!`, memoized process-wide.
pub fn factorial(n: usize) -> BigInt {
    let table = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    {
        let t = table.read().expect("factorial table poisoned");
        if let Some(f) = t.get(n) {
            return f.clone();
        }
    }
    let mut t = table.write().expect("factorial table poisoned");
    while t.len() <= n {
        let next = t.last().unwrap() * BigInt::from(t.len());
        t.push(next);
    }
    t[n].clone()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `base^exp` for a possibly negative exponent.
pub fn rational_powi(base: &BigRational, exp: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_string_form() {
        assert_eq!(rational_to_string(&rat(-2, 60)), "-1/30");
        assert_eq!(rational_to_string(&int(0)), "0/1");
        assert_eq!(parse_rational("7/360").unwrap(), rat(7, 360));
        assert_eq!(parse_rational("  -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("2.5").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn truncation_never_rounds() {
        assert_eq!(truncate_decimal(&rat(9989059, 10_000_000), 6), "0.998905");
        assert_eq!(truncate_decimal(&rat(1999999999, 2000000000), 6), "0.999999");
        assert_eq!(truncate_decimal(&rat(1, 1), 6), "1.000000");
        assert_eq!(truncate_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(truncate_decimal(&rat(1, 20), 6), "0.050000");
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(15), BigInt::from(1_307_674_368_000u64));
        assert_eq!(binomial(9, 4), BigInt::from(126));
        assert_eq!(binomial(4, 9), BigInt::zero());
        assert_eq!(rational_powi(&rat(2, 3), -2), rat(9, 4));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_laws_hold_in_canonical_form(a in small_rational(), b in small_rational(), c in small_rational()) {
            let left = (&a + &b) + &c;
            let right = &a + (&b + &c);
            prop_assert_eq!(&left, &right);
            let dist_l = &a * (&b + &c);
            let dist_r = &a * &b + &a * &c;
            prop_assert_eq!(&dist_l, &dist_r);
            for q in [left, dist_l] {
                prop_assert!(q.denom().is_positive());
                prop_assert!(q.numer().gcd(q.denom()).is_one());
            }
        }

        #[test]
        fn string_form_round_trips(a in small_rational()) {
            prop_assert_eq!(parse_rational(&rational_to_string(&a)).unwrap(), a);
        }
    }
}
