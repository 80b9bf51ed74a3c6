use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rational_to_string};

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending degree. Named for its main job, holding `c_{ρ,k}` as a
/// polynomial in `ρ`, but used for any single variable.
///
/// Trailing zeros are never stored; the zero polynomial is `[0]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RhoPolynomial {
    coeffs: Vec<BigRational>,
}

impl RhoPolynomial {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RhoPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        RhoPolynomial { coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `ρ`.
    pub fn rho() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `c·ρ^n`.
    pub fn monomial(c: BigRational, n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(BigRational::zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Highest power with a nonzero coefficient; 0 for constants, including zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `ρ^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().unwrap()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        poly_eval(self, x)
    }

    /// Factors out the positive rational `f` making every coefficient an
    /// integer with overall gcd 1, so `self = f · Σ n_i ρ^i`.
    pub fn primitive_form(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::one(), vec![BigInt::zero()]);
        }
        use num_integer::Integer;
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        let ints: Vec<BigInt> = ints.into_iter().map(|n| n / &g).collect();
        (BigRational::new(g, lcm), ints)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }
}

/// Horner evaluation, exact.
pub fn poly_eval(p: &RhoPolynomial, x: &BigRational) -> BigRational {
    p.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Rising factorial `(ρ)_n = ρ(ρ+1)…(ρ+n−1)`; `(ρ)_0 = 1`.
pub fn pochhammer_poly(n: usize) -> RhoPolynomial {
    // coefficients are |s_n^{(j)}|, built with the unsigned recurrence
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n {
        let m = BigInt::from(m);
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (j, a) in c.iter().enumerate() {
            next[j + 1] += a;
            next[j] += a * &m;
        }
        c = next;
    }
    RhoPolynomial::new(c.into_iter().map(BigRational::from_integer).collect())
}

impl Add<&RhoPolynomial> for &RhoPolynomial {
    type Output = RhoPolynomial;
    fn add(self, rhs: &RhoPolynomial) -> RhoPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RhoPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for RhoPolynomial {
    type Output = RhoPolynomial;
    fn add(self, rhs: RhoPolynomial) -> RhoPolynomial {
        &self + &rhs
    }
}

impl Sub<&RhoPolynomial> for &RhoPolynomial {
    type Output = RhoPolynomial;
    fn sub(self, rhs: &RhoPolynomial) -> RhoPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RhoPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RhoPolynomial {
    type Output = RhoPolynomial;
    fn neg(self) -> RhoPolynomial {
        RhoPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&RhoPolynomial> for &RhoPolynomial {
    type Output = RhoPolynomial;
    fn mul(self, rhs: &RhoPolynomial) -> RhoPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RhoPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RhoPolynomial::new(out)
    }
}

impl Mul for RhoPolynomial {
    type Output = RhoPolynomial;
    fn mul(self, rhs: RhoPolynomial) -> RhoPolynomial {
        &self * &rhs
    }
}

impl fmt::Debug for RhoPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RhoPolynomial{:?}", self.to_strings())
    }
}

/// Human-readable form, e.g. `1/180 ρ + 1/72 ρ^2`.
impl fmt::Display for RhoPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a} ")?;
                    }
                    if i == 1 {
                        write!(f, "ρ")?;
                    } else {
                        write!(f, "ρ^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for RhoPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RhoPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs =
            raw.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect::<Result<Vec<_>, _>>()?;
        Ok(RhoPolynomial::new(coeffs))
    }
}
