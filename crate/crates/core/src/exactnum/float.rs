use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Guard digits carried beyond the requested precision in every chain.
pub const DEFAULT_GUARD_DIGITS: u32 = 10;

/// Working precision: `digits` requested decimal digits plus `guard` extra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    pub digits: u32,
    pub guard: u32,
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        Precision { digits, guard: DEFAULT_GUARD_DIGITS }
    }

    /// Mantissa width in bits, `⌈(digits + guard)·log2 10⌉`.
    pub fn bits(&self) -> u64 {
        let d = u64::from(self.digits + self.guard);
        // log2(10) < 3.3219281 = 33219281 / 10^7
        (d * 33_219_281).div_ceil(10_000_000) + 1
    }

    fn max(self, other: Precision) -> Precision {
        if self.bits() >= other.bits() {
            self
        } else {
            other
        }
    }
}

/// Binary floating-point number `mantissa · 2^exponent` whose mantissa is
/// kept to [`Precision::bits`] bits by truncation toward zero.
///
/// Error budget: each `+ − × ÷` contributes at most one unit in the last
/// mantissa bit, i.e. a relative error below `2^{1−bits}`. With the
/// default ten guard digits, chains of up to about `10^9` operations stay
/// within one unit of the requested last digit. Conversion back to
/// [`BigRational`] is exact.
#[derive(Clone)]
pub struct FloatHP {
    mantissa: BigInt,
    exponent: i64,
    prec: Precision,
}

impl FloatHP {
    pub fn zero(prec: Precision) -> Self {
        FloatHP { mantissa: BigInt::zero(), exponent: 0, prec }
    }

    pub fn from_int(n: i64, prec: Precision) -> Self {
        Self::from_bigint(BigInt::from(n), prec)
    }

    pub fn from_bigint(n: BigInt, prec: Precision) -> Self {
        FloatHP { mantissa: n, exponent: 0, prec }.normalized()
    }

    /// Nearest representable value toward zero.
    pub fn from_rational(q: &BigRational, prec: Precision) -> Self {
        if q.is_zero() {
            return Self::zero(prec);
        }
        let bits = prec.bits() as i64;
        let shift = bits + q.denom().bits() as i64 - q.numer().bits() as i64 + 1;
        let (num, den) = (q.numer().clone(), q.denom().clone());
        let mantissa = if shift >= 0 { (num << shift as usize) / den } else { num / (den << (-shift) as usize) };
        FloatHP { mantissa, exponent: -shift, prec }.normalized()
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn with_precision(&self, prec: Precision) -> Self {
        FloatHP { prec, ..self.clone() }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return self;
        }
        let bits = self.mantissa.bits();
        let limit = self.prec.bits();
        if bits > limit {
            let drop = bits - limit;
            let neg = self.mantissa.is_negative();
            let mut m = self.mantissa.abs() >> drop as usize;
            if neg {
                m = -m;
            }
            self.mantissa = m;
            self.exponent += drop as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        FloatHP { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    /// Exact value of this float.
    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as usize)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize)
        }
    }

    /// `floor(log2 |x|) + 1`, or `i64::MIN` for zero.
    fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exponent + self.mantissa.bits() as i64
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = FloatHP::from_int(1, self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &FloatHP::from_int(1, self.prec) / self
    }

    /// `sig` significant decimal digits, truncated, in positional notation
    /// for moderate magnitudes and `d.ddd…e±N` otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        let q = self.to_rational();
        if q.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let ten = BigInt::from(10);
        let a = q.abs();
        // decimal exponent e with 10^e <= a < 10^(e+1)
        let mut e = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let lo = super::rational_powi(&BigRational::from_integer(ten.clone()), e);
            if a < lo {
                e -= 1;
                continue;
            }
            if a >= &lo * BigRational::from_integer(ten.clone()) {
                e += 1;
                continue;
            }
            break;
        }
        let scale = super::rational_powi(&BigRational::from_integer(ten.clone()), sig as i64 - 1 - e);
        let digits = (a * scale).to_integer().to_string();
        let sign = if q.is_negative() { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if e >= 0 && (e as usize) < sig {
            let (int_part, frac) = digits.split_at(e as usize + 1);
            if frac.is_empty() {
                format!("{sign}{int_part}")
            } else {
                format!("{sign}{int_part}.{frac}")
            }
        } else if (-5..0).contains(&e) {
            format!("{sign}0.{}{digits}", "0".repeat((-e - 1) as usize))
        } else if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        let top = self.mantissa.bits().saturating_sub(60);
        let m: i64 = (self.mantissa.clone() >> top as usize).try_into().unwrap_or(0);
        m as f64 * 2f64.powi((self.exponent + top as i64) as i32)
    }
}

impl PartialEq for FloatHP {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FloatHP {}

impl PartialOrd for FloatHP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FloatHP {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl Add<&FloatHP> for &FloatHP {
    type Output = FloatHP;
    fn add(self, rhs: &FloatHP) -> FloatHP {
        let prec = self.prec.max(rhs.prec);
        if rhs.is_zero() {
            return self.with_precision(prec);
        }
        if self.is_zero() {
            return rhs.with_precision(prec);
        }
        // an addend entirely below the last kept bit cannot change the result
        let gap = prec.bits() as i64 + 2;
        if self.magnitude() - rhs.magnitude() > gap {
            return self.with_precision(prec);
        }
        if rhs.magnitude() - self.magnitude() > gap {
            return rhs.with_precision(prec);
        }
        let exponent = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - exponent) as usize;
        let b = &rhs.mantissa << (rhs.exponent - exponent) as usize;
        FloatHP { mantissa: a + b, exponent, prec }.normalized()
    }
}

impl Neg for &FloatHP {
    type Output = FloatHP;
    fn neg(self) -> FloatHP {
        FloatHP { mantissa: -&self.mantissa, ..self.clone() }
    }
}

impl Sub<&FloatHP> for &FloatHP {
    type Output = FloatHP;
    fn sub(self, rhs: &FloatHP) -> FloatHP {
        self + &(-rhs)
    }
}

impl Mul<&FloatHP> for &FloatHP {
    type Output = FloatHP;
    fn mul(self, rhs: &FloatHP) -> FloatHP {
        FloatHP {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
            prec: self.prec.max(rhs.prec),
        }
        .normalized()
    }
}

impl Div<&FloatHP> for &FloatHP {
    type Output = FloatHP;
    fn div(self, rhs: &FloatHP) -> FloatHP {
        assert!(!rhs.is_zero(), "FloatHP division by zero");
        let prec = self.prec.max(rhs.prec);
        let shift = prec.bits() + rhs.mantissa.bits() + 1;
        let mut mantissa = (self.mantissa.abs() << shift as usize) / rhs.mantissa.abs();
        if self.is_negative() != rhs.is_negative() {
            mantissa = -mantissa;
        }
        FloatHP { mantissa, exponent: self.exponent - rhs.exponent - shift as i64, prec }.normalized()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FloatHP {
            type Output = FloatHP;
            fn $m(self, rhs: FloatHP) -> FloatHP { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Debug for FloatHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FloatHP({})", self.to_decimal(self.prec.digits as usize))
    }
}

impl fmt::Display for FloatHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.prec.digits as usize))
    }
}

/// Partial sum of `arctan(1/x) = Σ (−1)^n / ((2n+1) x^{2n+1})` with enough
/// terms that `weight` times the first omitted term is below `bound`.
fn arctan_recip(x: u64, weight: u64, bound: &BigRational) -> BigRational {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone(); // x^{2n+1}
    let mut sum = BigRational::zero();
    let mut n: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * n + 1) * &power);
        if &term * BigRational::from_integer(BigInt::from(weight)) < *bound {
            return sum;
        }
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        n += 1;
    }
}

/// `π` to `digits` significant digits (plus guard digits) from Machin's
/// formula `π = 16 arctan(1/5) − 4 arctan(1/239)`.
///
/// Both series are summed exactly and cut where the first omitted term,
/// which bounds the alternating tail, is below half a unit in the last
/// guarded digit.
pub fn pi_hp(digits: u32) -> FloatHP {
    let prec = Precision::digits(digits);
    let ten = BigInt::from(10);
    let bound = BigRational::new(BigInt::one(), num_traits::pow(ten, (prec.digits + prec.guard) as usize) * 2);
    let pi = arctan_recip(5, 16, &bound) * BigRational::from_integer(BigInt::from(16))
        - arctan_recip(239, 4, &bound) * BigRational::from_integer(BigInt::from(4));
    FloatHP::from_rational(&pi, prec)
}
