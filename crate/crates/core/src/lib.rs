//! Exact computation of the generalized cosecant numbers `c_{ρ,k}`, the
//! coefficients of `(z / sin z)^ρ` in powers of `z²`.
//!
//! Every `c_{ρ,k}` is a degree-`k` polynomial in `ρ` with rational
//! coefficients. The crate computes them two independent ways: by summing
//! over the integer partitions of `k` ([`genseries::partition_transform`])
//! and by composing exact power series ([`genseries::oracle_explog`]). On top
//! of that it provides the Stirling-number, leading-coefficient, symmetric
//! polynomial and Hurwitz zeta identities that the numbers satisfy.
//!
//! All identities are checked in exact rational arithmetic. The only
//! floating-point type is [`FloatHP`], used where `π` enters.

pub mod coeffs;
mod error;
pub mod exactnum;
pub mod genseries;
pub mod partitions;
pub mod stirling;
pub mod symzeta;

pub use error::{Error, Result};
pub use exactnum::{FloatHP, RhoPolynomial};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
