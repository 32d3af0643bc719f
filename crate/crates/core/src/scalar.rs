//! Scalar abstraction shared by every module.
//!
//! All algorithms are written against [`Scalar`], a field-like bound built on
//! `num-traits`. The exact instantiation used throughout the test suites and the
//! CLI is [`Q`] (arbitrary-precision rationals); `f64` satisfies the same bound
//! and is handy for quick numerical experiments, with the caveat that every
//! zero test is exact comparison.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Zero};

/// Exact rational coefficients.
pub type Q = BigRational;

/// Field operations needed by the algebra code.
pub trait Scalar:
    Num + Clone + Debug + PartialEq + std::ops::Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    /// `self^k` by repeated squaring.
    fn pow_u(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Num
        + Clone
        + Debug
        + PartialEq
        + std::ops::Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Scalars with an exact textual form, used for JSON output and model files.
pub trait ExactText: Scalar {
    /// Always `num/den`, e.g. `-1/24` or `3/1`.
    fn to_exact(&self) -> String;
    fn parse_exact(s: &str) -> Option<Self>;
}

impl ExactText for BigRational {
    fn to_exact(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        } else {
            BigInt::from_str(s).ok().map(Ratio::from_integer)
        }
    }
}

impl ExactText for Ratio<i64> {
    fn to_exact(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Ratio::new(n, d))
        } else {
            s.parse().ok().map(Ratio::from_integer)
        }
    }
}

/// Shorthand for an exact rational `num/den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::from_ratio(num, den)
}

/// Shorthand for an exact integer.
pub fn qi(n: i64) -> Q {
    Q::from_int(n)
}

/// `n!` as a scalar.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n as i64).fold(T::one(), |acc, k| acc * T::from_int(k))
}

/// `(-1)^k`.
pub fn sign<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_text_round_trip() {
        let x = q(-7, 5760);
        assert_eq!(x.to_exact(), "-7/5760");
        assert_eq!(Q::parse_exact("-7/5760"), Some(x));
        assert_eq!(Q::parse_exact("3"), Some(qi(3)));
        assert_eq!(qi(3).to_exact(), "3/1");
        assert_eq!(Q::parse_exact("1/0"), None);
        assert_eq!(Q::parse_exact("x"), None);
    }

    #[test]
    fn pow_and_factorial() {
        assert_eq!(q(1, 2).pow_u(3), q(1, 8));
        assert_eq!(factorial::<Q>(5), qi(120));
        assert_eq!(2.0f64.pow_u(10), 1024.0);
        assert_eq!(sign::<Q>(3), qi(-1));
    }
}
