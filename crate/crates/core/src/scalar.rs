//! Exact rational scalar used for every coordinate computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact rational number.
///
/// Always stored normalized: positive denominator, `gcd(|num|, den) = 1`.
/// Normalization is inherited from the underlying big-integer ratio, which
/// reduces on construction and after every arithmetic operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Build `num/den`. Fails on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::BadConfig("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// `k / 2^bits` — the sprinkle coordinate form.
    pub fn pow2_fraction(k: u64, bits: u32) -> Self {
        Scalar(BigRational::new(BigInt::from(k), BigInt::one() << bits))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Sign as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn square(&self) -> Self {
        Scalar(&self.0 * &self.0)
    }

    pub fn halve(&self) -> Self {
        Scalar(&self.0 / BigInt::from(2))
    }

    /// `(numerator, denominator)` when both fit in `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }

    /// Largest integer `<= self`, when it fits in `usize`.
    pub fn floor_to_usize(&self) -> Option<usize> {
        self.0.floor().to_integer().to_usize()
    }

    pub(crate) fn from_ratio(r: BigRational) -> Self {
        Scalar(r)
    }

    pub(crate) fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.0)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with arbitrary-precision integer parts.
    fn from_str(s: &str) -> Result<Self, Error> {
        let ratio = BigRational::from_str(s.trim())
            .map_err(|e| Error::BadConfig(format!("cannot parse rational {s:?}: {e}")))?;
        Ok(Scalar(ratio))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }

        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}
