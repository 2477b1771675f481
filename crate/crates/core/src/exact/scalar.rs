//! Scalar abstraction for the exact algebraic structures.
//!
//! Everything that makes a sign decision (quadratic-field elements, Sturm
//! sequences, interval endpoints) is generic over an *exact* ordered field.
//! Floating point types are deliberately not admitted: a rounding error in a
//! sign test would silently turn a certificate into a guess.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// An exact ordered field: every comparison and sign test is decided without
/// rounding.
pub trait ExactField:
    Clone + Debug + Display + Ord + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// The field element `n / d`.
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n).expect("integer embeds") / Self::from_i64(d).expect("integer embeds")
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer embeds")
    }

    /// Largest integer `<= self`, as a field element.
    fn floor_value(&self) -> Self;

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    /// Conversion into an arbitrary-precision rational (used by reports and
    /// by the interval-refinement engine).
    fn to_big_rational(&self) -> BigRational;
}

impl ExactField for BigRational {
    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
}

macro_rules! impl_small_ratio {
    ($($int:ty),*) => {$(
        impl ExactField for Ratio<$int> {
            fn floor_value(&self) -> Self {
                self.floor()
            }

            fn to_big_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    )*};
}

impl_small_ratio!(i64, i128);

/// Sign of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed + Zero>(value: &T) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}
