//! Elements `a + b√D` of a real quadratic field with exact sign decisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Roots;
use num_traits::{One, Zero};

use super::error::ExactError;
use super::interval::Interval;
use super::scalar::{ExactField, Sign};

/// `a + b√D` with `D` squarefree, embedded with `√D > 0`.
///
/// Rational elements are normalised to `b = 0, D = 1`, so they combine with
/// elements of any field. Two irrational elements with different radicands
/// cannot be combined; the `std::ops` impls panic on that, the `try_*`
/// methods report it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem<T> {
    a: T,
    b: T,
    d: u64,
}

pub(crate) fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        if m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Writes `n = s² · D` with `D` squarefree.
pub(crate) fn split_square(n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, rest)
}

impl<T: ExactField> QuadFieldElem<T> {
    pub fn new(a: T, b: T, d: u64) -> Result<Self, ExactError> {
        if !is_squarefree(d) {
            return Err(ExactError::NotSquarefree(d));
        }
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: T, b: T, d: u64) -> Self {
        if d == 1 {
            QuadFieldElem { a: a + b, b: T::zero(), d: 1 }
        } else if b.is_zero() {
            QuadFieldElem { a, b, d: 1 }
        } else {
            QuadFieldElem { a, b, d }
        }
    }

    pub fn rational(a: T) -> Self {
        QuadFieldElem { a, b: T::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(T::from_int(n))
    }

    /// `√n` for a nonnegative integer `n`, with the square part pulled out.
    pub fn sqrt_of(n: u64) -> Self {
        let (s, d) = split_square(n);
        let s = T::from_u64(s).expect("integer embeds");
        if d == 1 {
            Self::rational(s)
        } else {
            QuadFieldElem { a: T::zero(), b: s, d }
        }
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    /// Radicand `D`; `1` for rational elements.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ExactError::FieldMismatch(x, y)),
        }
    }

    /// Whether `self` and `other` live in a common field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.common_radicand(other).is_ok()
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(rhs)?;
        Ok(Self::normalized(self.a.clone() + rhs.a.clone(), self.b.clone() + rhs.b.clone(), d))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(rhs)?;
        Ok(Self::normalized(self.a.clone() - rhs.a.clone(), self.b.clone() - rhs.b.clone(), d))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(rhs)?;
        let dt = T::from_u64(d).expect("integer embeds");
        let a = self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * dt;
        let b = self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.a.clone();
        Ok(Self::normalized(a, b, d))
    }

    /// Field norm `a² − b²D`; nonzero for nonzero elements.
    pub fn norm(&self) -> T {
        let dt = T::from_u64(self.d).expect("integer embeds");
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * dt
    }

    pub fn conjugate(&self) -> Self {
        QuadFieldElem { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::normalized(self.a.clone() / n.clone(), -self.b.clone() / n, self.d))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.common_radicand(rhs)?;
        self.try_mul(&rhs.inverse()?)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::normalized(self.a.clone() * k.clone(), self.b.clone() * k.clone(), self.d)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::rational(T::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign, decided by the signs of `a`, `b` and `a²` versus `b²D`.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of(&self.a);
        let sb = Sign::of(&self.b);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (x, y) if x == y => x,
            // opposite signs: the term with larger square wins
            _ => {
                let a2 = self.a.clone() * self.a.clone();
                let b2d = self.b.clone() * self.b.clone() * T::from_u64(self.d).expect("integer embeds");
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("√D is irrational for squarefree D > 1"),
                }
            }
        }
    }

    /// Rational enclosure of `√D` after `steps` bisections of `[⌊√D⌋, ⌊√D⌋+1]`.
    pub fn sqrt_radicand_enclosure(&self, steps: u32) -> Interval<T> {
        let s = self.d.sqrt();
        if s * s == self.d {
            return Interval::point(T::from_u64(s).expect("integer embeds"));
        }
        let target = T::from_u64(self.d).expect("integer embeds");
        let mut lo = T::from_u64(s).expect("integer embeds");
        let mut hi = lo.clone() + T::one();
        for _ in 0..steps {
            let mid = (lo.clone() + hi.clone()).half();
            if mid.clone() * mid.clone() < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Interval::new(lo, hi)
    }

    /// Rational enclosure of the value; width shrinks like `|b| · 2^-steps`.
    pub fn enclosure(&self, steps: u32) -> Interval<T> {
        if self.is_rational() {
            return Interval::point(self.a.clone());
        }
        let r = self.sqrt_radicand_enclosure(steps);
        let b = Interval::point(self.b.clone());
        &Interval::point(self.a.clone()) + &(&b * &r)
    }

    /// Some rational strictly between `self` and `other` (in either order).
    pub fn rational_between(&self, other: &Self) -> Option<T> {
        let (lo, hi) = match self.cmp(other) {
            Ordering::Less => (self, other),
            Ordering::Greater => (other, self),
            Ordering::Equal => return None,
        };
        let mut steps = 8;
        loop {
            let l = lo.enclosure(steps);
            let h = hi.enclosure(steps);
            if l.hi() < h.lo() {
                return Some((l.hi().clone() + h.lo().clone()).half());
            }
            steps *= 2;
        }
    }

    pub fn to_f64_approx(&self) -> f64
    where
        T: ExactField,
    {
        let e = self.enclosure(60);
        let m = e.midpoint().to_big_rational();
        num_traits::ToPrimitive::to_f64(&m).unwrap_or(f64::NAN)
    }
}

impl<T: ExactField> PartialOrd for QuadFieldElem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: ExactField> Ord for QuadFieldElem<T> {
    /// Panics when the operands lie in different quadratic fields.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, T: ExactField> $tr for &'a QuadFieldElem<T> {
            type Output = QuadFieldElem<T>;

            fn $method(self, rhs: Self) -> QuadFieldElem<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<T: ExactField> $tr for QuadFieldElem<T> {
            type Output = QuadFieldElem<T>;

            fn $method(self, rhs: Self) -> QuadFieldElem<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl<T: ExactField> Neg for QuadFieldElem<T> {
    type Output = QuadFieldElem<T>;

    fn neg(self) -> QuadFieldElem<T> {
        QuadFieldElem { a: -self.a, b: -self.b, d: self.d }
    }
}

impl<'a, T: ExactField> Neg for &'a QuadFieldElem<T> {
    type Output = QuadFieldElem<T>;

    fn neg(self) -> QuadFieldElem<T> {
        -self.clone()
    }
}

impl<T: ExactField> Zero for QuadFieldElem<T> {
    fn zero() -> Self {
        Self::rational(T::zero())
    }

    fn is_zero(&self) -> bool {
        QuadFieldElem::is_zero(self)
    }
}

impl<T: ExactField> One for QuadFieldElem<T> {
    fn one() -> Self {
        Self::rational(T::one())
    }
}

impl<T: ExactField> From<T> for QuadFieldElem<T> {
    fn from(a: T) -> Self {
        Self::rational(a)
    }
}

impl<T: ExactField> fmt::Display for QuadFieldElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let sqrt = format!("sqrt({})", self.d);
        let b_part = if self.b.is_one() {
            sqrt
        } else if (-self.b.clone()).is_one() {
            format!("-{sqrt}")
        } else {
            format!("{}*{sqrt}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b_part}")
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, b_part.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.a, b_part)
        }
    }
}
