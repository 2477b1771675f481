//! Closed intervals with exact endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::scalar::ExactField;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: ExactField> Interval<T> {
    /// Builds `[lo, hi]`; the endpoints are swapped if given out of order.
    pub fn new(lo: T, hi: T) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Interval { lo: hi, hi: lo }
        }
    }

    pub fn point(value: T) -> Self {
        Interval { lo: value.clone(), hi: value }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn into_bounds(self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()).half()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Interval<T>) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval<T>) -> Option<Interval<T>> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        (lo <= hi).then(|| Interval { lo: lo.clone(), hi: hi.clone() })
    }

    /// Every element is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `self` lies entirely strictly below `other`.
    pub fn precedes(&self, other: &Interval<T>) -> bool {
        self.hi < other.lo
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval<T>> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(T::one() / self.hi.clone(), T::one() / self.lo.clone()))
    }

    pub fn checked_div(&self, rhs: &Interval<T>) -> Option<Interval<T>> {
        rhs.recip().map(|r| self * &r)
    }
}

impl<'a, T: ExactField> Add for &'a Interval<T> {
    type Output = Interval<T>;

    fn add(self, rhs: Self) -> Interval<T> {
        Interval { lo: self.lo.clone() + rhs.lo.clone(), hi: self.hi.clone() + rhs.hi.clone() }
    }
}

impl<'a, T: ExactField> Sub for &'a Interval<T> {
    type Output = Interval<T>;

    fn sub(self, rhs: Self) -> Interval<T> {
        Interval { lo: self.lo.clone() - rhs.hi.clone(), hi: self.hi.clone() - rhs.lo.clone() }
    }
}

impl<'a, T: ExactField> Mul for &'a Interval<T> {
    type Output = Interval<T>;

    fn mul(self, rhs: Self) -> Interval<T> {
        if self.is_point() && rhs.is_point() {
            return Interval::point(self.lo.clone() * rhs.lo.clone());
        }
        let products = [
            self.lo.clone() * rhs.lo.clone(),
            self.lo.clone() * rhs.hi.clone(),
            self.hi.clone() * rhs.lo.clone(),
            self.hi.clone() * rhs.hi.clone(),
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }
}

impl<T: ExactField> Neg for Interval<T> {
    type Output = Interval<T>;

    fn neg(self) -> Interval<T> {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl<T: ExactField> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl<T: ExactField> Interval<T> {
    pub fn zero() -> Self {
        Interval::point(T::zero())
    }

    pub fn is_zero_point(&self) -> bool {
        self.is_point() && self.lo.is_zero()
    }
}
