//! Rational enclosures of π.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::Interval;

/// Bracket of `arctan(1/x)` from an alternating series: the partial sums with
/// `n` and `n + 1` terms lie on opposite sides of the limit.
fn arctan_recip(x: u64, n: usize) -> Interval<BigRational> {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let mut last = BigRational::zero();
    for k in 0..=n {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        last = sum.clone();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
    }
    Interval::new(last, sum)
}

/// Terms needed so that `16 / x^(2n)` drops below `10^-(digits + 2)`.
fn terms_for(x: u64, digits: u32) -> usize {
    let per_term = 2.0 * (x as f64).log10();
    ((digits as f64 + 2.0) / per_term).ceil() as usize + 1
}

/// Enclosure of π of width at most `10^-digits`, via
/// `π = 16 arctan(1/5) − 4 arctan(1/239)`. The number of series terms grows
/// monotonically with `digits`, so enclosures nest.
pub fn pi_interval(digits: u32) -> Interval<BigRational> {
    let a = arctan_recip(5, terms_for(5, digits));
    let b = arctan_recip(239, terms_for(239, digits));
    let sixteen = Interval::point(BigRational::from_integer(16.into()));
    let four = Interval::point(BigRational::from_integer(4.into()));
    &(&sixteen * &a) - &(&four * &b)
}
