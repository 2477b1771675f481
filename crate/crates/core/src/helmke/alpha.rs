//! The constants `α_{g,d}`, their minimum `α_g`, and the volume floors they
//! are built from.

use std::collections::BTreeMap;
use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::HelmkeError;
use crate::exact::radical::rational_string;
use crate::exact::{nth_root_compare, RadicalExpr};
use crate::polarization::{binomial, factorial};

/// `radicand^(1/index)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub g: u32,
    pub d: u32,
    #[serde(with = "rational_string")]
    pub radicand: BigRational,
    pub index: u32,
}

impl AlphaValue {
    pub fn expr(&self) -> RadicalExpr {
        RadicalExpr::root(self.index, RadicalExpr::rat(self.radicand.clone())).expect("index >= 1")
    }

    pub fn cmp_value(&self, other: &AlphaValue) -> Ordering {
        nth_root_compare(&self.radicand, self.index, &other.radicand, other.index).expect("positive radicands")
    }
}

fn big(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `α_{g,d}` for `g >= 6`, `2 <= d <= g−2`:
/// `√((5(g−2)+1)/(g−1))` at `d = 2`,
/// `((15 (g−3)!)/(g−1))^(1/(g−2))` at `d = g−2`, and
/// `((5/2) d! (g−d) / C(g−1, g−d))^(1/d)` in between.
pub fn alpha(g: u32, d: u32) -> Result<AlphaValue, HelmkeError> {
    if g < 6 || d < 2 || d > g - 2 {
        return Err(HelmkeError::IndexOutOfRange { g, d });
    }
    let radicand = if d == 2 {
        BigRational::new(BigInt::from(5 * (g - 2) + 1), BigInt::from(g - 1))
    } else if d == g - 2 {
        big(factorial(g - 3)) * int(15) / int((g - 1) as u64)
    } else {
        big(factorial(d)) * int((g - d) as u64) * BigRational::new(5.into(), 2.into())
            / big(binomial(g - 1, g - d))
    };
    Ok(AlphaValue { g, d, radicand, index: d })
}

/// The variant `√(5(g−2)/(g−1))` of `α_{g,2}` used in the `α_g < √5` argument.
pub fn alpha2_without_increment(g: u32) -> Result<AlphaValue, HelmkeError> {
    if g < 6 {
        return Err(HelmkeError::IndexOutOfRange { g, d: 2 });
    }
    let radicand = BigRational::new(BigInt::from(5 * (g - 2)), BigInt::from(g - 1));
    Ok(AlphaValue { g, d: 2, radicand, index: 2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaMin {
    pub g: u32,
    pub value: AlphaValue,
    /// Smallest `d` attaining the minimum.
    pub argmin: u32,
    pub all: Vec<AlphaValue>,
    /// `α_g < √5`.
    pub below_sqrt5: bool,
    /// Both forms of `α_{g,2}` are below `√5`.
    pub alpha2_variants_below_sqrt5: bool,
}

/// `α_g = min_d α_{g,d}`, decided by exact power comparisons.
pub fn alpha_min(g: u32) -> Result<AlphaMin, HelmkeError> {
    if g < 6 {
        return Err(HelmkeError::UnsupportedDimension(g));
    }
    let all: Vec<AlphaValue> = (2..=g - 2).map(|d| alpha(g, d)).collect::<Result<_, _>>()?;
    let mut best = &all[0];
    for a in &all[1..] {
        if a.cmp_value(best) == Ordering::Less {
            best = a;
        }
    }
    let five = int(5);
    let below = |a: &AlphaValue| nth_root_compare(&a.radicand, a.index, &five, 2).expect("positive") == Ordering::Less;
    let below_sqrt5 = below(best);
    let alpha2_variants_below_sqrt5 = below(&all[0]) && below(&alpha2_without_increment(g)?);
    Ok(AlphaMin { g, argmin: best.d, value: best.clone(), all, below_sqrt5, alpha2_variants_below_sqrt5 })
}

/// Lower bounds for `((cD)^d · Z)` on a `d`-dimensional centre, `1 <= d <= g−2`.
pub fn volume_floor_table(g: u32) -> Result<BTreeMap<u32, RadicalExpr>, HelmkeError> {
    let r = |q: BigRational| RadicalExpr::rat(q);
    let table: BTreeMap<u32, RadicalExpr> = match g {
        0..=3 => return Err(HelmkeError::UnsupportedDimension(g)),
        // curves from the `(D · Z) > 4` bound; surfaces of general type
        4 => [(1, int(4)), (2, int(16))].into_iter().map(|(d, q)| (d, r(q))).collect(),
        5 => [(1, int(8)), (2, int(16)), (3, int(45))].into_iter().map(|(d, q)| (d, r(q))).collect(),
        _ => (1..=g - 2)
            .map(|d| {
                let q = match d {
                    1 => int(2 * (g as u64 - 1)),
                    2 => int(5 * (g as u64 - 2) + 1),
                    _ if d == g - 2 => big(factorial(g - 2)) * BigRational::new(15.into(), 2.into()),
                    _ => big(factorial(d)) * int((g - d) as u64) * BigRational::new(5.into(), 2.into()),
                };
                (d, r(q))
            })
            .collect(),
    };
    Ok(table)
}

/// `C(n − b_ceil, n − d)`.
pub fn mult_bound(n: u32, d: u32, b_ceil: u32) -> Result<BigUint, HelmkeError> {
    if b_ceil > d || d > n {
        return Err(HelmkeError::IndexOutOfRange { g: n, d });
    }
    Ok(binomial(n - b_ceil, n - d))
}
