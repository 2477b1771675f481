//! Radical expressions: rationals closed under `+ - * /` and k-th roots of
//! positive values, with certified interval evaluation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::error::ExactError;
use super::interval::Interval;
use super::parse_rational;

/// Exact real expression tree.
///
/// Serialized as `{"op": "rat", "value": "3/4"}`,
/// `{"op": "add", "lhs": …, "rhs": …}` (likewise `sub`, `mul`, `div`) and
/// `{"op": "root", "k": 3, "arg": …}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum RadicalExpr {
    Rat {
        #[serde(with = "rational_string")]
        value: BigRational,
    },
    Add { lhs: Box<RadicalExpr>, rhs: Box<RadicalExpr> },
    Sub { lhs: Box<RadicalExpr>, rhs: Box<RadicalExpr> },
    Mul { lhs: Box<RadicalExpr>, rhs: Box<RadicalExpr> },
    Div { lhs: Box<RadicalExpr>, rhs: Box<RadicalExpr> },
    Root { k: u32, arg: Box<RadicalExpr> },
}

pub(crate) mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

impl RadicalExpr {
    pub fn rat(value: BigRational) -> Self {
        RadicalExpr::Rat { value }
    }

    pub fn int(n: i64) -> Self {
        Self::rat(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rat(BigRational::new(n.into(), d.into()))
    }

    /// The `k`-th root of `arg`; `k = 1` is the identity.
    pub fn root(k: u32, arg: RadicalExpr) -> Result<Self, ExactError> {
        match k {
            0 => Err(ExactError::BadRootIndex(0)),
            1 => Ok(arg),
            _ => Ok(RadicalExpr::Root { k, arg: Box::new(arg) }),
        }
    }

    pub fn sqrt(arg: RadicalExpr) -> Self {
        RadicalExpr::Root { k: 2, arg: Box::new(arg) }
    }

    pub fn cbrt(arg: RadicalExpr) -> Self {
        RadicalExpr::Root { k: 3, arg: Box::new(arg) }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RadicalExpr::Rat { value } => Some(value),
            _ => None,
        }
    }

    /// Number of nodes, used to bound work in the comparison fast paths.
    pub fn size(&self) -> usize {
        match self {
            RadicalExpr::Rat { .. } => 1,
            RadicalExpr::Add { lhs, rhs }
            | RadicalExpr::Sub { lhs, rhs }
            | RadicalExpr::Mul { lhs, rhs }
            | RadicalExpr::Div { lhs, rhs } => 1 + lhs.size() + rhs.size(),
            RadicalExpr::Root { arg, .. } => 1 + arg.size(),
        }
    }

    /// Certified enclosure with endpoints on the grid `2^-bits` (rational
    /// subexpressions stay exact points).
    pub fn enclose(&self, bits: u32) -> Result<Interval<BigRational>, ExactError> {
        self.eval(bits).map_err(EvalError::into_inner)
    }

    fn eval(&self, bits: u32) -> Result<Interval<BigRational>, EvalError> {
        let iv = match self {
            RadicalExpr::Rat { value } => return Ok(Interval::point(value.clone())),
            RadicalExpr::Add { lhs, rhs } => &lhs.eval(bits)? + &rhs.eval(bits)?,
            RadicalExpr::Sub { lhs, rhs } => &lhs.eval(bits)? - &rhs.eval(bits)?,
            RadicalExpr::Mul { lhs, rhs } => &lhs.eval(bits)? * &rhs.eval(bits)?,
            RadicalExpr::Div { lhs, rhs } => {
                let den = rhs.eval(bits)?;
                if den.is_zero_point() {
                    return Err(EvalError::Definite(ExactError::DivisionByZero));
                }
                lhs.eval(bits)?.checked_div(&den).ok_or(EvalError::Retry(ExactError::DivisionByZero))?
            }
            RadicalExpr::Root { k, arg } => {
                let a = arg.eval(bits)?;
                if !a.hi().is_positive() {
                    return Err(EvalError::Definite(ExactError::PositivityViolation {
                        enclosure: a.to_string(),
                    }));
                }
                if !a.lo().is_positive() {
                    return Err(EvalError::Retry(ExactError::PositivityViolation {
                        enclosure: a.to_string(),
                    }));
                }
                return Ok(root_enclosure(&a, *k, bits));
            }
        };
        Ok(round_outward(iv, bits))
    }

    /// Decimal approximation for display (midpoint of a tight enclosure).
    pub fn to_f64(&self) -> Option<f64> {
        let iv = self.enclose(128).ok()?;
        iv.midpoint().to_f64()
    }
}

enum EvalError {
    /// Might succeed at higher precision.
    Retry(ExactError),
    Definite(ExactError),
}

impl EvalError {
    fn into_inner(self) -> ExactError {
        match self {
            EvalError::Retry(e) | EvalError::Definite(e) => e,
        }
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn floor_to_grid(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits as u64);
    let n = (x * BigRational::from_integer(scale.clone())).floor().to_integer();
    BigRational::new(n, scale)
}

fn ceil_to_grid(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits as u64);
    let n = (x * BigRational::from_integer(scale.clone())).ceil().to_integer();
    BigRational::new(n, scale)
}

fn round_outward(iv: Interval<BigRational>, bits: u32) -> Interval<BigRational> {
    if iv.is_point() {
        return iv;
    }
    Interval::new(floor_to_grid(iv.lo(), bits), ceil_to_grid(iv.hi(), bits))
}

/// Exact `k`-th root of a positive rational, when it is rational.
pub(crate) fn exact_root(x: &BigRational, k: u32) -> Option<BigRational> {
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    (num_traits::pow(n.clone(), k as usize) == *x.numer() && num_traits::pow(d.clone(), k as usize) == *x.denom())
        .then(|| BigRational::new(n, d))
}

fn root_floor(x: &BigRational, k: u32, bits: u32) -> BigRational {
    let scaled = (x * BigRational::from_integer(pow2(bits as u64 * k as u64))).floor().to_integer();
    BigRational::new(scaled.nth_root(k), pow2(bits as u64))
}

fn root_ceil(x: &BigRational, k: u32, bits: u32) -> BigRational {
    let scaled = (x * BigRational::from_integer(pow2(bits as u64 * k as u64))).ceil().to_integer();
    let mut r = scaled.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) < scaled {
        r += 1;
    }
    BigRational::new(r, pow2(bits as u64))
}

fn root_enclosure(a: &Interval<BigRational>, k: u32, bits: u32) -> Interval<BigRational> {
    if a.is_point() {
        if let Some(r) = exact_root(a.lo(), k) {
            return Interval::point(r);
        }
    }
    Interval::new(root_floor(a.lo(), k, bits), root_ceil(a.hi(), k, bits))
}

/// Precision settings for refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    /// Hard cap on requested decimal digits; also bounds internal working
    /// precision.
    pub cap_digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { cap_digits: 1000 }
    }
}

impl Precision {
    pub fn new(cap_digits: u32) -> Self {
        Precision { cap_digits }
    }

    /// Working bits for a digit budget: `ceil(digits * log2 10)` plus slack.
    fn bits_for(digits: u32) -> u64 {
        (digits as u64 * 3322).div_ceil(1000) + 64
    }
}

fn ten_pow_neg(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Enclosure of `e` of width at most `10^-digits`.
///
/// Successive calls with growing `digits` return nested intervals: the result
/// is the intersection of the enclosures at working precisions
/// `64, 128, 256, …` up to the first one that is narrow enough, and that
/// sequence only grows with `digits`.
pub fn refine(e: &RadicalExpr, digits: u32, precision: &Precision) -> Result<Interval<BigRational>, ExactError> {
    if digits > precision.cap_digits {
        return Err(ExactError::PrecisionExhausted { cap_digits: precision.cap_digits });
    }
    let target = ten_pow_neg(digits);
    let max_bits = Precision::bits_for(precision.cap_digits) * 2;
    let mut acc: Option<Interval<BigRational>> = None;
    let mut last_err = None;
    let mut bits: u64 = 64;
    while bits <= max_bits {
        match e.eval(bits as u32) {
            Ok(iv) => {
                let iv = match &acc {
                    Some(prev) => prev.intersect(&iv).expect("enclosures of one value overlap"),
                    None => iv,
                };
                if iv.width() <= target {
                    return Ok(iv);
                }
                acc = Some(iv);
            }
            Err(EvalError::Definite(err)) => return Err(err),
            Err(EvalError::Retry(err)) => last_err = Some(err),
        }
        bits *= 2;
    }
    Err(last_err.unwrap_or(ExactError::PrecisionExhausted { cap_digits: precision.cap_digits }))
}

macro_rules! expr_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl $trait for RadicalExpr {
            type Output = RadicalExpr;

            fn $method(self, rhs: RadicalExpr) -> RadicalExpr {
                RadicalExpr::$variant { lhs: Box::new(self), rhs: Box::new(rhs) }
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl Neg for RadicalExpr {
    type Output = RadicalExpr;

    fn neg(self) -> RadicalExpr {
        match self {
            RadicalExpr::Rat { value } => RadicalExpr::rat(-value),
            other => RadicalExpr::int(0) - other,
        }
    }
}

impl From<BigRational> for RadicalExpr {
    fn from(value: BigRational) -> Self {
        RadicalExpr::rat(value)
    }
}

impl From<i64> for RadicalExpr {
    fn from(n: i64) -> Self {
        RadicalExpr::int(n)
    }
}

impl std::str::FromStr for RadicalExpr {
    type Err = String;

    /// Parses a plain rational (`"801/100"`, `"-3"`, `"1.25"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(RadicalExpr::rat)
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atom(e: &RadicalExpr) -> bool {
            match e {
                RadicalExpr::Rat { value } => value.is_integer() && !value.is_negative(),
                RadicalExpr::Root { .. } => true,
                _ => false,
            }
        }
        let wrap = |f: &mut fmt::Formatter<'_>, e: &RadicalExpr| {
            if atom(e) {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            RadicalExpr::Rat { value } => write!(f, "{value}"),
            RadicalExpr::Add { lhs, rhs } => {
                write!(f, "{lhs} + ")?;
                wrap(f, rhs)
            }
            RadicalExpr::Sub { lhs, rhs } => {
                write!(f, "{lhs} - ")?;
                wrap(f, rhs)
            }
            RadicalExpr::Mul { lhs, rhs } => {
                wrap(f, lhs)?;
                write!(f, "*")?;
                wrap(f, rhs)
            }
            RadicalExpr::Div { lhs, rhs } => {
                wrap(f, lhs)?;
                write!(f, "/")?;
                wrap(f, rhs)
            }
            RadicalExpr::Root { k: 2, arg } => write!(f, "sqrt({arg})"),
            RadicalExpr::Root { k: 3, arg } => write!(f, "cbrt({arg})"),
            RadicalExpr::Root { k, arg } => write!(f, "root{k}({arg})"),
        }
    }
}

/// Decimal rendering of `x`, rounded to `digits` places.
pub fn decimal_string(x: &BigRational, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let neg = x.is_negative();
    let scaled = (x.abs() * BigRational::from_integer(scale.clone())).round().to_integer();
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if neg && !(int.is_zero() && frac.is_zero()) { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    let frac = frac.to_str_radix(10);
    let pad = "0".repeat(digits as usize - frac.len());
    format!("{sign}{int}.{pad}{frac}")
}

impl RadicalExpr {
    /// Decimal string with `digits` places, from a certified enclosure.
    pub fn to_decimal(&self, digits: u32) -> Result<String, ExactError> {
        let iv = refine(self, digits + 2, &Precision::new(digits.max(32) + 2))?;
        Ok(decimal_string(&iv.midpoint(), digits))
    }
}
