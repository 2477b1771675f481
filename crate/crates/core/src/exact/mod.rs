//! Exact arithmetic: rationals, quadratic fields, polynomials, radical
//! expressions, and the certification routines built on them.

pub mod compare;
pub mod error;
pub mod interval;
pub mod normal_form;
pub mod pi;
pub mod poly;
pub mod quad;
pub mod radical;
pub mod scalar;
pub mod sturm;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use compare::{compare, nth_root_compare, Comparison, ComparisonCertificate, ComparisonRoute, Relation};
pub use error::ExactError;
pub use interval::Interval;
pub use normal_form::{normal_form, PowerNormalForm};
pub use pi::pi_interval;
pub use poly::FieldPolynomial;
pub use quad::QuadFieldElem;
pub use radical::{decimal_string, refine, Precision, RadicalExpr};
pub use scalar::{ExactField, Sign};
pub use sturm::{sturm_nonneg, OpenInterval, SamplePoint, SturmCertificate, SturmVerdict};

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let bad = || format!("not a rational number: {text:?}");
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in {text:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, scale);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::new(n, BigInt::one()))
}
