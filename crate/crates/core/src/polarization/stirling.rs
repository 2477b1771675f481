//! The binomial estimate `g^g / (d^d C(g,d)) > (g−d)^(g−d)` and its sharper
//! form with the factor `sqrt(2π d (g−d) / g)`; plus the intersection floor
//! for subvarieties built from it.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::types::binomial;
use super::PolarizationError;
use crate::exact::pi_interval;

/// Starting and maximal π precision (decimal digits) for the sharp form.
const PI_START_DIGITS: u32 = 16;
const PI_CAP_DIGITS: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingRow {
    pub g: u32,
    /// Number of `d` values checked (`0 < d < g`).
    pub checked: u32,
    pub holds: bool,
    pub first_failure: Option<u32>,
    /// Largest π precision needed for this `g` (sharp form only).
    pub pi_digits: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StirlingReport {
    pub g_max: u32,
    pub refined: bool,
    pub rows: Vec<StirlingRow>,
}

impl StirlingReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

fn pow(n: u32, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(n), e as usize)
}

/// `g^g > d^d (g−d)^(g−d) C(g, d)`.
pub fn plain_holds(g: u32, d: u32) -> bool {
    pow(g, g) > pow(d, d) * pow(g - d, g - d) * binomial(g, d)
}

/// Sharp form, decided by squaring: with
/// `R = g^g / (d^d C(g,d) (g−d)^(g−d))` it reads `R² g / (2 d (g−d)) > π`.
/// Returns the verdict and the π precision that decided it.
pub fn refined_holds(g: u32, d: u32) -> Result<(bool, u32), PolarizationError> {
    let num = BigInt::from(pow(g, g));
    let den = BigInt::from(pow(d, d) * binomial(g, d) * pow(g - d, g - d));
    let r = BigRational::new(num, den);
    let lhs = &r * &r * BigRational::new(BigInt::from(g), BigInt::from(2 * d * (g - d)));
    let mut digits = PI_START_DIGITS;
    loop {
        let pi = pi_interval(digits);
        if &lhs > pi.hi() {
            return Ok((true, digits));
        }
        if &lhs < pi.lo() {
            return Ok((false, digits));
        }
        if digits >= PI_CAP_DIGITS {
            return Err(PolarizationError::UndecidedAtPrecision { g, d, digits });
        }
        digits = (digits * 2).min(PI_CAP_DIGITS);
    }
}

fn row(g: u32, refined: bool) -> Result<StirlingRow, PolarizationError> {
    let mut first_failure = None;
    let mut pi_digits: Option<u32> = None;
    for d in 1..g {
        let ok = if refined {
            let (ok, digits) = refined_holds(g, d)?;
            pi_digits = Some(pi_digits.map_or(digits, |p| p.max(digits)));
            ok
        } else {
            plain_holds(g, d)
        };
        if !ok && first_failure.is_none() {
            first_failure = Some(d);
        }
    }
    Ok(StirlingRow { g, checked: g - 1, holds: first_failure.is_none(), first_failure, pi_digits })
}

/// Checks every `0 < d < g <= g_max`, one row per `g`.
pub fn stirling_check(g_max: u32, refined: bool) -> Result<StirlingReport, PolarizationError> {
    if g_max < 2 {
        return Err(PolarizationError::InvalidArgument(format!("g_max must be at least 2 (got {g_max})")));
    }
    let rows = (2..=g_max).into_par_iter().map(|g| row(g, refined)).collect::<Result<Vec<_>, _>>()?;
    Ok(StirlingReport { g_max, refined, rows })
}

/// `(L^g) / (C(g,d) ((p+2)(g−d))^(g−d))`.
pub fn bigger_bound(g: u32, d: u32, p: i64, lg: &BigUint) -> Result<BigRational, PolarizationError> {
    if d == 0 || d >= g {
        return Err(PolarizationError::InvalidArgument(format!("need 0 < d < g (got d = {d}, g = {g})")));
    }
    if p < -1 {
        return Err(PolarizationError::InvalidArgument(format!("need p >= -1 (got {p})")));
    }
    if *lg == BigUint::from(0u32) {
        return Err(PolarizationError::InvalidArgument("need (L^g) > 0".into()));
    }
    let factor = BigUint::from((p + 2) as u64 * (g - d) as u64);
    let den = binomial(g, d) * num_traits::pow(factor, (g - d) as usize);
    Ok(BigRational::new(lg.clone().into(), den.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_plain_case() {
        // 4^4 / (2^2 * 6) = 32/3 > 4
        assert!(plain_holds(4, 2));
        assert_eq!(pow(4, 4), BigUint::from(256u32));
    }

    #[test]
    fn refined_g10_d5() {
        let (ok, _) = refined_holds(10, 5).unwrap();
        assert!(ok);
        // float cross-check: 10^10/(5^5 * 252) ≈ 12698.4 > 3125 * sqrt(5π) ≈ 12384.4
        let lhs = 1e10 / (3125.0 * 252.0);
        let rhs = 3125.0 * (2.0 * std::f64::consts::PI * 25.0 / 10.0).sqrt();
        assert!(lhs > rhs);
    }

    #[test]
    fn report_rows() {
        let r = stirling_check(12, false).unwrap();
        assert_eq!(r.rows.len(), 11);
        assert!(r.all_hold());
        assert!(stirling_check(1, false).is_err());
    }

    #[test]
    fn bigger_bound_examples() {
        let lg = BigUint::from(256u32);
        assert_eq!(bigger_bound(4, 2, -1, &lg).unwrap(), q(32, 3));
        assert_eq!(bigger_bound(4, 3, -1, &lg).unwrap(), q(64, 1));
        assert_eq!(bigger_bound(4, 1, -1, &lg).unwrap(), q(64, 27));
        assert!(bigger_bound(4, 4, -1, &lg).is_err());
        assert!(bigger_bound(4, 2, -2, &lg).is_err());
    }
}
