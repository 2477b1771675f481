//! Basepoint-freeness thresholds of `(1, d)`-polarized abelian surfaces and
//! the bound `β < (√d + 1)/d < √2/√d` for `d >= 6`.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::solve::{is_square, nth_solution, PellSolution};
use super::PellError;
use crate::exact::radical::rational_string;
use crate::exact::{QuadFieldElem, RadicalExpr, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceBranch {
    PerfectSquare,
    Pell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaCandidate {
    #[serde(with = "rational_string")]
    pub value: BigRational,
    /// Solution of `X² − 4d Y² = 1` producing `2y/(x−1)`.
    pub solution: Option<PellSolution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBeta {
    pub d: u64,
    pub branch: SurfaceBranch,
    /// `1/√d` for square `d`; otherwise the values from the minimal and
    /// second minimal solutions, in that order.
    pub candidates: Vec<BetaCandidate>,
}

impl SurfaceBeta {
    pub fn min(&self) -> &BigRational {
        self.candidates.iter().map(|c| &c.value).min().expect("at least one candidate")
    }

    pub fn max(&self) -> &BigRational {
        self.candidates.iter().map(|c| &c.value).max().expect("at least one candidate")
    }

    pub fn as_exprs(&self) -> Vec<RadicalExpr> {
        self.candidates.iter().map(|c| RadicalExpr::rat(c.value.clone())).collect()
    }
}

pub fn rojas_beta(d: u64) -> Result<SurfaceBeta, PellError> {
    if d == 0 {
        return Err(PellError::InvalidArgument("d must be positive".into()));
    }
    if is_square(d) {
        let value = BigRational::new(BigInt::one(), BigInt::from(d.sqrt()));
        return Ok(SurfaceBeta {
            d,
            branch: SurfaceBranch::PerfectSquare,
            candidates: vec![BetaCandidate { value, solution: None }],
        });
    }
    let n = d.checked_mul(4).ok_or_else(|| PellError::InvalidArgument(format!("d = {d} too large")))?;
    let candidates = [1, 2]
        .into_iter()
        .map(|i| {
            let s = nth_solution(n, i)?;
            let value = BigRational::new(
                BigInt::from(BigUint::from(2u32) * &s.y),
                BigInt::from(&s.x - BigUint::one()),
            );
            Ok(BetaCandidate { value, solution: Some(s) })
        })
        .collect::<Result<Vec<_>, PellError>>()?;
    Ok(SurfaceBeta { d, branch: SurfaceBranch::Pell, candidates })
}

/// `(√d + 1)/d`, exactly.
pub fn middle_bound(d: u64) -> QuadFieldElem<BigRational> {
    let sqrt_d = QuadFieldElem::sqrt_of(d);
    (sqrt_d + QuadFieldElem::from_int(1)).scale(&BigRational::new(BigInt::one(), BigInt::from(d)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowVerdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub beta: SurfaceBeta,
    /// `(√d+1)/d` as `a + b√D`.
    pub middle: String,
    /// Smallest candidate below the middle bound.
    pub min_below_middle: bool,
    /// Largest candidate below the middle bound.
    pub max_below_middle: bool,
    /// `(√d+1)/d < √2/√d`, i.e. `(d−1)² > 4d`.
    pub middle_below_n: bool,
    pub verdict: RowVerdict,
}

fn below_middle(c: &BigRational, middle: &QuadFieldElem<BigRational>) -> bool {
    (middle - &QuadFieldElem::rational(c.clone())).sign() == Sign::Positive
}

pub fn verify_surface_row(d: u64) -> Result<SurfaceRow, PellError> {
    let beta = rojas_beta(d)?;
    let middle = middle_bound(d);
    let min_below_middle = below_middle(beta.min(), &middle);
    let max_below_middle = below_middle(beta.max(), &middle);
    // (√d+1)²/d² < 2/d  <=>  2√d < d − 1  <=>  4d < (d − 1)²
    let dm1 = BigUint::from(d.saturating_sub(1));
    let middle_below_n = d > 1 && BigUint::from(4u32) * BigUint::from(d) < &dm1 * &dm1;
    let pass = min_below_middle && max_below_middle && middle_below_n;
    Ok(SurfaceRow {
        middle: middle.to_string(),
        beta,
        min_below_middle,
        max_below_middle,
        middle_below_n,
        verdict: if pass { RowVerdict::Pass } else { RowVerdict::Fail },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub d_max: u64,
    pub rows: Vec<SurfaceRow>,
}

impl SurfaceReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == RowVerdict::Pass)
    }
}

/// Checks every `6 <= d <= d_max`.
pub fn verify_surface_bound(d_max: u64) -> Result<SurfaceReport, PellError> {
    if d_max < 6 {
        return Err(PellError::InvalidArgument(format!("d_max must be at least 6 (got {d_max})")));
    }
    let rows = (6..=d_max).into_par_iter().map(verify_surface_row).collect::<Result<Vec<_>, _>>()?;
    Ok(SurfaceReport { d_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn values(b: &SurfaceBeta) -> Vec<BigRational> {
        b.candidates.iter().map(|c| c.value.clone()).collect()
    }

    #[test]
    fn rojas_examples() {
        assert_eq!(values(&rojas_beta(4).unwrap()), vec![q(1, 2)]);
        assert_eq!(values(&rojas_beta(6).unwrap()), vec![q(1, 2), q(5, 12)]);
        assert_eq!(values(&rojas_beta(2).unwrap()), vec![q(1, 1), q(3, 4)]);
        assert_eq!(rojas_beta(9).unwrap().branch, SurfaceBranch::PerfectSquare);
    }

    #[test]
    fn d6_and_d9_rows() {
        let r = verify_surface_row(6).unwrap();
        assert_eq!(r.verdict, RowVerdict::Pass);
        let f = middle_bound(6).to_f64_approx();
        assert!((f - 0.5749).abs() < 1e-4);
        let r = verify_surface_row(9).unwrap();
        assert_eq!(r.verdict, RowVerdict::Pass);
        assert_eq!(middle_bound(9), QuadFieldElem::rational(q(4, 9)));
    }

    #[test]
    fn small_d_fails_the_second_bound() {
        // (d−1)² > 4d first holds at d = 6
        assert!(!verify_surface_row(5).unwrap().middle_below_n);
        assert!(verify_surface_row(6).unwrap().middle_below_n);
    }

    #[test]
    fn batch_up_to_200() {
        let r = verify_surface_bound(200).unwrap();
        assert_eq!(r.rows.len(), 195);
        assert!(r.all_pass());
        assert!(verify_surface_bound(5).is_err());
    }
}
