//! The degree bound above which every type satisfies the Hodge-class
//! inequality, and the per-`k` inequality itself.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::types::{binomial, factorial, PolarizationType};
use super::PolarizationError;
use crate::exact::{nth_root_compare, RadicalExpr};

/// An exact integer inequality `lhs >= rhs` with both sides recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerInequality {
    #[serde(with = "biguint_string")]
    pub lhs: BigUint,
    #[serde(with = "biguint_string")]
    pub rhs: BigUint,
    pub strict: bool,
    pub holds: bool,
}

impl IntegerInequality {
    pub fn ge(lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs >= rhs;
        IntegerInequality { lhs, rhs, strict: false, holds }
    }

    pub fn gt(lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs > rhs;
        IntegerInequality { lhs, rhs, strict: true, holds }
    }
}

pub(crate) mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn check_dimension(g: u32) -> Result<(), PolarizationError> {
    if g <= 3 {
        Err(PolarizationError::UnsupportedDimension(g))
    } else {
        Ok(())
    }
}

/// `P_k = k (k+1) ⋯ (g−1)`.
fn rising(k: u32, g: u32) -> BigUint {
    (k..g).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

/// The per-`k` bound `δ^k ≥ N_k / D_k` with `N_k = P_k^(g(g−1))` and
/// `D_k = (g!)^((g−1)(g−k))`.
fn bound_parts(g: u32, k: u32) -> (BigUint, BigUint) {
    let n = num_traits::pow(rising(k, g), (g * (g - 1)) as usize);
    let d = num_traits::pow(factorial(g), ((g - 1) * (g - k)) as usize);
    (n, d)
}

/// Per-`k` record of the degree test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTest {
    pub k: u32,
    /// `δ^k · (g!)^((g−1)(g−k))` against `(k⋯(g−1))^(g(g−1))`.
    pub inequality: IntegerInequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem31Certificate {
    pub holds: bool,
    pub per_k: Vec<DegreeTest>,
}

/// Whether the degree of `t` reaches the bound for every `2 <= k <= g−2`.
pub fn theorem31_holds(t: &PolarizationType) -> Result<Theorem31Certificate, PolarizationError> {
    let g = t.g();
    check_dimension(g)?;
    let delta = t.degree();
    let per_k: Vec<DegreeTest> = (2..=g - 2)
        .map(|k| {
            let (n, d) = bound_parts(g, k);
            let lhs = num_traits::pow(delta.clone(), k as usize) * d;
            DegreeTest { k, inequality: IntegerInequality::ge(lhs, n) }
        })
        .collect();
    let holds = per_k.iter().all(|t| t.inequality.holds);
    Ok(Theorem31Certificate { holds, per_k })
}

/// The bound as an exact radical, with the maximizing `k` (smallest on ties).
pub fn degree_bound(g: u32) -> Result<(RadicalExpr, u32), PolarizationError> {
    check_dimension(g)?;
    let mut best: Option<(BigRational, u32)> = None;
    for k in 2..=g - 2 {
        let (n, d) = bound_parts(g, k);
        let r = BigRational::new(n.into(), d.into());
        let better = match &best {
            None => true,
            Some((br, bk)) => nth_root_compare(&r, k, br, *bk).expect("positive") == std::cmp::Ordering::Greater,
        };
        if better {
            best = Some((r, k));
        }
    }
    let (r, k) = best.expect("range nonempty for g >= 4");
    let expr = RadicalExpr::root(k, RadicalExpr::rat(r)).expect("k >= 2");
    Ok((expr, k))
}

/// Smallest integer degree meeting the bound for every `k`.
pub fn degree_threshold(g: u32) -> Result<BigUint, PolarizationError> {
    check_dimension(g)?;
    let mut threshold = BigUint::one();
    for k in 2..=g - 2 {
        let (n, d) = bound_parts(g, k);
        // smallest δ with δ^k · d >= n
        let q = (&n + &d - BigUint::one()) / &d;
        let mut delta = q.nth_root(k);
        while num_traits::pow(delta.clone(), k as usize) * &d < n {
            delta += 1u32;
        }
        threshold = threshold.max(delta);
    }
    Ok(threshold)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeCertificate {
    pub k: u32,
    /// `(g! δ)^(g−k)` against `((g−k)! δ₂⋯δ_{g−k} C(g−1, g−k))^g`.
    pub inequality: IntegerInequality,
}

/// The Hodge-class inequality for `k`, as an integer power test.
pub fn hodge_check(t: &PolarizationType, k: u32) -> Result<HodgeCertificate, PolarizationError> {
    let g = t.g();
    if g < 4 || k < 2 || k > g - 2 {
        return Err(PolarizationError::IndexOutOfRange { k, g });
    }
    let lhs = num_traits::pow(t.volume(), (g - k) as usize);
    let base = factorial(g - k) * t.partial_degree((g - k) as usize) * binomial(g - 1, g - k);
    let rhs = num_traits::pow(base, g as usize);
    Ok(HodgeCertificate { k, inequality: IntegerInequality::ge(lhs, rhs) })
}
