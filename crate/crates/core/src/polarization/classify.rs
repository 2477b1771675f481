//! Classification of the types below the degree bound.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{degree_threshold, hodge_check, HodgeCertificate, IntegerInequality};
use super::enumerate::enumerate_below_bound;
use super::types::{factorial, PolarizationType};
use super::PolarizationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TypeStatus {
    /// Degree at or above the bound.
    AboveBound,
    /// `n(L) > 1`, so `β(L) <= 1 < n(L)`.
    Rescued,
    /// The Hodge-class inequality holds for every `k`.
    HodgePass,
    Exceptional,
}

impl TypeStatus {
    pub const ALL: [TypeStatus; 4] =
        [TypeStatus::AboveBound, TypeStatus::Rescued, TypeStatus::HodgePass, TypeStatus::Exceptional];

    pub fn label(self) -> &'static str {
        match self {
            TypeStatus::AboveBound => "ABOVE_BOUND",
            TypeStatus::Rescued => "RESCUED",
            TypeStatus::HodgePass => "HODGE_PASS",
            TypeStatus::Exceptional => "EXCEPTIONAL",
        }
    }
}

impl std::fmt::Display for TypeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeVerdict {
    #[serde(rename = "type")]
    pub ty: PolarizationType,
    #[serde(with = "super::bounds::biguint_string")]
    pub degree: BigUint,
    pub status: TypeStatus,
    /// First `k` whose Hodge-class inequality fails.
    pub failing_k: Option<u32>,
    /// `δ >= threshold`.
    pub above_bound: IntegerInequality,
    /// `g^g > g! δ`; absent for types above the bound.
    pub rescue: Option<IntegerInequality>,
    /// Per-`k` Hodge-class checks, evaluated up to the first failure.
    pub hodge: Vec<HodgeCertificate>,
    pub note: Option<String>,
}

const MULTIPLES_NOTE: &str =
    "primitive representative; non-primitive multiples of this type are not enumerated";

/// Classifies one type against a precomputed degree threshold.
pub fn classify_type(t: &PolarizationType, threshold: &BigUint) -> Result<TypeVerdict, PolarizationError> {
    let g = t.g();
    let degree = t.degree();
    let above_bound = IntegerInequality::ge(degree.clone(), threshold.clone());
    let mut verdict = TypeVerdict {
        ty: t.clone(),
        degree,
        status: TypeStatus::AboveBound,
        failing_k: None,
        above_bound,
        rescue: None,
        hodge: Vec::new(),
        note: None,
    };
    if verdict.above_bound.holds {
        return Ok(verdict);
    }
    let rescue = IntegerInequality::gt(num_traits::pow(BigUint::from(g), g as usize), factorial(g) * &verdict.degree);
    let rescued = rescue.holds;
    verdict.rescue = Some(rescue);
    if rescued {
        verdict.status = TypeStatus::Rescued;
        return Ok(verdict);
    }
    for k in 2..=g - 2 {
        let cert = hodge_check(t, k)?;
        let holds = cert.inequality.holds;
        verdict.hodge.push(cert);
        if !holds {
            verdict.status = TypeStatus::Exceptional;
            verdict.failing_k = Some(k);
            verdict.note = Some(MULTIPLES_NOTE.to_string());
            return Ok(verdict);
        }
    }
    verdict.status = TypeStatus::HodgePass;
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub g: u32,
    #[serde(with = "super::bounds::biguint_string")]
    pub threshold: BigUint,
    pub verdicts: Vec<TypeVerdict>,
}

impl Classification {
    pub fn count(&self, status: TypeStatus) -> usize {
        self.verdicts.iter().filter(|v| v.status == status).count()
    }

    pub fn exceptional(&self) -> impl Iterator<Item = &TypeVerdict> {
        self.verdicts.iter().filter(|v| v.status == TypeStatus::Exceptional)
    }
}

/// Classifies every type below the bound, in enumeration order.
pub fn classify(g: u32) -> Result<Classification, PolarizationError> {
    let threshold = degree_threshold(g)?;
    let types = enumerate_below_bound(g)?;
    let verdicts = types
        .par_iter()
        .map(|t| classify_type(t, &threshold))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Classification { g, threshold, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: &[u64]) -> PolarizationType {
        PolarizationType::new(d.to_vec()).unwrap()
    }

    #[test]
    fn g4_all_rescued() {
        let c = classify(4).unwrap();
        assert_eq!(c.verdicts.len(), 3);
        assert!(c.verdicts.iter().all(|v| v.status == TypeStatus::Rescued));
    }

    #[test]
    fn g5_no_exceptions() {
        let c = classify(5).unwrap();
        assert_eq!(c.count(TypeStatus::Exceptional), 0);
        let v = c.verdicts.iter().find(|v| v.ty == t(&[1, 2, 2, 2, 2])).unwrap();
        assert_eq!(v.status, TypeStatus::Rescued);
        let r = v.rescue.as_ref().unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (BigUint::from(3125u32), BigUint::from(1920u32)));
        assert_eq!(c.count(TypeStatus::Rescued), 40);
        assert_eq!(c.count(TypeStatus::HodgePass), 32);
    }

    #[test]
    fn single_type_above_bound() {
        let v = classify_type(&t(&[1, 1, 1, 1, 45]), &BigUint::from(45u32)).unwrap();
        assert_eq!(v.status, TypeStatus::AboveBound);
        assert!(v.rescue.is_none());
    }

    #[test]
    fn exceptional_records_failing_k() {
        let v = classify_type(&t(&[1, 3, 3, 3, 3, 3]), &BigUint::from(3125u32)).unwrap();
        assert_eq!(v.status, TypeStatus::Exceptional);
        assert_eq!(v.failing_k, Some(2));
        assert!(v.note.is_some());
    }
}
