//! Decidable comparison of radical expressions.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::error::ExactError;
use super::interval::Interval;
use super::normal_form::{normal_form, PowerNormalForm};
use super::radical::{refine, Precision, RadicalExpr};
use super::scalar::Sign;

/// Bit budget for raising both sides to a common integer power.
const EXACT_POWER_BIT_BUDGET: u64 = 1 << 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Undecided,
}

impl Comparison {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            other => other,
        }
    }
}

/// How a comparison was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum ComparisonRoute {
    /// The two expressions are the same tree.
    Identical,
    /// Both sides reduce to the same power normal form.
    NormalForm,
    /// Opposite signs read off the normal forms.
    SignOfNormalForm,
    /// `lhs / rhs = c * prod b^e`; its `exponent`-th power is a rational
    /// compared with 1.
    ExactPower { exponent: u64 },
    /// Disjoint enclosures at the given number of digits.
    Enclosure { digits: u32 },
    /// No decision within the digit cap.
    Exhausted { digits: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonCertificate {
    pub outcome: Comparison,
    pub route: ComparisonRoute,
    /// Enclosures backing an `Enclosure`/`Exhausted` route.
    pub enclosures: Option<(Interval<BigRational>, Interval<BigRational>)>,
}

/// Compares `e1` with `e2`.
///
/// `Less`/`Greater` come from an exact power test or from disjoint
/// enclosures; `Equal` only from identical trees or identical power normal
/// forms; `Undecided` when enclosures still overlap at `digit_cap` digits.
pub fn compare(e1: &RadicalExpr, e2: &RadicalExpr, digit_cap: u32) -> Result<ComparisonCertificate, ExactError> {
    if e1 == e2 {
        refine(e1, 0, &Precision::new(digit_cap.max(1)))?;
        return Ok(ComparisonCertificate { outcome: Comparison::Equal, route: ComparisonRoute::Identical, enclosures: None });
    }
    if let (Some(a), Some(b)) = (normal_form(e1), normal_form(e2)) {
        if let Some(cert) = compare_normal_forms(&a, &b) {
            // the normal form ignores positivity of root operands, so check
            // both expressions are well-formed before trusting it
            let precision = Precision::new(digit_cap.max(1));
            refine(e1, 0, &precision)?;
            refine(e2, 0, &precision)?;
            return Ok(cert);
        }
    }
    compare_by_enclosure(e1, e2, digit_cap)
}

fn compare_normal_forms(a: &PowerNormalForm, b: &PowerNormalForm) -> Option<ComparisonCertificate> {
    let done = |outcome, route| Some(ComparisonCertificate { outcome, route, enclosures: None });
    if a == b {
        return done(Comparison::Equal, ComparisonRoute::NormalForm);
    }
    let (sa, sb) = (Sign::of(&a.coeff), Sign::of(&b.coeff));
    if sa != sb {
        return done(Comparison::from_ordering(sa.as_i8().cmp(&sb.as_i8())), ComparisonRoute::SignOfNormalForm);
    }
    // same nonzero sign: compare q = a / b with 1
    let mut q = a.clone();
    q.coeff /= b.coeff.clone();
    for (base, e) in &b.factors {
        *q.factors.entry(base.clone()).or_insert_with(|| BigRational::from_integer(0.into())) -= e.clone();
    }
    let index = q.factors.values().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let exponent = index.to_u64()?;
    let estimate: u64 = exponent
        .saturating_mul(q.coeff.numer().bits() + q.coeff.denom().bits())
        .saturating_add(q.factors.iter().fold(0u64, |acc, (base, e)| {
            let num = (e.abs() * BigRational::from_integer(index.clone())).to_integer().to_u64().unwrap_or(u64::MAX);
            acc.saturating_add(num.saturating_mul(base.bits()))
        }));
    if estimate > EXACT_POWER_BIT_BUDGET {
        return None;
    }
    let mut power = num_traits::pow(q.coeff.abs(), exponent as usize);
    for (base, e) in &q.factors {
        let n = (e * BigRational::from_integer(index.clone())).to_integer().to_i64()?;
        let b = BigRational::from_integer(base.clone());
        if n >= 0 {
            power *= num_traits::pow(b, n as usize);
        } else {
            power /= num_traits::pow(b, (-n) as usize);
        }
    }
    let mut ord = power.cmp(&BigRational::one());
    if sa == Sign::Negative {
        ord = ord.reverse();
    }
    done(Comparison::from_ordering(ord), ComparisonRoute::ExactPower { exponent })
}

fn compare_by_enclosure(e1: &RadicalExpr, e2: &RadicalExpr, digit_cap: u32) -> Result<ComparisonCertificate, ExactError> {
    let precision = Precision::new(digit_cap.max(1));
    let mut digits = 16.min(digit_cap.max(1));
    loop {
        let a = refine(e1, digits, &precision)?;
        let b = refine(e2, digits, &precision)?;
        let outcome = if a.precedes(&b) {
            Some(Comparison::Less)
        } else if b.precedes(&a) {
            Some(Comparison::Greater)
        } else if a.is_point() && a == b {
            Some(Comparison::Equal)
        } else {
            None
        };
        if let Some(outcome) = outcome {
            let route = if outcome == Comparison::Equal {
                ComparisonRoute::NormalForm
            } else {
                ComparisonRoute::Enclosure { digits }
            };
            return Ok(ComparisonCertificate { outcome, route, enclosures: Some((a, b)) });
        }
        if digits >= digit_cap {
            return Ok(ComparisonCertificate {
                outcome: Comparison::Undecided,
                route: ComparisonRoute::Exhausted { digits },
                enclosures: Some((a, b)),
            });
        }
        digits = (digits * 2).min(digit_cap);
    }
}

/// Exact order of `r1^(1/k1)` and `r2^(1/k2)` for positive rationals,
/// decided by comparing `r1^(L/k1)` with `r2^(L/k2)`, `L = lcm(k1, k2)`.
pub fn nth_root_compare(r1: &BigRational, k1: u32, r2: &BigRational, k2: u32) -> Result<Ordering, ExactError> {
    for k in [k1, k2] {
        if k == 0 {
            return Err(ExactError::BadRootIndex(k));
        }
    }
    for r in [r1, r2] {
        if !r.is_positive() {
            return Err(ExactError::NonPositive(r.to_string()));
        }
    }
    let l = k1.lcm(&k2);
    let lhs = num_traits::pow(r1.clone(), (l / k1) as usize);
    let rhs = num_traits::pow(r2.clone(), (l / k2) as usize);
    Ok(lhs.cmp(&rhs))
}

/// Relation asserted by an inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    /// Whether the relation holds given the comparison of lhs with rhs;
    /// `None` when undecided.
    pub fn holds(self, c: Comparison) -> Option<bool> {
        use Comparison::*;
        let ord = match c {
            Less => Ordering::Less,
            Equal => Ordering::Equal,
            Greater => Ordering::Greater,
            Undecided => return None,
        };
        Some(match self {
            Relation::Gt => ord == Ordering::Greater,
            Relation::Ge => ord != Ordering::Less,
            Relation::Eq => ord == Ordering::Equal,
            Relation::Le => ord != Ordering::Greater,
            Relation::Lt => ord == Ordering::Less,
        })
    }

    /// The complementary relation (holds exactly when `self` fails).
    pub fn negate(self) -> Self {
        match self {
            Relation::Gt => Relation::Le,
            Relation::Ge => Relation::Lt,
            Relation::Le => Relation::Gt,
            Relation::Lt => Relation::Ge,
            // `=` has no single complement; `<` is the closest falsifier for
            // a true equality
            Relation::Eq => Relation::Lt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> RadicalExpr {
        RadicalExpr::ratio(n, d)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cube_root_vs_square_root() {
        let c = compare(&RadicalExpr::cbrt(r(9, 2)), &RadicalExpr::sqrt(r(21, 5)), 1000).unwrap();
        assert_eq!(c.outcome, Comparison::Less);
    }

    #[test]
    fn identical_values_equal() {
        let c = compare(&r(1, 1), &r(1, 1), 1000).unwrap();
        assert_eq!(c.outcome, Comparison::Equal);
        assert_eq!(c.route, ComparisonRoute::Identical);
        let c = compare(&(r(1, 2) + r(1, 2)), &r(1, 1), 1000).unwrap();
        assert_eq!(c.outcome, Comparison::Equal);
        assert_eq!(c.route, ComparisonRoute::NormalForm);
    }

    #[test]
    fn cube_root_of_six_against_quadratic_irrational() {
        let lhs = r(16, 1) * RadicalExpr::cbrt(r(6, 1));
        let rhs = r(248, 3) - r(32, 1) * RadicalExpr::sqrt(r(3, 1));
        let c = compare(&lhs, &rhs, 1000).unwrap();
        assert_eq!(c.outcome, Comparison::Greater);
        assert!(matches!(c.route, ComparisonRoute::Enclosure { .. }));
    }

    #[test]
    fn equal_but_differently_written() {
        let lhs = RadicalExpr::cbrt(r(4096 * 6, 1));
        let rhs = r(16, 1) * RadicalExpr::cbrt(r(6, 1));
        assert_eq!(compare(&lhs, &rhs, 100).unwrap().outcome, Comparison::Equal);
    }

    #[test]
    fn indistinguishable_sum_is_undecided() {
        // sqrt(2) + sqrt(3) = sqrt(5 + 2 sqrt(6)), beyond the normal form
        let lhs = RadicalExpr::sqrt(r(2, 1)) + RadicalExpr::sqrt(r(3, 1));
        let rhs = RadicalExpr::sqrt(r(5, 1) + r(2, 1) * RadicalExpr::sqrt(r(6, 1)));
        let c = compare(&lhs, &rhs, 40).unwrap();
        assert_eq!(c.outcome, Comparison::Undecided);
    }

    #[test]
    fn negative_normal_forms() {
        let a = r(-2, 1) * RadicalExpr::sqrt(r(2, 1));
        let b = r(-3, 1);
        assert_eq!(compare(&a, &b, 100).unwrap().outcome, Comparison::Greater);
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(nth_root_compare(&q(9, 2), 3, &q(4, 1), 3).unwrap(), Ordering::Greater);
        assert_eq!(nth_root_compare(&q(27, 8), 1, &q(27, 8), 1).unwrap(), Ordering::Equal);
        assert_eq!(nth_root_compare(&q(45, 10), 3, &q(25, 7), 3).unwrap(), Ordering::Greater);
        assert_eq!(nth_root_compare(&q(4, 1), 2, &q(8, 1), 3).unwrap(), Ordering::Equal);
        assert!(nth_root_compare(&q(0, 1), 2, &q(1, 1), 2).is_err());
    }

    #[test]
    fn relations() {
        assert_eq!(Relation::Ge.holds(Comparison::Equal), Some(true));
        assert_eq!(Relation::Gt.holds(Comparison::Equal), Some(false));
        assert_eq!(Relation::Gt.holds(Comparison::Undecided), None);
        for rel in [Relation::Gt, Relation::Ge, Relation::Le, Relation::Lt] {
            for c in [Comparison::Less, Comparison::Equal, Comparison::Greater] {
                assert_ne!(rel.holds(c), rel.negate().holds(c));
            }
        }
    }
}
