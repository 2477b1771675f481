//! Named inequality checks: serialized statements, their evaluation, and
//! certificates.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HelmkeError;
use crate::exact::radical::rational_string;
use crate::exact::{
    compare, sturm_nonneg, Comparison, ComparisonRoute, ExactError, FieldPolynomial, Interval,
    OpenInterval, QuadFieldElem, RadicalExpr, Relation, SamplePoint, Sign, SturmCertificate, SturmVerdict,
};

type Quad = QuadFieldElem<BigRational>;
type Poly = FieldPolynomial<BigRational>;

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

fn one_u64() -> u64 {
    1
}

/// `a + b√d` in manifest form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadLiteral {
    #[serde(with = "rational_string")]
    pub a: BigRational,
    #[serde(default = "zero", with = "rational_string")]
    pub b: BigRational,
    #[serde(default = "one_u64")]
    pub d: u64,
}

impl QuadLiteral {
    pub fn to_elem(&self) -> Result<Quad, ExactError> {
        if self.d == 1 {
            return Ok(Quad::rational(self.a.clone() + self.b.clone()));
        }
        Quad::new(self.a.clone(), self.b.clone(), self.d)
    }
}

impl From<&Quad> for QuadLiteral {
    fn from(q: &Quad) -> Self {
        QuadLiteral { a: q.a().clone(), b: q.b().clone(), d: q.radicand() }
    }
}

fn poly_to_literals(p: &Poly) -> Vec<QuadLiteral> {
    p.coeffs().iter().map(QuadLiteral::from).collect()
}

fn literals_to_poly(ls: &[QuadLiteral]) -> Result<Poly, ExactError> {
    Poly::new(ls.iter().map(QuadLiteral::to_elem).collect::<Result<_, _>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Denominator {
    /// Ascending coefficients.
    pub poly: Vec<QuadLiteral>,
    pub power: u32,
}

/// An inequality to certify.
///
/// `interval-nonneg` asserts `poly / prod(den_i^power_i) >= 0` (or `> 0`)
/// on the open interval `(lo, hi)`; each denominator must have constant sign
/// there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Statement {
    Compare {
        lhs: RadicalExpr,
        rhs: RadicalExpr,
        relation: Relation,
    },
    IntervalNonneg {
        poly: Vec<QuadLiteral>,
        lo: QuadLiteral,
        hi: QuadLiteral,
        strict: bool,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        cleared_denominators: Vec<Denominator>,
    },
    /// Conjunction of statements.
    All { parts: Vec<Statement> },
}

impl Statement {
    pub fn compare(lhs: RadicalExpr, relation: Relation, rhs: RadicalExpr) -> Self {
        Statement::Compare { lhs, rhs, relation }
    }

    pub fn interval(poly: &Poly, lo: &Quad, hi: &Quad, strict: bool, denominators: &[(Poly, u32)]) -> Self {
        Statement::IntervalNonneg {
            poly: poly_to_literals(poly),
            lo: lo.into(),
            hi: hi.into(),
            strict,
            cleared_denominators: denominators
                .iter()
                .map(|(p, power)| Denominator { poly: poly_to_literals(p), power: *power })
                .collect(),
        }
    }

    /// A statement that fails whenever `self` holds: the complementary
    /// relation, the negated polynomial, or the first part falsified.
    pub fn falsify(&self) -> Statement {
        match self {
            Statement::Compare { lhs, rhs, relation } => {
                Statement::Compare { lhs: lhs.clone(), rhs: rhs.clone(), relation: relation.negate() }
            }
            Statement::IntervalNonneg { poly, lo, hi, strict, cleared_denominators } => Statement::IntervalNonneg {
                poly: poly
                    .iter()
                    .map(|l| QuadLiteral { a: -l.a.clone(), b: -l.b.clone(), d: l.d })
                    .collect(),
                lo: lo.clone(),
                hi: hi.clone(),
                strict: *strict,
                cleared_denominators: cleared_denominators.clone(),
            },
            Statement::All { parts } => {
                let mut parts = parts.clone();
                if let Some(first) = parts.first_mut() {
                    *first = first.falsify();
                }
                Statement::All { parts }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub id: String,
    /// Short description of what the inequality establishes.
    #[serde(default)]
    pub context: String,
    #[serde(flatten)]
    pub statement: Statement,
}

impl NamedCheck {
    pub fn new(id: &str, context: &str, statement: Statement) -> Self {
        NamedCheck { id: id.to_string(), context: context.to_string(), statement }
    }

    pub fn falsified(&self) -> NamedCheck {
        NamedCheck {
            id: format!("{}-falsified", self.id),
            context: format!("falsified copy of {}", self.id),
            statement: self.statement.falsify(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckManifest {
    pub checks: Vec<NamedCheck>,
}

impl CheckManifest {
    pub fn new(checks: Vec<NamedCheck>) -> Result<Self, HelmkeError> {
        let mut seen = BTreeSet::new();
        for c in &checks {
            if c.id.trim().is_empty() {
                return Err(HelmkeError::Manifest("check id must not be empty".into()));
            }
            if !seen.insert(c.id.clone()) {
                return Err(HelmkeError::Manifest(format!("duplicate check id {:?}", c.id)));
            }
        }
        Ok(CheckManifest { checks })
    }

    /// Reads either `{"checks": [...]}` or a bare array. Each entry carries
    /// `id` and `kind`; the statement fields sit beside them or inside a
    /// `payload` object.
    pub fn from_json(text: &str) -> Result<Self, HelmkeError> {
        let bad = |e: serde_json::Error| HelmkeError::Manifest(e.to_string());
        let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
        let entries = match value {
            serde_json::Value::Array(items) => items,
            serde_json::Value::Object(mut obj) => match obj.remove("checks") {
                Some(serde_json::Value::Array(items)) => items,
                _ => return Err(HelmkeError::Manifest("expected an array of checks".into())),
            },
            _ => return Err(HelmkeError::Manifest("expected an array of checks".into())),
        };
        let checks = entries
            .into_iter()
            .map(|entry| serde_json::from_value(inline_payload(entry)?).map_err(bad))
            .collect::<Result<Vec<NamedCheck>, _>>()?;
        CheckManifest::new(checks)
    }
}

fn inline_payload(entry: serde_json::Value) -> Result<serde_json::Value, HelmkeError> {
    let serde_json::Value::Object(mut obj) = entry else {
        return Err(HelmkeError::Manifest("each check must be an object".into()));
    };
    match obj.remove("payload") {
        None => {}
        Some(serde_json::Value::Object(fields)) => {
            for (k, v) in fields {
                if obj.contains_key(&k) {
                    return Err(HelmkeError::Manifest(format!("payload field {k:?} repeats an outer field")));
                }
                obj.insert(k, v);
            }
        }
        Some(_) => return Err(HelmkeError::Manifest("payload must be an object".into())),
    }
    Ok(serde_json::Value::Object(obj))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Undecided,
    Error,
}

impl CheckVerdict {
    fn and(self, other: CheckVerdict) -> CheckVerdict {
        use CheckVerdict::*;
        match (self, other) {
            (Error, _) | (_, Error) => Error,
            (Fail, _) | (_, Fail) => Fail,
            (Undecided, _) | (_, Undecided) => Undecided,
            _ => Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValue {
    pub point: String,
    pub value: String,
}

impl From<&SamplePoint<BigRational>> for PointValue {
    fn from(s: &SamplePoint<BigRational>) -> Self {
        PointValue { point: s.point.to_string(), value: s.value.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorRecord {
    pub polynomial: String,
    pub power: u32,
    /// Constant sign on the interval, if certified.
    pub sign: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Compare {
        lhs: String,
        rhs: String,
        relation: Relation,
        outcome: Comparison,
        #[serde(flatten)]
        route: ComparisonRoute,
        lhs_enclosure: Option<[String; 2]>,
        rhs_enclosure: Option<[String; 2]>,
        lhs_decimal: Option<String>,
        rhs_decimal: Option<String>,
    },
    IntervalNonneg {
        /// The polynomial whose sign was certified (numerator times the
        /// sign of the cleared denominators).
        polynomial: String,
        interval: [String; 2],
        strict: bool,
        denominators: Vec<DenominatorRecord>,
        sturm_verdict: Option<SturmVerdict>,
        sequence_length: Option<usize>,
        distinct_roots: Option<usize>,
        sign_changes: Option<usize>,
        sample: Option<PointValue>,
        witness: Option<PointValue>,
        root_enclosure: Option<[String; 2]>,
    },
    All { parts: Vec<Certificate> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub context: String,
    pub verdict: CheckVerdict,
    pub certificate: Option<Certificate>,
    pub error: Option<String>,
}

fn enclosure_strings(iv: &Interval<BigRational>) -> [String; 2] {
    [iv.lo().to_string(), iv.hi().to_string()]
}

fn eval_statement(s: &Statement, digit_cap: u32) -> Result<(CheckVerdict, Certificate), ExactError> {
    match s {
        Statement::Compare { lhs, rhs, relation } => {
            let c = compare(lhs, rhs, digit_cap)?;
            let verdict = match relation.holds(c.outcome) {
                Some(true) => CheckVerdict::Pass,
                Some(false) => CheckVerdict::Fail,
                None => CheckVerdict::Undecided,
            };
            let (le, re) = match &c.enclosures {
                Some((a, b)) => (Some(enclosure_strings(a)), Some(enclosure_strings(b))),
                None => (None, None),
            };
            Ok((
                verdict,
                Certificate::Compare {
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    relation: *relation,
                    outcome: c.outcome,
                    route: c.route,
                    lhs_enclosure: le,
                    rhs_enclosure: re,
                    lhs_decimal: lhs.to_decimal(12).ok(),
                    rhs_decimal: rhs.to_decimal(12).ok(),
                },
            ))
        }
        Statement::IntervalNonneg { poly, lo, hi, strict, cleared_denominators } => {
            let p = literals_to_poly(poly)?;
            let iv = OpenInterval::new(lo.to_elem()?, hi.to_elem()?)?;
            let interval = [iv.lo().to_string(), iv.hi().to_string()];
            let mut records = Vec::new();
            let mut overall_sign = Sign::Positive;
            let mut all_definite = true;
            for den in cleared_denominators {
                let q = literals_to_poly(&den.poly)?;
                let sign = denominator_sign(&q, &iv)?;
                match sign {
                    Some(Sign::Negative) if den.power % 2 == 1 => overall_sign = overall_sign.negate(),
                    Some(_) => {}
                    None => all_definite = false,
                }
                records.push(DenominatorRecord { polynomial: q.to_string(), power: den.power, sign });
            }
            let effective = if overall_sign == Sign::Negative { -p } else { p };
            if !all_definite {
                return Ok((
                    CheckVerdict::Fail,
                    Certificate::IntervalNonneg {
                        polynomial: effective.to_string(),
                        interval,
                        strict: *strict,
                        denominators: records,
                        sturm_verdict: None,
                        sequence_length: None,
                        distinct_roots: None,
                        sign_changes: None,
                        sample: None,
                        witness: None,
                        root_enclosure: None,
                    },
                ));
            }
            let cert: SturmCertificate<BigRational> = sturm_nonneg(&effective, &iv, *strict)?;
            let verdict = if cert.passed() { CheckVerdict::Pass } else { CheckVerdict::Fail };
            Ok((
                verdict,
                Certificate::IntervalNonneg {
                    polynomial: effective.to_string(),
                    interval,
                    strict: *strict,
                    denominators: records,
                    sturm_verdict: Some(cert.verdict),
                    sequence_length: Some(cert.sequence_length),
                    distinct_roots: Some(cert.distinct_roots),
                    sign_changes: Some(cert.sign_changes),
                    sample: Some((&cert.sample).into()),
                    witness: cert.witness.as_ref().map(PointValue::from),
                    root_enclosure: cert.root_enclosure.as_ref().map(|(l, h)| [l.to_string(), h.to_string()]),
                },
            ))
        }
        Statement::All { parts } => {
            let mut verdict = CheckVerdict::Pass;
            let mut certs = Vec::new();
            for part in parts {
                let (v, c) = eval_statement(part, digit_cap)?;
                verdict = verdict.and(v);
                certs.push(c);
            }
            Ok((verdict, Certificate::All { parts: certs }))
        }
    }
}

/// Sign of a denominator that does not vanish on the interval.
fn denominator_sign(q: &Poly, iv: &OpenInterval<BigRational>) -> Result<Option<Sign>, ExactError> {
    if sturm_nonneg(q, iv, true)?.passed() {
        return Ok(Some(Sign::Positive));
    }
    if sturm_nonneg(&-q.clone(), iv, true)?.passed() {
        return Ok(Some(Sign::Negative));
    }
    Ok(None)
}

pub fn run_check(check: &NamedCheck, digit_cap: u32) -> CheckOutcome {
    let (verdict, certificate, error) = match eval_statement(&check.statement, digit_cap) {
        Ok((v, c)) => (v, Some(c), None),
        Err(e) => (CheckVerdict::Error, None, Some(e.to_string())),
    };
    CheckOutcome { id: check.id.clone(), context: check.context.clone(), verdict, certificate, error }
}

/// Runs every check; outcomes keep manifest order.
pub fn run_manifest(manifest: &CheckManifest, digit_cap: u32) -> Vec<CheckOutcome> {
    manifest.checks.par_iter().map(|c| run_check(c, digit_cap)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn compare_statement_and_its_falsification() {
        let s = Statement::compare(RadicalExpr::ratio(45 * 512, 125), Relation::Ge, RadicalExpr::int(48));
        let c = NamedCheck::new("x", "demo", s);
        assert_eq!(run_check(&c, 100).verdict, CheckVerdict::Pass);
        assert_eq!(run_check(&c.falsified(), 100).verdict, CheckVerdict::Fail);
    }

    #[test]
    fn interval_with_negative_denominator() {
        // (c − 2)/(c − 3) > 0 on (0, 1): numerator and denominator both negative
        let num = Poly::from_rationals(vec![q(-2, 1), q(1, 1)]);
        let den = Poly::from_rationals(vec![q(-3, 1), q(1, 1)]);
        let s = Statement::interval(&num, &Quad::from_int(0), &Quad::from_int(1), true, &[(den, 1)]);
        let out = run_check(&NamedCheck::new("neg-den", "demo", s.clone()), 100);
        assert_eq!(out.verdict, CheckVerdict::Pass);
        let out = run_check(&NamedCheck::new("neg-den-f", "demo", s.falsify()), 100);
        assert_eq!(out.verdict, CheckVerdict::Fail);
    }

    #[test]
    fn vanishing_denominator_fails() {
        let num = Poly::from_rationals(vec![q(1, 1)]);
        let den = Poly::from_rationals(vec![q(-1, 2), q(1, 1)]);
        let s = Statement::interval(&num, &Quad::from_int(0), &Quad::from_int(1), false, &[(den, 1)]);
        assert_eq!(run_check(&NamedCheck::new("v", "demo", s), 100).verdict, CheckVerdict::Fail);
    }

    #[test]
    fn manifest_json_round_trip_and_validation() {
        let s = Statement::compare(RadicalExpr::sqrt(RadicalExpr::int(2)), Relation::Lt, RadicalExpr::ratio(3, 2));
        let m = CheckManifest::new(vec![NamedCheck::new("a", "demo", s)]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains(r#""kind":"compare""#));
        assert_eq!(CheckManifest::from_json(&text).unwrap(), m);
        let dup = CheckManifest::new(vec![m.checks[0].clone(), m.checks[0].clone()]);
        assert!(dup.is_err());
        assert!(CheckManifest::from_json(r#"{"checks":[{"id":"x","context":"","kind":"nope"}]}"#).is_err());
    }

    #[test]
    fn bare_array_with_payload() {
        let text = r#"[
            {"id": "c", "kind": "compare",
             "payload": {"lhs": {"op": "root", "k": 3, "arg": {"op": "rat", "value": "9/2"}},
                         "rhs": {"op": "rat", "value": "5/3"}, "relation": "<"}},
            {"id": "i", "kind": "interval-nonneg",
             "payload": {"poly": [{"a": "-1/2"}, {"a": "1"}], "lo": {"a": "1"}, "hi": {"a": "2", "b": "1", "d": 3},
                         "strict": true}}
        ]"#;
        let m = CheckManifest::from_json(text).unwrap();
        assert_eq!(m.checks.len(), 2);
        let out = run_manifest(&m, 100);
        assert!(out.iter().all(|o| o.verdict == CheckVerdict::Pass), "{out:?}");
        let clash = r#"[{"id": "c", "kind": "compare", "payload": {"id": "d"}}]"#;
        assert!(CheckManifest::from_json(clash).is_err());
    }

    #[test]
    fn error_outcome_for_degenerate_interval() {
        let s = Statement::interval(&Poly::x(), &Quad::from_int(1), &Quad::from_int(1), false, &[]);
        let out = run_check(&NamedCheck::new("deg", "demo", s), 100);
        assert_eq!(out.verdict, CheckVerdict::Error);
        assert!(out.error.unwrap().contains("degenerate"));
    }
}
