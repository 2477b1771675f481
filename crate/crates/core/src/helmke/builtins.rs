//! The fixed ledger of inequalities behind the fourfold, fivefold and
//! higher-dimensional arguments.

use num_rational::BigRational;

use super::alpha::alpha_min;
use super::manifest::{CheckManifest, NamedCheck, Statement};
use crate::exact::{FieldPolynomial, QuadFieldElem, RadicalExpr, Relation};

type Quad = QuadFieldElem<BigRational>;
type Poly = FieldPolynomial<BigRational>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn r(n: i64, d: i64) -> RadicalExpr {
    RadicalExpr::ratio(n, d)
}

fn sqrt(e: RadicalExpr) -> RadicalExpr {
    RadicalExpr::sqrt(e)
}

/// `a + b√3`.
fn s3(a: BigRational, b: BigRational) -> Quad {
    Quad::new(a, b, 3).expect("3 is squarefree")
}

fn constant(c: Quad) -> Poly {
    Poly::constant(c)
}

fn one_minus_c() -> Poly {
    Poly::from_rationals(vec![q(1, 1), q(-1, 1)])
}

/// `2 + 4/√3 = 2 + (4/3)√3`.
fn k_mult3() -> Quad {
    s3(q(2, 1), q(4, 3))
}

/// `16 (1−c)² − coeff · c² (4 − k c)²`, the cleared form of
/// `16/c² >= coeff · ((4 − k c)/(1 − c))²`.
pub fn mult3_numerator(coeff: i64) -> Poly {
    let c = Poly::x();
    let four_minus_kc = constant(Quad::from_int(4)) - c.scale(&k_mult3());
    let lhs = one_minus_c().pow(2).scale(&Quad::from_int(16));
    let rhs = (c.pow(2) * four_minus_kc.pow(2)).scale(&Quad::from_int(coeff));
    lhs - rhs
}

/// Upper end `4/k = 4√3 − 6` of the range where `4 − k c > 0`.
pub fn mult3_upper() -> Quad {
    s3(q(-6, 1), q(4, 1))
}

fn mult3_statement(coeff: i64) -> Statement {
    Statement::interval(
        &mult3_numerator(coeff),
        &Quad::from_int(0),
        &mult3_upper(),
        false,
        &[(Poly::x(), 2), (one_minus_c(), 2)],
    )
}

/// `(6 − 4/√3) − (4 − s c/(1 − c))` with `s = 4/√3 − 2`, numerator over
/// `1 − c`.
fn deficit_interval_numerator() -> Poly {
    let s = s3(q(-2, 1), q(4, 3));
    let gap = s3(q(2, 1), q(-4, 3)); // (6 − 4/√3) − 4
    one_minus_c().scale(&gap) + Poly::x().scale(&s)
}

/// `2 − (5 − 8c)/(1 − c)` over `1 − c`.
fn fivefold_deficit_numerator() -> Poly {
    let five_minus_8c = Poly::from_rationals(vec![q(5, 1), q(-8, 1)]);
    one_minus_c().scale(&Quad::from_int(2)) - five_minus_8c
}

fn alpha_cap_statement() -> Statement {
    let parts = (6..=12)
        .map(|g| {
            let a = alpha_min(g).expect("g >= 6");
            Statement::compare(a.value.expr(), Relation::Lt, sqrt(RadicalExpr::int(5)))
        })
        .collect();
    Statement::All { parts }
}

fn checks() -> Vec<NamedCheck> {
    let cube = |e: RadicalExpr| e.clone() * e.clone() * e;
    let inv_sqrt3 = || r(1, 1) / sqrt(r(3, 1));
    vec![
        NamedCheck::new(
            "T2-curve-hodge",
            "curve spanning an abelian surface: Hodge index with (D^2.B) >= 32/3 gives (D.Z) > 4",
            Statement::compare(r(8, 1) * inv_sqrt3(), Relation::Gt, r(4, 1)),
        ),
        NamedCheck::new(
            "T2-elliptic-fibred",
            "elliptic fibration over a genus 3 base: (D^2.Z) >= 2(2*3-2)(D.E) with (D.E) >= 64/27 exceeds 16",
            Statement::compare(r(2, 1) * r(4, 1) * r(64, 27), Relation::Gt, r(16, 1)),
        ),
        NamedCheck::new(
            "T2-hodge-index",
            "elliptic fibration over a genus 2 base: sqrt(4^3 * 2 * 64/27) equals 16 sqrt(32/27), which exceeds 16",
            Statement::All {
                parts: vec![
                    Statement::compare(
                        sqrt(r(64, 1) * r(2, 1) * r(64, 27)),
                        Relation::Ge,
                        r(16, 1) * sqrt(r(32, 27)),
                    ),
                    Statement::compare(r(16, 1) * sqrt(r(32, 27)), Relation::Gt, r(16, 1)),
                ],
            },
        ),
        NamedCheck::new(
            "T2-product-surface",
            "product of two genus 2 curves: 2 * 2 * (8/sqrt 3) = 32/sqrt 3 exceeds 16",
            Statement::compare(r(32, 1) * inv_sqrt3(), Relation::Gt, r(16, 1)),
        ),
        NamedCheck::new(
            "T2-ample-divisor",
            "ample divisor in an abelian threefold: cube root of (4^3)^2 * 6 is at least 16 * cbrt(6)",
            Statement::compare(
                RadicalExpr::cbrt(r(64 * 64 * 6, 1)),
                Relation::Ge,
                r(16, 1) * RadicalExpr::cbrt(r(6, 1)),
            ),
        ),
        NamedCheck::new(
            "T2-mult3-interval",
            "multiplicity 3 surface: 16/c^2 >= 3((4-(2+4/sqrt 3)c)/(1-c))^2 for 0 < c < 4 sqrt 3 - 6",
            mult3_statement(3),
        ),
        NamedCheck::new(
            "T2-mult2-final",
            "multiplicity 2 surface: 16 cbrt(6) exceeds 2(6 - 4/sqrt 3)^2",
            Statement::compare(
                r(16, 1) * RadicalExpr::cbrt(r(6, 1)),
                Relation::Gt,
                r(2, 1) * (r(6, 1) - r(4, 1) * inv_sqrt3()) * (r(6, 1) - r(4, 1) * inv_sqrt3()),
            ),
        ),
        NamedCheck::new(
            "T2-deficit-interval",
            "multiplicity 2 surface: 4 - (4/sqrt 3 - 2)c/(1-c) < 6 - 4/sqrt 3 for 1/2 < c < 1",
            Statement::interval(
                &deficit_interval_numerator(),
                &Quad::rational(q(1, 2)),
                &Quad::from_int(1),
                true,
                &[(one_minus_c(), 1)],
            ),
        ),
        NamedCheck::new(
            "T3-deficit",
            "fivefold start: (5 - 8c)/(1-c) <= 2 for 1/2 < c < 5/8; m > 8 makes (5 - cm)/(1-c) < 2 strict",
            Statement::interval(
                &fivefold_deficit_numerator(),
                &Quad::rational(q(1, 2)),
                &Quad::rational(q(5, 8)),
                false,
                &[(one_minus_c(), 1)],
            ),
        ),
        NamedCheck::new(
            "T3-3fold",
            "threefold centre in a fivefold: 45/(5/8)^3 = 4608/25 is at least 2^3 * 6 = 48",
            Statement::compare(r(45, 1) / cube(r(5, 8)), Relation::Ge, r(48, 1)),
        ),
        NamedCheck::new(
            "T4-alpha-cap",
            "alpha_g < sqrt 5 for 6 <= g <= 12",
            alpha_cap_statement(),
        ),
    ]
}

pub fn builtin_manifest() -> CheckManifest {
    CheckManifest::new(checks()).expect("builtin ids are unique")
}

/// A copy of each builtin that must fail. The multiplicity 3 interval uses
/// coefficient 4 in place of 3; the others use [`Statement::falsify`].
pub fn builtin_falsified() -> CheckManifest {
    let checks = checks()
        .into_iter()
        .map(|c| {
            if c.id == "T2-mult3-interval" {
                NamedCheck {
                    id: format!("{}-falsified", c.id),
                    context: "falsified copy of T2-mult3-interval with coefficient 4".into(),
                    statement: mult3_statement(4),
                }
            } else {
                c.falsified()
            }
        })
        .collect();
    CheckManifest::new(checks).expect("ids stay unique")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{compare, sturm_nonneg, Comparison, OpenInterval, SturmVerdict};
    use crate::helmke::manifest::{run_check, run_manifest, Certificate, CheckVerdict};

    #[test]
    fn eleven_builtins_pass() {
        let m = builtin_manifest();
        assert_eq!(m.checks.len(), 11);
        for out in run_manifest(&m, 1000) {
            assert_eq!(out.verdict, CheckVerdict::Pass, "{}: {:?}", out.id, out.error);
        }
    }

    #[test]
    fn falsified_builtins_fail() {
        for out in run_manifest(&builtin_falsified(), 1000) {
            assert_eq!(out.verdict, CheckVerdict::Fail, "{}", out.id);
        }
    }

    #[test]
    fn mult3_on_unit_interval_fails_near_one() {
        // p(1) = −3(4 − k)² < 0, so the claim cannot hold on all of (0, 1)
        let p = mult3_numerator(3);
        let iv = OpenInterval::new(Quad::from_int(0), Quad::from_int(1)).unwrap();
        let cert = sturm_nonneg(&p, &iv, false).unwrap();
        assert_eq!(cert.verdict, SturmVerdict::Fail);
        let iv = OpenInterval::new(Quad::from_int(0), mult3_upper()).unwrap();
        let cert = sturm_nonneg(&p, &iv, false).unwrap();
        assert_eq!(cert.verdict, SturmVerdict::Pass);
        // the touching root √3 − 1 makes the strict version fail
        assert_eq!(sturm_nonneg(&p, &iv, true).unwrap().verdict, SturmVerdict::Fail);
    }

    #[test]
    fn mult2_final_expanded() {
        let lhs = r(16, 1) * RadicalExpr::cbrt(r(6, 1));
        let rhs = r(248, 3) - r(32, 1) * sqrt(r(3, 1));
        assert_eq!(compare(&lhs, &rhs, 1000).unwrap().outcome, Comparison::Greater);
    }

    #[test]
    fn threefold_value() {
        let c = checks().into_iter().find(|c| c.id == "T3-3fold").unwrap();
        let out = run_check(&c, 100);
        match out.certificate.unwrap() {
            Certificate::Compare { lhs_decimal, .. } => assert_eq!(lhs_decimal.unwrap(), "184.320000000000"),
            other => panic!("unexpected {other:?}"),
        }
        let v = r(45, 1) / (r(5, 8) * r(5, 8) * r(5, 8));
        assert_eq!(compare(&v, &r(4608, 25), 50).unwrap().outcome, Comparison::Equal);
    }

    #[test]
    fn deficit_numerators_reduce() {
        // s(2c − 1) and 6c − 3
        let s = s3(q(-2, 1), q(4, 3));
        let expect = Poly::new(vec![-s.clone(), s.scale(&q(2, 1))]).unwrap();
        assert_eq!(deficit_interval_numerator(), expect);
        assert_eq!(fivefold_deficit_numerator(), Poly::from_rationals(vec![q(-3, 1), q(6, 1)]));
    }
}
