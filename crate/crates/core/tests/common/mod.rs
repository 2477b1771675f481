//! Strategies and independent oracles shared by the property suites and the
//! acceptance run.
#![allow(dead_code)]

use std::cmp::Ordering;

use bpfcheck::exact::{
    compare, nth_root_compare, refine, sturm_nonneg, Comparison, FieldPolynomial, OpenInterval, Precision,
    QuadFieldElem, RadicalExpr, Sign, SturmVerdict,
};
use bpfcheck::pell::{is_square, nth_solution};
use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

pub type Quad = QuadFieldElem<BigRational>;
pub type Poly = FieldPolynomial<BigRational>;
pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

pub fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=60, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

/// `c1 · root_k(r) + c0`.
pub fn radical() -> impl Strategy<Value = RadicalExpr> {
    (rational(), 1u32..=4, positive_rational(), rational()).prop_map(|(c1, k, r, c0)| {
        RadicalExpr::rat(c1) * RadicalExpr::root(k, RadicalExpr::rat(r)).unwrap() + RadicalExpr::rat(c0)
    })
}

fn ten_to_minus(d: u32) -> BigRational {
    BigRational::one() / num_traits::pow(BigRational::from_integer(BigInt::from(10)), d as usize)
}

/// `refine(e, d1 + extra) ⊆ refine(e, d1)` and the width bound.
pub fn check_nesting(e: &RadicalExpr, d1: u32, extra: u32) -> Check {
    let p = Precision::new(100);
    let a = refine(e, d1, &p).map_err(|x| x.to_string())?;
    let b = refine(e, d1 + extra, &p).map_err(|x| x.to_string())?;
    ensure!(b.is_subset_of(&a), "{e}: digits {} not nested in {d1}", d1 + extra);
    ensure!(a.width() <= ten_to_minus(d1), "{e}: width at {d1} digits");
    ensure!(b.width() <= ten_to_minus(d1 + extra), "{e}: width at {} digits", d1 + extra);
    Ok(())
}

pub const COMPARE_CAP: u32 = 40;

fn outcome(a: &RadicalExpr, b: &RadicalExpr) -> Result<Comparison, String> {
    compare(a, b, COMPARE_CAP).map(|c| c.outcome).map_err(|x| x.to_string())
}

/// Antisymmetry, enclosure coherence at `cap + 10` digits, and agreement
/// with f64 where the gap is visible.
pub fn check_compare_pair(a: &RadicalExpr, b: &RadicalExpr) -> Check {
    let (ab, ba) = (outcome(a, b)?, outcome(b, a)?);
    ensure!(ab == ba.reverse(), "{a} vs {b}: {ab:?} but reversed {ba:?}");
    let p = Precision::new(COMPARE_CAP + 10);
    let ea = refine(a, COMPARE_CAP + 10, &p).map_err(|x| x.to_string())?;
    let eb = refine(b, COMPARE_CAP + 10, &p).map_err(|x| x.to_string())?;
    let coherent = match ab {
        Comparison::Less => ea.precedes(&eb),
        Comparison::Greater => eb.precedes(&ea),
        Comparison::Equal | Comparison::Undecided => ea.intersect(&eb).is_some(),
    };
    ensure!(coherent, "{a} vs {b}: {ab:?} contradicts enclosures");
    let (fa, fb) = (a.to_f64().unwrap(), b.to_f64().unwrap());
    if (fa - fb).abs() > 1e-9 * (1.0 + fa.abs().max(fb.abs())) {
        let expected = if fa < fb { Comparison::Less } else { Comparison::Greater };
        ensure!(ab == expected, "{a} vs {b}: {ab:?}, floats say {expected:?}");
    }
    Ok(())
}

/// Reflexivity and transitivity on a triple.
pub fn check_compare_triple(a: &RadicalExpr, b: &RadicalExpr, c: &RadicalExpr) -> Check {
    let (ab, bc, ac) = (outcome(a, b)?, outcome(b, c)?, outcome(a, c)?);
    let le = |o: Comparison| matches!(o, Comparison::Less | Comparison::Equal);
    if le(ab) && le(bc) && ac != Comparison::Undecided {
        ensure!(le(ac), "{a} <= {b} <= {c} but {ac:?}");
    }
    if ab == Comparison::Less && le(bc) {
        ensure!(matches!(ac, Comparison::Less | Comparison::Undecided), "{a} < {b} <= {c} but {ac:?}");
    }
    ensure!(outcome(a, a)? == Comparison::Equal, "{a} not equal to itself");
    Ok(())
}

/// Total order axioms for `nth_root_compare` plus a log oracle.
pub fn check_nth_root_triple(x: &(BigRational, u32), y: &(BigRational, u32), z: &(BigRational, u32)) -> Check {
    let c = |a: &(BigRational, u32), b: &(BigRational, u32)| nth_root_compare(&a.0, a.1, &b.0, b.1).unwrap();
    ensure!(c(x, y) == c(y, x).reverse(), "antisymmetry");
    ensure!(c(x, x) == Ordering::Equal, "reflexivity");
    if c(x, y) != Ordering::Greater && c(y, z) != Ordering::Greater {
        ensure!(c(x, z) != Ordering::Greater, "transitivity");
    }
    let lg = |a: &(BigRational, u32)| a.0.to_f64().unwrap().ln() / a.1 as f64;
    let (lx, ly) = (lg(x), lg(y));
    if (lx - ly).abs() > 1e-12 {
        ensure!(c(x, y) == lx.partial_cmp(&ly).unwrap(), "log oracle");
    }
    Ok(())
}

/// Sample points per interval for the Sturm oracle.
pub const SAMPLES: i64 = 10_000;

/// Integer coefficients proportional (by a positive factor) to `coeffs`.
pub fn integerize(coeffs: &[BigRational]) -> Vec<i128> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer().to_i128().unwrap()).collect()
}

/// Signs of `p(lo + (hi − lo) j / N)` for `0 < j < N`, computed exactly as
/// `N^deg · p(x)` in i128.
pub fn sampled_signs(coeffs: &[i128], lo: i64, hi: i64) -> impl Iterator<Item = (i64, i8)> + '_ {
    let n = SAMPLES as i128;
    let deg = coeffs.len() - 1;
    (1..SAMPLES).map(move |j| {
        let x = lo as i128 * n + (hi - lo) as i128 * j as i128;
        // Horner on sum c_i x^i n^(deg − i)
        let mut acc = coeffs[deg];
        for i in (0..deg).rev() {
            acc = acc * x + coeffs[i] * n.pow((deg - i) as u32);
        }
        (j, acc.signum() as i8)
    })
}

/// Polynomials of degree at most 6 given by random rational coefficients, or
/// by products of linear and squared linear factors with half-integer roots
/// (so that touching roots occur).
pub fn polynomial() -> impl Strategy<Value = Vec<BigRational>> {
    let dense = prop::collection::vec((-20i64..=20, 1i64..=6), 1..=7)
        .prop_map(|cs| cs.into_iter().map(|(n, d)| q(n, d)).collect::<Vec<_>>());
    let factored = (
        prop::collection::vec(-8i64..=8, 0..=2),
        prop::collection::vec(-8i64..=8, 0..=2),
        prop_oneof![Just(1i64), Just(-1), Just(3)],
    )
        .prop_map(|(simple, double, lead)| {
            let mut p = vec![q(lead, 1)];
            let mul = |p: &[BigRational], r: i64| {
                // times (x − r/2)
                let mut out = vec![BigRational::zero(); p.len() + 1];
                for (i, c) in p.iter().enumerate() {
                    out[i + 1] += c.clone();
                    out[i] -= c * q(r, 2);
                }
                out
            };
            for r in simple {
                p = mul(&p, r);
            }
            for r in double {
                p = mul(&mul(&p, r), r);
            }
            p
        });
    prop_oneof![dense, factored]
}

pub fn interval() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=3, 1i64..=4).prop_map(|(lo, w)| (lo, lo + w))
}

/// `sturm_nonneg` against the dense-sampling oracle: a PASS admits no
/// sampled violation, a FAIL witness evaluates to a violation exactly, and a
/// sampled violation forces FAIL. Zero polynomials are skipped.
pub fn check_sturm(coeffs: &[BigRational], lo: i64, hi: i64, strict: bool) -> Check {
    let p = Poly::from_rationals(coeffs.to_vec());
    if p.is_zero() {
        return Ok(());
    }
    let iv = OpenInterval::rational(q(lo, 1), q(hi, 1)).unwrap();
    let cert = sturm_nonneg(&p, &iv, strict).map_err(|x| x.to_string())?;
    let ints = integerize(coeffs);
    let bad = |s: i8| if strict { s <= 0 } else { s < 0 };
    let first_bad = sampled_signs(&ints, lo, hi).find(|&(_, s)| bad(s));
    match cert.verdict {
        SturmVerdict::Pass => ensure!(first_bad.is_none(), "{p} on ({lo}, {hi}): PASS but sample {first_bad:?} violates"),
        SturmVerdict::Fail => match &cert.witness {
            Some(w) => {
                let x = Quad::rational(w.point.clone());
                ensure!(iv.lo() < &x && &x < iv.hi(), "{p}: witness outside interval");
                let v = p.eval_rational(&w.point).sign();
                let violates = if strict { v != Sign::Positive } else { v == Sign::Negative };
                ensure!(violates, "{p}: witness {} does not violate", w.point);
            }
            None => {
                // strict failure at an irrational touching root
                ensure!(strict, "{p}: non-strict FAIL without witness");
                let (a, b) = cert.root_enclosure.clone().ok_or("FAIL without witness or enclosure")?;
                ensure!(a < b, "{p}: empty root enclosure");
            }
        },
    }
    if first_bad.is_some() {
        ensure!(cert.verdict == SturmVerdict::Fail, "{p}: sampled violation but PASS");
    }
    Ok(())
}

pub fn non_square() -> impl Strategy<Value = u64> {
    (2u64..=2000).prop_filter("non-square", |n| !is_square(*n))
}

/// `nth_solution(N, i + j)` equals the composition of the `i`-th and `j`-th.
pub fn check_group_law(n: u64, i: u32, j: u32) -> Check {
    let get = |k| nth_solution(n, k).map_err(|x| x.to_string());
    let (a, b, c) = (get(i)?, get(j)?, get(i + j)?);
    ensure!(a.is_valid() && b.is_valid() && c.is_valid(), "N = {n}: invalid solution");
    // (x_m x_n + N y_m y_n, x_m y_n + x_n y_m)
    let nn = BigUint::from(n);
    let x = &a.x * &b.x + &nn * &a.y * &b.y;
    let y = &a.x * &b.y + &b.x * &a.y;
    ensure!((&c.x, &c.y) == (&x, &y), "N = {n}, {i} + {j}: composition mismatch");
    ensure!(a.compose(&b) == c, "N = {n}: compose disagrees");
    Ok(())
}

/// Largest `y` searched by brute force.
pub const BRUTE_FORCE_Y: u64 = 10_000_000;

/// Smallest `y >= 1` with `1 + N y²` a square, if `y <= limit`; ascending `y`
/// is ascending `x`.
pub fn brute_force_pell(n: u64, limit: u64) -> Option<(u128, u128)> {
    (1..=limit as u128).find_map(|y| {
        let v = 1 + n as u128 * y * y;
        let x = v.sqrt();
        (x * x == v).then_some((x, y))
    })
}

/// Fundamental solution by the chakravala method, independent of the
/// continued fraction solver.
pub fn chakravala(n: u64) -> (BigInt, BigInt) {
    let nn = BigInt::from(n);
    let root = BigInt::from(n.sqrt());
    // start from a² − N b² = k with a the integer nearest √N
    let (mut a, mut b) = (root.clone(), BigInt::one());
    if (&root + 1u32) * (&root + 1u32) - &nn < &nn - &root * &root {
        a += 1u32;
    }
    let mut k = &a * &a - &nn;
    while k != BigInt::one() {
        let ka = k.abs();
        // m with |k| dividing a + b m and |m² − N| minimal
        let mut best: Option<BigInt> = None;
        let mut m = BigInt::one();
        let limit = &root * 2u32 + &ka + 2u32;
        while m <= limit {
            if ((&a + &b * &m) % &ka).is_zero() {
                let better = match &best {
                    None => true,
                    Some(bm) => (&m * &m - &nn).abs() < (bm * bm - &nn).abs(),
                };
                if better {
                    best = Some(m.clone());
                }
            }
            m += 1u32;
        }
        let m = best.expect("a suitable m exists");
        let a2 = (&a * &m + &nn * &b) / &ka;
        let b2 = (&a + &b * &m) / &ka;
        k = (&m * &m - &nn) / &k;
        a = a2.abs();
        b = b2.abs();
    }
    (a, b)
}
