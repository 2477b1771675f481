//! Power normal form: `coeff * prod base_i^(e_i)` with rational `coeff`,
//! pairwise distinct bases and exponents in `(0, 1)`.
//!
//! Bases are primes found by trial division; an unfactored cofactor is kept
//! as an opaque base. Two expressions with identical normal forms are equal.
//! Different normal forms prove nothing (opaque bases need not be coprime).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::radical::RadicalExpr;

const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;
const MAX_ROOT_INDEX: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerNormalForm {
    pub coeff: BigRational,
    /// Base -> exponent in the open interval (0, 1).
    pub factors: BTreeMap<BigInt, BigRational>,
}

impl PowerNormalForm {
    fn rational(coeff: BigRational) -> Self {
        PowerNormalForm { coeff, factors: BTreeMap::new() }
    }

    pub fn is_rational(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reduces each exponent into `[0, 1)`, moving integer parts into the
    /// coefficient.
    fn normalize(mut self) -> Self {
        if self.coeff.is_zero() {
            self.factors.clear();
            return self;
        }
        let mut factors = BTreeMap::new();
        for (base, e) in std::mem::take(&mut self.factors) {
            let whole = e.floor();
            let frac = e - whole.clone();
            let w = whole.to_integer().to_i64().expect("exponent fits");
            let b = BigRational::from_integer(base.clone());
            if w >= 0 {
                self.coeff *= num_traits::pow(b, w as usize);
            } else {
                self.coeff /= num_traits::pow(b, (-w) as usize);
            }
            if !frac.is_zero() {
                factors.insert(base, frac);
            }
        }
        self.factors = factors;
        self
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.coeff *= other.coeff.clone();
        for (b, e) in &other.factors {
            *out.factors.entry(b.clone()).or_insert_with(BigRational::zero) += e.clone();
        }
        out.normalize()
    }

    fn recip(&self) -> Option<Self> {
        if self.coeff.is_zero() {
            return None;
        }
        let factors = self.factors.iter().map(|(b, e)| (b.clone(), -e.clone())).collect();
        Some(PowerNormalForm { coeff: self.coeff.recip(), factors }.normalize())
    }

    fn root(&self, k: u32) -> Option<Self> {
        if !self.coeff.is_positive() {
            return None;
        }
        let mut exps: BTreeMap<BigInt, BigRational> = self.factors.clone();
        for (p, n) in factor(self.coeff.numer()) {
            *exps.entry(p).or_insert_with(BigRational::zero) += BigRational::from_integer(n.into());
        }
        for (p, n) in factor(self.coeff.denom()) {
            *exps.entry(p).or_insert_with(BigRational::zero) -= BigRational::from_integer(n.into());
        }
        let k = BigRational::from_integer(k.into());
        let factors = exps.into_iter().map(|(b, e)| (b, e / k.clone())).collect();
        Some(PowerNormalForm { coeff: BigRational::one(), factors }.normalize())
    }

    /// Least common denominator of the exponents.
    pub fn root_index(&self) -> BigInt {
        self.factors.values().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }
}

/// Factors a positive integer by trial division; a leftover cofactor with no
/// small factors is returned as a single base.
fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT && n > BigInt::one() {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut count = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = q;
            count += 1;
        }
        if count > 0 {
            out.push((bp, count));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Normal form of `e`, when `e` is built from rationals by products,
/// quotients and roots only (sums are allowed where both sides share the same
/// irrational part, e.g. `2√3 + √3`).
pub fn normal_form(e: &RadicalExpr) -> Option<PowerNormalForm> {
    match e {
        RadicalExpr::Rat { value } => Some(PowerNormalForm::rational(value.clone())),
        RadicalExpr::Mul { lhs, rhs } => Some(normal_form(lhs)?.mul(&normal_form(rhs)?)),
        RadicalExpr::Div { lhs, rhs } => Some(normal_form(lhs)?.mul(&normal_form(rhs)?.recip()?)),
        RadicalExpr::Root { k, arg } => {
            let inner = normal_form(arg)?;
            if inner.root_index() * BigInt::from(*k) > BigInt::from(MAX_ROOT_INDEX) {
                return None;
            }
            inner.root(*k)
        }
        RadicalExpr::Add { lhs, rhs } | RadicalExpr::Sub { lhs, rhs } => {
            let (a, b) = (normal_form(lhs)?, normal_form(rhs)?);
            let like = a.factors == b.factors || a.coeff.is_zero() || b.coeff.is_zero();
            if !like {
                return None;
            }
            let factors = if a.coeff.is_zero() { b.factors.clone() } else { a.factors.clone() };
            let coeff = if matches!(e, RadicalExpr::Add { .. }) { a.coeff + b.coeff } else { a.coeff - b.coeff };
            Some(PowerNormalForm { coeff, factors }.normalize())
        }
    }
}
