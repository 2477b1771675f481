//! Univariate polynomials with coefficients in a real quadratic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::error::ExactError;
use super::quad::QuadFieldElem;
use super::scalar::{ExactField, Sign};

/// Coefficients in ascending degree order, without trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldPolynomial<T> {
    coeffs: Vec<QuadFieldElem<T>>,
}

impl<T: ExactField> FieldPolynomial<T> {
    /// Fails if the coefficients mix incompatible quadratic fields.
    pub fn new(coeffs: Vec<QuadFieldElem<T>>) -> Result<Self, ExactError> {
        let mut radicand = 1;
        for c in &coeffs {
            match (radicand, c.radicand()) {
                (_, 1) => {}
                (1, d) => radicand = d,
                (r, d) if r == d => {}
                (r, d) => return Err(ExactError::FieldMismatch(r, d)),
            }
        }
        Ok(Self::trimmed(coeffs))
    }

    fn trimmed(mut coeffs: Vec<QuadFieldElem<T>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldPolynomial { coeffs }
    }

    pub fn from_rationals(coeffs: Vec<T>) -> Self {
        Self::trimmed(coeffs.into_iter().map(QuadFieldElem::rational).collect())
    }

    pub fn zero() -> Self {
        FieldPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: QuadFieldElem<T>) -> Self {
        Self::trimmed(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        FieldPolynomial { coeffs: vec![QuadFieldElem::zero(), QuadFieldElem::one()] }
    }

    pub fn coeffs(&self) -> &[QuadFieldElem<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&QuadFieldElem<T>> {
        self.coeffs.last()
    }

    pub fn radicand(&self) -> u64 {
        self.coeffs.iter().map(|c| c.radicand()).find(|&d| d != 1).unwrap_or(1)
    }

    /// Horner evaluation; exact.
    pub fn eval(&self, x: &QuadFieldElem<T>) -> QuadFieldElem<T> {
        let mut acc = QuadFieldElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &T) -> QuadFieldElem<T> {
        self.eval(&QuadFieldElem::rational(x.clone()))
    }

    pub fn sign_at(&self, x: &QuadFieldElem<T>) -> Sign {
        self.eval(x).sign()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&T::from_u64(i as u64).expect("integer embeds")))
            .collect();
        Self::trimmed(coeffs)
    }

    pub fn scale(&self, k: &QuadFieldElem<T>) -> Self {
        Self::trimmed(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(QuadFieldElem::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Divides by `|leading coefficient|`, which keeps every sign intact.
    pub fn sign_preserving_normalize(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let mut inv = lc.inverse().expect("leading coefficient is nonzero");
                if lc.sign() == Sign::Negative {
                    inv = -inv;
                }
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactError> {
        let dlead = divisor.leading().ok_or(ExactError::DivisionByZero)?;
        let ddeg = divisor.coeffs.len() - 1;
        let inv = dlead.inverse()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![QuadFieldElem::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + ddeg] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(ddeg);
        Ok((Self::trimmed(quot), Self::trimmed(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, ExactError> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "exact_div left a remainder");
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: `self = c · Π f_i^i` with each `f_i` monic,
    /// squarefree and pairwise coprime. Entry `i-1` of the result is `f_i`.
    pub fn squarefree_factors(&self) -> Vec<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).expect("gcd divides");
            let nc = d.exact_div(&a).expect("gcd divides");
            d = &nc - &nb.derivative();
            b = nb;
            out.push(a);
        }
        out
    }

    /// Product of the squarefree factors of odd multiplicity: exactly the
    /// roots where the polynomial changes sign.
    pub fn odd_multiplicity_part(&self) -> Self {
        self.squarefree_factors()
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .fold(Self::constant(QuadFieldElem::one()), |acc, (_, f)| &acc * f)
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::constant(QuadFieldElem::one());
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }
}

impl<'a, T: ExactField> Add for &'a FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn add(self, rhs: Self) -> FieldPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = QuadFieldElem::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        FieldPolynomial::trimmed(coeffs)
    }
}

impl<'a, T: ExactField> Sub for &'a FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn sub(self, rhs: Self) -> FieldPolynomial<T> {
        self + &(-rhs)
    }
}

impl<'a, T: ExactField> Mul for &'a FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn mul(self, rhs: Self) -> FieldPolynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return FieldPolynomial::zero();
        }
        let mut out = vec![QuadFieldElem::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        FieldPolynomial::trimmed(out)
    }
}

impl<'a, T: ExactField> Neg for &'a FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn neg(self) -> FieldPolynomial<T> {
        FieldPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<T: ExactField> Add for FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn add(self, rhs: Self) -> FieldPolynomial<T> {
        &self + &rhs
    }
}

impl<T: ExactField> Sub for FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn sub(self, rhs: Self) -> FieldPolynomial<T> {
        &self - &rhs
    }
}

impl<T: ExactField> Mul for FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn mul(self, rhs: Self) -> FieldPolynomial<T> {
        &self * &rhs
    }
}

impl<T: ExactField> Neg for FieldPolynomial<T> {
    type Output = FieldPolynomial<T>;

    fn neg(self) -> FieldPolynomial<T> {
        -&self
    }
}

impl<T: ExactField> fmt::Display for FieldPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}
