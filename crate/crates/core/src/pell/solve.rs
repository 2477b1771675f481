//! Pell equations `x² − N y² = 1` via the continued fraction of `√N`.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::PellError;

/// A positive solution of `x² − N y² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub n: u64,
    #[serde(with = "crate::polarization::bounds::biguint_string")]
    pub x: BigUint,
    #[serde(with = "crate::polarization::bounds::biguint_string")]
    pub y: BigUint,
}

impl PellSolution {
    /// Checks `x² − N y² = 1` and `y > 0`.
    pub fn new(n: u64, x: BigUint, y: BigUint) -> Result<Self, PellError> {
        let s = PellSolution { n, x, y };
        if s.is_valid() {
            Ok(s)
        } else {
            Err(PellError::NotASolution { n, x: s.x.to_string(), y: s.y.to_string() })
        }
    }

    pub fn is_valid(&self) -> bool {
        let lhs = &self.x * &self.x;
        let rhs = BigUint::from(self.n) * &self.y * &self.y + BigUint::one();
        lhs == rhs && self.y > BigUint::ZERO
    }

    /// `(x₁ + y₁√N)(x₂ + y₂√N)`.
    pub fn compose(&self, other: &PellSolution) -> PellSolution {
        assert_eq!(self.n, other.n, "solutions of different equations");
        let n = BigUint::from(self.n);
        let x = &self.x * &other.x + n * &self.y * &other.y;
        let y = &self.x * &other.y + &other.x * &self.y;
        PellSolution { n: self.n, x, y }
    }
}

pub fn is_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// The fundamental solution (smallest `x`).
pub fn solve_pell(n: u64) -> Result<PellSolution, PellError> {
    if n < 2 || is_square(n) {
        return Err(PellError::PerfectSquareInput(n));
    }
    let a0 = n.sqrt() as u128;
    let nn = n as u128;
    let (mut m, mut d, mut a) = (0u128, 1u128, a0);
    // convergents h/k of the expansion
    let (mut h_prev, mut h) = (BigUint::one(), BigUint::from(a0));
    let (mut k_prev, mut k) = (BigUint::ZERO, BigUint::one());
    let big_n = BigUint::from(n);
    loop {
        if &h * &h == &big_n * &k * &k + BigUint::one() {
            let sol = PellSolution { n, x: h, y: k };
            debug_assert!(sol.is_valid());
            return Ok(sol);
        }
        m = d * a - m;
        d = (nn - m * m) / d;
        a = (a0 + m) / d;
        let a_big = BigUint::from(a);
        let h_next = &a_big * &h + &h_prev;
        let k_next = &a_big * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// The `index`-th solution, `(x₁ + y₁√N)^index`.
pub fn nth_solution(n: u64, index: u32) -> Result<PellSolution, PellError> {
    if index == 0 {
        return Err(PellError::ZeroIndex);
    }
    let base = solve_pell(n)?;
    let mut acc: Option<PellSolution> = None;
    let mut power = base;
    let mut e = index;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => power.clone(),
                Some(a) => a.compose(&power),
            });
        }
        e >>= 1;
        if e > 0 {
            power = power.compose(&power);
        }
    }
    let sol = acc.expect("index >= 1");
    debug_assert!(sol.is_valid());
    Ok(sol)
}
