//! Polarization types `(1, δ₂, …, δ_g)` and their basic invariants.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::PolarizationError;
use crate::exact::RadicalExpr;

/// A primitive polarization type: `δ₁ = 1` and `δᵢ | δᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PolarizationType {
    deltas: Vec<u64>,
}

impl PolarizationType {
    pub fn new(deltas: Vec<u64>) -> Result<Self, PolarizationError> {
        let invalid = |why: &str| PolarizationError::InvalidType(format!("{deltas:?}: {why}"));
        if deltas.len() < 2 {
            return Err(invalid("dimension must be at least 2"));
        }
        if deltas[0] != 1 {
            return Err(invalid("first entry must be 1"));
        }
        if deltas.iter().any(|&d| d == 0) {
            return Err(invalid("entries must be positive"));
        }
        if deltas.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(invalid("each entry must divide the next"));
        }
        Ok(PolarizationType { deltas })
    }

    pub fn g(&self) -> u32 {
        self.deltas.len() as u32
    }

    pub fn deltas(&self) -> &[u64] {
        &self.deltas
    }

    /// `δ = δ₁ ⋯ δ_g`, the number of sections `h⁰(A, L)`.
    pub fn degree(&self) -> BigUint {
        self.deltas.iter().map(|&d| BigUint::from(d)).product()
    }

    /// `δ₂ ⋯ δ_j` (empty product for `j < 2`).
    pub fn partial_degree(&self, j: usize) -> BigUint {
        self.deltas.iter().take(j).skip(1).map(|&d| BigUint::from(d)).product::<BigUint>().max(BigUint::one())
    }

    /// Self-intersection `(L^g) = g! δ`.
    pub fn volume(&self) -> BigUint {
        factorial(self.g()) * self.degree()
    }
}

impl TryFrom<Vec<u64>> for PolarizationType {
    type Error = PolarizationError;

    fn try_from(deltas: Vec<u64>) -> Result<Self, Self::Error> {
        PolarizationType::new(deltas)
    }
}

impl From<PolarizationType> for Vec<u64> {
    fn from(t: PolarizationType) -> Self {
        t.deltas
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.deltas.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for PolarizationType {
    type Err = PolarizationError;

    /// Accepts `1,2,2,2,2` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let deltas = inner
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PolarizationError::InvalidType(s.to_string()))?;
        PolarizationType::new(deltas)
    }
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `n(L) = g / (g! δ)^(1/g)` for a simple abelian variety.
pub fn generic_n(t: &PolarizationType) -> RadicalExpr {
    let g = t.g();
    let vol = RadicalExpr::rat(num_rational::BigRational::from_integer(t.volume().into()));
    let root = RadicalExpr::root(g, vol).expect("g >= 2");
    RadicalExpr::int(g as i64) / root
}

/// `n(L) > 1`, decided as `g^g > g! δ`.
pub fn n_exceeds_one(t: &PolarizationType) -> bool {
    let g = t.g();
    num_traits::pow(BigUint::from(g), g as usize) > t.volume()
}
