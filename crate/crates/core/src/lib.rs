//! Exact-arithmetic verification of basepoint-freeness threshold bounds for
//! polarized abelian varieties.
//!
//! - [`exact`]: rationals, quadratic fields, radical expressions, Sturm
//!   certification and π enclosures.
//! - [`polarization`]: polarization types, degree bounds and classification.
//! - [`pell`]: Pell equations and the surface threshold formula.
//! - [`helmke`]: volume floors, α constants, induction chains and the builtin
//!   check manifest.

pub mod exact;
pub mod helmke;
pub mod pell;
pub mod polarization;

use num_rational::BigRational;

pub use exact::{ExactError, RadicalExpr};

pub type Rational = BigRational;
pub type QuadElem = exact::QuadFieldElem<BigRational>;
pub type QuadPoly = exact::FieldPolynomial<BigRational>;
pub type RationalInterval = exact::Interval<BigRational>;
