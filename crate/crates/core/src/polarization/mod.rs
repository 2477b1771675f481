//! Polarization types, the degree bound, the Hodge-class check, and the
//! classification of the finitely many types below the bound.

pub mod bounds;
pub mod classify;
pub mod enumerate;
pub mod stirling;
pub mod types;

use thiserror::Error;

pub use bounds::{
    degree_bound, degree_threshold, hodge_check, theorem31_holds, DegreeTest, HodgeCertificate, IntegerInequality,
    Theorem31Certificate,
};
pub use classify::{classify, classify_type, Classification, TypeStatus, TypeVerdict};
pub use enumerate::enumerate_below_bound;
pub use stirling::{bigger_bound, plain_holds, refined_holds, stirling_check, StirlingReport, StirlingRow};
pub use types::{binomial, factorial, generic_n, n_exceeds_one, PolarizationType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarizationError {
    #[error("invalid polarization type {0}")]
    InvalidType(String),
    #[error("dimension g = {0} is not supported (need g >= 4)")]
    UnsupportedDimension(u32),
    #[error("k = {k} is outside [2, g-2] for g = {g}")]
    IndexOutOfRange { k: u32, g: u32 },
    #[error("g = {g}, d = {d}: undecided with pi to {digits} digits")]
    UndecidedAtPrecision { g: u32, d: u32, digits: u32 },
    #[error("enumeration for g = {g} is too large (threshold {threshold})")]
    EnumerationTooLarge { g: u32, threshold: String },
    #[error("{0}")]
    InvalidArgument(String),
}
