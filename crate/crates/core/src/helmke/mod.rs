//! Induction-chain simulation, the `α` constants, and the inequality ledger.

pub mod alpha;
pub mod builtins;
pub mod chain;
pub mod manifest;

use thiserror::Error;

use crate::exact::ExactError;

pub use alpha::{alpha, alpha2_without_increment, alpha_min, mult_bound, volume_floor_table, AlphaMin, AlphaValue};
pub use builtins::{builtin_falsified, builtin_manifest};
pub use chain::{
    ablated_profile, certify_deficit_cap, deficit_start, run_chain, ChainReport, ChainStep, HelmkeProfile, MarginSource,
    DIVISOR_ASSUMPTION, SIMPLE_ASSUMPTION,
};
pub use manifest::{
    run_check, run_manifest, Certificate, CheckManifest, CheckOutcome, CheckVerdict, NamedCheck, QuadLiteral, Statement,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HelmkeError {
    #[error("index out of range: g = {g}, d = {d}")]
    IndexOutOfRange { g: u32, d: u32 },
    #[error("dimension g = {0} is not supported here")]
    UnsupportedDimension(u32),
    #[error("threshold c = {0} must be below 1")]
    DegenerateThreshold(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
