//! Numeric simulation of the induction that cuts log canonical centres down
//! one dimension at a time.
//!
//! At a centre of dimension `d` the step needs
//! `(D^d · Z) > (b/(1−c))^d · mult(Z)`. With a floor `V_d` on
//! `((cD)^d · Z)` and `c < g/m`, the left side exceeds `V_d / (g/m)^d`; the
//! deficit `b/(1−c)` is at most `(g − c m)/(1 − c)`, which decreases in `c`
//! when `m > g`, so its worst case is at the lower end `c_low`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::alpha::{alpha_min, volume_floor_table};
use super::HelmkeError;
use crate::exact::radical::rational_string;
use crate::exact::{
    compare, sturm_nonneg, Comparison, ComparisonRoute, FieldPolynomial, OpenInterval, RadicalExpr,
    SturmVerdict,
};
use crate::polarization::binomial;

/// Default digit cap for chain comparisons.
pub const CHAIN_DIGIT_CAP: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HelmkeProfile {
    pub g: u32,
    /// Lower bound on the multiplicity of `D` at the point.
    pub m: RadicalExpr,
    /// Value `m` must exceed, certified before the run when present.
    pub m_threshold: Option<RadicalExpr>,
    #[serde(with = "rational_string")]
    pub c_low: BigRational,
    pub volume_floor: BTreeMap<u32, RadicalExpr>,
    /// Multiplicity caps; missing entries default to `C(g−1, g−d)`.
    pub mult_cap: BTreeMap<u32, u64>,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl HelmkeProfile {
    /// Profile with the standard floors for `g` and `c_low = 1/2`.
    pub fn standard(g: u32, m: RadicalExpr) -> Result<Self, HelmkeError> {
        Ok(HelmkeProfile {
            g,
            m,
            m_threshold: None,
            c_low: half(),
            volume_floor: volume_floor_table(g)?,
            mult_cap: BTreeMap::new(),
        })
    }

    /// `g >= 6` with `m = 2g − α_g + margin`, required to exceed `2g − α_g`.
    pub fn alpha_margin(g: u32, margin: BigRational) -> Result<Self, HelmkeError> {
        let a = alpha_min(g)?;
        let threshold = RadicalExpr::int(2 * g as i64) - a.value.expr();
        let m = threshold.clone() + RadicalExpr::rat(margin);
        let mut p = HelmkeProfile::standard(g, m)?;
        p.m_threshold = Some(threshold);
        Ok(p)
    }

    /// Fivefold profile with `m` required to exceed 8.
    pub fn fivefold(m: BigRational) -> Result<Self, HelmkeError> {
        let mut p = HelmkeProfile::standard(5, RadicalExpr::rat(m))?;
        p.m_threshold = Some(RadicalExpr::int(8));
        Ok(p)
    }

    pub fn mult_cap_for(&self, d: u32) -> u64 {
        self.mult_cap.get(&d).copied().unwrap_or_else(|| {
            binomial(self.g - 1, self.g - d).try_into().expect("binomial fits in u64 for supported g")
        })
    }
}

/// `(g − c m)/(1 − c)`.
pub fn deficit_start(g: u32, c: &BigRational, m: &RadicalExpr) -> Result<RadicalExpr, HelmkeError> {
    let one = BigRational::from_integer(1.into());
    if *c >= one {
        return Err(HelmkeError::DegenerateThreshold(c.to_string()));
    }
    if *c <= BigRational::from_integer(0.into()) {
        return Err(HelmkeError::InvalidProfile(format!("c = {c} must be positive")));
    }
    let c_expr = RadicalExpr::rat(c.clone());
    Ok((RadicalExpr::int(g as i64) - c_expr * m.clone()) / RadicalExpr::rat(one - c.clone()))
}

/// Certifies `(g − c m)/(1 − c) <= 2g − m` on `c ∈ (1/2, 1)` for rational
/// `m >= g`: after clearing `1 − c > 0` it reads `(m − g)(2c − 1) >= 0`.
pub fn certify_deficit_cap(g: u32, m: &BigRational) -> Result<SturmVerdict, HelmkeError> {
    let k = m - BigRational::from_integer(BigInt::from(g));
    let p = FieldPolynomial::from_rationals(vec![-k.clone(), k * BigRational::from_integer(2.into())]);
    if p.is_zero() {
        return Ok(SturmVerdict::Pass);
    }
    let iv = OpenInterval::rational(half(), BigRational::from_integer(1.into()))?;
    Ok(sturm_nonneg(&p, &iv, false)?.verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarginSource {
    /// `V_d > deficit^d · mult` already, without dividing by `c^d`.
    FloorAlone,
    /// The step needs the factor `1/c^d > 1`, i.e. `c < 1`.
    LctBelowOne,
    /// The step fails.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub d: u32,
    pub floor: RadicalExpr,
    /// `V_d / c_upper^d`.
    pub available: RadicalExpr,
    /// `deficit^d · mult_cap`.
    pub required: RadicalExpr,
    pub deficit: RadicalExpr,
    pub mult_cap: u64,
    pub outcome: Comparison,
    pub route: ComparisonRoute,
    pub pass: bool,
    pub margin: MarginSource,
    /// `α_g^d · C(g−1, g−d) <= V_d`, when `α_g` is defined.
    pub alpha_consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub g: u32,
    pub m: RadicalExpr,
    pub m_above_threshold: Option<bool>,
    pub c_upper: RadicalExpr,
    pub deficit_start: RadicalExpr,
    pub steps: Vec<ChainStep>,
    pub assumptions: Vec<String>,
    pub overall: bool,
}

impl ChainReport {
    pub fn undecided(&self) -> bool {
        self.steps.iter().any(|s| s.outcome == Comparison::Undecided)
    }
}

fn power(e: &RadicalExpr, d: u32) -> RadicalExpr {
    (1..d).fold(e.clone(), |acc, _| acc * e.clone())
}

fn strictly_greater(a: &RadicalExpr, b: &RadicalExpr) -> Result<(Comparison, ComparisonRoute), HelmkeError> {
    let c = compare(a, b, CHAIN_DIGIT_CAP)?;
    Ok((c.outcome, c.route))
}

pub const DIVISOR_ASSUMPTION: &str =
    "divisor centre (d = g-1) is handled by the geometric divisor argument, not checked numerically";
pub const SIMPLE_ASSUMPTION: &str =
    "the abelian variety is simple, so centres are not abelian subvarieties";

pub fn run_chain(p: &HelmkeProfile) -> Result<ChainReport, HelmkeError> {
    let g = p.g;
    if g < 4 {
        return Err(HelmkeError::UnsupportedDimension(g));
    }
    let g_expr = RadicalExpr::int(g as i64);
    let (m_vs_g, _) = strictly_greater(&p.m, &g_expr)?;
    if m_vs_g != Comparison::Greater {
        return Err(HelmkeError::InvalidProfile(format!("m = {} must exceed g = {g}", p.m)));
    }
    for (&d, _) in &p.volume_floor {
        if d == 0 || d > g - 2 {
            return Err(HelmkeError::InvalidProfile(format!("volume floor for d = {d} outside 1..=g-2")));
        }
    }
    if let Some((&d, _)) = p.mult_cap.iter().find(|(_, &v)| v == 0) {
        return Err(HelmkeError::InvalidProfile(format!("mult_cap({d}) must be at least 1")));
    }
    let m_above_threshold = match &p.m_threshold {
        Some(t) => Some(strictly_greater(&p.m, t)?.0 == Comparison::Greater),
        None => None,
    };
    let c_upper = g_expr.clone() / p.m.clone();
    let deficit = deficit_start(g, &p.c_low, &p.m)?;
    let alpha = if g >= 6 { Some(alpha_min(g)?) } else { None };

    let mut steps = Vec::new();
    for d in (1..=g - 2).rev() {
        let Some(floor) = p.volume_floor.get(&d) else {
            continue;
        };
        let cap = p.mult_cap_for(d);
        let cap_expr = RadicalExpr::int(cap as i64);
        let available = floor.clone() / power(&c_upper, d);
        // the deficit never grows along the chain; the start value bounds it
        let required = power(&deficit, d) * cap_expr.clone();
        let (outcome, route) = strictly_greater(&available, &required)?;
        let pass = outcome == Comparison::Greater;
        let margin = if !pass {
            MarginSource::None
        } else if strictly_greater(floor, &required)?.0 == Comparison::Greater {
            MarginSource::FloorAlone
        } else {
            MarginSource::LctBelowOne
        };
        let alpha_consistent = match &alpha {
            Some(a) => {
                let lhs = power(&a.value.expr(), d) * RadicalExpr::int(binomial(g - 1, g - d).try_into().expect("fits"));
                Some(strictly_greater(&lhs, floor)?.0 != Comparison::Greater)
            }
            None => None,
        };
        steps.push(ChainStep {
            d,
            floor: floor.clone(),
            available,
            required,
            deficit: deficit.clone(),
            mult_cap: cap,
            outcome,
            route,
            pass,
            margin,
            alpha_consistent,
        });
    }
    let overall = steps.iter().all(|s| s.pass) && m_above_threshold != Some(false);
    Ok(ChainReport {
        g,
        m: p.m.clone(),
        m_above_threshold,
        c_upper,
        deficit_start: deficit,
        steps,
        assumptions: vec![DIVISOR_ASSUMPTION.to_string(), SIMPLE_ASSUMPTION.to_string()],
        overall,
    })
}

/// The standard profile with the `d = g−2` floor lowered to `5 (g−2)!`.
pub fn ablated_profile(g: u32, margin: BigRational) -> Result<HelmkeProfile, HelmkeError> {
    let mut p = HelmkeProfile::alpha_margin(g, margin)?;
    let floor = crate::polarization::factorial(g - 2) * num_bigint::BigUint::from(5u32);
    p.volume_floor.insert(g - 2, RadicalExpr::rat(BigRational::from_integer(floor.into())));
    Ok(p)
}
