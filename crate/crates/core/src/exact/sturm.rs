//! Sign certification of polynomials on open intervals via Sturm sequences.
//!
//! `p >= 0` on `(lo, hi)` holds iff no root of odd multiplicity lies in the
//! interval and `p` is positive at one point where it does not vanish.
//! `p > 0` additionally needs the interval to be root-free. Both root counts
//! come from Sturm sequences of squarefree polynomials, evaluated exactly at
//! the (possibly quadratic-irrational) endpoints.



use super::error::ExactError;
use super::poly::FieldPolynomial;
use super::quad::QuadFieldElem;
use super::scalar::{ExactField, Sign};

/// An open interval `(lo, hi)` with endpoints in a common quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenInterval<T> {
    lo: QuadFieldElem<T>,
    hi: QuadFieldElem<T>,
}

impl<T: ExactField> OpenInterval<T> {
    pub fn new(lo: QuadFieldElem<T>, hi: QuadFieldElem<T>) -> Result<Self, ExactError> {
        if !lo.compatible(&hi) {
            return Err(ExactError::FieldMismatch(lo.radicand(), hi.radicand()));
        }
        match lo.cmp(&hi) {
            std::cmp::Ordering::Equal => Err(ExactError::DegenerateInterval),
            std::cmp::Ordering::Greater => Err(ExactError::UnorderedInterval),
            std::cmp::Ordering::Less => Ok(OpenInterval { lo, hi }),
        }
    }

    pub fn rational(lo: T, hi: T) -> Result<Self, ExactError> {
        Self::new(QuadFieldElem::rational(lo), QuadFieldElem::rational(hi))
    }

    pub fn lo(&self) -> &QuadFieldElem<T> {
        &self.lo
    }

    pub fn hi(&self) -> &QuadFieldElem<T> {
        &self.hi
    }

    fn radicand(&self) -> u64 {
        if self.lo.radicand() != 1 {
            self.lo.radicand()
        } else {
            self.hi.radicand()
        }
    }

    fn contains(&self, x: &QuadFieldElem<T>) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// A rational subinterval `[a, b]` of `(lo, hi)`, reusing rational
    /// endpoints as-is so sample points stay short.
    fn rational_core(&self) -> (T, T) {
        let mid = (&self.lo + &self.hi).scale(&T::from_ratio(1, 2));
        let a = if self.lo.is_rational() {
            self.lo.a().clone()
        } else {
            self.lo.rational_between(&mid).expect("lo < mid")
        };
        let b = if self.hi.is_rational() {
            self.hi.a().clone()
        } else {
            mid.rational_between(&self.hi).expect("mid < hi")
        };
        (a, b)
    }
}

/// Interior dyadic points of `(a, b)`: level by level, ascending within a
/// level. For `(0, 1)` this is `1/2, 1/4, 3/4, 1/8, …`.
fn dyadic_points<T: ExactField>(a: T, b: T, max_level: u32) -> impl Iterator<Item = T> {
    let width = b - a.clone();
    (1..=max_level).flat_map(move |level| {
        let denom = T::from_u64(1u64 << level).expect("integer embeds");
        let a = a.clone();
        let width = width.clone();
        (0..(1u64 << (level - 1))).map(move |j| {
            let num = T::from_u64(2 * j + 1).expect("integer embeds");
            a.clone() + width.clone() * num / denom.clone()
        })
    })
}

const SAMPLE_LEVELS: u32 = 10;

pub fn sturm_sequence<T: ExactField>(p: &FieldPolynomial<T>) -> Vec<FieldPolynomial<T>> {
    let mut seq = vec![p.sign_preserving_normalize()];
    let dp = p.derivative();
    if dp.is_zero() {
        return seq;
    }
    seq.push(dp.sign_preserving_normalize());
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push((-r).sign_preserving_normalize());
    }
    seq
}

fn sign_variations<T: ExactField>(seq: &[FieldPolynomial<T>], x: &QuadFieldElem<T>) -> usize {
    let signs: Vec<Sign> = seq.iter().map(|p| p.sign_at(x)).filter(|s| *s != Sign::Zero).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots of the squarefree polynomial `q` in the open interval.
fn count_roots<T: ExactField>(
    q: &FieldPolynomial<T>,
    seq: &[FieldPolynomial<T>],
    lo: &QuadFieldElem<T>,
    hi: &QuadFieldElem<T>,
) -> usize {
    if q.degree().unwrap_or(0) == 0 {
        return 0;
    }
    // V(lo) - V(hi) counts roots in (lo, hi]
    let va = sign_variations(seq, lo);
    let vb = sign_variations(seq, hi);
    let at_hi = usize::from(q.eval(hi).is_zero());
    (va - vb) - at_hi
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SturmVerdict {
    Pass,
    Fail,
}

/// A rational point together with the exact polynomial value there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint<T> {
    pub point: T,
    pub value: QuadFieldElem<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmCertificate<T> {
    pub verdict: SturmVerdict,
    pub strict: bool,
    /// Length of the Sturm sequence of the squarefree part.
    pub sequence_length: usize,
    /// Distinct roots in the open interval.
    pub distinct_roots: usize,
    /// Roots of odd multiplicity (sign changes) in the open interval.
    pub sign_changes: usize,
    /// A point where the polynomial does not vanish; its sign is the sign of
    /// the polynomial away from its roots when `sign_changes == 0`.
    pub sample: SamplePoint<T>,
    /// On failure: a rational point with negative value (or zero value for a
    /// strict check that only touches zero).
    pub witness: Option<SamplePoint<T>>,
    /// On strict failure with no rational zero found: a small interval
    /// isolating a root of even multiplicity.
    pub root_enclosure: Option<(QuadFieldElem<T>, QuadFieldElem<T>)>,
}

impl<T: ExactField> SturmCertificate<T> {
    pub fn passed(&self) -> bool {
        self.verdict == SturmVerdict::Pass
    }
}

/// Certifies `p >= 0` (or `p > 0` when `strict`) on the open interval.
pub fn sturm_nonneg<T: ExactField>(
    p: &FieldPolynomial<T>,
    interval: &OpenInterval<T>,
    strict: bool,
) -> Result<SturmCertificate<T>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let (r, s) = (p.radicand(), interval.radicand());
    if r != 1 && s != 1 && r != s {
        return Err(ExactError::FieldMismatch(r, s));
    }

    let squarefree = p.squarefree_part();
    let seq = sturm_sequence(&squarefree);
    let distinct = count_roots(&squarefree, &seq, &interval.lo, &interval.hi);
    let odd = p.odd_multiplicity_part();
    let odd_seq = sturm_sequence(&odd);
    let sign_changes = count_roots(&odd, &odd_seq, &interval.lo, &interval.hi);

    let (a, b) = interval.rational_core();
    let sample = std::iter::once(a.clone() + (b.clone() - a.clone()).half())
        .chain(dyadic_points(a.clone(), b.clone(), 62))
        .map(|x| SamplePoint { value: p.eval_rational(&x), point: x })
        .find(|s| !s.value.is_zero())
        .expect("a nonzero polynomial vanishes at finitely many points");
    let sample_positive = sample.value.sign() == Sign::Positive;

    let passes = sample_positive && if strict { distinct == 0 } else { sign_changes == 0 };
    let mut cert = SturmCertificate {
        verdict: if passes { SturmVerdict::Pass } else { SturmVerdict::Fail },
        strict,
        sequence_length: seq.len(),
        distinct_roots: distinct,
        sign_changes,
        sample: sample.clone(),
        witness: None,
        root_enclosure: None,
    };
    if passes {
        return Ok(cert);
    }

    if !sample_positive {
        // negative away from roots, or sign changes somewhere: either way a
        // negative point exists
        cert.witness = Some(negative_witness(p, interval, &squarefree, &seq, &odd, &odd_seq));
        return Ok(cert);
    }
    if sign_changes > 0 {
        cert.witness = Some(negative_witness(p, interval, &squarefree, &seq, &odd, &odd_seq));
        return Ok(cert);
    }
    // strict failure caused by a root of even multiplicity
    let zero = dyadic_points(a, b, SAMPLE_LEVELS)
        .map(|x| SamplePoint { value: p.eval_rational(&x), point: x })
        .find(|s| s.value.is_zero());
    match zero {
        Some(z) => cert.witness = Some(z),
        None => cert.root_enclosure = Some(isolate_any_root(&squarefree, &seq, interval)),
    }
    Ok(cert)
}

fn midpoint<T: ExactField>(l: &QuadFieldElem<T>, h: &QuadFieldElem<T>) -> QuadFieldElem<T> {
    (l + h).scale(&T::from_ratio(1, 2))
}

fn negative_witness<T: ExactField>(
    p: &FieldPolynomial<T>,
    interval: &OpenInterval<T>,
    sq: &FieldPolynomial<T>,
    seq: &[FieldPolynomial<T>],
    odd: &FieldPolynomial<T>,
    odd_seq: &[FieldPolynomial<T>],
) -> SamplePoint<T> {
    let (a, b) = interval.rational_core();
    let sampled = dyadic_points(a, b, SAMPLE_LEVELS)
        .map(|x| SamplePoint { value: p.eval_rational(&x), point: x })
        .find(|s| s.value.sign() == Sign::Negative);
    if let Some(w) = sampled {
        return w;
    }
    let point = isolate_negative_point(p, sq, seq, odd, odd_seq, interval);
    rational_near(p, &point, interval)
}

/// Replaces an irrational point with negative value by a nearby rational one.
fn rational_near<T: ExactField>(
    p: &FieldPolynomial<T>,
    point: &QuadFieldElem<T>,
    interval: &OpenInterval<T>,
) -> SamplePoint<T> {
    let mut steps = 16;
    loop {
        let enc = point.enclosure(steps);
        for x in [enc.midpoint(), enc.lo().clone(), enc.hi().clone()] {
            let qx = QuadFieldElem::rational(x.clone());
            if interval.contains(&qx) {
                let value = p.eval(&qx);
                if value.sign() == Sign::Negative {
                    return SamplePoint { point: x, value };
                }
            }
        }
        steps *= 2;
    }
}

/// Sturm-guided bisection down to a point where `p < 0`. Requires either a
/// sign change in the interval or `p < 0` away from its roots.
fn isolate_negative_point<T: ExactField>(
    p: &FieldPolynomial<T>,
    sq: &FieldPolynomial<T>,
    seq: &[FieldPolynomial<T>],
    odd: &FieldPolynomial<T>,
    odd_seq: &[FieldPolynomial<T>],
    interval: &OpenInterval<T>,
) -> QuadFieldElem<T> {
    let mut stack = vec![(interval.lo.clone(), interval.hi.clone())];
    while let Some((l, h)) = stack.pop() {
        let m = midpoint(&l, &h);
        let pm = p.eval(&m);
        if pm.sign() == Sign::Negative {
            return m;
        }
        if count_roots(odd, odd_seq, &l, &h) == 0 && !odd.eval(&m).is_zero() {
            continue;
        }
        if odd.eval(&m).is_zero() {
            // m is itself a sign-changing root: step off it on both sides
            // until no other root of the squarefree part interferes
            let (mut l2, mut h2) = (midpoint(&l, &m), midpoint(&m, &h));
            loop {
                let clean = count_roots(sq, seq, &l2, &m) == 0
                    && count_roots(sq, seq, &m, &h2) == 0
                    && !sq.eval(&l2).is_zero()
                    && !sq.eval(&h2).is_zero();
                if clean {
                    break;
                }
                l2 = midpoint(&l2, &m);
                h2 = midpoint(&m, &h2);
            }
            return if p.eval(&l2).sign() == Sign::Negative { l2 } else { h2 };
        }
        if count_roots(sq, seq, &l, &h) == 1 {
            return descend_to_negative(p, sq, seq, l, h);
        }
        stack.push((m.clone(), h));
        stack.push((l, m));
    }
    unreachable!("caller guarantees a negative point exists")
}

/// `(l, h)` holds exactly one root `r` of `sq`, and `p` changes sign at `r`.
fn descend_to_negative<T: ExactField>(
    p: &FieldPolynomial<T>,
    sq: &FieldPolynomial<T>,
    seq: &[FieldPolynomial<T>],
    mut l: QuadFieldElem<T>,
    mut h: QuadFieldElem<T>,
) -> QuadFieldElem<T> {
    loop {
        let m = midpoint(&l, &h);
        if sq.eval(&m).is_zero() {
            let left = midpoint(&l, &m);
            return if p.eval(&left).sign() == Sign::Negative { left } else { midpoint(&m, &h) };
        }
        if p.eval(&m).sign() == Sign::Negative {
            return m;
        }
        if count_roots(sq, seq, &l, &m) == 1 {
            h = m;
        } else {
            l = m;
        }
    }
}

fn isolate_any_root<T: ExactField>(
    sq: &FieldPolynomial<T>,
    seq: &[FieldPolynomial<T>],
    interval: &OpenInterval<T>,
) -> (QuadFieldElem<T>, QuadFieldElem<T>) {
    let (mut l, mut h) = (interval.lo.clone(), interval.hi.clone());
    let tolerance = QuadFieldElem::rational(T::one() / T::from_u64(1 << 30).expect("integer embeds"));
    loop {
        let m = midpoint(&l, &h);
        if sq.eval(&m).is_zero() {
            return (m.clone(), m);
        }
        if (&h - &l) < tolerance {
            return (l, h);
        }
        if count_roots(sq, seq, &l, &m) > 0 {
            h = m;
        } else {
            l = m;
        }
    }
}

impl<T: ExactField> SamplePoint<T> {
    pub fn sign(&self) -> Sign {
        self.value.sign()
    }
}
