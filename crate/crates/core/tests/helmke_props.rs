use std::cmp::Ordering;

use bpfcheck::exact::{compare, refine, Comparison, Precision};
use bpfcheck::helmke::{
    ablated_profile, alpha, alpha_min, builtin_falsified, builtin_manifest, run_chain, run_manifest, volume_floor_table,
    Certificate, CheckVerdict, HelmkeProfile,
};
use bpfcheck::RadicalExpr;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn margin() -> BigRational {
    BigRational::new(1.into(), 1000.into())
}

#[test]
fn alpha_min_is_the_pairwise_minimum() {
    for g in 6..=50 {
        let m = alpha_min(g).unwrap();
        let best = m.value.expr();
        for d in 2..=g - 2 {
            let a = alpha(g, d).unwrap();
            let outcome = compare(&best, &a.expr(), 200).unwrap().outcome;
            assert!(matches!(outcome, Comparison::Less | Comparison::Equal), "g = {g}, d = {d}");
            // log oracle
            let (lb, la) = (
                m.value.radicand.to_f64().unwrap().ln() / m.value.index as f64,
                a.radicand.to_f64().unwrap().ln() / a.index as f64,
            );
            if (lb - la).abs() > 1e-12 {
                assert_eq!(lb.partial_cmp(&la), Some(Ordering::Less));
            }
        }
        assert!(m.below_sqrt5, "g = {g}");
    }
}

#[test]
fn argmin_by_dimension() {
    for g in 6..=50 {
        let expected = match g {
            6..=10 => 3,
            11..=25 => 4,
            _ => 5,
        };
        assert_eq!(alpha_min(g).unwrap().argmin, expected, "g = {g}");
    }
}

#[test]
fn chains_pass_with_non_increasing_deficit() {
    let mut profiles = vec![HelmkeProfile::fivefold(BigRational::new(801.into(), 100.into())).unwrap()];
    profiles.extend((6..=12).map(|g| HelmkeProfile::alpha_margin(g, margin()).unwrap()));
    for p in &profiles {
        let r = run_chain(p).unwrap();
        assert!(r.overall, "g = {}", p.g);
        assert_eq!(r.m_above_threshold, Some(true));
        assert!(r.assumptions.iter().any(|a| a.contains("divisor")));
        assert_eq!(r.steps.len() as u32, p.g - 2);
        for w in r.steps.windows(2) {
            assert!(w[0].d > w[1].d);
            let o = compare(&w[1].deficit, &w[0].deficit, 100).unwrap().outcome;
            assert!(matches!(o, Comparison::Less | Comparison::Equal));
        }
        // start deficit (g − c m)/(1 − c) at c = 1/2 is 2g − m
        // (sums of unlike radicals have no normal form, so compare enclosures)
        let start = RadicalExpr::int(2 * p.g as i64) - p.m.clone();
        let prec = Precision::new(60);
        let (a, b) = (refine(&r.deficit_start, 50, &prec).unwrap(), refine(&start, 50, &prec).unwrap());
        assert!(a.intersect(&b).is_some(), "g = {}", p.g);
    }
}

#[test]
fn ablation_is_consistent_or_recorded() {
    for g in 6..=12 {
        let r = run_chain(&ablated_profile(g, margin()).unwrap()).unwrap();
        let top = r.steps.iter().find(|s| s.d == g - 2).unwrap();
        assert!(top.alpha_consistent == Some(true) || !top.pass, "g = {g}");
        // the lowered floor is 5 (g−2)!
        let standard = volume_floor_table(g).unwrap();
        let o = compare(&top.floor, &standard[&(g - 2)], 100).unwrap().outcome;
        assert_eq!(o, Comparison::Less);
    }
}

#[test]
fn manifest_runs_are_deterministic() {
    let m = builtin_manifest();
    assert_eq!(run_manifest(&m, 1000), run_manifest(&m, 1000));
    let f = builtin_falsified();
    let (a, b) = (run_manifest(&f, 1000), run_manifest(&f, 1000));
    assert_eq!(a, b);
    for out in &a {
        assert_eq!(out.verdict, CheckVerdict::Fail, "{}", out.id);
    }
}

fn has_witness(c: &Certificate) -> bool {
    match c {
        Certificate::Compare { outcome, .. } => *outcome != Comparison::Undecided,
        Certificate::IntervalNonneg { witness, root_enclosure, .. } => witness.is_some() || root_enclosure.is_some(),
        Certificate::All { parts } => parts.iter().any(has_witness),
    }
}

#[test]
fn falsified_interval_checks_carry_witnesses() {
    for out in run_manifest(&builtin_falsified(), 1000) {
        assert!(has_witness(out.certificate.as_ref().unwrap()), "{}", out.id);
    }
}
