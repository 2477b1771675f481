mod common;

use bpfcheck::pell::{is_square, nth_solution, rojas_beta, solve_pell, verify_surface_bound, PellSolution, SurfaceBranch};
use common::{brute_force_pell, chakravala, check_group_law, non_square, BRUTE_FORCE_Y};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn minimal_solutions_up_to_200() {
    let mut brute_checked = 0;
    for n in 2..=200u64 {
        if is_square(n) {
            continue;
        }
        let s = solve_pell(n).unwrap();
        assert!(s.is_valid());
        let (cx, cy) = chakravala(n);
        assert_eq!((BigInt::from(s.x.clone()), BigInt::from(s.y.clone())), (cx, cy), "N = {n}");
        match brute_force_pell(n, BRUTE_FORCE_Y) {
            Some((x, y)) => {
                brute_checked += 1;
                assert_eq!((s.x.clone(), s.y.clone()), (BigUint::from(x), BigUint::from(y)), "N = {n}");
            }
            // no solution with y in the budget, so the fundamental one lies beyond
            None => assert!(s.y > BigUint::from(BRUTE_FORCE_Y), "N = {n}"),
        }
    }
    assert_eq!(brute_checked, 186 - 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_law(n in non_square(), i in 1u32..=6, j in 1u32..=6) {
        let r = check_group_law(n, i, j);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn candidates_in_unit_interval(d in 1u64..=3000) {
        let beta = rojas_beta(d).unwrap();
        for c in &beta.candidates {
            prop_assert!(c.value > BigRational::zero() && c.value <= BigRational::one());
            if let Some(s) = &c.solution {
                prop_assert!(s.is_valid());
                prop_assert_eq!(s.n, 4 * d);
            }
        }
        match beta.branch {
            SurfaceBranch::PerfectSquare => prop_assert_eq!(beta.candidates.len(), 1),
            SurfaceBranch::Pell => prop_assert_eq!(beta.candidates.len(), 2),
        }
    }
}

#[test]
fn invalid_solutions_rejected() {
    assert!(PellSolution::new(2, 3u32.into(), 1u32.into()).is_err());
    assert!(PellSolution::new(2, 3u32.into(), 2u32.into()).is_ok());
    assert!(solve_pell(49).is_err());
    assert!(nth_solution(2, 0).is_err());
}

#[test]
fn surface_bound_small_range() {
    let r = verify_surface_bound(500).unwrap();
    assert_eq!(r.rows.len(), 495);
    assert!(r.all_pass());
    // d = 6: X² − 24 Y² = 1 has (5, 1), (49, 10); 2y/(x−1) = 1/2, 5/12
    let six = &r.rows[0].beta;
    let v: Vec<String> = six.candidates.iter().map(|c| c.value.to_string()).collect();
    assert_eq!(v, vec!["1/2", "5/12"]);
}
