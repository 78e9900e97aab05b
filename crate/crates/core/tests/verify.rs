use mirabolic::verify::{
    calibrate_normalization, centralizer_report, default_samples, flag_count, verify_bimodule, verify_dimensions,
    verify_oracle_agreement, verify_presentation, verify_transpose_duality, Basis, OperatorSet, SparseVec,
};
use mirabolic::{Context, Convention, Engine, Error, GeneratorToken as G, LaurentPolynomial, PairRule, Side};
use num_bigint::BigUint;
use num_rational::BigRational;

const WORK: u64 = 50_000_000;

#[test]
fn relations_hold_on_both_sides() {
    let e = Engine::default();
    for (n, m, d) in [(1, 1, 1), (2, 2, 2), (3, 2, 2), (2, 3, 2)] {
        let c = Context::new(n, m, d);
        for side in [Side::Left, Side::Right] {
            for r in verify_presentation(&e, c, side).unwrap() {
                assert!(r.passed, "{} at {c} on {side:?}: {:?}", r.id, r.counterexample);
            }
        }
    }
}

#[test]
fn printed_lf_relation_is_detected_as_false() {
    // `L F_i = L F_i L` fails, while `F_i L = L F_i L` holds.
    let e = Engine::default();
    let basis = Basis::new(Context::new(2, 2, 2));
    let ops = OperatorSet::build(&e, &basis, Side::Left).unwrap();
    let (l, f) = (G::L, G::f(1));
    let mut printed_fails = 0;
    for j in 0..basis.len() {
        let x: SparseVec = [(j, LaurentPolynomial::one())].into_iter().collect();
        let lfl = ops.apply_word(&[l, f, l], &x);
        if ops.apply_word(&[l, f], &x) != lfl {
            printed_fails += 1;
        }
        assert_eq!(ops.apply_word(&[f, l], &x), lfl);
    }
    assert!(printed_fails > 0);
}

#[test]
fn bimodule_commutes() {
    let e = Engine::default();
    for r in verify_bimodule(&e, Context::new(2, 2, 2)).unwrap() {
        assert!(r.passed, "{}: {:?}", r.id, r.counterexample);
    }
}

#[test]
fn transpose_route_agrees() {
    let r = verify_transpose_duality(&Engine::default(), Context::new(2, 2, 2)).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked, 27 * 7);
}

#[test]
fn dimensions_and_flag_counts() {
    let r = verify_dimensions(Context::new(2, 2, 2), &[2, 3], WORK).unwrap();
    assert!(r.passed);
    assert_eq!(r.enumerated, 27);
    // Two-step flags in F_2^2 are a choice of V_1: zero, one of 3 lines, or all.
    assert_eq!(flag_count(2, 2, 2), BigUint::from(5u32));
}

#[test]
fn oracle_agreement_small() {
    for (n, m, d) in [(1, 1, 1), (2, 1, 1), (2, 2, 2)] {
        let (l, r) = verify_oracle_agreement(&Engine::default(), Context::new(n, m, d), 2, WORK).unwrap();
        assert!(l.passed() && r.passed(), "({n},{m},{d})");
    }
}

#[test]
fn calibration_picks_blm_and_rejects_flips() {
    let r = calibrate_normalization(&[Context::new(2, 1, 1), Context::new(2, 2, 2)], &[2, 3], WORK).unwrap();
    assert_eq!(r.chosen, "blm");
    assert!(!r.ambiguous);
    for rule in PairRule::ALL {
        let flipped = Convention { rule, flipped: true }.name();
        assert!(r.rejected.contains(&flipped), "{flipped} not rejected");
    }
}

#[test]
fn calibration_needs_two_q() {
    let e = calibrate_normalization(&[Context::new(1, 1, 1)], &[2], WORK).unwrap_err();
    assert!(matches!(e, Error::InvalidArgument(_)));
}

#[test]
fn centralizer_small() {
    let r = centralizer_report(&Engine::default(), Context::new(1, 1, 1), &default_samples()).unwrap();
    assert!(r.passed && r.within_hypothesis);
    assert_eq!(r.module_dimension, 2);
    let r = centralizer_report(&Engine::default(), Context::new(2, 2, 2), &default_samples()).unwrap();
    assert!(r.passed);
    assert_eq!(r.module_dimension, 27);
}

#[test]
fn centralizer_rejects_special_samples() {
    let e = Engine::default();
    for bad in [0, 1, -1] {
        let v = BigRational::from_integer(bad.into());
        assert!(matches!(
            centralizer_report(&e, Context::new(1, 1, 1), &[v]),
            Err(Error::InvalidArgument(_))
        ));
    }
    assert!(centralizer_report(&e, Context::new(1, 1, 1), &[]).is_err());
}
