use std::collections::BTreeMap;

use mirabolic::field::{Oracle, PairTable};
use mirabolic::verify::{flag_count, verify_dimensions, verify_oracle_agreement};
use mirabolic::{dimension_count, enumerate_decorated, Context, DecoratedMatrix, Engine, Error};
use num_bigint::BigUint;

const BIG: u64 = u64::MAX;

#[test]
fn orbit_count_and_sizes_at_two_two_two() {
    for q in [2, 3] {
        let r = verify_dimensions(Context::new(2, 2, 2), &[q], BIG).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.oracle[0].orbits, 27);
    }
}

#[test]
fn one_by_one_has_two_orbits() {
    for d in 1..=3 {
        let t = Oracle::new(Context::new(1, 1, d), 2, BIG).unwrap().orbit_table();
        let sizes: Vec<u64> = t.entries.values().map(|e| e.size).collect();
        // w = 0 and w != 0.
        assert_eq!(sizes, vec![1, 2u64.pow(d) - 1]);
    }
}

#[test]
fn flag_counts() {
    // Three-step flags in F_2^3: 21 complete ones, 6 * 7 with one repeated
    // step, and 3 with two.
    assert_eq!(flag_count(3, 3, 2), BigUint::from(66u32));
    assert_eq!(flag_count(2, 2, 3), BigUint::from(1u32 + 4 + 1));
    assert_eq!(flag_count(1, 4, 5), BigUint::from(1u32));
    assert_eq!(flag_count(2, 0, 3), BigUint::from(1u32));
}

#[test]
fn classification_is_gl_invariant() {
    for (ctx, q) in [((2, 2, 2), 2), ((3, 2, 3), 2), ((2, 3, 2), 3), ((2, 2, 3), 3)] {
        let o = Oracle::new(Context::new(ctx.0, ctx.1, ctx.2), q, BIG).unwrap();
        for seed in 0..3 {
            let r = o.gl_invariance(seed, 300);
            assert_eq!(r.violations, 0, "{r:?}");
        }
    }
}

#[test]
fn every_removal_order_reaches_the_same_lower_set() {
    for (n, m, d, q) in [(2, 2, 2, 2), (3, 2, 2, 2), (2, 3, 3, 2), (2, 2, 2, 3)] {
        let o = Oracle::new(Context::new(n, m, d), q, BIG).unwrap();
        let amb = o.ambient();
        for f in o.left_flags() {
            for g in o.right_flags() {
                let table = PairTable::new(amb, f, g);
                for w in 0..amb.size() {
                    let fixed = table.all_removal_fixed_points(w);
                    assert_eq!(fixed.len(), 1, "({n},{m},{d}) q={q}: {fixed:?}");
                }
            }
        }
    }
}

#[test]
fn structure_constants_do_not_depend_on_the_representative() {
    let ctx = Context::new(2, 2, 2);
    let o = Oracle::new(ctx, 2, BIG).unwrap();
    let amb = o.ambient();
    let mut triples: BTreeMap<DecoratedMatrix, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (fi, f) in o.left_flags().iter().enumerate() {
        for (gi, g) in o.right_flags().iter().enumerate() {
            let t = PairTable::new(amb, f, g);
            for w in 0..amb.size() {
                triples.entry(t.classify(w)).or_default().push((fi, gi, w));
            }
        }
    }
    let l: DecoratedMatrix = "[[2,0],[0,0]]{(1,1)}".parse().unwrap();
    let e: DecoratedMatrix = "[[1,1],[0,0]]{}".parse().unwrap();
    let basis = enumerate_decorated(2, 2, 2);
    for x in [&l, &e] {
        for y in basis.iter().step_by(3) {
            for (z, reps) in &triples {
                let first = o.structure_constant_at(x, y, reps[0]).unwrap();
                for rep in reps.iter().skip(1).step_by(2) {
                    assert_eq!(o.structure_constant_at(x, y, *rep).unwrap(), first, "{x} * {y} at {z}");
                }
            }
        }
    }
}

#[test]
fn oracle_agreement_small_grid() {
    let engine = Engine::default();
    for (n, m, d) in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2), (1, 2, 2), (3, 2, 2)] {
        for q in [2, 3] {
            let (l, r) = verify_oracle_agreement(&engine, Context::new(n, m, d), q, BIG).unwrap();
            assert!(l.passed(), "{l:?}");
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn orbit_bijection_full_grid() {
    for n in 1..=3 {
        for m in 1..=3 {
            for d in 0..=3 {
                let ctx = Context::new(n, m, d);
                let r = verify_dimensions(ctx, &[2, 3], BIG).unwrap();
                assert!(r.passed, "{r:?}");
                assert_eq!(BigUint::from(r.enumerated), dimension_count(n, m, d));
            }
        }
    }
}

#[test]
fn work_budget_and_field_checks() {
    assert!(matches!(Oracle::new(Context::new(3, 3, 3), 5, 1000), Err(Error::ScaleExceeded(_))));
    assert!(matches!(Oracle::new(Context::new(1, 1, 1), 4, BIG), Err(Error::UnsupportedField(4))));
}
