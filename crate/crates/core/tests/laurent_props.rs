use mirabolic::{gauss_bracket, specialize_v2, LaurentPolynomial};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-6i32..=6, -20i64..=20), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPolynomial::zero(), |acc, (e, c)| acc + LaurentPolynomial::monomial(c, e))
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a - &a, LaurentPolynomial::zero());
    }

    #[test]
    fn multiplication_is_a_commutative_ring(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentPolynomial::one(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn division_by_non_factor_fails(a in nonzero_poly()) {
        // v - v^-1 does not divide p + 1 when p is a multiple of it.
        let d = LaurentPolynomial::v_pow(1) - LaurentPolynomial::v_pow(-1);
        let p = &(&a * &d) + &LaurentPolynomial::one();
        prop_assert!(p.exact_div(&d).is_err());
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(a in poly(), b in poly(), q in prop::sample::select(vec![2u64, 3, 4, 5])) {
        let sa = specialize_v2(&a, q);
        let sb = specialize_v2(&b, q);
        prop_assert_eq!(specialize_v2(&(&a + &b), q), &sa + &sb);
        prop_assert_eq!(specialize_v2(&(&a * &b), q), &sa * &sb);
    }

    #[test]
    fn text_and_json_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPolynomial>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPolynomial>(&json).unwrap(), a);
    }

    #[test]
    fn bracket_pascal_rule(n in 2u32..9, t in 1u32..8) {
        prop_assume!(t < n);
        // [[N, t]] = [[N-1, t]] + v^{-2(N-t)} [[N-1, t-1]], with [[M, 0]] = 1.
        let lhs = gauss_bracket(n, t).unwrap();
        let below = |m: u32, s: u32| if s == 0 { LaurentPolynomial::one() } else { gauss_bracket(m, s).unwrap() };
        let rhs = &below(n - 1, t) + &below(n - 1, t - 1).shift(-2 * (n - t) as i32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_symmetric(n in 1u32..10, t in 1u32..10) {
        prop_assume!(t < n);
        prop_assert_eq!(gauss_bracket(n, t).unwrap(), gauss_bracket(n, n - t).unwrap());
    }

    #[test]
    fn bracket_at_q_counts_subspaces(n in 1u32..6, t in 1u32..6) {
        prop_assume!(t <= n);
        // At v = 1/2, so v^-2 = 4, the bracket is the Gaussian binomial
        // (q^N - 1)...(q^{N-t+1} - 1) / ((q^t - 1)...(q - 1)) at q = 4.
        let value = gauss_bracket(n, t).unwrap().eval_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        let q = 4i64;
        let mut num = 1i64;
        let mut den = 1i64;
        for i in 0..t {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        prop_assert_eq!(value, num_rational::BigRational::from_integer((num / den).into()));
    }
}

#[test]
fn bracket_one_is_geometric_sum() {
    let b = gauss_bracket(3, 1).unwrap();
    assert_eq!(b, "1 + v^-2 + v^-4".parse().unwrap());
}
