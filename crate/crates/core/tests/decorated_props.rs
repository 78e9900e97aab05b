use mirabolic::{dimension_count, enumerate_decorated, Context, Convention, DecoratedMatrix, LaurentPolynomial, ModuleElement, PairRule};
use proptest::prelude::*;

fn context() -> impl Strategy<Value = Context> {
    (1usize..=3, 1usize..=3, 0u32..=3).prop_map(|(n, m, d)| Context::new(n, m, d))
}

fn basis_element() -> impl Strategy<Value = DecoratedMatrix> {
    context().prop_flat_map(|c| {
        let basis = enumerate_decorated(c.n, c.m, c.d);
        (0..basis.len()).prop_map(move |k| basis[k].clone())
    })
}

fn element() -> impl Strategy<Value = ModuleElement> {
    context().prop_flat_map(|c| {
        let basis = enumerate_decorated(c.n, c.m, c.d);
        let len = basis.len();
        prop::collection::vec((0..len, -3i64..=3, -4i32..=4), 0..6).prop_map(move |terms| {
            let mut x = ModuleElement::zero(c);
            for (k, coeff, e) in terms {
                x.add_term(basis[k].clone(), LaurentPolynomial::monomial(coeff, e)).unwrap();
            }
            x
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(x in basis_element()) {
        prop_assert_eq!(x.to_string().parse::<DecoratedMatrix>().unwrap(), x);
    }

    #[test]
    fn json_round_trip(x in basis_element()) {
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<DecoratedMatrix>(&s).unwrap(), x);
    }

    #[test]
    fn transpose_is_an_involution(x in basis_element()) {
        let t = x.transpose();
        prop_assert_eq!(t.rows(), x.cols());
        prop_assert_eq!(t.transpose(), x.clone());
        let (ro, co) = x.marginals();
        let (tro, tco) = t.marginals();
        prop_assert_eq!(ro, tco);
        prop_assert_eq!(co, tro);
    }

    #[test]
    fn flipped_convention_negates_weight(x in basis_element()) {
        for rule in PairRule::ALL {
            let w = x.weight_exponent(Convention::new(rule));
            prop_assert_eq!(x.weight_exponent(Convention { rule, flipped: true }), -w);
        }
    }

    #[test]
    fn element_text_round_trip(x in element()) {
        prop_assert_eq!(ModuleElement::parse_text(x.context(), &x.to_text()).unwrap(), x);
    }

    #[test]
    fn element_json_round_trip(x in element()) {
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<ModuleElement>(&s).unwrap(), x);
    }

    #[test]
    fn element_minus_itself_is_zero(x in element()) {
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert_eq!(x.sub(&x).unwrap().to_text(), "0");
    }
}

#[test]
fn enumeration_matches_formula_on_a_grid() {
    for n in 1..=4 {
        for m in 1..=4 {
            for d in 0..=5 {
                let e = enumerate_decorated(n, m, d);
                assert_eq!(dimension_count(n, m, d), e.len().into(), "({n},{m},{d})");
                assert!(e.windows(2).all(|w| w[0] < w[1]), "({n},{m},{d}) not in canonical order");
            }
        }
    }
}

#[test]
fn spot_dimensions() {
    for d in 1..=5 {
        assert_eq!(dimension_count(1, 1, d), 2u32.into());
    }
    for (n, m) in [(1, 1), (2, 3), (4, 4)] {
        assert_eq!(dimension_count(n, m, 0), 1u32.into());
    }
    assert_eq!(dimension_count(2, 2, 2), 27u32.into());
    assert_eq!(dimension_count(3, 3, 3), 652u32.into());
}

#[test]
fn single_unit_coefficient_prints_the_label_alone() {
    let x: DecoratedMatrix = "[[1,0],[0,1]]{(2,2)}".parse().unwrap();
    let e = ModuleElement::basis(Context::new(2, 2, 2), x).unwrap();
    assert_eq!(e.to_text(), "[[1,0],[0,1]]{(2,2)}");
}

#[test]
fn context_is_enforced() {
    let x: DecoratedMatrix = "[[1]]{}".parse().unwrap();
    assert!(ModuleElement::basis(Context::new(1, 1, 2), x).is_err());
}
