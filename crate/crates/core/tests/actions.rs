use mirabolic::action::{right_case, RightCase, LEFT_CORRECTIONS, RIGHT_CORRECTIONS};
use mirabolic::{enumerate_decorated, generator_element, Context, Engine, GeneratorToken as G, LaurentPolynomial, ModuleElement, Side};
use proptest::prelude::*;

fn el(ctx: (usize, usize, u32), s: &str) -> ModuleElement {
    ModuleElement::parse_text(Context::new(ctx.0, ctx.1, ctx.2), s).unwrap()
}

fn basis(ctx: Context) -> Vec<ModuleElement> {
    enumerate_decorated(ctx.n, ctx.m, ctx.d)
        .into_iter()
        .map(|x| ModuleElement::basis(ctx, x).unwrap())
        .collect()
}

#[test]
fn left_examples() {
    let e = Engine::default();
    let x = el((1, 1, 1), "[[1]]{}");
    assert_eq!(e.act_left(&G::L, &x).unwrap(), el((1, 1, 1), "(v^-1)*[[1]]{(1,1)} + (v^-2)*[[1]]{}"));
    let x = el((2, 1, 1), "[[0],[1]]{}");
    assert_eq!(e.act_left(&G::e(1), &x).unwrap(), el((2, 1, 1), "[[1],[0]]{}"));
    let x = el((2, 2, 2), "[[1,0],[0,1]]{}");
    assert_eq!(e.act_left(&G::h_plus(1), &x).unwrap(), x.scale(&LaurentPolynomial::v_pow(-1)));
}

#[test]
fn right_examples() {
    let e = Engine::default();
    let x = el((1, 1, 1), "[[1]]{}");
    assert_eq!(e.act_right(&x, &G::L).unwrap(), el((1, 1, 1), "(v^-1)*[[1]]{(1,1)} + (v^-2)*[[1]]{}"));
    // On the right, E_h moves a unit from column h to h+1 and F_h moves it back.
    let x = el((1, 2, 1), "[[1,0]]{}");
    let y = el((1, 2, 1), "[[0,1]]{}");
    assert_eq!(e.act_right(&x, &G::e(1)).unwrap(), y);
    assert_eq!(e.act_right(&y, &G::f(1)).unwrap(), x);
    assert!(e.act_right(&x, &G::f(1)).unwrap().is_zero());
    let x = el((2, 2, 2), "[[1,0],[0,1]]{}");
    assert_eq!(e.act_right(&x, &G::h_minus(2)).unwrap(), x.scale(&LaurentPolynomial::v_pow(1)));
}

#[test]
fn h_tokens_scale_by_marginals() {
    let e = Engine::default();
    let ctx = Context::new(3, 2, 3);
    for b in basis(ctx) {
        let (x, _) = b.terms().next().unwrap();
        let (ro, co) = x.marginals();
        for a in 1..=3 {
            let out = e.act_left(&G::h_plus(a), &b).unwrap();
            assert_eq!(out, b.scale(&LaurentPolynomial::v_pow(-(ro[a - 1] as i32))));
        }
        for a in 1..=2 {
            let out = e.act_right(&b, &G::h_minus(a)).unwrap();
            assert_eq!(out, b.scale(&LaurentPolynomial::v_pow(co[a - 1] as i32)));
        }
    }
}

#[test]
fn printed_right_formulas_agree_with_transpose() {
    let e = Engine::default();
    for (n, m, d) in [(2, 2, 2), (3, 2, 2), (2, 3, 3), (1, 3, 2)] {
        let ctx = Context::new(n, m, d);
        for t in G::all(m) {
            for b in basis(ctx) {
                assert_eq!(
                    e.act_right_printed(&b, &t).unwrap(),
                    e.act_right_by_transpose(&b, &t).unwrap(),
                    "{ctx} {b:?} * {t}"
                );
            }
        }
    }
}

#[test]
fn corrections_are_listed() {
    assert_eq!(LEFT_CORRECTIONS.len(), 4);
    assert_eq!(RIGHT_CORRECTIONS.len(), 7);
}

#[test]
fn right_case_needs_adjacent_decorations() {
    // Both columns decorated but not by consecutive decorations is malformed
    // for the printed case analysis; the staircase forbids it anyway.
    let x: mirabolic::DecoratedMatrix = "[[0,1],[1,0]]{(2,1)}".parse().unwrap();
    assert_eq!(right_case(&G::e(1), &x).unwrap(), RightCase::LeftOnly);
}

#[test]
fn word_semantics() {
    let e = Engine::default();
    let ctx = Context::new(2, 2, 2);
    for b in basis(ctx) {
        assert_eq!(e.act_word(&[], &b).unwrap(), b);
        let ll = e.act_word(&[(Side::Left, G::L), (Side::Left, G::L)], &b).unwrap();
        assert_eq!(ll, e.act_left(&G::L, &b).unwrap());
        let ef = e.act_word(&[(Side::Left, G::e(1)), (Side::Right, G::f(1))], &b).unwrap();
        let fe = e.act_word(&[(Side::Right, G::f(1)), (Side::Left, G::e(1))], &b).unwrap();
        assert_eq!(ef, fe);
        // The token nearest x acts first.
        let word = e.act_word(&[(Side::Left, G::e(1)), (Side::Left, G::f(1))], &b).unwrap();
        let by_hand = e.act_left(&G::e(1), &e.act_left(&G::f(1), &b).unwrap()).unwrap();
        assert_eq!(word, by_hand);
    }
}

#[test]
fn zero_maps_to_zero() {
    let e = Engine::default();
    let z = ModuleElement::zero(Context::new(2, 2, 2));
    for t in G::all(2) {
        assert!(e.act_left(&t, &z).unwrap().is_zero());
        assert!(e.act_right(&z, &t).unwrap().is_zero());
    }
}

#[test]
fn generator_elements() {
    let l = generator_element(&G::L, 1, 1).unwrap();
    assert_eq!(l.to_text(), "(v^-2)*[[1]]{} + (v^-1)*[[1]]{(1,1)}");
    let e1 = generator_element(&G::e(1), 2, 1).unwrap();
    assert_eq!(e1.to_text(), "[[0,1],[0,0]]{}");
    let h = generator_element(&G::h_plus(1), 2, 1).unwrap();
    assert_eq!(h.to_text(), "[[0,0],[0,1]]{} + (v^-1)*[[1,0],[0,0]]{}");
}

#[test]
fn left_action_by_generator_matches_regular_module() {
    // On MV_{n|n} = MS_{n,d} the left action of t on [I_D] for the diagonal
    // idempotents sums to the generator element itself.
    let e = Engine::default();
    for (n, d) in [(1, 1), (2, 1), (2, 2)] {
        let ctx = Context::new(n, n, d);
        for t in G::all(n) {
            let mut sum = ModuleElement::zero(ctx);
            for b in basis(ctx) {
                let (x, _) = b.terms().next().unwrap();
                let diag = x.delta().is_empty() && (1..=n).all(|i| (1..=n).all(|j| i == j || x.a(i, j) == 0));
                if diag {
                    sum.add_assign(&e.act_left(&t, &b).unwrap()).unwrap();
                }
            }
            assert_eq!(sum, generator_element(&t, n, d).unwrap(), "{t} at n={n}, d={d}");
        }
    }
}

#[test]
fn out_of_range_tokens_are_rejected() {
    let e = Engine::default();
    let b = el((2, 1, 1), "[[0],[1]]{}");
    assert!(e.act_left(&G::e(2), &b).is_err());
    assert!(e.act_right(&b, &G::e(1)).is_err());
    assert!(e.act_right(&b, &G::h_plus(2)).is_err());
}

proptest! {
    #[test]
    fn actions_are_linear(i in 0usize..27, j in 0usize..27, a in -3i64..=3, s in -2i32..=2, tok in 0usize..7, right in any::<bool>()) {
        let e = Engine::default();
        let ctx = Context::new(2, 2, 2);
        let bs = basis(ctx);
        let c = LaurentPolynomial::monomial(a, s);
        let mut x = bs[i].scale(&c);
        x.add_assign(&bs[j]).unwrap();
        let t = G::all(2)[tok];
        let side = if right { Side::Right } else { Side::Left };
        let mut expected = e.act(side, &t, &bs[i]).unwrap().scale(&c);
        expected.add_assign(&e.act(side, &t, &bs[j]).unwrap()).unwrap();
        prop_assert_eq!(e.act(side, &t, &x).unwrap(), expected);
    }
}
