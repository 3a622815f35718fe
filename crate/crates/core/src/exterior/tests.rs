use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::scalar::{frac, int, Rational};

type Q = Rational;

fn e(indices: &[usize]) -> Form<Q> {
    Form::basis(indices)
}

fn beta() -> Form<Q> {
    &(&e(&[1, 4]) + &e(&[2, 5])) + &e(&[3, 6])
}

/// Theta as a plain matrix: e_i ↦ e_{i+3} for i = 1, 2, 3.
fn theta() -> Endo7<Q> {
    Endo7::from_fn(|r, c| {
        if (1..=3).contains(&c) && r == c + 3 {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

#[test]
fn wedge_basis_product() {
    assert_eq!(e(&[0]).wedge(&e(&[1])), e(&[0, 1]));
    assert_eq!(e(&[1]).wedge(&e(&[0])), -e(&[0, 1]));
    assert!(e(&[2]).wedge(&e(&[2])).is_zero());
}

#[test]
fn beta_cubed() {
    let b3 = beta().power(3);
    assert_eq!(b3, e(&[1, 2, 3, 4, 5, 6]) * int(-6));
    assert_eq!(b3.wedge(&e(&[0])), Form::volume() * int(-6));
}

#[test]
fn wedge_overflowing_degree_is_zero() {
    let a = e(&[0, 1, 2, 3]);
    let b = e(&[4, 5, 6, 0]);
    let w = a.wedge(&b);
    assert!(w.is_zero());
    assert_eq!(w.degree(), DIM);
}

#[test]
fn hodge7_examples() {
    assert_eq!(e(&[4, 5, 6]).hodge7(), e(&[0, 1, 2, 3]));
    assert_eq!(Form::<Q>::scalar(Q::one()).hodge7(), Form::volume());
    let mu = e(&[0]);
    let expected = mu.wedge(&beta().power(2)) * frac(-1, 2);
    assert_eq!(beta().hodge7(), expected);
}

#[test]
fn hodge4_examples() {
    assert_eq!(e(&[1]).hodge4_horizontal().unwrap(), -e(&[0, 2, 3]));
    assert_eq!(
        Form::<Q>::scalar(Q::one()).hodge4_horizontal().unwrap(),
        e(&[0, 1, 2, 3])
    );
    assert_eq!(e(&[0, 1]).hodge4_horizontal().unwrap(), e(&[2, 3]));
    assert_eq!(
        e(&[1, 5]).hodge4_horizontal(),
        Err(crate::Error::NotHorizontal { index: 5 })
    );
}

/// Signature of a permutation by brute-force counting of inversions.
fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn hodge4_matches_permutation_oracle() {
    // *e^I = sign(I, I^c) e^{I^c}; enumerate every ordering of {0,1,2,3}.
    use itertools::Itertools;
    for perm in (0..4).permutations(4) {
        for k in 0..=4 {
            let (head, tail) = perm.split_at(k);
            if !head.windows(2).all(|w| w[0] < w[1]) || !tail.windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            let star = e(head).hodge4_horizontal().unwrap();
            let expected = e(tail) * int(perm_sign(&perm));
            assert_eq!(star, expected, "star of e{head:?}");
        }
    }
}

#[test]
fn interior_examples() {
    let v0 = Vector7::<Q>::basis(0);
    assert_eq!(e(&[0, 1, 2, 3]).interior(&v0), e(&[1, 2, 3]));
    let v4 = Vector7::<Q>::basis(4);
    assert_eq!(e(&[4, 5, 6]).interior(&v4), e(&[5, 6]));
    assert!(Form::<Q>::scalar(int(3)).interior(&v4).is_zero());
}

#[test]
fn interior_matches_multilinear_evaluation() {
    let b2 = beta().power(2);
    let v = Vector7::<Q>::basis(4) + Vector7::basis(5);
    let contracted = b2.interior(&v);
    for idx in MultiIndex::all_of_degree(3) {
        let mut args = vec![v.clone()];
        args.extend(idx.indices().map(Vector7::basis));
        let brute = b2.evaluate(&args).unwrap();
        assert_eq!(contracted.coefficient(idx), brute, "coefficient {idx}");
    }
}

#[test]
fn contraction_examples() {
    let alpha = e(&[4, 5, 6]);
    let id = Endo7::<Q>::identity();
    let th = theta();
    assert_eq!(
        alpha
            .contract(&[id.clone(), id.clone(), id.clone()])
            .unwrap(),
        alpha.clone() * int(6)
    );
    let alpha1 = alpha
        .contract(&[th.clone(), id.clone(), id.clone()])
        .unwrap()
        * frac(1, 2);
    let expected = Form::from_terms(
        3,
        [
            (&[1, 5, 6][..], Q::one()),
            (&[2, 6, 4][..], Q::one()),
            (&[3, 4, 5][..], Q::one()),
        ],
    );
    assert_eq!(alpha1, expected);
    let alpha3 = alpha
        .contract(&[th.clone(), th.clone(), th.clone()])
        .unwrap()
        * frac(1, 6);
    assert_eq!(alpha3, e(&[1, 2, 3]));
    assert_eq!(
        alpha.contract(std::slice::from_ref(&id)),
        Err(crate::Error::LengthMismatch {
            expected: 3,
            got: 1
        })
    );
}

#[test]
fn norm_examples() {
    assert_eq!(beta().norm_sq(), int(3));
    assert_eq!(Form::<Q>::zero(3).norm_sq(), Q::zero());
}

#[test]
fn float_forms_compare_with_tolerance() {
    let a: Form<f64> = Form::from_terms(2, [(&[0, 1][..], 1.0), (&[2, 3][..], 0.5)]);
    let b: Form<f64> = Form::from_terms(2, [(&[0, 1][..], 1.0 + 1e-12), (&[2, 3][..], 0.5)]);
    assert!(a.approx_eq(&b, 1e-9));
    assert!(!a.approx_eq(&b, 1e-14));
}

fn arb_form(degree: usize) -> impl Strategy<Value = Form<Q>> {
    let n = MultiIndex::all_of_degree(degree).len();
    proptest::collection::vec(-3i64..=3, n).prop_map(move |coeffs| {
        let mut form = Form::zero(degree);
        for (idx, c) in MultiIndex::all_of_degree(degree).into_iter().zip(coeffs) {
            form.add_term(idx, int(c));
        }
        form
    })
}

fn arb_vector() -> impl Strategy<Value = Vector7<Q>> {
    proptest::array::uniform7(-3i64..=3).prop_map(|c| Vector7::from_fn(|i| int(c[i])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_star_is_identity(a in (0usize..=7).prop_flat_map(arb_form)) {
        prop_assert_eq!(a.hodge7().hodge7(), a);
    }

    #[test]
    fn star_pairing_is_inner_product(
        (a, b) in (0usize..=7).prop_flat_map(|k| (arb_form(k), arb_form(k)))
    ) {
        let lhs = a.wedge(&b.hodge7());
        prop_assert_eq!(lhs, Form::volume() * a.inner(&b));
    }

    #[test]
    fn interior_is_adjoint_of_wedge(
        (a, b) in (0usize..=6).prop_flat_map(|k| (arb_form(k), arb_form(k + 1))),
        v in arb_vector(),
    ) {
        prop_assert_eq!(v.flat().wedge(&a).inner(&b), a.inner(&b.interior(&v)));
    }

    #[test]
    fn interior_is_antiderivation(
        a in (1usize..=5).prop_flat_map(arb_form),
        x in arb_vector(),
        v in arb_vector(),
    ) {
        let lhs = x.flat().wedge(&a).interior(&v);
        let rhs = &a.scale(&v.dot(&x)) - &x.flat().wedge(&a.interior(&v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_graded_commutative_and_associative(
        a in (0usize..=3).prop_flat_map(arb_form),
        b in (0usize..=2).prop_flat_map(arb_form),
        c in (0usize..=2).prop_flat_map(arb_form),
    ) {
        let sign = if a.degree() * b.degree() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(a.wedge(&b), b.wedge(&a) * int(sign));
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn odd_forms_square_to_zero(a in prop_oneof![arb_form(1), arb_form(3), arb_form(5)]) {
        prop_assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn identity_contraction_is_factorial(a in (1usize..=3).prop_flat_map(arb_form)) {
        let p = a.degree();
        let ids = vec![Endo7::<Q>::identity(); p];
        let factorial: i64 = (1..=p as i64).product();
        prop_assert_eq!(a.contract(&ids).unwrap(), a.scale(&int(factorial)));
    }

    #[test]
    fn norm_is_sum_of_squares(a in (0usize..=7).prop_flat_map(arb_form)) {
        let sum = a.terms().fold(Q::zero(), |acc, (_, c)| acc + c.clone() * c.clone());
        prop_assert_eq!(a.norm_sq(), sum);
    }
}
