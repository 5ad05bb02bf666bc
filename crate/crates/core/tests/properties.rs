use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;

use sp4_monodromy::basis::{build_basis, to_basis_coords, verify_basis};
use sp4_monodromy::cyclotomic::{negate_variable, IntPolynomial};
use sp4_monodromy::exact::{MatrixQ, Rational, VectorQ};
use sp4_monodromy::expr::Expr;
use sp4_monodromy::form::{check_symplectic, invariant_form};
use sp4_monodromy::monodromy::{evaluate_word, levelt_triple, Generator, GroupWord, Letter, MonodromyTriple};
use sp4_monodromy::roots::{classify_unipotent, is_in_u, RootLabel};
use sp4_monodromy::search::find_gamma;
use sp4_monodromy::tables::dataset;
use sp4_monodromy::AntiDiagonalGram;

fn small_matrix(n: usize) -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
        MatrixQ::from_i64(&rows).unwrap()
    })
}

fn letter() -> impl Strategy<Value = Letter> {
    (prop::bool::ANY, -4i64..=4).prop_map(|(a, e)| Letter::new(if a { Generator::A } else { Generator::B }, e))
}

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(letter(), 0..8).prop_map(|ls| GroupWord::from_letters(ls).unwrap())
}

fn row_index() -> impl Strategy<Value = usize> {
    0..dataset().len()
}

fn triple(i: usize) -> MonodromyTriple {
    let r = &dataset()[i];
    levelt_triple(&r.f, &r.g).unwrap()
}

fn name() -> impl Strategy<Value = Expr> {
    prop::sample::select(vec!["A", "B", "C", "P", "x", "y2"]).prop_map(Expr::name)
}

/// Expressions in parser normal form.
fn expr() -> impl Strategy<Value = Expr> {
    name().prop_recursive(4, 24, 4, |inner| {
        let atom = prop_oneof![
            inner.clone().prop_map(|e| Expr::Group(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Commutator(Box::new(a), Box::new(b))),
        ];
        let factor = prop_oneof![
            name(),
            atom.clone(),
            (prop_oneof![name(), atom], -20i64..=20).prop_map(|(b, k)| Expr::Power(Box::new(b), k)),
        ];
        prop_oneof![
            factor.clone(),
            prop::collection::vec(factor, 2..4).prop_map(Expr::Product),
        ]
    })
}

fn first_gram() -> AntiDiagonalGram {
    AntiDiagonalGram::new(Rational::new(2.into(), 3.into()), Rational::new((-8).into(), 3.into()))
}

/// Element of the root group `label` with parameter `t`, for the Gram
/// constants `(2/3, -8/3)`.
fn root_element(label: RootLabel, t: i64) -> MatrixQ {
    let q = |n: i64| Rational::from_integer(n.into());
    let i = MatrixQ::identity(4);
    match label {
        RootLabel::ShortSimple => i.with_entry(0, 1, q(4 * t)).with_entry(2, 3, q(t)),
        RootLabel::LongSimple => i.with_entry(1, 2, q(t)),
        RootLabel::SecondHighest => i.with_entry(0, 2, q(-4 * t)).with_entry(1, 3, q(t)),
        RootLabel::Highest => i.with_entry(0, 3, q(t)),
        _ => i,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in small_matrix(4), b in small_matrix(4), c in small_matrix(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_is_two_sided(a in small_matrix(4)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_identity());
        prop_assert!((&inv * &a).is_identity());
    }

    #[test]
    fn powers_add(a in small_matrix(3), j in -3i64..=3, k in -3i64..=3) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        prop_assert_eq!(a.pow(j + k).unwrap(), &a.pow(j).unwrap() * &a.pow(k).unwrap());
    }

    #[test]
    fn nullspace_is_kernel(m in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            MatrixQ::from_i64(&rows).unwrap()
        })
    })) {
        let kernel = m.nullspace();
        prop_assert_eq!(kernel.len() + m.rank(), m.cols());
        for x in &kernel {
            prop_assert!(m.mul_vec(x).unwrap().is_zero());
        }
    }

    #[test]
    fn negation_is_an_involution(c in prop::collection::vec(-9i64..=9, 4)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = IntPolynomial::from_i64(&coeffs);
        prop_assert_eq!(negate_variable(&negate_variable(&f)), f.clone());
        prop_assert!(negate_variable(&f).is_monic());
    }

    #[test]
    fn words_evaluate_homomorphically(i in row_index(), u in word(), w in word()) {
        let t = triple(i);
        let uw = u.concat(&w).unwrap();
        prop_assert_eq!(evaluate_word(&t, &uw), &evaluate_word(&t, &u) * &evaluate_word(&t, &w));
        prop_assert!((&evaluate_word(&t, &u) * &evaluate_word(&t, &u.inverse())).is_identity());
        prop_assert!(u.concat(&u.inverse()).unwrap().is_empty());
    }

    #[test]
    fn word_display_round_trips(w in word()) {
        let parsed: GroupWord = w.to_string().parse().unwrap();
        prop_assert_eq!(parsed, w);
    }

    #[test]
    fn word_powers(i in row_index(), w in word(), k in -3i64..=3) {
        let t = triple(i);
        let wk = w.pow(k).unwrap();
        prop_assert_eq!(evaluate_word(&t, &wk), evaluate_word(&t, &w).pow(k).unwrap());
    }

    #[test]
    fn expr_display_round_trips(e in expr()) {
        let text = e.to_string();
        let parsed: Expr = text.parse().unwrap();
        prop_assert_eq!(&parsed, &e, "{}", text);
    }

    #[test]
    fn expr_evaluation_matches_word(i in row_index(), e in expr()) {
        let t = triple(i);
        let env: BTreeMap<String, MatrixQ> = [
            ("A", t.a.clone()), ("B", t.b.clone()), ("C", t.c.clone()),
            ("P", t.c.clone()), ("x", t.a.clone()), ("y2", t.b.clone()),
        ].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let resolve = |n: &str| -> Option<GroupWord> {
            match n {
                "A" | "x" => Some(GroupWord::letter(Generator::A, 1)),
                "B" | "y2" => Some(GroupWord::letter(Generator::B, 1)),
                "C" | "P" => Some(GroupWord::c_macro()),
                _ => None,
            }
        };
        let value = e.evaluate(&env);
        prop_assume!(!matches!(value, Err(sp4_monodromy::Error::EntryTooLarge(_))));
        if let Ok(w) = e.expand(&resolve, 4096) {
            prop_assert_eq!(value.unwrap(), evaluate_word(&t, &w));
        }
    }

    #[test]
    fn root_groups_are_one_parameter(label in prop::sample::select(RootLabel::POSITIVE.to_vec()), s in -50i64..=50, t in -50i64..=50) {
        prop_assume!(s != 0 && t != 0 && s + t != 0);
        let g = first_gram();
        let (a, b) = (root_element(label, s), root_element(label, t));
        prop_assert_eq!(classify_unipotent(&a, &g), Ok(label));
        prop_assert_eq!(&a * &b, root_element(label, s + t));
        prop_assert_eq!(classify_unipotent(&a.pow(3).unwrap(), &g), Ok(label));
        prop_assert_eq!(classify_unipotent(&a.inverse().unwrap(), &g), Ok(label));
    }

    #[test]
    fn unipotent_radical_is_closed(ls in prop::collection::vec((prop::sample::select(RootLabel::POSITIVE.to_vec()), -9i64..=9), 1..6)) {
        let g = first_gram();
        let m = ls.iter().fold(MatrixQ::identity(4), |acc, &(l, t)| &acc * &root_element(l, t));
        prop_assert!(is_in_u(&m, &g));
        prop_assert!(classify_unipotent(&m, &g).is_ok());
    }

    #[test]
    fn built_bases_verify(i in row_index(), seed in prop::collection::vec(-9i64..=9, 4)) {
        let seed = VectorQ::from_i64(&seed);
        prop_assume!(!seed.is_zero());
        let t = triple(i);
        let form = invariant_form(&t).unwrap();
        let basis = build_basis(&form, &seed).unwrap();
        prop_assert_eq!(basis.eps2.clone(), seed);
        let gram = verify_basis(&form, &basis).unwrap();
        let gm = gram.matrix();
        for m in [&t.a, &t.b, &t.c] {
            prop_assert!(check_symplectic(m, &form));
            let in_basis = to_basis_coords(m, &basis).unwrap();
            prop_assert_eq!(in_basis.congruence(&gm).unwrap(), gm.clone());
        }
    }

    #[test]
    fn random_words_preserve_the_form(i in row_index(), w in word()) {
        let t = triple(i);
        let form = invariant_form(&t).unwrap();
        prop_assert!(check_symplectic(&evaluate_word(&t, &w), &form));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn found_gamma_meets_its_condition(i in row_index()) {
        let t = triple(i);
        let res = find_gamma(&t, 2, 4);
        prop_assert_eq!(&res, &find_gamma(&t, 2, 4));
        if let (Some(g), Some(c)) = (&res.gamma, &res.e4_coeff) {
            let w = evaluate_word(&t, g).mul_vec(&t.v).unwrap();
            prop_assert_eq!(w[3].clone(), Rational::from_integer(c.clone()));
            let abs = if c.sign() == num_bigint::Sign::Minus { -c.clone() } else { c.clone() };
            prop_assert!(abs >= 1.into() && abs <= 2.into());
        }
        if let Some(g) = &res.obstruction_gcd {
            prop_assert!(*g >= 3.into());
        }
    }
}
