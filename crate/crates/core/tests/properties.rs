//! Randomized invariants of the core crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use permlab_core::approximants::{h1, h2, h_ell};
use permlab_core::bounds::{alpha_beta_exact, f_first, f_first_closed, stats};
use permlab_core::combinatorics::{for_each_injection, ColSet};
use permlab_core::identities::{check_first_order, check_second_order, FirstOrderVariant};
use permlab_core::permanent::{normalized_permanent, permanent_naive, permanent_ryser, DEFAULT_BUDGET};
use permlab_core::products::pbar;
use permlab_core::{Complex64, Rational, RectMatrix};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

/// `N x n` rational matrices with `1 <= n <= N <= max_rows`.
fn rational_matrix(max_rows: usize) -> impl Strategy<Value = RectMatrix<Rational>> {
    (1..=max_rows).prop_flat_map(|rows| (Just(rows), 1..=rows)).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(rational(), rows * cols)
            .prop_map(move |entries| RectMatrix::new(rows, cols, entries).unwrap())
    })
}

fn disc_matrix(max_rows: usize) -> impl Strategy<Value = RectMatrix<Complex64>> {
    (2..=max_rows).prop_flat_map(|rows| (Just(rows), 2..=rows)).prop_flat_map(|(rows, cols)| {
        prop::collection::vec((0.0f64..1.0, 0.0f64..std::f64::consts::TAU), rows * cols).prop_map(move |polar| {
            let entries = polar.into_iter().map(|(r, phi)| Complex64::from_polar(r.sqrt(), phi)).collect();
            RectMatrix::new(rows, cols, entries).unwrap()
        })
    })
}

fn big(x: &Rational) -> BigRational {
    x.to_big()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if let Some(inv) = b.checked_recip() {
            prop_assert_eq!(&b * &inv, Rational::from_integer(1));
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rational_overflow_promotes(p in i64::MAX / 4..i64::MAX, q in 2i64..1000) {
        let x = Rational::new(p, q);
        let y = &x * &x;
        prop_assert_eq!(big(&y), big(&x) * big(&x));
        prop_assert_eq!(y.clone() - &y, Rational::from_integer(0));
    }

    #[test]
    fn ryser_matches_naive(z in rational_matrix(6)) {
        prop_assert_eq!(permanent_ryser(&z), permanent_naive(&z, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn permanent_invariant_under_row_swap(z in rational_matrix(5), a in 0usize..5, b in 0usize..5) {
        let (a, b) = (a % z.rows(), b % z.rows());
        let swapped = RectMatrix::from_fn(z.rows(), z.cols(), |j, r| {
            let src = if j == a { b } else if j == b { a } else { j };
            z.get(src, r).clone()
        }).unwrap();
        prop_assert_eq!(permanent_ryser(&swapped), permanent_ryser(&z));
    }

    #[test]
    fn top_approximant_is_exact(z in rational_matrix(5)) {
        let n = z.cols();
        prop_assert_eq!(h_ell(&z, n).unwrap(), normalized_permanent(&z, DEFAULT_BUDGET).unwrap());
        prop_assert_eq!(h_ell(&z, 1).unwrap(), h1(&z));
        if n >= 2 {
            prop_assert_eq!(h_ell(&z, 2).unwrap(), h2(&z).unwrap());
        }
    }

    #[test]
    fn pbar_is_injection_sum(z in rational_matrix(5), mask in 0u64..32) {
        let set = ColSet(mask & ColSet::full(z.cols()).0);
        let mut direct = Rational::from_integer(0);
        for_each_injection(z.rows(), z.cols(), &[], |j| {
            direct += set.iter().map(|r| z.get(j[r], r).clone()).product::<Rational>();
        });
        prop_assert_eq!(pbar(&z, set).unwrap(), direct);
    }

    #[test]
    fn first_and_second_order_exact(z in rational_matrix(5)) {
        prop_assert!(check_first_order(&z, &FirstOrderVariant::Symmetric).unwrap().holds);
        prop_assert!(check_first_order(&z, &FirstOrderVariant::Grouped).unwrap().holds);
        if z.cols() >= 2 {
            prop_assert!(check_second_order(&z).unwrap().holds);
        }
    }

    #[test]
    fn two_column_second_order_vanishes(z in rational_matrix(6).prop_filter("n >= 2", |z| z.cols() >= 2)) {
        let two = z.leading_columns(2).unwrap();
        prop_assert_eq!(normalized_permanent(&two, DEFAULT_BUDGET).unwrap(), h2(&two).unwrap());
    }

    #[test]
    fn alpha_identity_exact(z in rational_matrix(6)) {
        let (alpha, beta, square) = alpha_beta_exact(&z);
        prop_assert_eq!(alpha, square - beta);
    }

    #[test]
    fn disc_statistics_in_range(z in disc_matrix(6)) {
        let st = stats(&z).unwrap();
        prop_assert!(st.beta.value() <= 1.0 + 1e-12);
        for nu in 2..=4 {
            prop_assert!(st.kappa(nu).value() <= 1.0 + 1e-12);
        }
        prop_assert!(st.unit_disc);
    }

    #[test]
    fn f_first_closed_form(n in 2usize..20, x1 in 0.0f64..2.0, gap in 1e-3f64..1.0) {
        let x2 = x1 + gap;
        let sum = f_first(n, x1, x2).unwrap().value();
        let closed = f_first_closed(n, x1, x2).unwrap();
        prop_assert!((sum - closed).abs() <= 1e-8 * sum.max(1.0), "{} vs {}", sum, closed);
    }
}

#[test]
fn overflowing_permanent_stays_exact() {
    let big_entry = Rational::new(i64::MAX / 3, 7);
    let z = RectMatrix::from_fn(4, 4, |j, r| if j == r { big_entry.clone() } else { Rational::new(1, 3) }).unwrap();
    let p = permanent_ryser(&z);
    assert_eq!(p, permanent_naive(&z, DEFAULT_BUDGET).unwrap());
    assert!(p.numer() > BigInt::from(i64::MAX));
}
