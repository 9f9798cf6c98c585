//! Randomized checks of the Hopf structure of U(g) and of the γ^M calculus.

use premon_core::algebra::{sl2_module, NCPolynomial, Word};
use premon_core::linalg::field::int;
use premon_core::linalg::{gamma_power_in, Rational, RationalMatrix};
use proptest::prelude::*;

fn word(max_gen: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..max_gen, 0..4)
}

fn poly(max_gen: usize) -> impl Strategy<Value = NCPolynomial> {
    prop::collection::vec((word(max_gen), -5i64..=5, 1i64..=3), 0..4).prop_map(|terms| {
        NCPolynomial::from_terms(terms.into_iter().map(|(w, n, d)| (w, Rational::new(n.into(), d.into()))))
    })
}

/// `P D P⁻¹` with `P` unit upper triangular, so the spectrum is exactly `diag`.
fn similar_to_diagonal(diag: &[i64], upper: &[i64]) -> RationalMatrix {
    let n = diag.len();
    let mut p = RationalMatrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            p.set(i, j, int(upper[k % upper.len()]));
            k += 1;
        }
    }
    let d = RationalMatrix::diagonal(&diag.iter().map(|&x| int(x)).collect::<Vec<_>>());
    RationalMatrix::product([&p, &d, &p.inverse().unwrap()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coproduct_is_coassociative(x in poly(3)) {
        let d = x.coproduct();
        prop_assert_eq!(d.coproduct_leg(0), d.coproduct_leg(1));
    }

    #[test]
    fn coproduct_is_cocommutative(x in poly(3)) {
        let d = x.coproduct();
        prop_assert_eq!(d.flip(), d);
    }

    #[test]
    fn antipode_squares_to_identity(x in poly(3)) {
        prop_assert_eq!(x.antipode().antipode(), x.clone());
        prop_assert_eq!(x.antipode_inverse().antipode(), x);
    }

    #[test]
    fn coproduct_is_multiplicative(x in poly(3), y in poly(3)) {
        prop_assert_eq!(x.mul(&y).coproduct(), x.coproduct().mul(&y.coproduct()));
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in poly(3), y in poly(3)) {
        let v = sl2_module(2).unwrap();
        let lhs = x.mul(&y).evaluate(&v).unwrap();
        let rhs = x.evaluate(&v).unwrap().matmul(&y.evaluate(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_power_inverse(
        diag in prop::collection::vec(-4i64..=4, 1..5),
        upper in prop::collection::vec(-2i64..=2, 1..6),
        g in prop::sample::select(vec![-1i64, 2, -3]),
    ) {
        let m = similar_to_diagonal(&diag, &upper);
        let gamma = int(g);
        let plus = gamma_power_in(&m, &gamma).unwrap();
        let minus = gamma_power_in(&m.neg(), &gamma).unwrap();
        prop_assert!(plus.matmul(&minus).unwrap().is_identity());
    }

    #[test]
    fn gamma_power_of_commuting_sum(
        diag in prop::collection::vec(-3i64..=3, 1..5),
        upper in prop::collection::vec(-2i64..=2, 1..6),
        a in -2i64..=2,
        b in -2i64..=2,
    ) {
        // A = aM and B = bM² + M commute
        let m = similar_to_diagonal(&diag, &upper);
        let m2 = m.matmul(&m).unwrap();
        let am = m.scale(&int(a));
        let bm = m2.scale(&int(b)).add(&m).unwrap();
        let gamma = int(2);
        let lhs = gamma_power_in(&am.add(&bm).unwrap(), &gamma).unwrap();
        let rhs = gamma_power_in(&am, &gamma).unwrap().matmul(&gamma_power_in(&bm, &gamma).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
