use kwflow::arith::{bernoulli, factorial, int, Rational};
use kwflow::series::{Direction, GradedSeries, Hyperbolic};
use num_bigint::BigInt;
use proptest::prelude::*;

use Direction::Ascending;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// `c_1 z + c_2 z^2 + ...` with `c_1 != 0`.
fn tangent_series() -> impl Strategy<Value = GradedSeries> {
    (small_rational().prop_filter("invertible", |c| *c != int(0)), prop::collection::vec(small_rational(), 1..10))
        .prop_map(|(lead, rest)| {
            let mut coeffs = vec![lead];
            coeffs.extend(rest);
            GradedSeries::new(Ascending, 1, coeffs)
        })
}

/// `1 + c_1 z + c_2 z^2 + ...`.
fn unit_series() -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(small_rational(), 1..10).prop_map(|rest| {
        let mut coeffs = vec![int(1)];
        coeffs.extend(rest);
        GradedSeries::new(Ascending, 0, coeffs)
    })
}

fn assert_agree(a: &GradedSeries, b: &GradedSeries) {
    let horizon = a.horizon().min(b.horizon());
    assert!(horizon > 0);
    for e in 0..horizon {
        assert_eq!(a.coeff(e), b.coeff(e), "z^{e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversion_is_an_involution(g in tangent_series()) {
        let r = g.revert().unwrap();
        assert_agree(&r.revert().unwrap(), &g);
    }

    #[test]
    fn composing_with_the_reversion_gives_z(g in tangent_series()) {
        let z = GradedSeries::var(Ascending, g.horizon());
        assert_agree(&g.compose(&g.revert().unwrap()).unwrap(), &z);
        assert_agree(&g.revert().unwrap().compose(&g).unwrap(), &z);
    }

    #[test]
    fn derivative_undoes_antiderivative(g in unit_series()) {
        assert_agree(&g.antiderivative().unwrap().derivative(), &g);
    }

    #[test]
    fn opposite_powers_multiply_to_one(g in unit_series(), n in -7i64..=7, d in 1i64..=5) {
        let r = Rational::new(n.into(), d.into());
        let product = &g.pow(&r).unwrap() * &g.pow(&-r.clone()).unwrap();
        assert_agree(&product, &GradedSeries::one(Ascending, g.horizon()));
    }

    #[test]
    fn exp_inverts_log(g in unit_series()) {
        assert_agree(&g.log().unwrap().exp().unwrap(), &g);
    }
}

#[test]
fn coth_matches_bernoulli_numbers() {
    let coth = GradedSeries::var(Ascending, 42).hyperbolic(Hyperbolic::Coth).unwrap();
    for n in 0..=20usize {
        let expected = Rational::from_integer(BigInt::from(4).pow(n as u32)) * bernoulli(2 * n)
            / Rational::from_integer(factorial(2 * n as u64));
        assert_eq!(coth.coeff(2 * n as i64 - 1), Some(expected), "z^{}", 2 * n as i64 - 1);
        if coth.knows(2 * n as i64) {
            assert_eq!(coth.coeff(2 * n as i64), Some(int(0)));
        }
    }
}
