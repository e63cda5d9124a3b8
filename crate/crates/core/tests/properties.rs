use nahyp::plane::{
    intersection_multiplicity, line_intersection_points, restrict_to_line, LineForm,
};
use nahyp::poly::{compose_with_map, Monomial, MultiPoly, PolynomialMap, Scalar, UniPoly};
use nahyp::series::{count_zeros, newton_polygon, slope_multiset, TruncatedSeries, ValuedScalar};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -5i64..=5), 0..6).prop_map(|terms| {
        MultiPoly::from_terms(
            3,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), Scalar::from_int(k))),
        )
    })
}

fn uni() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| UniPoly::from_ints(&c))
}

/// Homogeneous form of degree `d` in three variables with sparse small coefficients.
fn form(d: u32) -> impl Strategy<Value = MultiPoly> {
    let monos: Vec<Monomial> = (0..=d)
        .flat_map(|a| (0..=d - a).map(move |b| Monomial::new(vec![a, b, d - a - b])))
        .collect();
    let len = monos.len();
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], len).prop_map(move |cs| {
        MultiPoly::from_terms(
            3,
            monos
                .iter()
                .cloned()
                .zip(cs.into_iter().map(Scalar::from_int)),
        )
    })
}

fn line_and_curve() -> impl Strategy<Value = (Vec<i64>, MultiPoly)> {
    let line = prop::collection::vec(-3i64..=3, 3)
        .prop_filter("nonzero line", |v| v.iter().any(|&x| x != 0));
    (line, (1u32..=4).prop_flat_map(form))
}

proptest! {
    #![proptest_config(config(1000, 11))]

    #[test]
    fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(3), a.clone());
    }

    #[test]
    fn composition_is_a_ring_map(a in poly3(), b in poly3(), f0 in uni(), f1 in uni(), f2 in uni()) {
        prop_assume!(!(f0.is_zero() && f1.is_zero() && f2.is_zero()));
        let f = PolynomialMap::new(vec![f0, f1, f2]).unwrap();
        let ca = compose_with_map(&a, &f).unwrap();
        let cb = compose_with_map(&b, &f).unwrap();
        prop_assert_eq!(compose_with_map(&(&a * &b), &f).unwrap(), &ca * &cb);
        prop_assert_eq!(compose_with_map(&(&a + &b), &f).unwrap(), &ca + &cb);
        // evaluation at an integer agrees with evaluating the components
        let z = Scalar::from_int(2);
        prop_assert_eq!(ca.eval(&z), a.evaluate(&f.eval(&z)).unwrap());
    }
}

fn root_product(roots: &[(i64, i64)]) -> TruncatedSeries {
    let mut acc = TruncatedSeries::polynomial(vec![ValuedScalar::from_rational(
        BigRational::from_integer(1.into()),
    )]);
    for &(c, v) in roots {
        let factor = TruncatedSeries::polynomial(vec![
            ValuedScalar::monomial(BigRational::from_integer((-c).into()), v),
            ValuedScalar::from_rational(BigRational::from_integer(1.into())),
        ]);
        acc = acc.mul_polynomial(&factor).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(config(1000, 12))]

    /// Zeros `c t^v` of a product of linear factors appear as slopes `-v`.
    #[test]
    fn newton_slopes_match_root_valuations(
        roots in prop::collection::vec((prop_oneof![-3i64..=-1, 1i64..=3], 0i64..=4), 1..=6),
        threshold in 0i64..=5,
    ) {
        let f = root_product(&roots);
        let poly = newton_polygon(&f).unwrap();
        prop_assert!(poly.certified);
        let mut want: Vec<BigRational> = roots.iter().map(|&(_, v)| BigRational::from_integer((-v).into())).collect();
        want.sort();
        prop_assert_eq!(slope_multiset(&poly), want);
        let expected = roots.iter().filter(|&&(_, v)| v >= threshold).count();
        prop_assert_eq!(count_zeros(&f, &BigRational::from_integer(threshold.into())).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(config(1000, 13))]

    /// Multiplicities of the points on a line add up to the degree of the curve.
    #[test]
    fn bezout_line_sum((l, d) in line_and_curve()) {
        let deg = d.total_degree();
        prop_assume!(deg.is_some());
        let line = LineForm::new(l.iter().map(|&x| Scalar::from_int(x)).collect()).unwrap();
        prop_assume!(!restrict_to_line(&d, &line).unwrap().is_zero());
        let pts = line_intersection_points(&line, &d).unwrap();
        let total: usize = pts.iter().map(|p| p.multiplicity * p.class_size).sum();
        prop_assert_eq!(total as u32, deg.unwrap());
    }
}

proptest! {
    #![proptest_config(config(1000, 14))]

    /// The local intersection number with a line equals the root multiplicity
    /// of the restriction.
    #[test]
    fn local_multiplicity_matches_restriction((l, d) in line_and_curve()) {
        prop_assume!(d.total_degree().is_some());
        let line = LineForm::new(l.iter().map(|&x| Scalar::from_int(x)).collect()).unwrap();
        prop_assume!(!restrict_to_line(&d, &line).unwrap().is_zero());
        for p in line_intersection_points(&line, &d).unwrap() {
            prop_assert_eq!(intersection_multiplicity(&line.to_poly(), &d, &p.point).unwrap(), p.multiplicity);
        }
    }
}
