use nahyp::poly::{parse_poly_default, MultiPoly, PolynomialMap, Scalar, UniPoly};
use nahyp::position::DivisorSystem;
use nahyp::witness::{synthesize, verify_witness, witness_remark_quadrics, Witness, WitnessCase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> MultiPoly {
    parse_poly_default(s, 3).unwrap()
}

fn fixtures() -> Vec<(DivisorSystem, Witness)> {
    let plane = [
        ("X0", "X1", WitnessCase::TwoLines),
        ("X0", "X0*X2 - X1^2", WitnessCase::LineTangentToConic),
        (
            "X0",
            "X0^2 + X1^2 - X2^2",
            WitnessCase::LineMeetingConicTwice,
        ),
        (
            "X0*X2 - X1^2",
            "X0*X2 - X1^2 + X0^2",
            WitnessCase::TangentialConics,
        ),
        (
            "X0 + X1 + X2",
            "X0^3 + X1^3 + X2^3",
            WitnessCase::LineThroughMaximalInflexion,
        ),
        (
            "X0",
            "X0^4 - X1*X2^3",
            WitnessCase::LineThroughMaximalInflexion,
        ),
    ];
    let mut out: Vec<(DivisorSystem, Witness)> = plane
        .iter()
        .map(|&(a, b, case)| {
            let s = DivisorSystem::from_polys(2, vec![p(a), p(b)]).unwrap();
            (s, synthesize(&p(a), &p(b), case).unwrap())
        })
        .collect();
    out.extend((2..=5).map(|n| witness_remark_quadrics(n).unwrap()));
    out
}

/// Exponents `X_i^d` occurring as a pure power in some divisor of degree `d`.
fn pure_power_coordinates(s: &DivisorSystem) -> Vec<usize> {
    let nv = s.dim() + 1;
    (0..nv)
        .filter(|&i| {
            s.divisors().iter().any(|d| {
                let deg = d.poly.total_degree().unwrap();
                let mut e = vec![0; nv];
                e[i] = deg;
                !d.poly.coeff(&nahyp::poly::Monomial::new(e)).is_zero()
            })
        })
        .collect()
}

/// Adding `c z^K` with `K` above every component degree to a coordinate that
/// appears as a pure power `X_i^d` makes that composition have degree `dK`;
/// multiplying every component by `z - a` breaks reducedness.
fn mutate(f: &PolynomialMap, eligible: &[usize], rng: &mut ChaCha8Rng, k: usize) -> PolynomialMap {
    let mut comps = f.components().to_vec();
    if k % 3 == 2 {
        let a = Scalar::from_int(rng.gen_range(-3..=3));
        let factor = UniPoly::new(vec![-a, Scalar::one()]);
        return PolynomialMap::new(comps.iter().map(|c| c * &factor).collect()).unwrap();
    }
    let top = comps.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
    let big = top + rng.gen_range(1..=3);
    let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let i = eligible[rng.gen_range(0..eligible.len())];
    comps[i] = &comps[i] + &UniPoly::monomial(Scalar::from_int(c), big);
    PolynomialMap::new(comps).unwrap()
}

#[test]
fn synthesized_witnesses_verify() {
    for (s, w) in fixtures() {
        let report = verify_witness(&s, &w.map).unwrap();
        assert!(report.passed(), "{:?}: {:?}", w.case, report.failure());
        assert_eq!(report.constants().unwrap(), w.constants);
        assert!(w.constants.iter().all(|c| !c.is_zero()));
    }
}

#[test]
fn mutated_witnesses_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for (s, w) in fixtures() {
        let eligible = pure_power_coordinates(&s);
        assert!(!eligible.is_empty());
        for k in 0..10 {
            let m = mutate(&w.map, &eligible, &mut rng, k);
            assert_ne!(m, w.map);
            let report = verify_witness(&s, &m).unwrap();
            assert!(
                !report.passed(),
                "{:?} mutation {k} still verifies: {:?}",
                w.case,
                m.to_strings()
            );
        }
    }
}

#[test]
fn known_witness_shapes() {
    let strings: Vec<Vec<String>> = fixtures().iter().map(|(_, w)| w.map.to_strings()).collect();
    assert_eq!(strings[0], ["1", "1", "z"]);
    assert_eq!(strings[2], ["1", "z", "z"]);
    assert_eq!(strings[4], ["z", "-z", "1"]);
    assert_eq!(strings[7], ["1", "z", "z", "z"]);
}
