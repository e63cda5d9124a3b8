use nahyp::decision::{decide, Status};
use nahyp::plane::{is_maximal_inflexion, ProjectivePoint};
use nahyp::poly::{parse_poly_default, LinearChange};
use nahyp::position::{check_general_position, check_smooth, check_transversal, DivisorSystem};
use nahyp::witness::witness_remark_quadrics;
use nahyp::Settings;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn system(n: usize, polys: &[&str]) -> DivisorSystem {
    DivisorSystem::from_polys(
        n,
        polys
            .iter()
            .map(|s| parse_poly_default(s, n + 1).unwrap())
            .collect(),
    )
    .unwrap()
}

fn corpus() -> Vec<DivisorSystem> {
    vec![
        system(2, &["X0", "X1"]),
        system(2, &["X0", "X0^2 + X1^2 - X2^2"]),
        system(2, &["X0", "X0*X2 - X1^2"]),
        system(2, &["X0^2 + X1^2 - X2^2", "X0*X1 - X2^2"]),
        system(2, &["X0*X2 - X1^2", "X0*X2 - X1^2 + X0^2"]),
        system(2, &["X0 + X1 + X2", "X0^3 + X1^3 + X2^3"]),
        system(2, &["X0 - 3*X2", "X0^4 + X1^4 + X2^4"]),
        system(2, &["X0*X2 - X1^2", "X0*X2^2 - X1^3 + X0^3"]),
        system(2, &["X0", "X1", "X2"]),
        system(2, &["X1", "X2"]),
        system(2, &["X0", "X0 + X1", "X1", "X0 - X1"]),
        witness_remark_quadrics(3).unwrap().0,
    ]
}

fn random_change(rng: &mut ChaCha8Rng, n: usize) -> LinearChange {
    loop {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if let Ok(c) = LinearChange::from_ints(&m) {
            return c;
        }
    }
}

#[derive(Debug, PartialEq)]
struct Profile {
    smooth: Vec<bool>,
    general_position: bool,
    transversal: Option<bool>,
    status: Status,
    basis: &'static str,
}

fn profile(s: &DivisorSystem) -> Profile {
    let settings = Settings::default();
    let smooth: Vec<bool> = s
        .divisors()
        .iter()
        .map(|d| check_smooth(&d.poly, &settings).unwrap())
        .collect();
    let transversal = (s.len() == s.dim() && smooth.iter().all(|&b| b))
        .then(|| check_transversal(s, &settings).unwrap());
    let v = decide(s, &settings).unwrap();
    if v.status == Status::NotHyperbolic {
        let w = v.witness.as_ref().unwrap();
        assert!(nahyp::witness::verify_witness(s, &w.map).unwrap().passed());
    }
    Profile {
        smooth,
        general_position: check_general_position(s, &settings).unwrap(),
        transversal,
        status: v.status,
        basis: v.basis.tag(),
    }
}

/// 120 random coordinate changes spread over the corpus leave every predicate
/// and every verdict unchanged.
#[test]
fn predicates_and_verdicts_are_coordinate_free() {
    let corpus = corpus();
    let base: Vec<Profile> = corpus.iter().map(profile).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..120 {
        let i = round % corpus.len();
        let s = &corpus[i];
        let change = random_change(&mut rng, s.dim() + 1);
        let moved = s.transformed(&change).unwrap();
        assert_eq!(
            profile(&moved),
            base[i],
            "fixture {i}, change {:?}",
            change.matrix()
        );
    }
}

#[test]
fn inflexion_test_follows_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in 3..=5 {
        let curve = parse_poly_default(&format!("X0^{d} - X1*X2^{}", d - 1), 3).unwrap();
        let p = ProjectivePoint::from_ints(&[0, 0, 1]).unwrap();
        let q = ProjectivePoint::from_ints(&[1, 1, 1]).unwrap();
        for _ in 0..10 {
            let change = random_change(&mut rng, 3);
            let moved = change.apply(&curve).unwrap();
            assert!(is_maximal_inflexion(&moved, &p.transformed(&change)).unwrap());
            assert!(!is_maximal_inflexion(&moved, &q.transformed(&change)).unwrap());
        }
    }
}

#[test]
fn scaling_divisors_keeps_verdicts() {
    let settings = Settings::default();
    for s in corpus() {
        let scaled = DivisorSystem::from_polys(
            s.dim(),
            s.polys()
                .iter()
                .enumerate()
                .map(|(i, p)| p.scale(&nahyp::poly::Scalar::from_int(-(i as i64) - 2)))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            decide(&s, &settings).unwrap().status,
            decide(&scaled, &settings).unwrap().status
        );
    }
}
