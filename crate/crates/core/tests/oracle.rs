mod common;

use std::f64::consts::TAU;

use homotopy_dubins::homotopy::has_embedded_class;
use homotopy_dubins::oracle::{check_loop_bound, loop_length, oracle_min_in_class, OracleBudget};
use homotopy_dubins::{class_of, minimise_in_class, Error, Pose, ProblemInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quick(seed: u64) -> OracleBudget {
    OracleBudget {
        max_pieces: 5,
        restarts: 16,
        endpoint_tol: 1e-6,
        seed,
    }
}

#[test]
fn witnesses_meet_the_class_and_endpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..6 {
        let inst = common::random_instance(&mut rng, 3.0);
        for n in [-1, 0, 1] {
            let o = oracle_min_in_class(&inst, n, &quick(i)).unwrap();
            let path = o.witness.to_cs_path();
            assert_eq!(class_of(&path).unwrap(), n);
            let end = path.end_pose().unwrap();
            assert!(end.position().dist(inst.working_poses().1.position()) <= 1e-6);
            // the oracle is an upper bound on the class minimum
            assert!(minimise_in_class(&inst, n).length <= o.length + 1e-3);
        }
    }
}

#[test]
fn witness_loops_are_at_least_two_pi() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut loops = 0;
    for i in 0..8 {
        let inst = common::random_instance(&mut rng, 2.0);
        for n in [-2, 2] {
            let o = oracle_min_in_class(&inst, n, &quick(100 + i)).unwrap();
            match check_loop_bound(&o.witness.to_cs_path()) {
                Ok(ok) => {
                    loops += 1;
                    assert!(ok, "loop of length {}", loop_length(&o.witness.to_cs_path()).unwrap());
                }
                Err(e) => assert_eq!(e, Error::NoSelfIntersection),
            }
        }
    }
    assert!(loops > 0);
}

#[test]
fn closed_classes() {
    let o = Pose::new(0.0, 0.0, 0.0);
    let inst = ProblemInstance::unit(o, o);
    let two = oracle_min_in_class(&inst, 2, &quick(3)).unwrap();
    assert!((two.length - 2.0 * TAU).abs() < 1e-3, "{}", two.length);
    let minus = oracle_min_in_class(&inst, -1, &quick(4)).unwrap();
    assert!((minus.length - TAU).abs() < 1e-3);
}

#[test]
fn budget_exhaustion_reports_the_closest_attempt() {
    // a single straight piece cannot reach a point off its line
    let inst = ProblemInstance::unit(Pose::new(0.0, 0.0, 0.0), Pose::new(3.0, 2.0, 0.0));
    let budget = OracleBudget {
        max_pieces: 1,
        restarts: 4,
        endpoint_tol: 1e-6,
        seed: 0,
    };
    match oracle_min_in_class(&inst, 0, &budget) {
        Err(Error::BudgetExhausted { residual, .. }) => assert!(residual > 1e-6),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn embedded_class_probe_is_deterministic() {
    let inst = ProblemInstance::unit(Pose::new(0.0, 0.0, 0.0), Pose::new(0.5, 0.2, 0.0));
    let a = has_embedded_class(&inst).unwrap();
    let b = has_embedded_class(&inst.transformed(1.0, homotopy_dubins::Point::new(3.0, -2.0))).unwrap();
    assert_eq!(a, b);
}
