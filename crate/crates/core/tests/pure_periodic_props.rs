mod common;

use common::*;
use num_bigint::BigInt;
use ruban::field::QuadElem;
use ruban::pure_periodic::{candidate_list, determine_pure_periodic, pell_period1};
use ruban::quadratic_cf::{classify_quadratic, ClassifyOptions, QuadraticOutcome};
use ruban::arith;

fn ordinates(max: i64, l: u64) -> Vec<i64> {
    (2..=max)
        .filter(|d| d % l as i64 != 0 && !arith::is_perfect_square(&int(*d)))
        .collect()
}

fn purely_periodic(x: &ruban::QuadraticSurd) -> Option<Vec<ruban::PartialQuotient>> {
    match classify_quadratic(x, ClassifyOptions::default()).unwrap().outcome {
        QuadraticOutcome::Periodic { preperiod, period } if preperiod.is_empty() => Some(period),
        _ => None,
    }
}

#[test]
fn confirmed_surds_are_purely_periodic() {
    for l in [2u64, 3, 5, 7, 11] {
        let p = prime(l);
        for d in ordinates(60, l) {
            for br in branches(d, &p) {
                let r = determine_pure_periodic(&int(d), &p, &br).unwrap();
                for x in &r.confirmed {
                    assert_eq!(purely_periodic(&x.surd), Some(x.period.clone()), "{} in Q_{l}", x.surd);
                }
            }
        }
    }
}

#[test]
fn nothing_purely_periodic_is_missed() {
    for l in [2u64, 3, 5, 7] {
        let p = prime(l);
        for d in ordinates(100, l) {
            for br in branches(d, &p) {
                let delta = int(d);
                let r = determine_pure_periodic(&delta, &p, &br).unwrap();
                for cand in candidate_list(&delta, &p, &br).unwrap() {
                    if purely_periodic(&cand.surd).is_some() {
                        assert!(
                            r.confirmed.iter().any(|x| x.surd.same_value(&cand.surd)),
                            "{} (sqrt({d}) in Q_{l}, branch {br}) is purely periodic but was not found",
                            cand.surd
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn period_one_solutions_satisfy_their_equation() {
    for (d, l) in [(10, 3), (13, 3), (2, 7), (5, 11), (17, 2), (7, 3), (29, 5)] {
        let p = prime(l);
        for br in branches(d, &p) {
            for level in pell_period1(&int(d), &p, 4, &br).unwrap() {
                for s in level.solutions {
                    assert_eq!(&s.t * &s.t - &s.u * &s.u * int(d), -(BigInt::from(4) * p.pow(2 * s.h)));
                    assert!(s.t < p.pow(s.h + 1));
                    let x = s.surd.field_elem();
                    let a = QuadElem::rational(s.quotient.value(), x.d.clone());
                    let one = QuadElem::rational(rat(1, 1), x.d.clone());
                    let lhs = &(&(&x * &x) - &(&a * &x)) - &one;
                    assert!(lhs.is_zero(), "{} does not satisfy x^2 - ax - 1 = 0", s.surd);
                    assert_eq!(purely_periodic(&s.surd), Some(vec![s.quotient.clone()]));
                }
            }
        }
    }
}

#[test]
fn period_one_embeddings_alternate_for_ten() {
    let p = prime(3);
    let br = branches(10, &p)[0].clone();
    let levels = pell_period1(&int(10), &p, 4, &br).unwrap();
    for level in levels {
        assert_eq!(level.solutions.len(), 1);
        let s = &level.solutions[0];
        assert_eq!(s.positive_under_plus(), level.h % 2 == 1, "h = {}", level.h);
    }
}
