mod common;

use gitcone::quiver::examples::*;
use gitcone::tame::compute_tubes;
use gitcone::{Quiver, QuiverType, RatVector};
use proptest::prelude::*;

fn corpus() -> Vec<Quiver> {
    vec![a_n(2), a_n(3), kronecker(2), a_tilde_2_1(), d4_tilde(), e6_tilde(), kronecker(3)]
}

fn ints(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_form_is_bilinear(a in ints(5), b in ints(5), c in ints(5), k in -3i64..=3) {
        let q = d4_tilde();
        let ac: Vec<i64> = a.iter().zip(&c).map(|(x, y)| x + k * y).collect();
        prop_assert_eq!(q.euler_int(&ac, &b), q.euler_int(&a, &b) + k * q.euler_int(&c, &b));
        prop_assert_eq!(q.euler_int(&b, &ac), q.euler_int(&b, &a) + k * q.euler_int(&b, &c));
        prop_assert_eq!(q.euler_int(&a, &b), common::euler(&common::euler_matrix(&q), &a, &b));
    }

    #[test]
    fn wt_round_trips(a in ints(7)) {
        let q = e6_tilde();
        let a = RatVector::from_ints(&a);
        prop_assert_eq!(q.wt_inv(&q.wt(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn tau_matches_serre_oracle(a in ints(5), k in -3i64..=3) {
        let q = d4_tilde();
        let t = q.tau_dim(&RatVector::from_ints(&a), 1).unwrap();
        prop_assert_eq!(t.to_ints().unwrap(), common::tau(&q, &a));
        let there = q.tau_dim(&RatVector::from_ints(&a), k).unwrap();
        prop_assert_eq!(q.tau_dim(&there, -k).unwrap(), RatVector::from_ints(&a));
    }
}

#[test]
fn delta_is_the_radical() {
    for q in corpus() {
        match q.classify() {
            QuiverType::Euclidean { delta } => {
                assert_eq!(Some(delta.entries().to_vec()), common::radical_generator(&q));
            }
            QuiverType::Dynkin => assert_eq!(common::radical_generator(&q), None),
            QuiverType::Wild => {}
        }
    }
}

#[test]
fn tubes_match_brute_force() {
    for q in [kronecker(2), a_tilde_2_1(), d4_tilde(), e6_tilde()] {
        let t = compute_tubes(&q).unwrap();
        let qs = common::quasi_simples(&q, t.delta.entries());
        let mut lib: Vec<Vec<i64>> = t.quasi_simples().map(|b| b.entries().to_vec()).collect();
        let mut oracle = qs.clone();
        lib.sort();
        oracle.sort();
        assert_eq!(lib, oracle);
        let mut ranks = t.ranks();
        ranks.sort();
        assert_eq!(ranks, common::orbit_sizes(&q, &qs));
    }
}
