//! Differential tests for the Whitney polynomial: the recursion against the
//! defining sum, the one-step cycle elimination identity, and the invariants
//! of the special evaluations.

use hypermaps::perm::{HypermapCollection, Permutation};
use hypermaps::poly::BivariatePolynomial;
use hypermaps::random::{self, rng_from_seed};
use hypermaps::whitney::{
    eval_minus_one, eval_two_cycle_zero, psi_expand, tutte_positive_form, whitney_bruteforce,
    whitney_recursive,
};
use num_bigint::BigInt;
use num_traits::Zero;

#[test]
fn recursion_matches_defining_sum_on_random_short_collections() {
    let mut rng = rng_from_seed(2024);
    for round in 0..80 {
        let n = 3 + round % 10;
        let h = random::random_collection(n, 3, &mut rng);
        assert_eq!(
            whitney_recursive(&h).unwrap(),
            whitney_bruteforce(&h),
            "sigma={} alpha={}",
            h.sigma(),
            h.alpha()
        );
    }
}

#[test]
fn whitney_depends_only_on_the_multi_hypergraph() {
    // Replacing a 3-cycle (i, j, k) by (i, k, j) changes the topological
    // structure but not the incidences, so R stays the same.
    let mut rng = rng_from_seed(555);
    let mut flipped = 0;
    for _ in 0..80 {
        let h = random::random_collection(9, 3, &mut rng);
        let Some(cycle) = h.alpha().cycles().iter().find(|c| c.len() == 3) else {
            continue;
        };
        let mut cycles: Vec<Vec<u32>> = h.alpha().cycles().to_vec();
        for c in &mut cycles {
            if c == cycle {
                c.swap(1, 2);
            }
        }
        let reversed = HypermapCollection::new(
            h.sigma().clone(),
            Permutation::from_cycles(h.n(), &cycles).unwrap(),
        )
        .unwrap();
        assert_eq!(
            whitney_recursive(&h).unwrap(),
            whitney_recursive(&reversed).unwrap()
        );
        flipped += 1;
    }
    assert!(flipped > 40);
}

#[test]
fn cycle_elimination_step_identity_on_longer_cycles() {
    // One psi-expansion step equals the Whitney polynomial, with both sides
    // computed by the defining sum.
    let mut rng = rng_from_seed(909);
    for round in 0..30 {
        let n = 6 + round % 5;
        let h = random::random_hypermap(n, 6, &mut rng);
        let Some(cycle) = h.alpha().cycles().iter().find(|c| c.len() >= 2) else {
            continue;
        };
        let summands = psi_expand(&h, cycle).unwrap();
        assert_eq!(summands.len(), cycle.len());
        let mut total = BivariatePolynomial::zero();
        for (psi, weight) in &summands {
            assert_eq!(psi.kappa(), h.kappa());
            total = total.add(&whitney_bruteforce(psi).mul(weight));
        }
        assert_eq!(
            total,
            whitney_bruteforce(&h),
            "sigma={} alpha={} cycle={cycle:?}",
            h.sigma(),
            h.alpha()
        );
    }
}

#[test]
fn positive_form_expands_to_the_polynomial_when_present() {
    let mut rng = rng_from_seed(31337);
    let mut present = 0;
    for _ in 0..60 {
        let h = random::random_collection(8, 3, &mut rng);
        if let Some(form) = tutte_positive_form(&h).unwrap() {
            assert_eq!(form.expand(), whitney_bruteforce(&h));
            present += 1;
        }
    }
    assert!(present > 10);
}

#[test]
fn maps_always_have_a_positive_form() {
    let mut rng = rng_from_seed(77);
    for _ in 0..40 {
        let map = random::random_map(8, &mut rng);
        let form = tutte_positive_form(&map)
            .unwrap()
            .expect("maps meet no doubles");
        assert_eq!(form.expand(), whitney_recursive(&map).unwrap());
    }
}

#[test]
fn two_cycle_forces_zero_at_minus_one() {
    let mut rng = rng_from_seed(88);
    let mut hit = 0;
    for _ in 0..60 {
        let h = random::random_hypermap(8, 4, &mut rng);
        if h.alpha().cycles_of_len(2) == 0 {
            continue;
        }
        assert_eq!(eval_two_cycle_zero(&h).unwrap(), BigInt::zero());
        hit += 1;
    }
    assert!(hit > 20);
}

#[test]
fn three_uniform_sign_and_parity() {
    let mut rng = rng_from_seed(99);
    for _ in 0..60 {
        let h = random::random_three_uniform_hypermap(9, &mut rng);
        // Vertex and face counts share parity; the sign matches all three
        // evaluation points (asserted inside eval_minus_one).
        let z_sigma = h.sigma().cycle_count() as i64;
        let z_faces = h.faces().cycle_count() as i64;
        assert_eq!((z_sigma - z_faces).rem_euclid(2), 0);
        let sign = eval_minus_one(&h).unwrap();
        assert!(sign == 1 || sign == -1);
    }
}

#[test]
fn whitney_constant_term_is_nonnegative_and_counts_hypertrees() {
    let mut rng = rng_from_seed(404);
    for _ in 0..30 {
        let h = random::random_hypermap(8, 3, &mut rng);
        let r = whitney_recursive(&h).unwrap();
        assert!(r.constant_term() >= BigInt::zero());
        assert_eq!(
            r.constant_term(),
            hypermaps::refine::count_spanning_hypertrees(&h).unwrap()
        );
    }
}
