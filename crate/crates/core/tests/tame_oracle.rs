mod common;

use modlab_core::tame::{
    class_count, explicit_class_count, find_admissible_primes, frobenius_bound,
    verify_irreducibles, verify_lambda2_reducible, TameInstance,
};

fn admissible_by_trial_division(p: u64, count: usize) -> Vec<u64> {
    let bad = p * (p * p - 1) * (p * p * p - 1);
    (2..)
        .filter(|&l| common::is_prime(l) && l != p && !bad.is_multiple_of(l) && (l - 1) % p != 0)
        .take(count)
        .collect()
}

#[test]
fn admissible_primes_match() {
    for p in [3, 5, 7] {
        let got: Vec<u64> = find_admissible_primes(p, 12)
            .unwrap()
            .iter()
            .map(|i| i.ell)
            .collect();
        assert_eq!(got, admissible_by_trial_division(p, 12), "p = {p}");
    }
}

#[test]
fn class_counts_match_brute_force() {
    for (p, ell) in [(3, 5), (3, 11), (3, 7), (2, 7), (3, 17), (5, 11)] {
        let inst = TameInstance::new(p, ell).unwrap();
        let brute = common::conjugacy_classes(ell, p) as u64;
        assert_eq!(
            explicit_class_count(&inst, 2000).unwrap(),
            brute,
            "({p},{ell})"
        );
        assert_eq!(class_count(&inst), brute, "({p},{ell})");
        assert!(frobenius_bound(&inst).sum_of_squares_check);
    }
}

#[test]
fn g5_pipeline() {
    let inst = TameInstance::new(3, 5).unwrap();
    assert_eq!(inst.k_order, 4);
    let r = verify_lambda2_reducible(&inst, 0).unwrap();
    assert!(r.passes());
    // i + j ≡ 0 mod 5 among exponents {1, 3, 4, 2}: (1,4), (3,2)
    assert_eq!(r.fixed_space_dim, 2);
    let (_, irr) = verify_irreducibles(&inst, 0).unwrap();
    assert_eq!(irr.sum_of_squares, 20);
    assert!(irr.passes());
}
