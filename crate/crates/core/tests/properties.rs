//! Randomized algebraic identities.

use modlab_core::ffla::{Field, FieldRef, Mat, Scalar};
use modlab_core::grouprep::{exterior_power_matrix, Partition};
use modlab_core::jhcount::{prod_cut, verify_counting_lemma, CutConvention, DEFAULT_N_CAP};
use proptest::prelude::*;

const FIELDS: &[(u64, u32)] = &[(2, 1), (2, 3), (3, 2), (5, 1), (7, 2), (13, 1)];

fn field(i: usize) -> FieldRef {
    let (p, r) = FIELDS[i % FIELDS.len()];
    Field::new(p, r).unwrap()
}

fn scalar(f: &FieldRef, code: u64) -> Scalar {
    f.scalar_from_code(code % f.order()).unwrap()
}

fn mat(f: &FieldRef, n: usize, m: usize, codes: &[u64]) -> Mat {
    let data = codes
        .iter()
        .cycle()
        .take(n * m)
        .map(|&c| scalar(f, c))
        .collect();
    Mat::from_vec(f, n, m, data)
}

proptest! {
    #[test]
    fn field_axioms(i in 0usize..6, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(i);
        let (a, b, c) = (scalar(&f, a), scalar(&f, b), scalar(&f, c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Scalar::ONE);
        }
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn rank_nullity_and_kernel(i in 0usize..6, n in 1usize..6, m in 1usize..6,
                               codes in prop::collection::vec(any::<u64>(), 1..36)) {
        let f = field(i);
        let a = mat(&f, n, m, &codes);
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.cols(), m);
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn det_and_exterior_square_are_multiplicative(i in 0usize..6, n in 2usize..5,
                                                  x in prop::collection::vec(any::<u64>(), 1..16),
                                                  y in prop::collection::vec(any::<u64>(), 1..16)) {
        let f = field(i);
        let (a, b) = (mat(&f, n, n, &x), mat(&f, n, n, &y));
        let ab = a.mul(&b);
        prop_assert_eq!(ab.det(), f.mul(a.det(), b.det()));
        prop_assert_eq!(
            exterior_power_matrix(&ab, 2),
            exterior_power_matrix(&a, 2).mul(&exterior_power_matrix(&b, 2))
        );
    }

    #[test]
    fn counting_bound(blocks in prop::collection::vec(1usize..4, 1..4)) {
        let p = Partition::new(blocks).unwrap();
        prop_assume!(p.n() >= 2);
        let r = verify_counting_lemma(&p, DEFAULT_N_CAP).unwrap();
        prop_assert!(r.passes());
        prop_assert!(r.card_j as u128 <= prod_cut(&p, CutConvention::ZeroAllowed));
    }
}
