mod common;

use modlab_core::ffla::Field;
use modlab_core::grouprep::Partition;
use modlab_core::jhcount::{
    cut_to_signature, eigencharacter_count, enumerate_cut, enumerate_signatures, family_cuts,
    family_signature, prod_cut, verify_counting_lemma, CutConvention, DEFAULT_N_CAP,
};

fn part(b: &[usize]) -> Partition {
    Partition::new(b.to_vec()).unwrap()
}

#[test]
fn cuts_match_brute_force() {
    for n in 1..=6 {
        for blocks in common::compositions(n) {
            let p = part(&blocks);
            for i in 0..=n {
                for (conv, lo) in [(CutConvention::ZeroAllowed, 0), (CutConvention::Strict, 1)] {
                    let got: std::collections::BTreeSet<_> =
                        enumerate_cut(i, &p, conv).unwrap().into_iter().collect();
                    assert_eq!(
                        got,
                        common::cuts_by_brute_force(&blocks, i, lo),
                        "{blocks:?} i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn signature_sets_match_brute_force() {
    for n in 1..=5 {
        for blocks in common::compositions(n) {
            let got: std::collections::BTreeSet<_> = enumerate_signatures(&part(&blocks))
                .unwrap()
                .counts
                .into_keys()
                .collect();
            assert_eq!(
                got,
                common::signatures_by_brute_force(&blocks),
                "{blocks:?}"
            );
        }
    }
}

#[test]
fn small_examples() {
    let r = verify_counting_lemma(&part(&[1, 1, 1]), DEFAULT_N_CAP).unwrap();
    assert_eq!((r.prod_cut, r.card_j), (9, 7));
    let r = verify_counting_lemma(&part(&[1, 2]), DEFAULT_N_CAP).unwrap();
    assert_eq!((r.prod_cut, r.card_j), (4, 3));
    assert_eq!(prod_cut(&part(&[3]), CutConvention::ZeroAllowed), 1);
}

#[test]
fn displayed_collision() {
    // ((1,0,0),(0,1,1)) and ((0,1,0),(1,0,1)) hit the same signature
    let p = part(&[1, 1, 1]);
    let (a, fa) = cut_to_signature(&p, &[vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
    let (b, fb) = cut_to_signature(&p, &[vec![0, 1, 0], vec![1, 0, 1]]).unwrap();
    assert_eq!(a, vec![1, 1, 1]);
    assert_eq!(a, b);
    assert_eq!(family_signature(&p, &fa), family_signature(&p, &fb));
    assert_ne!(family_cuts(&p, &fa), family_cuts(&p, &fb));
}

#[test]
fn eigencharacters_equal_signatures() {
    let f = Field::new(23, 1).unwrap();
    for n in 2..=4 {
        for blocks in common::compositions(n) {
            let p = part(&blocks);
            assert_eq!(
                eigencharacter_count(&p, &f).unwrap(),
                common::signatures_by_brute_force(&blocks).len(),
                "{blocks:?}"
            );
        }
    }
}
