//! The module corpus used by the MeatAxe oracle comparison.

use std::path::PathBuf;

use modlab_cli::repfile::RepFile;
use modlab_core::ffla::{Field, FieldRef, Mat};
use modlab_core::grouprep::{
    borel_group, cyclic_group, dual, exterior_power, levi_center, product_group, semidirect_group,
    tensor, Rep,
};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn companion(f: &FieldRef, order: u64, rows: &[&[i64]]) -> Rep {
    let g = cyclic_group(order).unwrap();
    Rep::new(g, f.clone(), vec![Mat::from_ints(f, rows)]).unwrap()
}

fn modules() -> Vec<(String, Rep)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let f = Field::new(p, 1).unwrap();
        let std = |n: usize, zeros: &[(usize, usize)]| {
            Rep::standard(&borel_group(&f, n, zeros).unwrap()).unwrap()
        };
        let b2 = std(2, &[]);
        let b3 = std(3, &[]);
        out.push((format!("b2-std-gf{p}"), b2.clone()));
        out.push((format!("b3-std-gf{p}"), b3.clone()));
        out.push((format!("b3-lambda2-gf{p}"), exterior_power(&b3, 2).unwrap()));
        out.push((format!("b3-dual-gf{p}"), dual(&b3)));
        out.push((format!("b3-no-delta-b-gf{p}"), std(3, &[(2, 3)])));
        out.push((format!("b3-no-first-row-gf{p}"), std(3, &[(1, 2), (1, 3)])));
        out.push((format!("b4-std-gf{p}"), std(4, &[])));
        out.push((
            format!("b4-blocks-gf{p}"),
            std(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]),
        ));
        out.push((format!("b2-tensor-square-gf{p}"), tensor(&b2, &b2).unwrap()));
        out.push((
            format!("b2-std-plus-trivial-gf{p}"),
            b2.direct_sum(&Rep::trivial(b2.group(), &f)).unwrap(),
        ));
        let levi = levi_center(&f, &[1, 2]).unwrap();
        out.push((format!("levi-1-2-std-gf{p}"), Rep::standard(&levi).unwrap()));
        for n in [2u64, 3, 4] {
            let g = cyclic_group(n).unwrap();
            out.push((
                format!("z{n}-regular-gf{p}"),
                Rep::regular(&g, &f, 100).unwrap(),
            ));
        }
        let v4 = product_group(&[cyclic_group(2).unwrap(), cyclic_group(2).unwrap()]).unwrap();
        out.push((
            format!("z2xz2-regular-gf{p}"),
            Rep::regular(&v4, &f, 100).unwrap(),
        ));
        let s3 = semidirect_group(3, 2).unwrap();
        out.push((
            format!("s3-permutation-gf{p}"),
            Rep::from_permutations(&s3, &f, &[vec![1, 2, 0], vec![0, 2, 1]]).unwrap(),
        ));
        out.push((
            format!("z5-companion-gf{p}"),
            companion(
                &f,
                5,
                &[
                    &[0, 0, 0, -1],
                    &[1, 0, 0, -1],
                    &[0, 1, 0, -1],
                    &[0, 0, 1, -1],
                ],
            ),
        ));
    }
    let f3 = Field::new(3, 1).unwrap();
    out.push((
        "z4-companion-gf3".into(),
        companion(&f3, 4, &[&[0, -1], &[1, 0]]),
    ));
    out
}

#[test]
#[ignore = "rewrites tests/corpus"]
fn regenerate_corpus() {
    let dir = corpus_dir();
    std::fs::create_dir_all(&dir).unwrap();
    for (name, rep) in modules() {
        assert!(rep.dim() <= 4, "{name}");
        RepFile::from_rep(&rep)
            .save(&dir.join(format!("{name}.json")))
            .unwrap();
    }
}

#[test]
fn corpus_files_match_their_constructions() {
    for (name, rep) in modules() {
        let file = RepFile::load(&corpus_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(file, RepFile::from_rep(&rep), "{name}");
        assert_eq!(file.to_rep().unwrap().generators(), rep.generators());
    }
}
