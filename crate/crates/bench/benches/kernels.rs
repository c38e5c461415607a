use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use modlab_bench::{field, random_matrix};
use modlab_core::gl3toy::ToyParams;
use modlab_core::grouprep::{box_product, exterior_power, Partition};
use modlab_core::jhcount::{verify_counting_lemma, DEFAULT_N_CAP};
use modlab_core::meataxe::{analyse, composition_series};

fn rref(c: &mut Criterion) {
    for (p, r) in [(5, 1), (2, 8)] {
        let f = field(p, r);
        let a = random_matrix(&f, 96, 96, 1);
        c.bench_function(&format!("rref 96x96 GF({p}^{r})"), |b| {
            b.iter(|| black_box(&a).rref())
        });
    }
}

fn char_poly(c: &mut Criterion) {
    let f = field(3, 2);
    let a = random_matrix(&f, 32, 32, 2);
    c.bench_function("char_poly and factor 32x32 GF(9)", |b| {
        b.iter(|| black_box(&a).char_poly().unwrap().factor().unwrap())
    });
}

fn box_structure(c: &mut Criterion) {
    let model = ToyParams::full(5).model().unwrap();
    let l2 = exterior_power(&model.rho, 2).unwrap();
    let bx = box_product(&model.rho, &l2).unwrap();
    c.bench_function("composition series of rho box Lambda2 rho, GF(5)", |b| {
        b.iter(|| composition_series(black_box(&bx), 0).unwrap())
    });
    c.bench_function(
        "socle and radical series of rho box Lambda2 rho, GF(5)",
        |b| b.iter(|| analyse(black_box(&bx), 0).unwrap()),
    );
}

fn jh_enumeration(c: &mut Criterion) {
    for blocks in [vec![1, 1, 1, 1, 1], vec![2, 2, 2], vec![1, 2, 3]] {
        let p = Partition::new(blocks.clone()).unwrap();
        c.bench_function(&format!("signatures {blocks:?}"), |b| {
            b.iter(|| verify_counting_lemma(black_box(&p), DEFAULT_N_CAP).unwrap())
        });
    }
}

criterion_group!(benches, rref, char_poly, box_structure, jh_enumeration);
criterion_main!(benches);
