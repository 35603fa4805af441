use criterion::{black_box, criterion_group, criterion_main, Criterion};

use crystal_core::axioms::check_all;
use crystal_core::builder::synthesize;
use crystal_core::oracle::verify_lemmas;
use crystal_core::pbw::generate;
use crystal_core::{Gcm, HighestWeightB2};

fn bench_generate(c: &mut Criterion) {
    let lam = HighestWeightB2::new(6, 6);
    c.bench_function("generate (6,6)", |b| b.iter(|| generate(black_box(lam)).unwrap()));
}

fn bench_check(c: &mut Criterion) {
    let lam = HighestWeightB2::new(4, 4);
    let g = generate(lam).unwrap();
    let a = Gcm::b2();
    let phi0 = lam.pairing();
    c.bench_function("check_all (4,4)", |b| {
        b.iter(|| check_all(black_box(&g), &a, Some(&phi0)))
    });
}

fn bench_synthesize(c: &mut Criterion) {
    let a = Gcm::b2();
    let phi0 = HighestWeightB2::new(3, 3).pairing();
    c.bench_function("synthesize (3,3)", |b| {
        b.iter(|| synthesize(&a, black_box(&phi0)).unwrap())
    });
}

fn bench_lemmas(c: &mut Criterion) {
    c.bench_function("verify_lemmas 4", |b| b.iter(|| verify_lemmas(black_box(4))));
}

criterion_group!(benches, bench_generate, bench_check, bench_synthesize, bench_lemmas);
criterion_main!(benches);
