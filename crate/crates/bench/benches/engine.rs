use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rootmult::chamber::hilbert_basis;
use rootmult::oracle::naive_compute;
use rootmult::peterson::{compute_all, RootRecord, RootTable};
use rootmult::presets::preset;
use rootmult::weyl::pingpong;
use rootmult::{CartanMatrix, KillingCounter, Meter, RootVector};

fn named(name: &str) -> CartanMatrix {
    CartanMatrix::build(&preset(name).unwrap()).unwrap()
}

fn engine(c: &mut Criterion) {
    let h3 = named("hyp-2-3");
    let e10 = named("e10");
    c.bench_function("compute_all hyp-2-3 h=60", |b| {
        b.iter(|| compute_all(black_box(&h3), 60).unwrap())
    });
    c.bench_function("compute_all e10 h=60", |b| {
        b.iter(|| compute_all(black_box(&e10), 60).unwrap())
    });
    c.bench_function("oracle hyp-2-3 h=30", |b| {
        b.iter(|| naive_compute(black_box(&h3), 30, &KillingCounter::new()).unwrap())
    });
    c.bench_function("hilbert_basis e10", |b| {
        b.iter(|| hilbert_basis(black_box(&e10)).unwrap())
    });
    let rank3 = CartanMatrix::build(&[vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
    c.bench_function("hilbert_basis rank-3 triangle", |b| {
        b.iter(|| hilbert_basis(black_box(&rank3)).unwrap())
    });
    c.bench_function("pingpong e10 alpha_0 h=60", |b| {
        b.iter(|| {
            let mut t = RootTable::new(e10.clone(), 60);
            let seed = RootVector::simple(10, 0);
            t.insert(seed.clone(), RootRecord::real());
            pingpong(&e10, &seed, 60, &mut t, Meter::off()).unwrap()
        })
    });
}

criterion_group!(benches, engine);
criterion_main!(benches);
