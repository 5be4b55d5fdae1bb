use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use yangian_core::cohom::ce_cohomology_dims;
use yangian_core::exactnum::{rank, rank_mod_p};
use yangian_core::{Envelope, FreeModel, GModule, Rational, SparseMatrix};

fn normal_order(c: &mut Criterion) {
    for n in [2, 3] {
        let env = Envelope::sl(n).unwrap();
        let basis: Vec<_> = env.g().basis().collect();
        // positives first, the worst case for straightening
        let word: Vec<_> = basis.iter().rev().chain(basis.iter().rev()).copied().take(6).collect();
        c.bench_function(&format!("normal_order/sl{n}/len6"), |b| b.iter(|| env.normal_order(black_box(&word))));
    }
}

fn free_model_coproduct(c: &mut Criterion) {
    let fm = FreeModel::new(Envelope::sl(2).unwrap()).unwrap();
    let g = fm.env().g().clone();
    let (e, f, h) = (g.lookup("e").unwrap(), g.lookup("f").unwrap(), g.lookup("h").unwrap());
    let x = fm.product(&[&fm.j(e), &fm.j(f), &fm.j(h)]);
    c.bench_function("fm_coproduct/sl2/J(e)J(f)J(h)", |b| b.iter(|| fm.coproduct(black_box(&x))));
}

fn test_matrix(size: usize) -> SparseMatrix {
    let mut m = SparseMatrix::new(size, size);
    let mut state = 12345u64;
    for i in 0..size {
        for j in 0..size {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            if state >> 61 == 0 {
                let num = (state >> 33) as i64 % 7 - 3;
                m.set(i, j, Rational::new(num.into(), ((state >> 40) % 4 + 1).into()));
            }
        }
    }
    m
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    group.sample_size(10);
    for size in [40, 120] {
        let m = test_matrix(size);
        group.bench_function(format!("mod_p/{size}"), |b| b.iter(|| rank_mod_p(black_box(&m))));
        if size <= 40 {
            group.bench_function(format!("rational/{size}"), |b| b.iter(|| rank(black_box(&m))));
        }
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let env = Envelope::sl(2).unwrap();
    let ad = GModule::adjoint(env.g().clone());
    let m = GModule::tensor(&GModule::dual(&ad), &GModule::pbw_slice(&env, 2));
    c.bench_function("ce_cohomology/sl2/dual(ad)xU<=2", |b| b.iter(|| ce_cohomology_dims(black_box(&m), 2)));
}

criterion_group!(benches, normal_order, free_model_coproduct, ranks, cohomology);
criterion_main!(benches);
