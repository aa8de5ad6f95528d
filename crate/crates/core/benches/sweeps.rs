use std::hint::black_box;
use std::sync::Arc;

use bigla::catalog;
use bigla::equivalence::alpha_check_all;
use bigla::hc::{CoefficientModule, HcContext};
use bigla::{Exec, Uea};
use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

fn executors() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi");
    for g in [catalog::unitary_m2(), catalog::tilde_m22_commutator()] {
        for (name, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(name, g.name()), &g, |b, g| {
                b.iter(|| black_box(g.check_jacobi_exec(exec)))
            });
        }
    }
    group.finish();
}

fn alpha(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha");
    let g = catalog::tilde_m22_commutator();
    for (name, exec) in executors() {
        group.bench_function(name, |b| b.iter(|| black_box(alpha_check_all(g.bracket_map(), exec))));
    }
    group.finish();
}

fn hopf(c: &mut Criterion) {
    let mut group = c.benchmark_group("hopf");
    group.sample_size(10);
    let g = Arc::new(catalog::unitary_m2());
    for (name, exec) in executors() {
        group.bench_function(name, |b| {
            b.iter_batched(|| Uea::new(g.clone()), |u| black_box(u.hopf_check(3, exec)), BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn convolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolution");
    group.sample_size(10);
    let u = Uea::new(Arc::new(catalog::b_commutator()));
    let module = CoefficientModule::trivial();
    let ctx = HcContext::new(&u, &module, 4);
    let basis = ctx.hom_basis().expect("truncation covers the odd letters");
    for (name, exec) in executors() {
        group.bench_function(name, |b| b.iter(|| black_box(ctx.commutativity_violations(&basis, exec))));
    }
    group.finish();
}

criterion_group!(benches, jacobi, alpha, hopf, convolution);
criterion_main!(benches);
