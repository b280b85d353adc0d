use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use metaracah::algebra::check_defining_relations;
use metaracah::eigenbases::{build_basis, oracle_basis};
use metaracah::racahpoly::verify_racah;
use metaracah::rationalfns::verify_rational;
use metaracah::BasisLabel;
use metaracah_bench::reference;

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("relations");
    for nmax in [4, 8, 12] {
        let (p, _) = reference(nmax);
        g.bench_with_input(BenchmarkId::from_parameter(nmax), &p, |b, p| b.iter(|| check_defining_relations(black_box(p))));
    }
    g.finish();
}

fn bases(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis-e");
    for nmax in [4, 8] {
        let (p, fp) = reference(nmax);
        g.bench_function(BenchmarkId::new("closed-form", nmax), |b| {
            b.iter(|| build_basis(black_box(&p), &fp, BasisLabel::E).unwrap())
        });
        g.bench_function(BenchmarkId::new("oracle", nmax), |b| {
            b.iter(|| oracle_basis(black_box(&p), &fp, BasisLabel::E).unwrap())
        });
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let (p, fp) = reference(6);
    c.bench_function("racah-suite-6", |b| b.iter(|| verify_racah(black_box(&p), &fp)));
    c.bench_function("rational-suite-6", |b| b.iter(|| verify_rational(black_box(&p))));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = relations, bases, suites
}
criterion_main!(benches);
