use criterion::{criterion_group, criterion_main, Criterion};
use rado_core::{parse_equation, rado_number, search_avoiding, SearchOptions};
use std::hint::black_box;

fn rado_numbers(c: &mut Criterion) {
    let schur = parse_equation("1,1,-1").unwrap();
    let nonregular = parse_equation("1,2,-4").unwrap();
    let opts = SearchOptions::default();

    let mut g = c.benchmark_group("rado_number");
    g.bench_function("schur r=2", |b| b.iter(|| rado_number(black_box(&schur), 2, 200, &opts).unwrap()));
    g.bench_function("schur r=3", |b| b.iter(|| rado_number(black_box(&schur), 3, 200, &opts).unwrap()));
    g.bench_function("1,2,-4 r=2", |b| b.iter(|| rado_number(black_box(&nonregular), 2, 200, &opts).unwrap()));
    g.finish();
}

fn exhaust(c: &mut Criterion) {
    let schur = parse_equation("1,1,-1").unwrap();
    let seq = SearchOptions::default();
    let par = SearchOptions {
        threads: 4,
        ..SearchOptions::default()
    };
    let mut g = c.benchmark_group("exhaust schur r=3 N=14");
    g.sample_size(20);
    g.bench_function("sequential", |b| b.iter(|| search_avoiding(&schur, 3, 14, &seq).unwrap()));
    g.bench_function("4 threads", |b| b.iter(|| search_avoiding(&schur, 3, 14, &par).unwrap()));
    g.finish();
}

criterion_group!(benches, rado_numbers, exhaust);
criterion_main!(benches);
