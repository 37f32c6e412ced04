use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rado_core::{enumerate_solutions, parse_equation, verify_avoiding, Coloring, ColoringSpec};
use std::hint::black_box;
use std::str::FromStr;

fn enumerate(c: &mut Criterion) {
    let eq = parse_equation("1,2,-4").unwrap();
    let mut g = c.benchmark_group("enumerate 1,2,-4");
    for n in [100u64, 1000, 10_000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_solutions(black_box(&eq), n, None).unwrap().count())
        });
    }
    g.finish();
}

fn verify(c: &mut Criterion) {
    let eq = parse_equation("1,-2").unwrap();
    let mut g = c.benchmark_group("verify nu2:2 on 1,-2");
    for n in [10_000u64, 1_000_000] {
        let col: Coloring = ColoringSpec::from_str("nu2:2").unwrap().resolve(Some(n), None).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| verify_avoiding(black_box(&col), &eq, n).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumerate, verify);
criterion_main!(benches);
