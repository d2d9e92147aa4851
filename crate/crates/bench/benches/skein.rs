use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use knotforge::skein::{jones_bracket_oracle, SkeinEngine};
use knotforge_bench::{table_diagram, KNOTS};

fn cold_engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("skein cold");
    for name in KNOTS {
        let d = table_diagram(name);
        g.bench_with_input(BenchmarkId::new("conway", name), &d, |b, d| {
            b.iter(|| SkeinEngine::new(24).conway(black_box(d)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("jones", name), &d, |b, d| {
            b.iter(|| SkeinEngine::new(24).jones(black_box(d)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("jones sequential", name), &d, |b, d| {
            b.iter(|| SkeinEngine::new(24).sequential().jones(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn warm_memo(c: &mut Criterion) {
    let d = table_diagram("11n63");
    let engine = SkeinEngine::new(24);
    engine.jones(&d).unwrap();
    c.bench_function("skein warm jones 11n63", |b| b.iter(|| engine.jones(black_box(&d)).unwrap()));
}

fn bracket(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket oracle");
    for name in ["5_2", "9_45"] {
        let d = table_diagram(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| jones_bracket_oracle(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn canonical_key(c: &mut Criterion) {
    let d = table_diagram("11n63");
    c.bench_function("canonical key 11n63", |b| b.iter(|| black_box(&d).canonical_key()));
}

criterion_group!(benches, cold_engine, warm_memo, bracket, canonical_key);
criterion_main!(benches);
